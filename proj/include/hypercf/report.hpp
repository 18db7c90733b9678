#ifndef HYPERCF_REPORT_HPP
#define HYPERCF_REPORT_HPP

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "analytics.hpp"
#include "cf.hpp"
#include "mkaouar.hpp"

namespace hypercf {

/// Machine-readable run report. Absent optionals are omitted from JSON.
struct Report {
    std::uint64_t p = 0;
    std::vector<std::int64_t> u;
    std::optional<std::vector<std::vector<residue>>> partial_quotients; // ascending T-coefficients
    std::optional<std::vector<std::int64_t>> degrees;
    std::optional<std::vector<residue>> leading_coefficients;
    std::optional<std::vector<std::array<std::int64_t, 3>>> big_positions; // (k, n_k, d)
    std::optional<Rational> nu;
    std::optional<bool> verified;
    std::optional<std::int64_t> residual_order;

    friend bool operator==(const Report&, const Report&) = default;
};

inline void fill_quotients(Report& r, const PartialQuotients& pqs) {
    std::vector<std::vector<residue>> coeffs;
    for (const auto& a : pqs) coeffs.emplace_back(a.coeffs().begin(), a.coeffs().end());
    r.partial_quotients = std::move(coeffs);
    r.degrees = pqs.degrees();
    r.leading_coefficients = pqs.leading_coefficients();
}

inline void fill_profile(Report& r, const DegreeProfile& prof) {
    std::vector<std::array<std::int64_t, 3>> big;
    for (const auto& b : prof.big_positions)
        big.push_back({static_cast<std::int64_t>(b.k), static_cast<std::int64_t>(b.n), b.degree});
    r.big_positions = std::move(big);
}

inline void to_json(nlohmann::json& j, const Report& r) {
    j = nlohmann::json{{"p", r.p}, {"u", r.u}};
    if (r.partial_quotients) {
        auto arr = nlohmann::json::array();
        for (const auto& c : *r.partial_quotients) arr.push_back({{"coeffs", c}});
        j["partial_quotients"] = std::move(arr);
    }
    if (r.degrees) j["degrees"] = *r.degrees;
    if (r.leading_coefficients) j["leading_coefficients"] = *r.leading_coefficients;
    if (r.big_positions) j["big_positions"] = *r.big_positions;
    if (r.nu) j["nu"] = {{"num", r.nu->numerator()}, {"den", r.nu->denominator()}};
    if (r.verified) j["verified"] = *r.verified;
    if (r.residual_order) j["residual_order"] = *r.residual_order;
}

inline void from_json(const nlohmann::json& j, Report& r) {
    r = Report{};
    j.at("p").get_to(r.p);
    j.at("u").get_to(r.u);
    if (j.contains("partial_quotients")) {
        std::vector<std::vector<residue>> c;
        for (const auto& e : j.at("partial_quotients")) c.push_back(e.at("coeffs").get<std::vector<residue>>());
        r.partial_quotients = std::move(c);
    }
    if (j.contains("degrees")) r.degrees = j.at("degrees").get<std::vector<std::int64_t>>();
    if (j.contains("leading_coefficients"))
        r.leading_coefficients = j.at("leading_coefficients").get<std::vector<residue>>();
    if (j.contains("big_positions"))
        r.big_positions = j.at("big_positions").get<std::vector<std::array<std::int64_t, 3>>>();
    if (j.contains("nu")) r.nu = Rational(j.at("nu").at("num").get<std::int64_t>(), j.at("nu").at("den").get<std::int64_t>());
    if (j.contains("verified")) r.verified = j.at("verified").get<bool>();
    if (j.contains("residual_order")) r.residual_order = j.at("residual_order").get<std::int64_t>();
}

// Equation files: one line per power of x, "i: c0 c1 c2 ..." with ascending
// T-coefficients as residues. Missing powers are zero; '#' starts a comment.

inline BiPoly parse_equation(std::istream& in, PrimeField f) {
    std::map<std::size_t, Poly> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto colon = line.find(':');
        const auto where = "equation file line " + std::to_string(lineno);
        if (colon == std::string::npos) throw std::invalid_argument(where + ": expected 'i: c0 c1 ...'");
        std::size_t power = 0;
        try {
            std::size_t used = 0;
            power = std::stoul(line.substr(0, colon), &used);
        } catch (const std::exception&) {
            throw std::invalid_argument(where + ": bad power of x");
        }
        std::istringstream cs(line.substr(colon + 1));
        std::vector<residue> c;
        std::string tok;
        while (cs >> tok) {
            try {
                c.push_back(f.reduce(std::stoll(tok)));
            } catch (const std::exception&) {
                throw std::invalid_argument(where + ": bad coefficient '" + tok + "'");
            }
        }
        if (!rows.emplace(power, Poly(f, std::move(c))).second)
            throw std::invalid_argument(where + ": duplicate power " + std::to_string(power));
    }
    if (rows.empty()) throw std::invalid_argument("equation file is empty");
    std::vector<Poly> coeffs(rows.rbegin()->first + 1, Poly(f));
    for (auto& [i, a] : rows) coeffs[i] = std::move(a);
    return BiPoly(std::move(coeffs));
}

inline std::string write_equation(const BiPoly& P) {
    std::ostringstream os;
    for (std::size_t i = 0; i <= P.degree_x(); ++i) {
        os << i << ":";
        for (auto c : P.coeff(i).coeffs()) os << ' ' << c;
        os << '\n';
    }
    return os.str();
}

/// "[2*t, 4*t, 5*t]"
inline std::string render_quotients(const PartialQuotients& pqs) {
    std::string out = "[";
    for (std::size_t i = 1; i <= pqs.size(); ++i) {
        if (i > 1) out += ", ";
        out += pqs.at(i).to_string();
    }
    return out + "]";
}

template <typename Int>
std::string render_list(const std::vector<Int>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ", ";
        out += std::to_string(v[i]);
    }
    return out + "]";
}

} // namespace hypercf

#endif
