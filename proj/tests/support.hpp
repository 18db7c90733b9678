#ifndef HYPERCF_TESTS_SUPPORT_HPP
#define HYPERCF_TESTS_SUPPORT_HPP

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <hypercf/hypercf.hpp>

namespace hypercf::testing {

/// Random polynomial of exact degree `deg` (>= 0), or zero when deg < 0.
inline Poly random_poly(PrimeField f, std::int64_t deg, std::mt19937_64& rng) {
    if (deg < 0) return Poly(f);
    std::uniform_int_distribution<residue> any(0, f.modulus() - 1), nonzero(1, f.modulus() - 1);
    std::vector<residue> c(static_cast<std::size_t>(deg) + 1);
    for (auto& x : c) x = any(rng);
    c.back() = nonzero(rng);
    return {f, std::move(c)};
}

/// Random partial quotients with degrees in [1, max_deg].
inline PartialQuotients random_quotients(PrimeField f, std::size_t n, std::int64_t max_deg, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> deg(1, max_deg);
    std::vector<Poly> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(random_poly(f, deg(rng), rng));
    return PartialQuotients(std::move(v));
}

struct TripleRow {
    std::uint64_t p;
    std::int64_t u1, u2, u3;
};

/// Committed sweep parameters (tests/data/triples.txt).
inline std::vector<TripleRow> load_triples(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<TripleRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        TripleRow r{};
        ls >> r.p >> r.u1 >> r.u2 >> r.u3;
        rows.push_back(r);
    }
    return rows;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Undo print wrapping: a line starting with ',' or ' ' continues the
/// previous one; runs of spaces collapse to one.
inline std::string normalize_wrapped(const std::string& text) {
    std::string joined;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && (line[0] == ',' || line[0] == ' ') && !joined.empty() && joined.back() == '\n')
            joined.pop_back();
        joined += line + "\n";
    }
    std::string out;
    for (char c : joined) {
        if (c == ' ' && !out.empty() && out.back() == ' ') continue;
        out += c;
    }
    return out;
}

} // namespace hypercf::testing

#endif
