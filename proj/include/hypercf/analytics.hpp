#ifndef HYPERCF_ANALYTICS_HPP
#define HYPERCF_ANALYTICS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <boost/rational.hpp>

#include "cf.hpp"
#include "construction.hpp"

namespace hypercf {

using Rational = boost::rational<std::int64_t>;

/// Position n_k of the degree-(2p^k - 1) quotient and the degree sum s_k before it.
struct ClosedForms {
    std::int64_t n_k;
    std::int64_t s_k;
};

/// n_k = (p^k - 1)/(p - 1) + 2k + 2,  s_k = 3 (p^k - 1)/(p - 1) + 1.
inline ClosedForms closed_forms(std::uint64_t p, unsigned k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    const auto geometric = static_cast<std::int64_t>((ipow(p, k) - 1) / (p - 1));
    return {geometric + 2 * static_cast<std::int64_t>(k) + 2, 3 * geometric + 1};
}

/// Irrationality measure 2 + 2(p - 1)/3.
inline Rational nu(std::uint64_t p) { return Rational(2) + Rational(2 * (static_cast<std::int64_t>(p) - 1), 3); }

struct BigPosition {
    unsigned k;          // 1-based rank among quotients of degree > 1
    std::size_t n;       // position in the expansion
    std::int64_t degree; // d_n
    std::int64_t sum_before; // sum of d_i for i < n
};

struct DegreeProfile {
    std::vector<std::int64_t> degrees;
    std::vector<BigPosition> big_positions;
    /// Every observed big position equals (n_k, 2p^k - 1, s_k).
    bool matches_closed_forms = true;
};

inline DegreeProfile profile(const std::vector<std::int64_t>& degrees, std::uint64_t p) {
    DegreeProfile out{degrees, {}, true};
    std::int64_t running = 0;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        const std::int64_t d = degrees[i];
        if (d < 1) throw std::invalid_argument("degrees must be >= 1");
        if (d > 1) {
            const auto k = static_cast<unsigned>(out.big_positions.size() + 1);
            out.big_positions.push_back({k, i + 1, d, running});
            const auto cf = closed_forms(p, k);
            if (static_cast<std::int64_t>(i + 1) != cf.n_k || d != 2 * static_cast<std::int64_t>(ipow(p, k)) - 1 ||
                running != cf.s_k)
                out.matches_closed_forms = false;
        }
        running += d;
    }
    return out;
}

inline DegreeProfile profile(const PartialQuotients& pqs, std::uint64_t p) { return profile(pqs.degrees(), p); }

struct IrrationalityReport {
    Rational nu;
    std::int64_t liouville_upper; // p + 1, the degree of the pattern equation
    /// (2p^k - 1)/s_k for k = 1..K; increases toward nu - 2.
    std::vector<Rational> ratio_samples;
    /// max d_{n+1} / (d_1 + ... + d_n) over observed big positions. Finite
    /// data only bounds the limsup from below.
    std::optional<Rational> empirical_limsup;
};

inline IrrationalityReport irrationality_report(std::uint64_t p, unsigned k_max,
                                                const DegreeProfile* observed = nullptr) {
    IrrationalityReport r{nu(p), static_cast<std::int64_t>(p) + 1, {}, std::nullopt};
    for (unsigned k = 1; k <= k_max; ++k)
        r.ratio_samples.emplace_back(2 * static_cast<std::int64_t>(ipow(p, k)) - 1, closed_forms(p, k).s_k);
    if (observed != nullptr) {
        for (const auto& b : observed->big_positions) {
            if (b.sum_before == 0) continue;
            Rational q(b.degree, b.sum_before);
            if (!r.empirical_limsup || q > *r.empirical_limsup) r.empirical_limsup = q;
        }
    }
    return r;
}

} // namespace hypercf

#endif
