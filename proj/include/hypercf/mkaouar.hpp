#ifndef HYPERCF_MKAOUAR_HPP
#define HYPERCF_MKAOUAR_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cf.hpp"
#include "poly.hpp"
#include "series.hpp"

namespace hypercf {

/// Polynomial in an unknown x whose coefficients lie in F_p[T].
/// coeffs()[i] is the coefficient of x^i.
class BiPoly {
public:
    explicit BiPoly(std::vector<Poly> coeffs_x) : c_(std::move(coeffs_x)) {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
        if (c_.size() < 2) throw std::invalid_argument("equation must have degree >= 1 in x");
        for (const auto& a : c_)
            if (a.field() != c_.front().field()) throw std::invalid_argument("field mismatch");
    }

    [[nodiscard]] PrimeField field() const noexcept { return c_.front().field(); }
    [[nodiscard]] std::size_t degree_x() const noexcept { return c_.size() - 1; }
    [[nodiscard]] const Poly& coeff(std::size_t i) const { return c_.at(i); }
    [[nodiscard]] const std::vector<Poly>& coeffs() const noexcept { return c_; }

    [[nodiscard]] std::int64_t max_coeff_degree() const noexcept {
        std::int64_t d = Poly::minus_infinity;
        for (const auto& a : c_) d = std::max(d, a.degree());
        return d;
    }

    /// P(t) for t in F_p[T].
    [[nodiscard]] Poly eval(const Poly& t) const {
        Poly acc = c_.back();
        for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * t + c_[i];
        return acc;
    }

    /// P(x + b), by n passes of synthetic division.
    [[nodiscard]] BiPoly taylor_shift(const Poly& b) const {
        std::vector<Poly> c(c_);
        const std::size_t n = degree_x();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = n; j-- > i;) c[j] += b * c[j + 1];
        return BiPoly(std::move(c));
    }

    /// x^n P(1/x). Requires a nonzero constant term so the degree is kept.
    [[nodiscard]] BiPoly reversed() const {
        if (c_.front().is_zero()) throw std::invalid_argument("reverse of an equation with zero constant term");
        return BiPoly(std::vector<Poly>(c_.rbegin(), c_.rend()));
    }

    friend bool operator==(const BiPoly&, const BiPoly&) = default;

private:
    std::vector<Poly> c_;
};

/// The equation has the polynomial `value` as an exact root; the expansion ends there.
struct RationalRoot {
    Poly value;
};

/// One extracted partial quotient and the equation satisfied by the next tail.
struct ExtractionStep {
    Poly bar;
    BiPoly next;
};

/// Raised when the extraction produces a quotient of degree < 1.
class ExpansionAborted : public std::runtime_error {
public:
    ExpansionAborted(const std::string& what, PartialQuotients emitted)
        : std::runtime_error(what), emitted_(std::move(emitted)) {}

    /// Quotients emitted before the failing step; all of them are sound.
    [[nodiscard]] const PartialQuotients& emitted() const noexcept { return emitted_; }
    [[nodiscard]] std::size_t emitted_count() const noexcept { return emitted_.size(); }

private:
    PartialQuotients emitted_;
};

namespace detail {

inline Poly extract_bar(const BiPoly& P) {
    const std::size_t n = P.degree_x();
    return -floordiv(P.coeff(n - 1), P.coeff(n));
}

inline void require_admissible(const Poly& bar, const PartialQuotients& emitted) {
    if (bar.degree() < 1)
        throw ExpansionAborted("no admissible partial quotient at step " + std::to_string(emitted.size() + 1) +
                                   " (extracted " + bar.to_string() + ")",
                               emitted);
}

} // namespace detail

/// One extraction step: bar = -(c_{n-1} // c_n); either bar is a root of P,
/// or the next equation is the x-reversal of P(x + bar).
inline std::variant<ExtractionStep, RationalRoot> next_step(const BiPoly& P) {
    Poly bar = detail::extract_bar(P);
    detail::require_admissible(bar, {});
    if (P.eval(bar).is_zero()) return RationalRoot{std::move(bar)};
    BiPoly next = P.taylor_shift(bar).reversed();
    return ExtractionStep{std::move(bar), std::move(next)};
}

struct ExpansionStats {
    std::size_t steps = 0;
    /// Largest T-degree of any equation coefficient seen during the run.
    std::int64_t max_coeff_degree = 0;
    /// A-priori cap: deg bound of the input plus degree_x * (sum of emitted degrees).
    std::int64_t coeff_degree_bound = 0;
};

struct Expansion {
    PartialQuotients quotients;
    bool terminated_by_rational_root = false;
    ExpansionStats stats;
};

/// First m partial quotients of the power-series root of P.
///
/// Every shift P(x + b) raises coefficient T-degrees by at most
/// degree_x * deg b, so the engine checks the running maximum against that
/// cap after each step. The equation after the m-th quotient is never formed.
inline Expansion expand_detailed(BiPoly P, std::size_t m) {
    if (m == 0) throw std::invalid_argument("number of partial quotients must be >= 1");
    Expansion out;
    const auto n = static_cast<std::int64_t>(P.degree_x());
    out.stats.max_coeff_degree = P.max_coeff_degree();
    out.stats.coeff_degree_bound = P.max_coeff_degree();
    for (std::size_t i = 0; i < m; ++i) {
        Poly bar = detail::extract_bar(P);
        detail::require_admissible(bar, out.quotients);
        out.stats.steps = i + 1;
        if (P.eval(bar).is_zero()) {
            out.quotients.push_back(std::move(bar));
            out.terminated_by_rational_root = true;
            break;
        }
        out.stats.coeff_degree_bound += n * bar.degree();
        if (i + 1 < m) {
            P = P.taylor_shift(bar).reversed();
            out.stats.max_coeff_degree = std::max(out.stats.max_coeff_degree, P.max_coeff_degree());
            if (out.stats.max_coeff_degree > out.stats.coeff_degree_bound)
                throw std::logic_error("equation coefficient degree exceeded its a-priori bound");
        }
        out.quotients.push_back(std::move(bar));
    }
    return out;
}

inline PartialQuotients expand(const BiPoly& P, std::size_t m) { return expand_detailed(P, m).quotients; }

/// P(s) by Horner's rule, with validity propagated through series arithmetic.
/// s is a root to order K when the result is zero to its valid order K.
inline LaurentSeries eval_at_series(const BiPoly& P, const LaurentSeries& s) {
    const auto& c = P.coeffs();
    LaurentSeries acc = c.back() * s + c[c.size() - 2];
    for (std::size_t i = c.size() - 2; i-- > 0;) acc = acc * s + c[i];
    return acc;
}

} // namespace hypercf

#endif
