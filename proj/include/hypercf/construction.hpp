#ifndef HYPERCF_CONSTRUCTION_HPP
#define HYPERCF_CONSTRUCTION_HPP

#include <cstddef>
#include <cstdint>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cf.hpp"
#include "field.hpp"
#include "mkaouar.hpp"
#include "poly.hpp"
#include "series.hpp"

namespace hypercf {

/// (u1, u2, u3) in (F_p^*)^3.
struct Triple {
    FieldElement u1, u2, u3;

    Triple(FieldElement a, FieldElement b, FieldElement c) : u1(a), u2(b), u3(c) {
        if (a.field() != b.field() || a.field() != c.field()) throw std::invalid_argument("field mismatch");
        if (a.is_zero() || b.is_zero() || c.is_zero()) throw std::invalid_argument("u1, u2, u3 must be nonzero mod p");
    }
    Triple(PrimeField f, std::int64_t a, std::int64_t b, std::int64_t c)
        : Triple(FieldElement(f, a), FieldElement(f, b), FieldElement(f, c)) {}
};

/// F = (T^2 + 4)^((p-1)/2) and R = T^p - T F together with the triple.
struct PatternSpec {
    PrimeField field;
    Triple u;
    Poly F;
    Poly R;
};

/// T^2 + 4 raised to (p - 1)/2.
inline Poly pattern_F(PrimeField f) { return pow(Poly::from_ints(f, {4, 0, 1}), (f.modulus() - 1) / 2); }

inline PatternSpec build_spec(PrimeField f, const Triple& u) {
    if (u.u1.field() != f) throw std::invalid_argument("field mismatch");
    Poly F = pattern_F(f);
    Poly Tp = Poly::monomial(f, 1, f.modulus());
    Poly R = Tp - Poly::monomial(f, 1, 1) * F;
    if (divmod(Tp, F).second != R) throw std::logic_error("R is not the remainder of T^p by F");
    if (F.degree() != static_cast<std::int64_t>(f.modulus()) - 1) throw std::logic_error("deg F != p - 1");
    return {f, u, std::move(F), std::move(R)};
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

/// P_0 = T, P_{n+1} = F P_n^p; deg P_n = 2 p^n - 1 is checked.
inline Poly build_Pn(const PatternSpec& spec, unsigned n) {
    Poly P = Poly::monomial(spec.field, 1, 1);
    for (unsigned i = 0; i < n; ++i) P = spec.F * P.frobenius();
    const auto expected = static_cast<std::int64_t>(2 * ipow(spec.field.modulus(), n) - 1);
    if (P.degree() != expected) throw std::logic_error("deg P_n != 2 p^n - 1");
    return P;
}

/// First `count` quotients of C_0, C_1, C_2, ...
///
/// Even blocks:  u1 T, u2 P_n, u3 T, then ((2u3)^-1 T, 2u3 T) repeated (p^n - 1)/2 times.
/// Odd blocks:   (4u3)^-1 T, 4u1u2u3 P_n, (4u1)^-1 T, then (2u1 T, (2u1)^-1 T) repeated.
inline PartialQuotients pattern(const PatternSpec& spec, std::size_t count) {
    if (count == 0) throw std::invalid_argument("pattern length must be >= 1");
    const PrimeField f = spec.field;
    const FieldElement u1 = spec.u.u1, u2 = spec.u.u2, u3 = spec.u.u3;
    const FieldElement two(f, 2), four(f, 4);
    const std::uint64_t p = f.modulus();

    PartialQuotients out;
    auto room = [&] { return out.size() < count; };
    for (unsigned n = 0; room(); ++n) {
        const bool even = n % 2 == 0;
        const std::uint64_t pn = ipow(p, n);
        if ((pn - 1) % 2 != 0) throw std::logic_error("block exponent (p^n - 1)/2 is not an integer");
        const std::uint64_t reps = (pn - 1) / 2;

        const FieldElement a1 = even ? u1 : (four * u3).inverse();
        const FieldElement a2 = even ? u2 : four * u1 * u2 * u3;
        const FieldElement a3 = even ? u3 : (four * u1).inverse();
        const FieldElement b1 = even ? (two * u3).inverse() : two * u1;
        const FieldElement b2 = even ? two * u3 : (two * u1).inverse();

        out.push_back(Poly::linear(a1));
        if (!room()) break;
        out.push_back(a2 * build_Pn(spec, n));
        if (!room()) break;
        out.push_back(Poly::linear(a3));
        for (std::uint64_t r = 0; r < reps && room(); ++r) {
            out.push_back(Poly::linear(b1));
            if (room()) out.push_back(Poly::linear(b2));
        }
    }
    return out;
}

namespace detail {

// y_N a^{p+1} - x_N a^p + (k y_{N-1} F - c y_N R) a + c x_N R - k x_{N-1} F,
// from a = (x_N t + x_{N-1})/(y_N t + y_{N-1}) and a^p = k F t + c R.
inline BiPoly hyperquadratic(const PartialQuotients& head, const Poly& F, const Poly& R, FieldElement k,
                             FieldElement c) {
    const PrimeField f = F.field();
    auto conv = continuants(head);
    const Poly& x_top = conv.back().x;
    const Poly& y_top = conv.back().y;
    const Poly x_prev = conv.size() > 1 ? conv[conv.size() - 2].x : Poly::constant(f, 1);
    const Poly y_prev = conv.size() > 1 ? conv[conv.size() - 2].y : Poly(f);
    const std::size_t p = f.modulus();
    std::vector<Poly> coeffs(p + 2, Poly(f));
    coeffs[p + 1] = y_top;
    coeffs[p] = -x_top;
    coeffs[1] = k * (y_prev * F) - c * (y_top * R);
    coeffs[0] = c * (x_top * R) - k * (x_prev * F);
    return BiPoly(std::move(coeffs));
}

} // namespace detail

/// pattern_equation with an arbitrary polynomial in place of R (e.g. T^p).
inline BiPoly pattern_equation(const PatternSpec& spec, const Poly& r_override) {
    const PartialQuotients head({Poly::linear(spec.u.u1), Poly::linear(spec.u.u2), Poly::linear(spec.u.u3)});
    const FieldElement four(spec.field, 4);
    return detail::hyperquadratic(head, spec.F, r_override, four * spec.u.u1 * spec.u.u3, spec.u.u1);
}

/// y3 x^{p+1} - x3 x^p + (4u1u3 y2 F - u1 y3 R) x + u1 x3 R - 4u1u3 x2 F,
/// with x_n, y_n the continuants of [u1 T, u2 T, u3 T].
inline BiPoly pattern_equation(const PatternSpec& spec) { return pattern_equation(spec, spec.R); }

/// u2 = -u1 (1 + 2 u1)^-1 for the Mills-Robbins family.
inline FieldElement mills_robbins_u2(FieldElement u1) {
    const PrimeField f = u1.field();
    const FieldElement one(f, 1), two(f, 2);
    if (u1.is_zero() || (one + two * u1).is_zero()) throw std::invalid_argument("u1 must satisfy u1 != 0 and u1 != -1/2");
    return -u1 * (one + two * u1).inverse();
}

/// alpha = [u1 T, u2 T, alpha_3] with alpha^p = F alpha_3 - R/2; alpha_3 is
/// eliminated through the n = 2 convergents, giving
/// y2 x^{p+1} - x2 x^p + (y1 F + y2 R/2) x - x2 R/2 - x1 F.
inline BiPoly mills_robbins_equation(PrimeField f, FieldElement u1) {
    if (f.modulus() < 5) throw std::invalid_argument("the Mills-Robbins family requires p >= 5");
    if (u1.field() != f) throw std::invalid_argument("field mismatch");
    const FieldElement u2 = mills_robbins_u2(u1);
    const Poly F = pattern_F(f);
    const Poly R = Poly::monomial(f, 1, f.modulus()) - Poly::monomial(f, 1, 1) * F;
    const PartialQuotients head({Poly::linear(u1), Poly::linear(u2)});
    return detail::hyperquadratic(head, F, R, FieldElement(f, 1), -FieldElement(f, 2).inverse());
}

/// f_0 = 1, f_1 = T, f_n = T f_{n-1} + f_{n-2}.
inline std::vector<Poly> fibonacci_polys(PrimeField f, std::size_t up_to) {
    std::vector<Poly> out{Poly::constant(f, 1)};
    if (up_to >= 1) out.push_back(Poly::monomial(f, 1, 1));
    const Poly T = Poly::monomial(f, 1, 1);
    for (std::size_t n = 2; n <= up_to; ++n) out.push_back(T * out[n - 1] + out[n - 2]);
    return out;
}

inline Poly fibonacci_poly(PrimeField f, std::size_t n) { return fibonacci_polys(f, n).back(); }

struct IdentityReport {
    std::uint64_t p;
    bool F_is_f_p_minus_1;          // F = f_{p-1}
    bool f_p_plus_f_p_minus_2;      // f_p + f_{p-2} = T^p
    bool R_is_2_f_p_minus_2;        // R = 2 f_{p-2}
    std::size_t cf_bound;
    bool fibonacci_quotients_all_T; // rational_to_cf(f_n, f_{n-1}) = [T]*n for n <= cf_bound

    [[nodiscard]] bool all() const noexcept {
        return F_is_f_p_minus_1 && f_p_plus_f_p_minus_2 && R_is_2_f_p_minus_2 && fibonacci_quotients_all_T;
    }
};

inline IdentityReport check_identities(PrimeField f, std::size_t cf_bound = 12) {
    const std::size_t p = f.modulus();
    const auto fib = fibonacci_polys(f, std::max(p, cf_bound));
    const Poly F = pattern_F(f);
    const Poly Tp = Poly::monomial(f, 1, p);
    const Poly T = Poly::monomial(f, 1, 1);
    const Poly R = Tp - T * F;

    IdentityReport r{p, fib[p - 1] == F, fib[p] + fib[p - 2] == Tp, R == FieldElement(f, 2) * fib[p - 2], cf_bound,
                     true};
    for (std::size_t n = 1; n <= cf_bound; ++n) {
        auto cf = rational_to_cf(fib[n], fib[n - 1]);
        if (cf != PartialQuotients(std::vector<Poly>(n, T))) r.fibonacci_quotients_all_T = false;
    }
    return r;
}

/// Outcome of checking a series residual: zero down to `floor`, or the
/// exponent of the first nonzero known term.
struct ResidualCheck {
    bool zero;
    std::int64_t floor;
    std::optional<std::int64_t> first_nonzero;
};

inline ResidualCheck check_residual(const LaurentSeries& r) {
    if (r.is_zero()) return {true, r.valid_order(), std::nullopt};
    return {false, r.valid_order(), r.top_degree()};
}

struct PatternVerification {
    PartialQuotients pattern;
    PartialQuotients engine;
    /// 1-based index of the first disagreement (engine shorter counts as one).
    std::optional<std::size_t> first_mismatch;
    /// Set when the engine aborted; it then holds the abort diagnostic.
    std::optional<std::string> engine_error;
    /// alpha^p - 4u1u3 F alpha_4 - u1 R from the pattern series (needs m >= 4).
    std::optional<ResidualCheck> tail_relation;
    /// pattern_equation evaluated at the pattern series.
    std::optional<ResidualCheck> root_residual;

    [[nodiscard]] bool verified() const noexcept {
        return !first_mismatch && !engine_error && (!tail_relation || tail_relation->zero) && (!root_residual || root_residual->zero);
    }
};

/// Runs the block construction and the extraction engine side by side on m
/// quotients, then checks both algebraic relations on the pattern series.
///
/// `order` is the truncation exponent of the alpha series; by default the
/// deepest exponent the m quotients determine. Mismatches are reported, not
/// thrown; an `order` the quotients cannot support raises InsufficientQuotients.
inline PatternVerification verify_pattern(const PatternSpec& spec, std::size_t m,
                                          std::optional<std::int64_t> order = std::nullopt) {
    const BiPoly eq = pattern_equation(spec);
    auto engine_task = std::async(std::launch::async, [&] { return expand_detailed(eq, m); });
    PatternVerification v{pattern(spec, m), {}, std::nullopt, std::nullopt, std::nullopt, std::nullopt};
    try {
        v.engine = engine_task.get().quotients;
    } catch (const ExpansionAborted& e) {
        v.engine = e.emitted();
        v.engine_error = e.what();
    }
    for (std::size_t i = 1; i <= m; ++i) {
        if (i > v.engine.size() || v.engine.at(i) != v.pattern.at(i)) {
            v.first_mismatch = i;
            break;
        }
    }

    const std::int64_t floor = cf_series_floor(v.pattern);
    const LaurentSeries alpha = cf_to_series(v.pattern, order.value_or(floor));
    v.root_residual = check_residual(eval_at_series(eq, alpha));
    if (m >= 4) {
        const PartialQuotients tail = v.pattern.tail(4);
        const LaurentSeries alpha4 = cf_to_series(tail, cf_series_floor(tail));
        const FieldElement k = FieldElement(spec.field, 4) * spec.u.u1 * spec.u.u3;
        const LaurentSeries lhs = alpha.frobenius();
        const LaurentSeries rhs = (k * spec.F) * alpha4 + spec.u.u1 * spec.R;
        v.tail_relation = check_residual(lhs - rhs);
    }
    return v;
}

} // namespace hypercf

#endif
