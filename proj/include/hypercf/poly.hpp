#ifndef HYPERCF_POLY_HPP
#define HYPERCF_POLY_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"

namespace hypercf {

namespace detail {

// Below this operand length multiplication is schoolbook.
inline constexpr std::size_t karatsuba_threshold = 32;

using coeff_span = std::span<const residue>;

inline void trim(std::vector<residue>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

inline std::vector<residue> schoolbook(PrimeField f, coeff_span a, coeff_span b) {
    if (a.empty() || b.empty()) return {};
    const std::uint64_t p = f.modulus();
    // number of p^2-sized products a uint64 accumulator absorbs without overflow
    const std::uint64_t safe_rows = std::numeric_limits<std::uint64_t>::max() / ((p - 1) * (p - 1)) - 1;
    if (a.size() < b.size()) std::swap(a, b);
    std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
    std::uint64_t rows = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
        const std::uint64_t bj = b[j];
        if (bj != 0) {
            std::uint64_t* out = acc.data() + j;
            for (std::size_t i = 0; i < a.size(); ++i) out[i] += bj * a[i];
        }
        if (++rows == safe_rows) {
            for (auto& x : acc) x %= p;
            rows = 0;
        }
    }
    std::vector<residue> r(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<residue>(acc[i] % p);
    return r;
}

inline void add_at(PrimeField f, std::vector<residue>& dst, coeff_span src, std::size_t offset) {
    if (dst.size() < offset + src.size()) dst.resize(offset + src.size(), 0);
    for (std::size_t i = 0; i < src.size(); ++i) dst[offset + i] = f.add(dst[offset + i], src[i]);
}

inline void sub_at(PrimeField f, std::vector<residue>& dst, coeff_span src, std::size_t offset) {
    if (dst.size() < offset + src.size()) dst.resize(offset + src.size(), 0);
    for (std::size_t i = 0; i < src.size(); ++i) dst[offset + i] = f.sub(dst[offset + i], src[i]);
}

inline std::vector<residue> multiply(PrimeField f, coeff_span a, coeff_span b,
                                     std::size_t threshold = karatsuba_threshold) {
    if (a.empty() || b.empty()) return {};
    if (a.size() < b.size()) std::swap(a, b);
    const std::size_t na = a.size(), nb = b.size();
    if (nb < threshold) return schoolbook(f, a, b);

    std::vector<residue> out(na + nb - 1, 0);
    if (na >= 2 * nb) {
        // unbalanced: cut the long operand into nb-sized slices
        for (std::size_t off = 0; off < na; off += nb) {
            auto slice = a.subspan(off, std::min(nb, na - off));
            add_at(f, out, multiply(f, slice, b, threshold), off);
        }
        return out;
    }

    const std::size_t m = (na + 1) / 2;
    auto a0 = a.first(m), a1 = a.subspan(m);
    auto b0 = b.first(std::min(m, nb)), b1 = nb > m ? b.subspan(m) : coeff_span{};

    auto z0 = multiply(f, a0, b0, threshold);
    auto z2 = multiply(f, a1, b1, threshold);

    std::vector<residue> sa(a0.begin(), a0.end()), sb(b0.begin(), b0.end());
    add_at(f, sa, a1, 0);
    add_at(f, sb, b1, 0);
    auto z1 = multiply(f, sa, sb, threshold);
    sub_at(f, z1, z0, 0);
    sub_at(f, z1, z2, 0);

    add_at(f, out, z0, 0);
    add_at(f, out, z1, m);
    add_at(f, out, z2, 2 * m);
    out.resize(na + nb - 1);
    return out;
}

} // namespace detail

/// Dense univariate polynomial in F_p[T], coefficients stored in ascending order.
///
/// The representation is canonical: there is never a trailing zero
/// coefficient, and the zero polynomial has no coefficients at all.
class Poly {
public:
    /// degree() of the zero polynomial.
    static constexpr std::int64_t minus_infinity = std::numeric_limits<std::int64_t>::min();

    explicit Poly(PrimeField f) : field_(f) {}

    Poly(PrimeField f, std::vector<residue> ascending) : field_(f), c_(std::move(ascending)) {
        for (auto& x : c_) x %= f.modulus();
        detail::trim(c_);
    }

    /// Ascending integer coefficients, reduced mod p: from_ints(f, {1, 0, 1}) is T^2 + 1.
    static Poly from_ints(PrimeField f, std::initializer_list<std::int64_t> ascending) {
        std::vector<residue> c;
        c.reserve(ascending.size());
        for (auto x : ascending) c.push_back(f.reduce(x));
        return {f, std::move(c)};
    }

    static Poly constant(PrimeField f, std::int64_t c) { return from_ints(f, {c}); }
    static Poly constant(FieldElement c) { return constant(c.field(), c.value()); }

    static Poly monomial(PrimeField f, std::int64_t c, std::size_t k) {
        std::vector<residue> v(k + 1, 0);
        v[k] = f.reduce(c);
        return {f, std::move(v)};
    }

    /// c*T for a field element c; the shape of almost every partial quotient here.
    static Poly linear(FieldElement c) { return monomial(c.field(), c.value(), 1); }

    [[nodiscard]] PrimeField field() const noexcept { return field_; }
    [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
    [[nodiscard]] std::int64_t degree() const noexcept {
        return c_.empty() ? minus_infinity : static_cast<std::int64_t>(c_.size()) - 1;
    }
    [[nodiscard]] std::span<const residue> coeffs() const noexcept { return c_; }
    [[nodiscard]] residue coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
    [[nodiscard]] residue leading_coefficient() const noexcept { return c_.empty() ? 0 : c_.back(); }

    /// this * T^k
    [[nodiscard]] Poly shifted(std::size_t k) const {
        if (is_zero()) return *this;
        std::vector<residue> v(k, 0);
        v.insert(v.end(), c_.begin(), c_.end());
        return {field_, std::move(v)};
    }

    [[nodiscard]] Poly scaled(residue s) const {
        std::vector<residue> v(c_);
        for (auto& x : v) x = field_.mul(x, s);
        return {field_, std::move(v)};
    }

    /// a(T)^p = a(T^p) over F_p.
    [[nodiscard]] Poly frobenius() const {
        if (is_zero()) return *this;
        const std::size_t p = field_.modulus();
        std::vector<residue> v((c_.size() - 1) * p + 1, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) v[i * p] = c_[i];
        return {field_, std::move(v)};
    }

    [[nodiscard]] residue eval(residue t) const noexcept {
        residue acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = field_.add(field_.mul(acc, t), *it);
        return acc;
    }

    Poly& operator+=(const Poly& o) {
        check(o);
        detail::add_at(field_, c_, o.c_, 0);
        detail::trim(c_);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check(o);
        detail::sub_at(field_, c_, o.c_, 0);
        detail::trim(c_);
        return *this;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(const Poly& a) { return a.scaled(a.field_.neg(1)); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check(b);
        return {a.field_, detail::multiply(a.field_, a.c_, b.c_)};
    }
    friend Poly operator*(FieldElement s, const Poly& a) {
        if (s.field() != a.field_) throw std::invalid_argument("field mismatch");
        return a.scaled(s.value());
    }

    friend bool operator==(const Poly&, const Poly&) = default;

    /// Rendering in descending powers: "6*t^13 + 2*t^11 + t^9 + 6*t^7".
    [[nodiscard]] std::string to_string(std::string_view var = "t") const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t k = c_.size(); k-- > 0;) {
            const residue c = c_[k];
            if (c == 0) continue;
            if (!out.empty()) out += " + ";
            if (k == 0) {
                out += std::to_string(c);
                continue;
            }
            if (c != 1) out += std::to_string(c) + "*";
            out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const Poly& a) { return os << a.to_string(); }

private:
    void check(const Poly& o) const {
        if (o.field_ != field_) throw std::invalid_argument("field mismatch");
    }

    PrimeField field_;
    std::vector<residue> c_;
};

/// Euclidean division: a = q*b + r with deg r < deg b. Throws std::domain_error if b is zero.
inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const PrimeField f = a.field();
    if (a.degree() < b.degree()) return {Poly(f), a};

    const auto db = static_cast<std::size_t>(b.degree());
    const auto bc = b.coeffs();
    std::vector<residue> r(a.coeffs().begin(), a.coeffs().end());
    std::vector<residue> q(r.size() - db, 0);
    const residue lc_inv = f.inv(b.leading_coefficient());
    for (std::size_t k = q.size(); k-- > 0;) {
        const residue c = f.mul(r[k + db], lc_inv);
        q[k] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) r[k + j] = f.sub(r[k + j], f.mul(c, bc[j]));
    }
    r.resize(db);
    return {Poly(f, std::move(q)), Poly(f, std::move(r))};
}

/// Floor division, the `//` of the extraction step.
inline Poly floordiv(const Poly& a, const Poly& b) { return divmod(a, b).first; }

/// a^k by binary powering; multiples of p go through the Frobenius map.
inline Poly pow(const Poly& a, std::uint64_t k) {
    const PrimeField f = a.field();
    const std::uint64_t p = f.modulus();
    if (k == 0) return Poly::constant(f, 1);
    if (k % p == 0) return pow(a, k / p).frobenius();
    Poly acc = Poly::constant(f, 1), base = a;
    while (true) {
        if (k & 1U) acc *= base;
        k >>= 1U;
        if (k == 0) break;
        base *= base;
    }
    return acc;
}

} // namespace hypercf

#endif
