#ifndef HYPERCF_SERIES_HPP
#define HYPERCF_SERIES_HPP

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"
#include "poly.hpp"

namespace hypercf {

/// A formal Laurent series in 1/T over F_p, known down to a watermark.
///
/// valid_order() is the lowest exponent whose coefficient is known: every
/// coefficient of T^k with k >= valid_order() is exact, nothing below it is.
/// Coefficients are stored densely in descending order from top_degree()
/// down to valid_order(). A series with no nonzero known coefficient is
/// "zero to its valid order" and has no stored coefficients.
///
/// Precision propagation, writing V for valid orders and D for top degrees:
///   a +- b   V = max(Va, Vb)
///   a * b    V = max(Da + Vb, Db + Va)      (Va + Vb - 1 if both are zero)
///   a / b    V = max(Va - Db, Da - 2 Db + Vb)  (Va - Db if a is zero)
///   a^p      V = p Va - p + 1
///   poly * a V = Va + deg(poly); poly + a keeps Va
/// Each rule bounds the degree of the unknown tail contributions, so no
/// coefficient at or above V depends on a truncated input term.
class LaurentSeries {
public:
    /// Zero known down to `order`.
    static LaurentSeries zero(PrimeField f, std::int64_t order) { return LaurentSeries(f, 0, {}, order); }

    static LaurentSeries from_poly(const Poly& a, std::int64_t order) {
        const PrimeField f = a.field();
        if (a.is_zero() || a.degree() < order) return zero(f, order);
        std::vector<residue> d;
        for (std::int64_t k = a.degree(); k >= order; --k) d.push_back(k >= 0 ? a.coeff(static_cast<std::size_t>(k)) : 0);
        return LaurentSeries(f, a.degree(), std::move(d), order);
    }

    /// num/den expanded in descending powers, exact for every exponent >= order.
    static LaurentSeries from_rational(const Poly& num, const Poly& den, std::int64_t order) {
        if (den.is_zero()) throw std::domain_error("series of a rational with zero denominator");
        if (num.is_zero()) return zero(num.field(), order);
        return divide(num.field(), descending(num), num.degree(), descending(den), den.degree(), order);
    }

    [[nodiscard]] PrimeField field() const noexcept { return field_; }
    [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
    /// Degree of the leading nonzero term; Poly::minus_infinity when zero to valid order.
    [[nodiscard]] std::int64_t top_degree() const noexcept { return is_zero() ? Poly::minus_infinity : top_; }
    [[nodiscard]] std::int64_t valid_order() const noexcept { return valid_; }
    [[nodiscard]] const std::vector<residue>& descending_coeffs() const noexcept { return c_; }

    [[nodiscard]] residue coefficient(std::int64_t k) const {
        if (k < valid_) throw std::out_of_range("coefficient below the valid order");
        if (is_zero() || k > top_) return 0;
        return c_[static_cast<std::size_t>(top_ - k)];
    }

    /// Same series known only down to max(order, valid_order()).
    [[nodiscard]] LaurentSeries truncated(std::int64_t order) const {
        if (order <= valid_) return *this;
        if (is_zero() || order > top_) return zero(field_, order);
        std::vector<residue> d(c_.begin(), c_.begin() + (top_ - order + 1));
        return LaurentSeries(field_, top_, std::move(d), order);
    }

    /// True when both series agree on every exponent both of them know.
    [[nodiscard]] bool agrees_with(const LaurentSeries& o) const {
        const std::int64_t floor = std::max(valid_, o.valid_);
        const std::int64_t hi = std::max(is_zero() ? floor : top_, o.is_zero() ? floor : o.top_);
        for (std::int64_t k = hi; k >= floor; --k)
            if (coefficient(k) != o.coefficient(k)) return false;
        return true;
    }

    [[nodiscard]] LaurentSeries frobenius() const {
        const std::int64_t p = field_.modulus();
        const std::int64_t v = p * valid_ - p + 1;
        if (is_zero()) return zero(field_, v);
        const std::int64_t top = p * top_;
        std::vector<residue> d(static_cast<std::size_t>(top - v + 1), 0);
        for (std::size_t i = 0; i < c_.size(); ++i) d[i * static_cast<std::size_t>(p)] = c_[i];
        return LaurentSeries(field_, top, std::move(d), v);
    }

    friend LaurentSeries operator-(const LaurentSeries& a) {
        std::vector<residue> d(a.c_);
        for (auto& x : d) x = a.field_.neg(x);
        return LaurentSeries(a.field_, a.top_, std::move(d), a.valid_);
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) { return combine(a, b, false); }
    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return combine(a, b, true); }

    friend LaurentSeries operator+(const LaurentSeries& a, const Poly& b) {
        return a + from_poly(b, a.valid_);
    }
    friend LaurentSeries operator-(const LaurentSeries& a, const Poly& b) {
        return a - from_poly(b, a.valid_);
    }

    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        a.check(b);
        const PrimeField f = a.field_;
        if (a.is_zero() && b.is_zero()) return zero(f, a.valid_ + b.valid_ - 1);
        if (a.is_zero()) return zero(f, a.valid_ + b.top_);
        if (b.is_zero()) return zero(f, b.valid_ + a.top_);
        const std::int64_t v = std::max(a.top_ + b.valid_, b.top_ + a.valid_);
        const std::int64_t top = a.top_ + b.top_;
        if (top < v) return zero(f, v);
        // terms of a below v - b.top_ (and symmetrically) only reach exponents below v
        auto a_used = a.truncated(v - b.top_), b_used = b.truncated(v - a.top_);
        return product(f, a_used, b_used, v);
    }

    friend LaurentSeries operator*(const Poly& c, const LaurentSeries& a) {
        if (c.field() != a.field_) throw std::invalid_argument("field mismatch");
        if (c.is_zero()) return zero(a.field_, a.valid_);
        const std::int64_t v = a.valid_ + c.degree();
        if (a.is_zero()) return zero(a.field_, v);
        return product(a.field_, from_poly(c, v - a.top_), a, v);
    }

    friend LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) {
        a.check(b);
        if (b.is_zero()) throw std::domain_error("series division by a series that is zero to its valid order");
        if (a.is_zero()) return zero(a.field_, a.valid_ - b.top_);
        const std::int64_t v = std::max(a.valid_ - b.top_, a.top_ - 2 * b.top_ + b.valid_);
        return divide(a.field_, a.c_, a.top_, b.c_, b.top_, v);
    }

    /// Debug rendering in descending powers, with the unknown tail marked.
    [[nodiscard]] std::string to_string(std::string_view var = "T") const {
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            const std::int64_t k = top_ - static_cast<std::int64_t>(i);
            if (!out.empty()) out += " + ";
            if (k == 0) {
                out += std::to_string(c_[i]);
                continue;
            }
            if (c_[i] != 1) out += std::to_string(c_[i]) + "*";
            out += var;
            if (k != 1) out += "^" + std::to_string(k);
        }
        if (out.empty()) out = "0";
        return out + " + O(" + std::string(var) + "^" + std::to_string(valid_ - 1) + ")";
    }

    friend std::ostream& operator<<(std::ostream& os, const LaurentSeries& s) { return os << s.to_string(); }

private:
    LaurentSeries(PrimeField f, std::int64_t top, std::vector<residue> desc, std::int64_t valid)
        : field_(f), top_(top), c_(std::move(desc)), valid_(valid) {
        normalize();
    }

    void normalize() {
        std::size_t lead = 0;
        while (lead < c_.size() && c_[lead] == 0) ++lead;
        if (lead == c_.size()) {
            c_.clear();
            top_ = valid_;
            return;
        }
        c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
        top_ -= static_cast<std::int64_t>(lead);
    }

    void check(const LaurentSeries& o) const {
        if (o.field_ != field_) throw std::invalid_argument("field mismatch");
    }

    static std::vector<residue> descending(const Poly& a) {
        auto c = a.coeffs();
        return {c.rbegin(), c.rend()};
    }

    static LaurentSeries combine(const LaurentSeries& a, const LaurentSeries& b, bool subtract) {
        a.check(b);
        const PrimeField f = a.field_;
        const std::int64_t v = std::max(a.valid_, b.valid_);
        std::int64_t top = v;
        if (!a.is_zero()) top = std::max(top, a.top_);
        if (!b.is_zero()) top = std::max(top, b.top_);
        std::vector<residue> d(static_cast<std::size_t>(top - v + 1), 0);
        for (std::int64_t k = top; k >= v; --k) {
            const residue x = a.coefficient(k), y = b.coefficient(k);
            d[static_cast<std::size_t>(top - k)] = subtract ? f.sub(x, y) : f.add(x, y);
        }
        return LaurentSeries(f, top, std::move(d), v);
    }

    // Full product of the stored coefficients, kept down to exponent v.
    static LaurentSeries product(PrimeField f, const LaurentSeries& a, const LaurentSeries& b, std::int64_t v) {
        if (a.is_zero() || b.is_zero()) return zero(f, v);
        auto prod = detail::multiply(f, a.c_, b.c_);
        const std::int64_t top = a.top_ + b.top_;
        if (top < v) return zero(f, v);
        prod.resize(static_cast<std::size_t>(top - v + 1), 0);
        return LaurentSeries(f, top, std::move(prod), v);
    }

    // Descending long division of (a, top_a) by (b, top_b); b[0] != 0.
    // Emits quotient exponents top_a - top_b down to `floor`. A remainder
    // coefficient at exponent e is only read when e >= floor + top_b, so
    // updates below that are skipped.
    static LaurentSeries divide(PrimeField f, const std::vector<residue>& a, std::int64_t top_a,
                                const std::vector<residue>& b, std::int64_t top_b, std::int64_t floor) {
        const std::int64_t top_q = top_a - top_b;
        if (top_q < floor) return zero(f, floor);
        const std::size_t nq = static_cast<std::size_t>(top_q - floor + 1);
        std::vector<residue> rem(nq, 0);
        std::copy_n(a.begin(), std::min(a.size(), nq), rem.begin());
        std::vector<residue> q(nq, 0);
        const residue lc_inv = f.inv(b.front());
        for (std::size_t i = 0; i < nq; ++i) {
            const residue c = f.mul(rem[i], lc_inv);
            q[i] = c;
            if (c == 0) continue;
            const std::size_t reach = std::min(b.size(), nq - i);
            for (std::size_t j = 1; j < reach; ++j) rem[i + j] = f.sub(rem[i + j], f.mul(c, b[j]));
        }
        return LaurentSeries(f, top_q, std::move(q), floor);
    }

    PrimeField field_;
    std::int64_t top_;
    std::vector<residue> c_;
    std::int64_t valid_;
};

} // namespace hypercf

#endif
