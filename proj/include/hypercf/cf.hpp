#ifndef HYPERCF_CF_HPP
#define HYPERCF_CF_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "poly.hpp"
#include "series.hpp"

namespace hypercf {

/// Partial quotients a_1, a_2, ... of a continued fraction over F_p[T].
///
/// Indexing through at() is 1-based to line up with a_n; the underlying
/// vector is exposed for iteration. Every entry must have degree >= 1.
class PartialQuotients {
public:
    PartialQuotients() = default;
    explicit PartialQuotients(std::vector<Poly> items) : items_(std::move(items)) {
        for (std::size_t i = 0; i < items_.size(); ++i) check(items_[i], i + 1);
    }

    void push_back(Poly a) {
        check(a, items_.size() + 1);
        items_.push_back(std::move(a));
    }

    [[nodiscard]] std::size_t size() const noexcept { return items_.size(); }
    [[nodiscard]] bool empty() const noexcept { return items_.empty(); }
    [[nodiscard]] const Poly& at(std::size_t n) const {
        if (n == 0 || n > items_.size()) throw std::out_of_range("partial quotient index " + std::to_string(n));
        return items_[n - 1];
    }
    [[nodiscard]] const std::vector<Poly>& items() const noexcept { return items_; }
    [[nodiscard]] auto begin() const noexcept { return items_.begin(); }
    [[nodiscard]] auto end() const noexcept { return items_.end(); }

    /// a_from, a_from+1, ..., i.e. the quotients of the tail alpha_from.
    [[nodiscard]] PartialQuotients tail(std::size_t from) const {
        if (from == 0 || from > items_.size() + 1) throw std::out_of_range("tail index " + std::to_string(from));
        return PartialQuotients(std::vector<Poly>(items_.begin() + static_cast<std::ptrdiff_t>(from - 1), items_.end()));
    }
    [[nodiscard]] PartialQuotients prefix(std::size_t n) const {
        n = std::min(n, items_.size());
        return PartialQuotients(std::vector<Poly>(items_.begin(), items_.begin() + static_cast<std::ptrdiff_t>(n)));
    }

    [[nodiscard]] std::vector<std::int64_t> degrees() const {
        std::vector<std::int64_t> d;
        d.reserve(items_.size());
        for (const auto& a : items_) d.push_back(a.degree());
        return d;
    }
    [[nodiscard]] std::vector<residue> leading_coefficients() const {
        std::vector<residue> c;
        c.reserve(items_.size());
        for (const auto& a : items_) c.push_back(a.leading_coefficient());
        return c;
    }

    friend bool operator==(const PartialQuotients&, const PartialQuotients&) = default;

private:
    static void check(const Poly& a, std::size_t n) {
        if (a.degree() < 1)
            throw std::invalid_argument("partial quotient a_" + std::to_string(n) + " must have degree >= 1");
    }

    std::vector<Poly> items_;
};

/// x_n / y_n, the n-th convergent.
struct ConvergentPair {
    Poly x;
    Poly y;
    std::size_t n;
};

/// Continuants K_n = a_n K_{n-1} + K_{n-2} with x_0 = 1, x_1 = a_1, y_0 = 0, y_1 = 1.
inline std::vector<ConvergentPair> continuants(const PartialQuotients& pqs) {
    if (pqs.empty()) throw std::invalid_argument("continuants of an empty expansion");
    const PrimeField f = pqs.at(1).field();
    std::vector<ConvergentPair> out;
    out.reserve(pqs.size());
    Poly x_prev = Poly::constant(f, 1), y_prev(f);
    Poly x = pqs.at(1), y = Poly::constant(f, 1);
    out.push_back({x, y, 1});
    for (std::size_t n = 2; n <= pqs.size(); ++n) {
        const Poly& a = pqs.at(n);
        Poly xn = a * x + x_prev;
        Poly yn = a * y + y_prev;
        x_prev = std::exchange(x, std::move(xn));
        y_prev = std::exchange(y, std::move(yn));
        out.push_back({x, y, n});
    }
    return out;
}

/// Last convergent only, without materializing the whole list.
inline ConvergentPair last_convergent(const PartialQuotients& pqs) {
    if (pqs.empty()) throw std::invalid_argument("continuants of an empty expansion");
    const PrimeField f = pqs.at(1).field();
    Poly x_prev = Poly::constant(f, 1), y_prev(f);
    Poly x = pqs.at(1), y = Poly::constant(f, 1);
    for (std::size_t n = 2; n <= pqs.size(); ++n) {
        const Poly& a = pqs.at(n);
        Poly xn = a * x + x_prev;
        Poly yn = a * y + y_prev;
        x_prev = std::exchange(x, std::move(xn));
        y_prev = std::exchange(y, std::move(yn));
    }
    return {x, y, pqs.size()};
}

/// Euclidean expansion of num/den. The first quotient must be non-constant,
/// i.e. deg num > deg den.
inline PartialQuotients rational_to_cf(Poly num, Poly den) {
    if (den.is_zero()) throw std::domain_error("continued fraction of a rational with zero denominator");
    PartialQuotients out;
    while (!den.is_zero()) {
        auto [q, r] = divmod(num, den);
        out.push_back(std::move(q));
        num = std::exchange(den, std::move(r));
    }
    return out;
}

class InsufficientQuotients : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Deepest exponent at which the prefix pqs pins down every continuation.
///
/// With N quotients known and every later quotient of degree >= 1, the
/// error alpha - x_N/y_N has degree -deg y_N - deg y_{N+1} <= -2 deg y_N - 1.
inline std::int64_t cf_series_floor(const PartialQuotients& pqs) {
    std::int64_t deg_y = 0;
    for (std::size_t n = 2; n <= pqs.size(); ++n) deg_y += pqs.at(n).degree();
    return -2 * deg_y;
}

/// Series of the infinite continued fraction whose first quotients are pqs,
/// exact down to `order`. Throws InsufficientQuotients when the prefix does
/// not determine that many terms.
inline LaurentSeries cf_to_series(const PartialQuotients& pqs, std::int64_t order) {
    if (pqs.empty()) throw InsufficientQuotients("no partial quotients");
    const std::int64_t floor = cf_series_floor(pqs);
    if (order < floor)
        throw InsufficientQuotients("order " + std::to_string(order) + " needs more than " +
                                    std::to_string(pqs.size()) + " partial quotients (floor " +
                                    std::to_string(floor) + ")");
    auto c = last_convergent(pqs);
    return LaurentSeries::from_rational(c.x, c.y, order);
}

/// Series of the finite continued fraction [a_1, ..., a_N] itself.
inline LaurentSeries finite_cf_to_series(const PartialQuotients& pqs, std::int64_t order) {
    if (pqs.empty()) throw std::invalid_argument("no partial quotients");
    auto c = last_convergent(pqs);
    return LaurentSeries::from_rational(c.x, c.y, order);
}

} // namespace hypercf

#endif
