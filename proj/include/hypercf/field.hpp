#ifndef HYPERCF_FIELD_HPP
#define HYPERCF_FIELD_HPP

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace hypercf {

using residue = std::uint32_t;

/// The prime field F_p for an odd prime p chosen at runtime.
///
/// Only the modulus is stored, so a PrimeField is a cheap value that every
/// polynomial and series carries along with its coefficients.
class PrimeField {
public:
    static constexpr std::uint64_t max_modulus = (std::uint64_t{1} << 31) - 1;

    explicit PrimeField(std::uint64_t p) : p_(checked(p)) {}

    [[nodiscard]] residue modulus() const noexcept { return p_; }

    [[nodiscard]] residue reduce(std::int64_t x) const noexcept {
        auto r = x % static_cast<std::int64_t>(p_);
        return static_cast<residue>(r < 0 ? r + p_ : r);
    }

    [[nodiscard]] residue add(residue a, residue b) const noexcept {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    [[nodiscard]] residue sub(residue a, residue b) const noexcept {
        return a >= b ? a - b : a + p_ - b;
    }
    [[nodiscard]] residue neg(residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
    [[nodiscard]] residue mul(residue a, residue b) const noexcept {
        return static_cast<residue>(static_cast<std::uint64_t>(a) * b % p_);
    }

    [[nodiscard]] residue pow(residue a, std::uint64_t k) const noexcept {
        std::uint64_t base = a % p_, acc = 1 % p_;
        while (k != 0) {
            if (k & 1U) acc = acc * base % p_;
            base = base * base % p_;
            k >>= 1U;
        }
        return static_cast<residue>(acc);
    }

    // Fermat inverse; p is prime.
    [[nodiscard]] residue inv(residue a) const {
        if (a % p_ == 0) throw std::domain_error("division by zero in F_" + std::to_string(p_));
        return pow(a, p_ - 2);
    }

    friend bool operator==(PrimeField, PrimeField) = default;

    static bool is_prime(std::uint64_t n) noexcept {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    static residue checked(std::uint64_t p) {
        if (p < 3 || p > max_modulus || !is_prime(p))
            throw std::invalid_argument("p must be an odd prime");
        return static_cast<residue>(p);
    }

    residue p_;
};

/// An element of F_p tagged with its field.
class FieldElement {
public:
    FieldElement(PrimeField f, std::int64_t v) : field_(f), value_(f.reduce(v)) {}

    [[nodiscard]] PrimeField field() const noexcept { return field_; }
    [[nodiscard]] residue value() const noexcept { return value_; }
    [[nodiscard]] bool is_zero() const noexcept { return value_ == 0; }

    [[nodiscard]] FieldElement inverse() const { return raw(field_, field_.inv(value_)); }

    friend FieldElement operator+(FieldElement a, FieldElement b) {
        same(a, b);
        return raw(a.field_, a.field_.add(a.value_, b.value_));
    }
    friend FieldElement operator-(FieldElement a, FieldElement b) {
        same(a, b);
        return raw(a.field_, a.field_.sub(a.value_, b.value_));
    }
    friend FieldElement operator-(FieldElement a) { return raw(a.field_, a.field_.neg(a.value_)); }
    friend FieldElement operator*(FieldElement a, FieldElement b) {
        same(a, b);
        return raw(a.field_, a.field_.mul(a.value_, b.value_));
    }
    friend FieldElement operator/(FieldElement a, FieldElement b) { return a * b.inverse(); }

    friend bool operator==(FieldElement, FieldElement) = default;

    friend std::ostream& operator<<(std::ostream& os, FieldElement a) { return os << a.value_; }

private:
    static FieldElement raw(PrimeField f, residue v) {
        FieldElement e(f, 0);
        e.value_ = v;
        return e;
    }
    static void same(FieldElement a, FieldElement b) {
        if (a.field_ != b.field_) throw std::invalid_argument("field mismatch");
    }

    PrimeField field_;
    residue value_;
};

/// Inverse of a nonzero element; throws std::domain_error on zero.
inline FieldElement field_inverse(FieldElement a) { return a.inverse(); }

} // namespace hypercf

#endif
