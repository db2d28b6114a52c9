#pragma once

/**
 * @file gfp.hpp
 * @brief Arithmetic in the prime field Z_p.
 *
 * The modulus is a runtime value (it comes from the command line), so a
 * FieldSpec travels with every element. Values are kept reduced in [0, p) and
 * p < 2^31, which keeps every product inside a 64-bit intermediate.
 */

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include "error.hpp"

namespace lcaz {

using Residue = std::uint32_t;

class FieldSpec {
public:
    static constexpr std::uint64_t max_modulus = 2147483647ULL; // 2^31 - 1

    FieldSpec() = default;

    [[nodiscard]] constexpr Residue p() const noexcept { return p_; }

    [[nodiscard]] constexpr Residue reduce(std::int64_t x) const noexcept {
        const auto m = static_cast<std::int64_t>(p_);
        x %= m;
        return static_cast<Residue>(x < 0 ? x + m : x);
    }
    [[nodiscard]] constexpr Residue add(Residue x, Residue y) const noexcept {
        const std::uint64_t s = std::uint64_t{x} + y;
        return static_cast<Residue>(s >= p_ ? s - p_ : s);
    }
    [[nodiscard]] constexpr Residue sub(Residue x, Residue y) const noexcept {
        return x >= y ? x - y : static_cast<Residue>(std::uint64_t{x} + p_ - y);
    }
    [[nodiscard]] constexpr Residue neg(Residue x) const noexcept { return x == 0 ? 0 : p_ - x; }
    [[nodiscard]] constexpr Residue mul(Residue x, Residue y) const noexcept {
        return static_cast<Residue>((std::uint64_t{x} * y) % p_);
    }
    [[nodiscard]] constexpr Residue pow(Residue x, std::uint64_t k) const noexcept {
        Residue r = 1 % p_;
        while (k != 0) {
            if (k & 1U) r = mul(r, x);
            x = mul(x, x);
            k >>= 1U;
        }
        return r;
    }
    /// Extended Euclid; throws DivisionByZero for x = 0.
    [[nodiscard]] Residue inv(Residue x) const {
        if (x % p_ == 0) throw Error(ErrorCode::DivisionByZero, "zero has no inverse mod " + std::to_string(p_));
        std::int64_t r0 = p_, r1 = x % p_, s0 = 0, s1 = 1;
        while (r1 != 0) {
            const std::int64_t q = r0 / r1;
            std::int64_t t = r0 - q * r1;
            r0 = r1;
            r1 = t;
            t = s0 - q * s1;
            s0 = s1;
            s1 = t;
        }
        return reduce(s0);
    }

    friend constexpr bool operator==(FieldSpec, FieldSpec) = default;

private:
    explicit constexpr FieldSpec(Residue p) : p_(p) {}
    friend FieldSpec make_field(std::int64_t p);

    Residue p_ = 2;
};

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

/// Validated construction of Z_p for 2 <= p <= 2^31 - 1.
inline FieldSpec make_field(std::int64_t p) {
    if (p < 2 || static_cast<std::uint64_t>(p) > FieldSpec::max_modulus)
        throw Error(ErrorCode::OutOfRange, "modulus " + std::to_string(p) + " outside [2, 2^31-1]");
    if (!is_prime(static_cast<std::uint64_t>(p)))
        throw Error(ErrorCode::NotPrime, std::to_string(p) + " is composite");
    return FieldSpec(static_cast<Residue>(p));
}

inline void require_same_field(FieldSpec x, FieldSpec y) {
    if (!(x == y))
        throw Error(ErrorCode::FieldMismatch,
                    "Z_" + std::to_string(x.p()) + " vs Z_" + std::to_string(y.p()));
}

class FieldElement {
public:
    FieldElement(FieldSpec field, std::int64_t value) : field_(field), value_(field.reduce(value)) {}

    [[nodiscard]] Residue value() const noexcept { return value_; }
    [[nodiscard]] FieldSpec field() const noexcept { return field_; }
    [[nodiscard]] bool is_zero() const noexcept { return value_ == 0; }

    friend FieldElement operator+(FieldElement x, FieldElement y) {
        require_same_field(x.field_, y.field_);
        return raw(x.field_, x.field_.add(x.value_, y.value_));
    }
    friend FieldElement operator-(FieldElement x, FieldElement y) {
        require_same_field(x.field_, y.field_);
        return raw(x.field_, x.field_.sub(x.value_, y.value_));
    }
    friend FieldElement operator*(FieldElement x, FieldElement y) {
        require_same_field(x.field_, y.field_);
        return raw(x.field_, x.field_.mul(x.value_, y.value_));
    }
    FieldElement operator-() const { return raw(field_, field_.neg(value_)); }
    FieldElement& operator+=(FieldElement y) { return *this = *this + y; }
    FieldElement& operator-=(FieldElement y) { return *this = *this - y; }
    FieldElement& operator*=(FieldElement y) { return *this = *this * y; }

    [[nodiscard]] FieldElement pow(std::uint64_t k) const { return raw(field_, field_.pow(value_, k)); }

    friend bool operator==(FieldElement x, FieldElement y) {
        require_same_field(x.field_, y.field_);
        return x.value_ == y.value_;
    }
    friend std::ostream& operator<<(std::ostream& os, FieldElement x) { return os << x.value_; }

private:
    static FieldElement raw(FieldSpec f, Residue v) {
        FieldElement e(f, 0);
        e.value_ = v;
        return e;
    }

    FieldSpec field_;
    Residue value_;
};

inline FieldElement inv(FieldElement x) { return FieldElement(x.field(), x.field().inv(x.value())); }
inline FieldElement neg(FieldElement x) { return -x; }

} // namespace lcaz
