#pragma once

/**
 * @file stepper.hpp
 * @brief Direct synchronous evolution under the linear Moore rule.
 *
 *   x'(i,j) = a x(i-1,j-1) + b x(i-1,j) + c x(i-1,j+1) + d x(i,j+1)
 *           + e x(i+1,j+1) + f x(i+1,j) + g x(i+1,j-1) + h x(i,j-1)   (mod p)
 *
 * Neighbors outside the lattice are fetched through resolve(). The center
 * cell has no weight. Setting a = c = e = g = 0 gives the von Neumann rule.
 */

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>

#include "boundary.hpp"
#include "grid.hpp"

namespace lcaz {

/// Weight slots in stencil order: NW, N, NE, E, SE, S, SW, W.
enum class Weight : std::size_t { a = 0, b, c, d, e, f, g, h };

/// (row, column) offsets matching the Weight order.
inline constexpr std::array<std::array<int, 2>, 8> stencil_offsets = {{
    {-1, -1}, {-1, 0}, {-1, 1}, {0, 1}, {1, 1}, {1, 0}, {1, -1}, {0, -1},
}};

class RuleCoefficients {
public:
    RuleCoefficients() = default;
    RuleCoefficients(FieldSpec field, const std::array<std::int64_t, 8>& values) : field_(field) {
        for (std::size_t k = 0; k < 8; ++k) w_[k] = field.reduce(values[k]);
    }

    static RuleCoefficients uniform(FieldSpec field, std::int64_t v) {
        return RuleCoefficients(field, {v, v, v, v, v, v, v, v});
    }
    /// Moore coefficients with the diagonal weights a, c, e, g forced to zero.
    static RuleCoefficients von_neumann(FieldSpec field, std::int64_t b, std::int64_t d, std::int64_t f,
                                        std::int64_t h) {
        return RuleCoefficients(field, {0, b, 0, d, 0, f, 0, h});
    }

    [[nodiscard]] FieldSpec field() const noexcept { return field_; }
    [[nodiscard]] Residue operator[](Weight w) const noexcept { return w_[static_cast<std::size_t>(w)]; }
    [[nodiscard]] Residue operator[](std::size_t k) const noexcept { return w_[k]; }
    [[nodiscard]] const std::array<Residue, 8>& values() const noexcept { return w_; }

    [[nodiscard]] FieldElement a() const { return {field_, w_[0]}; }
    [[nodiscard]] FieldElement b() const { return {field_, w_[1]}; }
    [[nodiscard]] FieldElement c() const { return {field_, w_[2]}; }
    [[nodiscard]] FieldElement d() const { return {field_, w_[3]}; }
    [[nodiscard]] FieldElement e() const { return {field_, w_[4]}; }
    [[nodiscard]] FieldElement f() const { return {field_, w_[5]}; }
    [[nodiscard]] FieldElement g() const { return {field_, w_[6]}; }
    [[nodiscard]] FieldElement h() const { return {field_, w_[7]}; }

    [[nodiscard]] bool is_von_neumann() const noexcept { return w_[0] == 0 && w_[2] == 0 && w_[4] == 0 && w_[6] == 0; }

    friend bool operator==(const RuleCoefficients&, const RuleCoefficients&) = default;

private:
    FieldSpec field_;
    std::array<Residue, 8> w_{};
};

/// One synchronous update; every read sees the time-t state.
inline Configuration step(const Configuration& c, const RuleCoefficients& coeffs, const BoundarySpec& spec) {
    require_same_field(c.field(), coeffs.field());
    const FieldSpec F = c.field();
    const LatticeDims& dims = c.dims();
    const auto m = static_cast<std::ptrdiff_t>(dims.m);
    const auto n = static_cast<std::ptrdiff_t>(dims.n);

    auto value_at = [&](std::ptrdiff_t i, std::ptrdiff_t j) -> Residue {
        if (i >= 1 && i <= m && j >= 1 && j <= n) return c.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        const auto r = resolve(spec, dims, i, j);
        return r.is_zero() ? 0 : c.at(r.source->i, r.source->j);
    };

    Configuration next(F, dims);
    for (std::ptrdiff_t i = 1; i <= m; ++i) {
        for (std::ptrdiff_t j = 1; j <= n; ++j) {
            Residue acc = 0;
            for (std::size_t k = 0; k < 8; ++k) {
                if (coeffs[k] == 0) continue;
                const Residue x = value_at(i + stencil_offsets[k][0], j + stencil_offsets[k][1]);
                acc = F.add(acc, F.mul(coeffs[k], x));
            }
            next.cells()[dims.index(static_cast<std::size_t>(i), static_cast<std::size_t>(j))] = acc;
        }
    }
    return next;
}

inline Configuration evolve(Configuration c, const RuleCoefficients& coeffs, const BoundarySpec& spec,
                            std::uint64_t steps) {
    require_same_field(c.field(), coeffs.field());
    for (std::uint64_t t = 0; t < steps; ++t) c = step(c, coeffs, spec);
    return c;
}

} // namespace lcaz
