#pragma once

/**
 * @file boundary.hpp
 * @brief Boundary conditions as a virtual-cell resolver.
 *
 * A cell in the one-cell frame around the lattice (row 0 or m+1, column 0 or
 * n+1) carries either the zero state or the value of some lattice cell. Each
 * side of the lattice has one of four base conditions:
 *
 *   Null       virtual cells hold 0
 *   Periodic   coordinates wrap around (torus)
 *   Adiabatic  coordinates clamp to the nearest boundary row/column
 *   Reflexive  coordinates mirror across the boundary row/column
 *              (row 0 -> row 2, row m+1 -> row m-1, likewise for columns)
 *
 * At the four frame corners two sides meet. The corner rule names which side
 * governs there, and the governing condition is applied to both coordinates.
 */

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include "grid.hpp"

namespace lcaz {

enum class BaseBoundary { Null, Periodic, Adiabatic, Reflexive };

constexpr char boundary_letter(BaseBoundary b) {
    switch (b) {
    case BaseBoundary::Null: return 'n';
    case BaseBoundary::Periodic: return 'p';
    case BaseBoundary::Adiabatic: return 'a';
    case BaseBoundary::Reflexive: return 'r';
    }
    return '?';
}

constexpr std::string_view boundary_name(BaseBoundary b) {
    switch (b) {
    case BaseBoundary::Null: return "null";
    case BaseBoundary::Periodic: return "periodic";
    case BaseBoundary::Adiabatic: return "adiabatic";
    case BaseBoundary::Reflexive: return "reflexive";
    }
    return "?";
}

/// Which side's condition applies at a frame corner.
enum class CornerGovernor {
    Horizontal, ///< the top or bottom side
    Vertical,   ///< the left or right side
};

struct CornerRule {
    CornerGovernor top_left = CornerGovernor::Vertical;
    CornerGovernor top_right = CornerGovernor::Vertical;
    CornerGovernor bottom_left = CornerGovernor::Vertical;
    CornerGovernor bottom_right = CornerGovernor::Vertical;

    static constexpr CornerRule all(CornerGovernor g) { return {g, g, g, g}; }
    friend bool operator==(const CornerRule&, const CornerRule&) = default;
};

struct BoundarySpec {
    BaseBoundary top = BaseBoundary::Null;
    BaseBoundary bottom = BaseBoundary::Null;
    BaseBoundary left = BaseBoundary::Null;
    BaseBoundary right = BaseBoundary::Null;
    CornerRule corners{};
    std::string name = "custom";

    friend bool operator==(const BoundarySpec&, const BoundarySpec&) = default;
};

/// CLI names of the 13 built-in specs, in catalog order.
inline constexpr std::array<std::string_view, 13> named_spec_names = {
    "nb", "pb", "ab", "rb", "phi", "psi", "tau", "sigma", "lambda", "xi", "phi90", "phi180", "phi270",
};

/// The nine mixed or rotated specs that have closed-form theorem matrices.
inline constexpr std::array<std::string_view, 9> mixed_spec_names = {
    "phi", "psi", "tau", "sigma", "lambda", "xi", "phi90", "phi180", "phi270",
};

namespace detail {

inline std::string canonical_spec_name(std::string_view raw) {
    std::string s;
    for (char ch : raw) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    // Greek spellings as they appear in the literature.
    static constexpr std::array<std::pair<std::string_view, std::string_view>, 13> greek = {{
        {"φ", "phi"}, {"ϕ", "phi"}, {"ψ", "psi"}, {"τ", "tau"}, {"σ", "sigma"}, {"λ", "lambda"}, {"ξ", "xi"},
        {"φ90", "phi90"}, {"φ180", "phi180"}, {"φ270", "phi270"},
        {"ϕ90", "phi90"}, {"ϕ180", "phi180"}, {"ϕ270", "phi270"},
    }};
    for (auto [from, to] : greek)
        if (s == from) return std::string(to);
    return s;
}

inline BaseBoundary boundary_from_letter(char ch) {
    switch (std::tolower(static_cast<unsigned char>(ch))) {
    case 'n': return BaseBoundary::Null;
    case 'p': return BaseBoundary::Periodic;
    case 'a': return BaseBoundary::Adiabatic;
    case 'r': return BaseBoundary::Reflexive;
    default: throw Error(ErrorCode::UnknownName, std::string("boundary letter '") + ch + "'");
    }
}

} // namespace detail

inline BoundarySpec uniform_spec(BaseBoundary b, std::string name) {
    return {b, b, b, b, CornerRule{}, std::move(name)};
}

/// Arbitrary side assignment; every mixed corner is governed by its left/right side.
inline BoundarySpec custom_spec(BaseBoundary top, BaseBoundary bottom, BaseBoundary left, BaseBoundary right) {
    return {top, bottom, left, right, CornerRule::all(CornerGovernor::Vertical), "custom"};
}

/// Looks up one of the 13 named specs. Accepts the CLI spelling ("phi90"),
/// the upper-case base names ("NB") and the Greek letters ("φ").
inline BoundarySpec named_spec(std::string_view raw) {
    using B = BaseBoundary;
    constexpr auto H = CornerGovernor::Horizontal;
    constexpr auto V = CornerGovernor::Vertical;
    const std::string name = detail::canonical_spec_name(raw);

    auto mixed = [&](B top_left, B bottom_right, CornerGovernor g) {
        return BoundarySpec{top_left, bottom_right, top_left, bottom_right, CornerRule::all(g), name};
    };

    if (name == "nb") return uniform_spec(B::Null, name);
    if (name == "pb") return uniform_spec(B::Periodic, name);
    if (name == "ab") return uniform_spec(B::Adiabatic, name);
    if (name == "rb") return uniform_spec(B::Reflexive, name);
    if (name == "phi") return mixed(B::Null, B::Reflexive, H);
    if (name == "psi") return mixed(B::Null, B::Periodic, H);
    if (name == "tau") return mixed(B::Null, B::Adiabatic, H);
    if (name == "sigma") return mixed(B::Reflexive, B::Adiabatic, H);
    if (name == "lambda") return mixed(B::Reflexive, B::Periodic, H);
    if (name == "xi") return mixed(B::Periodic, B::Adiabatic, H);
    // The rotations of phi move the null/reflexive pair around the lattice.
    if (name == "phi90") return {B::Null, B::Reflexive, B::Reflexive, B::Null, CornerRule::all(V), name};
    if (name == "phi180") return {B::Reflexive, B::Null, B::Reflexive, B::Null, CornerRule::all(H), name};
    if (name == "phi270") return {B::Reflexive, B::Null, B::Null, B::Reflexive, CornerRule::all(V), name};

    if (name.rfind("custom:", 0) == 0 && name.size() == 11) {
        BoundarySpec spec = custom_spec(detail::boundary_from_letter(name[7]), detail::boundary_from_letter(name[8]),
                                        detail::boundary_from_letter(name[9]), detail::boundary_from_letter(name[10]));
        spec.name = name;
        return spec;
    }
    throw Error(ErrorCode::UnknownName, "boundary spec '" + std::string(raw) + "'");
}

/// 1-indexed lattice cell.
struct Cell {
    std::size_t i = 0;
    std::size_t j = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
};

/// Where a frame cell takes its value from: a lattice cell, or nothing (zero state).
struct VirtualCellResolution {
    std::optional<Cell> source;

    [[nodiscard]] bool is_zero() const noexcept { return !source.has_value(); }
    friend bool operator==(const VirtualCellResolution&, const VirtualCellResolution&) = default;
};

namespace detail {

// Maps one out-of-range coordinate c in {0, len+1} into [1, len].
inline std::optional<std::size_t> fold(BaseBoundary b, std::ptrdiff_t c, std::size_t len) {
    const auto L = static_cast<std::ptrdiff_t>(len);
    switch (b) {
    case BaseBoundary::Null: return std::nullopt;
    case BaseBoundary::Periodic: return static_cast<std::size_t>(c == 0 ? L : 1);
    case BaseBoundary::Adiabatic: return static_cast<std::size_t>(c == 0 ? 1 : L);
    case BaseBoundary::Reflexive: return static_cast<std::size_t>(c == 0 ? 2 : L - 1);
    }
    return std::nullopt;
}

} // namespace detail

/// Resolves frame cell (i, j), 1-indexed, i in [0, m+1], j in [0, n+1], outside the lattice.
inline VirtualCellResolution resolve(const BoundarySpec& spec, const LatticeDims& dims, std::ptrdiff_t i,
                                     std::ptrdiff_t j) {
    const auto m = static_cast<std::ptrdiff_t>(dims.m);
    const auto n = static_cast<std::ptrdiff_t>(dims.n);
    if (i < 0 || i > m + 1 || j < 0 || j > n + 1 || (i >= 1 && i <= m && j >= 1 && j <= n))
        throw Error(ErrorCode::NotAFrameCell, "(" + std::to_string(i) + "," + std::to_string(j) + ")");

    const bool row_out = i == 0 || i == m + 1;
    const bool col_out = j == 0 || j == n + 1;

    if (row_out && col_out) {
        const bool top = i == 0;
        const bool left = j == 0;
        const CornerGovernor g = top ? (left ? spec.corners.top_left : spec.corners.top_right)
                                     : (left ? spec.corners.bottom_left : spec.corners.bottom_right);
        const BaseBoundary b = g == CornerGovernor::Horizontal ? (top ? spec.top : spec.bottom)
                                                               : (left ? spec.left : spec.right);
        const auto ri = detail::fold(b, i, dims.m);
        const auto cj = detail::fold(b, j, dims.n);
        if (!ri || !cj) return {};
        return {Cell{*ri, *cj}};
    }
    if (row_out) {
        const auto ri = detail::fold(i == 0 ? spec.top : spec.bottom, i, dims.m);
        if (!ri) return {};
        return {Cell{*ri, static_cast<std::size_t>(j)}};
    }
    const auto cj = detail::fold(j == 0 ? spec.left : spec.right, j, dims.n);
    if (!cj) return {};
    return {Cell{static_cast<std::size_t>(i), *cj}};
}

inline std::string describe_corner_rule(const CornerRule& r) {
    auto s = [](CornerGovernor g) { return g == CornerGovernor::Horizontal ? "horizontal" : "vertical"; };
    return std::string("top_left=") + s(r.top_left) + ",top_right=" + s(r.top_right) +
           ",bottom_left=" + s(r.bottom_left) + ",bottom_right=" + s(r.bottom_right);
}

} // namespace lcaz
