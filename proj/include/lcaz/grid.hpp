#pragma once

/**
 * @file grid.hpp
 * @brief Configurations of an m x n lattice and the row-major flattening map.
 *
 * Public coordinates are 1-indexed (i, j) with 1 <= i <= m, 1 <= j <= n.
 * Cell (i, j) is stored at index (i-1)*n + (j-1), which is also its position
 * in the flattened state vector.
 */

#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gfp.hpp"

namespace lcaz {

struct LatticeDims {
    std::size_t m = 3;
    std::size_t n = 3;

    [[nodiscard]] std::size_t cells() const noexcept { return m * n; }
    [[nodiscard]] std::size_t index(std::size_t i, std::size_t j) const noexcept { return (i - 1) * n + (j - 1); }

    friend bool operator==(const LatticeDims&, const LatticeDims&) = default;
};

/// Lattices smaller than 3x3 have no interior row/column and are rejected.
inline LatticeDims make_dims(std::int64_t m, std::int64_t n) {
    if (m < 3 || n < 3)
        throw Error(ErrorCode::TooSmall, "lattice " + std::to_string(m) + "x" + std::to_string(n) + " below 3x3");
    return {static_cast<std::size_t>(m), static_cast<std::size_t>(n)};
}

/// Column vector of length m*n; the image of a configuration under flatten().
struct StateVector {
    FieldSpec field;
    std::vector<Residue> entries;

    [[nodiscard]] std::size_t size() const noexcept { return entries.size(); }
    friend bool operator==(const StateVector&, const StateVector&) = default;
};

class Configuration {
public:
    Configuration(FieldSpec field, LatticeDims dims) : field_(field), dims_(dims), cells_(dims.cells(), 0) {}

    Configuration(FieldSpec field, LatticeDims dims, std::vector<Residue> cells)
        : field_(field), dims_(dims), cells_(std::move(cells)) {
        if (cells_.size() != dims_.cells())
            throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(dims_.cells()) + " cells");
        for (auto& v : cells_)
            if (v >= field_.p()) throw Error(ErrorCode::OutOfRange, "cell value " + std::to_string(v));
    }

    [[nodiscard]] FieldSpec field() const noexcept { return field_; }
    [[nodiscard]] const LatticeDims& dims() const noexcept { return dims_; }
    [[nodiscard]] std::size_t rows() const noexcept { return dims_.m; }
    [[nodiscard]] std::size_t cols() const noexcept { return dims_.n; }

    // 1-indexed access
    [[nodiscard]] Residue at(std::size_t i, std::size_t j) const { return cells_[dims_.index(i, j)]; }
    void set(std::size_t i, std::size_t j, std::int64_t v) { cells_[dims_.index(i, j)] = field_.reduce(v); }

    [[nodiscard]] const std::vector<Residue>& cells() const noexcept { return cells_; }
    [[nodiscard]] std::vector<Residue>& cells() noexcept { return cells_; }

    [[nodiscard]] bool is_zero() const noexcept {
        for (auto v : cells_)
            if (v != 0) return false;
        return true;
    }

    friend bool operator==(const Configuration&, const Configuration&) = default;

    friend Configuration operator+(const Configuration& x, const Configuration& y) {
        require_same_field(x.field_, y.field_);
        if (!(x.dims_ == y.dims_)) throw Error(ErrorCode::DimensionMismatch, "configuration sizes differ");
        Configuration r = x;
        for (std::size_t k = 0; k < r.cells_.size(); ++k) r.cells_[k] = r.field_.add(r.cells_[k], y.cells_[k]);
        return r;
    }
    friend Configuration operator*(FieldElement k, const Configuration& x) {
        require_same_field(k.field(), x.field_);
        Configuration r = x;
        for (auto& v : r.cells_) v = r.field_.mul(v, k.value());
        return r;
    }

    /// Single 1 at (i, j); the basis matrix e_{i,j}.
    static Configuration unit(FieldSpec field, LatticeDims dims, std::size_t i, std::size_t j) {
        Configuration c(field, dims);
        c.cells_[dims.index(i, j)] = 1 % field.p();
        return c;
    }

private:
    FieldSpec field_;
    LatticeDims dims_;
    std::vector<Residue> cells_;
};

inline StateVector flatten(const Configuration& c) { return {c.field(), c.cells()}; }

inline Configuration unflatten(const StateVector& v, LatticeDims dims) {
    if (v.size() != dims.cells())
        throw Error(ErrorCode::DimensionMismatch, "vector length " + std::to_string(v.size()) + " does not match " +
                                                      std::to_string(dims.m) + "x" + std::to_string(dims.n));
    return Configuration(v.field, dims, v.entries);
}

// Text format: "p m n" on the first line, then m rows of n integers in [0, p).

inline Configuration read_configuration(std::istream& in) {
    std::int64_t p = 0, m = 0, n = 0;
    if (!(in >> p >> m >> n)) throw Error(ErrorCode::ParseError, "missing 'p m n' header");
    const FieldSpec field = make_field(p);
    const LatticeDims dims = make_dims(m, n);
    std::vector<Residue> cells;
    cells.reserve(dims.cells());
    for (std::size_t k = 0; k < dims.cells(); ++k) {
        std::int64_t v = 0;
        if (!(in >> v)) throw Error(ErrorCode::ParseError, "expected " + std::to_string(dims.cells()) + " cell values");
        if (v < 0 || v >= p) throw Error(ErrorCode::OutOfRange, "cell value " + std::to_string(v));
        cells.push_back(static_cast<Residue>(v));
    }
    std::string extra;
    if (in >> extra) throw Error(ErrorCode::ParseError, "trailing data after grid");
    return Configuration(field, dims, std::move(cells));
}

inline Configuration parse_configuration(const std::string& text) {
    std::istringstream in(text);
    return read_configuration(in);
}

inline void write_configuration(std::ostream& out, const Configuration& c) {
    out << c.field().p() << ' ' << c.rows() << ' ' << c.cols() << '\n';
    for (std::size_t i = 1; i <= c.rows(); ++i) {
        for (std::size_t j = 1; j <= c.cols(); ++j) out << (j > 1 ? " " : "") << c.at(i, j);
        out << '\n';
    }
}

inline std::string format_configuration(const Configuration& c) {
    std::ostringstream out;
    write_configuration(out, c);
    return out.str();
}

} // namespace lcaz
