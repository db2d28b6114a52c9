#pragma once

/**
 * @file matrix.hpp
 * @brief Dense row-major matrices over Z_p.
 */

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "gfp.hpp"
#include "grid.hpp"

namespace lcaz {

class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(FieldSpec field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    /// Entries are reduced mod p; rows must all have the same length.
    DenseMatrix(FieldSpec field, std::initializer_list<std::initializer_list<std::int64_t>> rows)
        : field_(field), rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
            for (auto v : r) data_.push_back(field.reduce(v));
        }
    }

    static DenseMatrix identity(FieldSpec field, std::size_t n) {
        DenseMatrix I(field, n, n);
        for (std::size_t k = 0; k < n; ++k) I(k, k) = 1 % field.p();
        return I;
    }

    [[nodiscard]] FieldSpec field() const noexcept { return field_; }
    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

    // 0-indexed
    Residue& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    Residue operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    [[nodiscard]] const std::vector<Residue>& data() const noexcept { return data_; }

    [[nodiscard]] bool is_zero() const noexcept {
        for (auto v : data_)
            if (v != 0) return false;
        return true;
    }

    /// Adds v to entry (r, c), 0-indexed.
    void accumulate(std::size_t r, std::size_t c, Residue v) noexcept { (*this)(r, c) = field_.add((*this)(r, c), v); }

    [[nodiscard]] DenseMatrix transpose() const {
        DenseMatrix t(field_, cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    friend bool operator==(const DenseMatrix& x, const DenseMatrix& y) {
        return x.field_ == y.field_ && x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
    }

    friend DenseMatrix operator+(const DenseMatrix& x, const DenseMatrix& y) {
        check_same_shape(x, y);
        DenseMatrix r = x;
        for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] = r.field_.add(r.data_[k], y.data_[k]);
        return r;
    }
    friend DenseMatrix operator-(const DenseMatrix& x, const DenseMatrix& y) {
        check_same_shape(x, y);
        DenseMatrix r = x;
        for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] = r.field_.sub(r.data_[k], y.data_[k]);
        return r;
    }
    friend DenseMatrix operator-(const DenseMatrix& x) {
        DenseMatrix r = x;
        for (auto& v : r.data_) v = r.field_.neg(v);
        return r;
    }
    friend DenseMatrix operator*(Residue k, const DenseMatrix& x) {
        DenseMatrix r = x;
        k = x.field_.reduce(k);
        for (auto& v : r.data_) v = r.field_.mul(v, k);
        return r;
    }
    friend DenseMatrix operator*(const DenseMatrix& x, const DenseMatrix& y) {
        require_same_field(x.field_, y.field_);
        if (x.cols_ != y.rows_) throw Error(ErrorCode::DimensionMismatch, "inner dimensions differ");
        const FieldSpec F = x.field_;
        DenseMatrix r(F, x.rows_, y.cols_);
        // p < 2^31: one product plus a reduced partial sum fits in 64 bits.
        std::vector<std::uint64_t> acc(y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i) {
            std::fill(acc.begin(), acc.end(), 0);
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const std::uint64_t xv = x(i, k);
                if (xv == 0) continue;
                const Residue* yrow = &y.data_[k * y.cols_];
                for (std::size_t j = 0; j < y.cols_; ++j) acc[j] = (acc[j] + xv * yrow[j]) % F.p();
            }
            for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) = static_cast<Residue>(acc[j]);
        }
        return r;
    }
    DenseMatrix& operator+=(const DenseMatrix& y) { return *this = *this + y; }

    [[nodiscard]] std::vector<Residue> apply(const std::vector<Residue>& v) const {
        if (v.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "vector length " + std::to_string(v.size()));
        std::vector<Residue> out(rows_, 0);
        for (std::size_t r = 0; r < rows_; ++r) {
            std::uint64_t acc = 0;
            for (std::size_t c = 0; c < cols_; ++c) acc = (acc + std::uint64_t{(*this)(r, c)} * v[c]) % field_.p();
            out[r] = static_cast<Residue>(acc);
        }
        return out;
    }
    [[nodiscard]] StateVector apply(const StateVector& v) const {
        require_same_field(field_, v.field);
        return {field_, apply(v.entries)};
    }

    friend std::ostream& operator<<(std::ostream& os, const DenseMatrix& x) {
        for (std::size_t r = 0; r < x.rows_; ++r) {
            for (std::size_t c = 0; c < x.cols_; ++c) os << (c ? " " : "") << x(r, c);
            os << '\n';
        }
        return os;
    }

private:
    static void check_same_shape(const DenseMatrix& x, const DenseMatrix& y) {
        require_same_field(x.field_, y.field_);
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw Error(ErrorCode::DimensionMismatch, "shapes differ");
    }

    FieldSpec field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Residue> data_;
};

} // namespace lcaz
