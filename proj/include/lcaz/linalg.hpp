#pragma once

/**
 * @file linalg.hpp
 * @brief Exact linear algebra over Z_p.
 *
 * Dense Gauss-Jordan elimination (rank, determinant, nullspace, inverse,
 * solving), the block-row elimination that reduces the rank of a block
 * tridiagonal matrix to the rank of one n x n block, and closed-form
 * determinants of the tridiagonal blocks that appear in the rule matrices.
 */

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "rulematrix.hpp"

namespace lcaz {

struct EliminationResult {
    std::size_t rank = 0;
    std::optional<FieldElement> det; ///< square input only
    std::vector<std::size_t> pivots; ///< pivot column of each nonzero row of the RREF
    std::vector<std::vector<Residue>> nullspace_basis;
    DenseMatrix rref;
};

/// Gauss-Jordan to reduced row echelon form. The pivot is the first nonzero
/// entry of the column scanning top-down, so the result is reproducible.
/// Nullspace vectors have a 1 in one free column and 0 in the others.
inline EliminationResult eliminate(const DenseMatrix& M) {
    const FieldSpec F = M.field();
    DenseMatrix R = M;
    const std::size_t rows = R.rows(), cols = R.cols();
    EliminationResult out;
    Residue det = 1 % F.p();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t piv = row;
        while (piv < rows && R(piv, col) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != row) {
            for (std::size_t c = 0; c < cols; ++c) std::swap(R(piv, c), R(row, c));
            det = F.neg(det);
        }
        const Residue pv = R(row, col);
        det = F.mul(det, pv);
        const Residue pinv = F.inv(pv);
        for (std::size_t c = col; c < cols; ++c) R(row, c) = F.mul(R(row, c), pinv);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row || R(r, col) == 0) continue;
            const Residue factor = R(r, col);
            for (std::size_t c = col; c < cols; ++c) R(r, c) = F.sub(R(r, c), F.mul(factor, R(row, c)));
        }
        out.pivots.push_back(col);
        ++row;
    }
    out.rank = row;
    if (M.is_square()) out.det = FieldElement(F, out.rank == rows ? det : 0);

    std::vector<bool> is_pivot(cols, false);
    for (auto c : out.pivots) is_pivot[c] = true;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Residue> v(cols, 0);
        v[free] = 1 % F.p();
        for (std::size_t k = 0; k < out.pivots.size(); ++k) v[out.pivots[k]] = F.neg(R(k, free));
        out.nullspace_basis.push_back(std::move(v));
    }
    out.rref = std::move(R);
    return out;
}

inline std::size_t rank(const DenseMatrix& M) { return eliminate(M).rank; }

inline FieldElement determinant(const DenseMatrix& M) {
    if (!M.is_square()) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
    return *eliminate(M).det;
}

inline DenseMatrix invert(const DenseMatrix& M) {
    if (!M.is_square()) throw Error(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
    const std::size_t n = M.rows();
    const FieldSpec F = M.field();
    DenseMatrix aug(F, n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = M(r, c);
        aug(r, n + r) = 1 % F.p();
    }
    const EliminationResult e = eliminate(aug);
    if (e.rank < n || e.pivots[n - 1] != n - 1) throw Error(ErrorCode::Singular, "matrix is not invertible");
    DenseMatrix inv(F, n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.rref(r, n + c);
    return inv;
}

/// Some x with M x = b, or nullopt when b is outside the column space.
inline std::optional<std::vector<Residue>> solve(const DenseMatrix& M, const std::vector<Residue>& b) {
    if (b.size() != M.rows()) throw Error(ErrorCode::DimensionMismatch, "right-hand side length");
    const std::size_t cols = M.cols();
    DenseMatrix aug(M.field(), M.rows(), cols + 1);
    for (std::size_t r = 0; r < M.rows(); ++r) {
        for (std::size_t c = 0; c < cols; ++c) aug(r, c) = M(r, c);
        aug(r, cols) = M.field().reduce(b[r]);
    }
    const EliminationResult e = eliminate(aug);
    if (!e.pivots.empty() && e.pivots.back() == cols) return std::nullopt;
    std::vector<Residue> x(cols, 0);
    for (std::size_t k = 0; k < e.pivots.size(); ++k) x[e.pivots[k]] = e.rref(k, cols);
    return x;
}

// ---------------------------------------------------------------------------
// Block elimination

struct BlockEliminationTrace {
    std::vector<BlockMatrix> P_sequence; ///< P_1 ... P_m
    std::size_t final_rank = 0;
};

namespace detail {

// Inverts each off-diagonal block in turn, reusing the previous inverse when
// consecutive blocks are equal (the usual case: one constant X).
class BlockInverter {
public:
    const BlockMatrix& operator()(const BlockMatrix& X, std::size_t br, std::size_t bc) {
        if (!last_ || !(*last_ == X)) {
            try {
                inv_ = invert(X);
            } catch (const Error&) {
                throw Error(ErrorCode::SingularX, "off-diagonal block (" + std::to_string(br + 1) + "," +
                                                      std::to_string(bc + 1) + ") is singular");
            }
            last_ = X;
        }
        return inv_;
    }

private:
    std::optional<BlockMatrix> last_;
    BlockMatrix inv_;
};

inline void require_tridiagonal(const RuleMatrix& T) {
    if (!T.is_block_tridiagonal()) {
        const auto pos = T.outlying_blocks().front();
        throw Error(ErrorCode::ShapeMismatch, "nonzero block (" + std::to_string(pos.first + 1) + "," +
                                                  std::to_string(pos.second + 1) + ") off the tridiagonal band");
    }
}

} // namespace detail

/**
 * Rank of a block tridiagonal T whose superdiagonal blocks are invertible.
 *
 * Starting from the last block row, each step multiplies the block row above
 * by -P_k X^{-1} and adds it to the last row, clearing one more block column:
 *
 *   P_1 = A_1,  P_2 = B_1 - A_1 X^{-1} A_2,
 *   P_k = -P_{k-2} X^{-1} B_{k-1} - P_{k-1} X^{-1} A_k,
 *
 * with blocks labelled bottom-up (A_1 the last diagonal block, B_1 the last
 * subdiagonal block). The other m-1 block rows keep full rank through their
 * invertible X blocks, so rank(T) = (m-1)n + rank(P_m).
 */
inline BlockEliminationTrace block_rank_lower(const RuleMatrix& T) {
    detail::require_tridiagonal(T);
    const std::size_t m = T.dims().m;
    const std::size_t n = T.dims().n;
    detail::BlockInverter inverse;

    BlockEliminationTrace trace;
    BlockMatrix hi = T.block(m - 1, m - 1);
    BlockMatrix lo = T.block(m - 1, m - 2);
    trace.P_sequence.push_back(hi);
    for (std::size_t r = m - 1; r-- > 0;) {
        const BlockMatrix K = hi * inverse(T.block(r, r + 1), r, r + 1);
        BlockMatrix next_hi = lo - K * T.block(r, r);
        BlockMatrix next_lo = r > 0 ? -(K * T.block(r, r - 1)) : BlockMatrix(T.field(), n, n);
        hi = std::move(next_hi);
        lo = std::move(next_lo);
        trace.P_sequence.push_back(hi);
    }
    trace.final_rank = (m - 1) * n + rank(hi);
    return trace;
}

/// Mirror of block_rank_lower for invertible subdiagonal blocks: clears the
/// first block row from left to right and ends with P_m in the last column.
inline BlockEliminationTrace block_rank_upper(const RuleMatrix& T) {
    detail::require_tridiagonal(T);
    const std::size_t m = T.dims().m;
    const std::size_t n = T.dims().n;
    detail::BlockInverter inverse;

    BlockEliminationTrace trace;
    BlockMatrix lo = T.block(0, 0);
    BlockMatrix hi = T.block(0, 1);
    trace.P_sequence.push_back(lo);
    for (std::size_t r = 1; r < m; ++r) {
        const BlockMatrix K = lo * inverse(T.block(r, r - 1), r, r - 1);
        BlockMatrix next_lo = hi - K * T.block(r, r);
        BlockMatrix next_hi = r + 1 < m ? -(K * T.block(r, r + 1)) : BlockMatrix(T.field(), n, n);
        lo = std::move(next_lo);
        hi = std::move(next_hi);
        trace.P_sequence.push_back(lo);
    }
    trace.final_rank = (m - 1) * n + rank(lo);
    return trace;
}

// ---------------------------------------------------------------------------
// Closed-form determinants

namespace detail {

inline Residue sign_power(FieldSpec F, std::size_t k) { return k % 2 == 0 ? 1 % F.p() : F.neg(1 % F.p()); }

// Determinant of the k x k tridiagonal matrix with -1 on the diagonal, d above
// and h below, as a binomial sum in (1 - 4hd) divided by 2^k. Odd p only.
inline Residue delta(FieldSpec F, std::size_t k, Residue d, Residue h) {
    // Row k+1 of Pascal's triangle, mod p.
    std::vector<Residue> binom(k + 2, 0);
    binom[0] = 1 % F.p();
    for (std::size_t row = 1; row <= k + 1; ++row)
        for (std::size_t j = row; j > 0; --j) binom[j] = F.add(binom[j], binom[j - 1]);

    const Residue disc = F.sub(1 % F.p(), F.mul(4 % F.p(), F.mul(h, d)));
    Residue total = 0;
    Residue disc_pow = 1 % F.p();
    for (std::size_t j = 0; 2 * j <= k; ++j) {
        const Residue term = F.mul(F.mul(binom[2 * j + 1], sign_power(F, k - 2 * j)), disc_pow);
        total = F.add(total, term);
        disc_pow = F.mul(disc_pow, disc);
    }
    return F.mul(total, F.pow(F.inv(2 % F.p()), k));
}

} // namespace detail

/**
 * det(A_1 - I) for the n x n block with -1 on the diagonal, d above, h below
 * and h + d at (n, n-1).
 *
 *   d = 0                  (-1)^n
 *   d != 0, h = 0          (-1)^(n-1) (d^2 - 1)
 *   dh != 0, d + h = -1    -h^(n-1)
 *   otherwise              -D(n-1) - d(h+d) D(n-2), D from detail::delta
 *
 * The last branch divides by 2^k and throws EvenCharacteristic for p = 2.
 */
inline FieldElement det_A1_minus_I_closed(FieldSpec F, std::size_t n, Residue d, Residue h) {
    if (n < 3) throw Error(ErrorCode::TooSmall, "block dimension " + std::to_string(n));
    d = F.reduce(d);
    h = F.reduce(h);
    const Residue minus_one = F.neg(1 % F.p());
    if (d == 0) return {F, detail::sign_power(F, n)};
    if (h == 0) return {F, F.mul(detail::sign_power(F, n - 1), F.sub(F.mul(d, d), 1 % F.p()))};
    if (F.add(d, h) == minus_one) return {F, F.neg(F.pow(h, n - 1))};
    if (F.p() == 2) throw Error(ErrorCode::EvenCharacteristic, "binomial form divides by 2^n");
    const Residue d1 = detail::delta(F, n - 1, d, h);
    const Residue d2 = detail::delta(F, n - 2, d, h);
    return {F, F.sub(F.neg(d1), F.mul(F.mul(d, F.add(h, d)), d2))};
}

/**
 * det(B_1) for the n x n block with f on the diagonal, e above, g below and
 * g + e at (n, n-1). Only the closed cases are handled; anything else throws
 * CaseNotCovered so the caller can fall back to eliminate().
 *
 *   e = 0                  f^n
 *   e != 0, g = 0          f^(n-2) (f^2 - e^2)
 *   eg != 0, f = e + g     (e + g) g^(n-1)
 */
inline FieldElement det_B1_closed(FieldSpec F, std::size_t n, Residue e, Residue f, Residue g) {
    if (n < 3) throw Error(ErrorCode::TooSmall, "block dimension " + std::to_string(n));
    e = F.reduce(e);
    f = F.reduce(f);
    g = F.reduce(g);
    if (e == 0) return {F, F.pow(f, n)};
    if (g == 0) return {F, F.mul(F.pow(f, n - 2), F.sub(F.mul(f, f), F.mul(e, e)))};
    if (f == F.add(e, g)) return {F, F.mul(F.add(e, g), F.pow(g, n - 1))};
    throw Error(ErrorCode::CaseNotCovered, "no closed form for these e, f, g");
}

} // namespace lcaz
