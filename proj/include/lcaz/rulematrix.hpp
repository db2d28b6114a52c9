#pragma once

/**
 * @file rulematrix.hpp
 * @brief The mn x mn rule matrix T with T * flatten(c) = flatten(step(c)).
 *
 * Row (i-1)n+j of T holds the weights with which cell (i, j) reads the
 * previous state, so T is an m x m grid of n x n blocks. Block (r, r) couples
 * a lattice row to itself, (r, r+1) to the row below, (r, r-1) to the row
 * above. With the shift matrices P (superdiagonal) and Q (subdiagonal):
 *
 *   A = dP + hQ          same row
 *   B = fI + eP + gQ     row below
 *   C = bI + cP + aQ     row above
 *
 * Boundary conditions add single-entry corrections eps(i,j) to these blocks
 * and, for periodic sides, a wrap-around corner block.
 */

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "boundary.hpp"
#include "matrix.hpp"
#include "stepper.hpp"

namespace lcaz {

using BlockMatrix = DenseMatrix;

class RuleMatrix {
public:
    using BlockIndex = std::pair<std::size_t, std::size_t>; // 0-indexed (block row, block column)

    RuleMatrix(FieldSpec field, LatticeDims dims, std::string label = {})
        : field_(field), dims_(dims), label_(std::move(label)), zero_(field, dims.n, dims.n) {}

    /// Zero blocks are dropped; every stored block is n x n.
    static RuleMatrix from_blocks(FieldSpec field, LatticeDims dims, std::map<BlockIndex, BlockMatrix> blocks,
                                  std::string label = {}) {
        RuleMatrix T(field, dims, std::move(label));
        for (auto& [pos, blk] : blocks) T.set_block(pos.first, pos.second, std::move(blk));
        return T;
    }

    static RuleMatrix from_dense(const DenseMatrix& dense, LatticeDims dims, std::string label = {}) {
        if (dense.rows() != dims.cells() || dense.cols() != dims.cells())
            throw Error(ErrorCode::DimensionMismatch, "dense matrix is not mn x mn");
        RuleMatrix T(dense.field(), dims, std::move(label));
        const std::size_t n = dims.n;
        for (std::size_t br = 0; br < dims.m; ++br) {
            for (std::size_t bc = 0; bc < dims.m; ++bc) {
                BlockMatrix blk(dense.field(), n, n);
                for (std::size_t r = 0; r < n; ++r)
                    for (std::size_t c = 0; c < n; ++c) blk(r, c) = dense(br * n + r, bc * n + c);
                T.set_block(br, bc, std::move(blk));
            }
        }
        return T;
    }

    [[nodiscard]] FieldSpec field() const noexcept { return field_; }
    [[nodiscard]] const LatticeDims& dims() const noexcept { return dims_; }
    [[nodiscard]] std::size_t size() const noexcept { return dims_.cells(); }
    [[nodiscard]] const std::string& label() const noexcept { return label_; }
    [[nodiscard]] const std::optional<RuleCoefficients>& coefficients() const noexcept { return coeffs_; }
    void set_coefficients(const RuleCoefficients& k) { coeffs_ = k; }

    void set_block(std::size_t br, std::size_t bc, BlockMatrix blk) {
        require_same_field(field_, blk.field());
        if (br >= dims_.m || bc >= dims_.m) throw Error(ErrorCode::DimensionMismatch, "block index out of range");
        if (blk.rows() != dims_.n || blk.cols() != dims_.n)
            throw Error(ErrorCode::DimensionMismatch, "block is not n x n");
        if (blk.is_zero())
            blocks_.erase({br, bc});
        else
            blocks_[{br, bc}] = std::move(blk);
    }

    [[nodiscard]] bool has_block(std::size_t br, std::size_t bc) const { return blocks_.count({br, bc}) != 0; }

    /// Stored block, or the shared zero block.
    [[nodiscard]] const BlockMatrix& block(std::size_t br, std::size_t bc) const {
        const auto it = blocks_.find({br, bc});
        return it == blocks_.end() ? zero_ : it->second;
    }

    [[nodiscard]] const std::map<BlockIndex, BlockMatrix>& blocks() const noexcept { return blocks_; }

    /// True when every nonzero block sits on the diagonal or next to it.
    [[nodiscard]] bool is_block_tridiagonal() const {
        for (const auto& [pos, blk] : blocks_) {
            const auto d = pos.first > pos.second ? pos.first - pos.second : pos.second - pos.first;
            if (d > 1) return false;
        }
        return true;
    }

    /// Nonzero blocks off the three central diagonals.
    [[nodiscard]] std::vector<BlockIndex> outlying_blocks() const {
        std::vector<BlockIndex> out;
        for (const auto& [pos, blk] : blocks_) {
            const auto d = pos.first > pos.second ? pos.first - pos.second : pos.second - pos.first;
            if (d > 1) out.push_back(pos);
        }
        return out;
    }

    [[nodiscard]] DenseMatrix dense() const {
        const std::size_t n = dims_.n;
        DenseMatrix D(field_, size(), size());
        for (const auto& [pos, blk] : blocks_)
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) D(pos.first * n + r, pos.second * n + c) = blk(r, c);
        return D;
    }

    [[nodiscard]] StateVector apply(const StateVector& x) const {
        require_same_field(field_, x.field);
        if (x.size() != size()) throw Error(ErrorCode::DimensionMismatch, "state vector length");
        const std::size_t n = dims_.n;
        std::vector<std::uint64_t> acc(size(), 0);
        for (const auto& [pos, blk] : blocks_)
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    acc[pos.first * n + r] =
                        (acc[pos.first * n + r] + std::uint64_t{blk(r, c)} * x.entries[pos.second * n + c]) % field_.p();
        StateVector y{field_, std::vector<Residue>(size())};
        for (std::size_t k = 0; k < size(); ++k) y.entries[k] = static_cast<Residue>(acc[k]);
        return y;
    }

private:
    FieldSpec field_;
    LatticeDims dims_;
    std::string label_;
    std::optional<RuleCoefficients> coeffs_;
    std::map<BlockIndex, BlockMatrix> blocks_;
    BlockMatrix zero_;
};

/// n x n unit matrix with a single 1 at (i, j), 1-indexed.
inline BlockMatrix unit_block(FieldSpec field, std::size_t n, std::size_t i, std::size_t j) {
    BlockMatrix E(field, n, n);
    E(i - 1, j - 1) = 1 % field.p();
    return E;
}

struct BlockPrimitives {
    BlockMatrix P; ///< ones on the superdiagonal
    BlockMatrix Q; ///< ones on the subdiagonal
    BlockMatrix I;
    BlockMatrix A; ///< dP + hQ
    BlockMatrix B; ///< fI + eP + gQ
    BlockMatrix C; ///< bI + cP + aQ
};

inline BlockPrimitives block_primitives(std::size_t n, const RuleCoefficients& k) {
    if (n < 3) throw Error(ErrorCode::TooSmall, "block dimension " + std::to_string(n));
    const FieldSpec F = k.field();
    BlockMatrix P(F, n, n), Q(F, n, n);
    for (std::size_t r = 0; r + 1 < n; ++r) {
        P(r, r + 1) = 1 % F.p();
        Q(r + 1, r) = 1 % F.p();
    }
    const BlockMatrix I = BlockMatrix::identity(F, n);
    using W = Weight;
    BlockMatrix A = k[W::d] * P + k[W::h] * Q;
    BlockMatrix B = k[W::f] * I + k[W::e] * P + k[W::g] * Q;
    BlockMatrix C = k[W::b] * I + k[W::c] * P + k[W::a] * Q;
    return {P, Q, I, A, B, C};
}

/// (a,b,c,d,e,f,g,h) -> (e,f,g,h,a,b,c,d): the stencil turned half a revolution.
inline RuleCoefficients rotate180_coeffs(const RuleCoefficients& k) {
    const auto& w = k.values();
    return RuleCoefficients(k.field(), {w[4], w[5], w[6], w[7], w[0], w[1], w[2], w[3]});
}

/// Reverses both the row and the column order.
inline DenseMatrix rotate180(const DenseMatrix& M) {
    DenseMatrix R(M.field(), M.rows(), M.cols());
    for (std::size_t r = 0; r < M.rows(); ++r)
        for (std::size_t c = 0; c < M.cols(); ++c) R(M.rows() - 1 - r, M.cols() - 1 - c) = M(r, c);
    return R;
}

namespace detail {

// Block-tridiagonal layout: a default block per diagonal plus overrides.
struct TridiagonalLayout {
    BlockMatrix diag, super, sub;
    std::map<RuleMatrix::BlockIndex, BlockMatrix> overrides; // 1-indexed block positions

    RuleMatrix assemble(FieldSpec F, LatticeDims dims, std::string label) const {
        std::map<RuleMatrix::BlockIndex, BlockMatrix> blocks;
        const std::size_t m = dims.m;
        for (std::size_t r = 0; r < m; ++r) {
            blocks.emplace(RuleMatrix::BlockIndex{r, r}, diag);
            if (r + 1 < m) blocks.emplace(RuleMatrix::BlockIndex{r, r + 1}, super);
            if (r > 0) blocks.emplace(RuleMatrix::BlockIndex{r, r - 1}, sub);
        }
        for (const auto& [pos, blk] : overrides) blocks.insert_or_assign({pos.first - 1, pos.second - 1}, blk);
        return RuleMatrix::from_blocks(F, dims, std::move(blocks), std::move(label));
    }
};

} // namespace detail

/**
 * Closed-form block layout for a named spec.
 *
 * Covers the nine mixed/rotated specs (phi, psi, tau, sigma, lambda, xi,
 * phi90, phi180, phi270) and the four uniform ones (nb, pb, ab, rb).
 * Two printed layouts are corrected here. For sigma, the block combining the
 * adiabatic bottom row sits on the diagonal at (m, m), not at (m, 1). For
 * lambda, the top-left diagonal block is the plain A_rp, and the right-wrap
 * term of the first super-diagonal block lands in column 1.
 */
inline RuleMatrix build_theorem_matrix(std::string_view spec_name, LatticeDims dims, const RuleCoefficients& k) {
    if (dims.m < 3 || dims.n < 3) throw Error(ErrorCode::TooSmall, "theorem matrices need m, n >= 3");
    const BoundarySpec spec = named_spec(spec_name);
    const std::string& name = spec.name;
    const FieldSpec F = k.field();
    const std::size_t n = dims.n;
    const std::size_t m = dims.m;
    const BlockPrimitives prim = block_primitives(n, k);
    const BlockMatrix& A = prim.A;
    const BlockMatrix& B = prim.B;
    const BlockMatrix& C = prim.C;
    auto eps = [&](std::size_t i, std::size_t j) { return unit_block(F, n, i, j); };
    using W = Weight;
    const Residue a = k[W::a], c = k[W::c], d = k[W::d];
    const Residue e = k[W::e], g = k[W::g], h = k[W::h];
    auto sum = [&](Residue x, Residue y) { return F.add(x, y); };

    detail::TridiagonalLayout L;

    if (name == "nb") {
        L = {A, B, C, {}};
    } else if (name == "pb") {
        const auto Ap = A + d * eps(n, 1) + h * eps(1, n);
        const auto Bp = B + e * eps(n, 1) + g * eps(1, n);
        const auto Cp = C + c * eps(n, 1) + a * eps(1, n);
        L = {Ap, Bp, Cp, {{{m, 1}, Bp}, {{1, m}, Cp}}};
    } else if (name == "ab") {
        const auto Aa = A + d * eps(n, n) + h * eps(1, 1);
        const auto Ba = B + e * eps(n, n) + g * eps(1, 1);
        const auto Ca = C + c * eps(n, n) + a * eps(1, 1);
        L = {Aa, Ba, Ca, {{{1, 1}, Aa + Ca}, {{m, m}, Aa + Ba}}};
    } else if (name == "rb") {
        const auto Ar = A + d * eps(n, n - 1) + h * eps(1, 2);
        const auto Br = B + e * eps(n, n - 1) + g * eps(1, 2);
        const auto Cr = C + c * eps(n, n - 1) + a * eps(1, 2);
        L = {Ar, Br, Cr, {{{1, 2}, Br + Cr}, {{m, m - 1}, Br + Cr}}};
    } else if (name == "phi") {
        const auto A1 = A + d * eps(n, n - 1);
        const auto B1 = B + e * eps(n, n - 1);
        const auto C1 = C + c * eps(n, n - 1);
        const auto D1 = B + C + sum(c, e) * eps(n, n - 1) + g * eps(1, 2);
        L = {A1, B1, C1, {{{m, m - 1}, D1}}};
    } else if (name == "psi") {
        const auto Anp = A + d * eps(n, 1);
        const auto Bnp = B + e * eps(n, 1);
        const auto Cnp = C + c * eps(n, 1);
        const auto Dnp = B + e * eps(n, 1) + g * eps(1, n);
        L = {Anp, Bnp, Cnp, {{{m, 1}, Dnp}}};
    } else if (name == "tau") {
        const auto Ana = A + d * eps(n, n);
        const auto Bna = B + e * eps(n, n);
        const auto Cna = C + c * eps(n, n);
        const auto Dna = A + B + g * eps(1, 1) + sum(d, e) * eps(n, n);
        L = {Ana, Bna, Cna, {{{m, m}, Dna}}};
    } else if (name == "sigma") {
        const auto Ara = A + h * eps(1, 2) + d * eps(n, n);
        const auto Bra = B + g * eps(1, 2) + e * eps(n, n);
        const auto Cra = C + a * eps(1, 2) + c * eps(n, n);
        const auto Dra = A + B + g * eps(1, 1) + h * eps(1, 2) + sum(d, e) * eps(n, n);
        const auto Era = B + C + sum(a, g) * eps(1, 2) + c * eps(n, n - 1) + e * eps(n, n);
        L = {Ara, Bra, Cra, {{{1, 2}, Era}, {{m, m}, Dra}}};
    } else if (name == "lambda") {
        const auto Arp = A + h * eps(1, 2) + d * eps(n, 1);
        const auto Brp = B + g * eps(1, 2) + e * eps(n, 1);
        const auto Crp = C + a * eps(1, 2) + c * eps(n, 1);
        const auto Drp = B + e * eps(n, 1) + g * eps(1, n);
        const auto Erp = B + C + sum(a, g) * eps(1, 2) + c * eps(n, n - 1) + e * eps(n, 1);
        L = {Arp, Brp, Crp, {{{1, 2}, Erp}, {{m, 1}, Drp}}};
    } else if (name == "xi") {
        const auto Apa = A + h * eps(1, n) + d * eps(n, n);
        const auto Bpa = B + g * eps(1, n) + e * eps(n, n);
        const auto Cpa = C + a * eps(1, n) + c * eps(n, n);
        const auto Dpa = A + B + g * eps(1, 1) + h * eps(1, n) + sum(d, e) * eps(n, n);
        const auto Epa = C + a * eps(1, n) + c * eps(n, 1);
        L = {Apa, Bpa, Cpa, {{{m, m}, Dpa}, {{1, m}, Epa}}};
    } else if (name == "phi90") {
        const auto A2 = A + h * eps(1, 2);
        const auto B2 = B + g * eps(1, 2);
        const auto C2 = C + a * eps(1, 2);
        const auto D2 = B + C + sum(a, g) * eps(1, 2);
        const auto F2 = B + sum(a, g) * eps(1, 2);
        L = {A2, B2, C2, {{{1, 2}, F2}, {{m, m - 1}, D2}}};
    } else if (name == "phi180") {
        const auto A3 = A + h * eps(1, 2);
        const auto B3 = B + g * eps(1, 2);
        const auto C3 = C + a * eps(1, 2);
        const auto D3 = B + C + sum(a, g) * eps(1, 2) + c * eps(n, n - 1);
        L = {A3, B3, C3, {{{1, 2}, D3}}};
    } else if (name == "phi270") {
        const auto A4 = A + d * eps(n, n - 1);
        const auto B4 = B + e * eps(n, n - 1);
        const auto C4 = C + c * eps(n, n - 1);
        const auto D4 = B + C + sum(c, e) * eps(n, n - 1);
        const auto F4 = C + sum(c, e) * eps(n, n - 1);
        L = {A4, B4, C4, {{{1, 2}, D4}, {{m, m - 1}, F4}}};
    } else {
        throw Error(ErrorCode::UnknownName, "no closed-form matrix for '" + std::string(spec_name) + "'");
    }

    RuleMatrix T = L.assemble(F, dims, name);
    T.set_coefficients(k);
    return T;
}

/// Column (i-1)n+j is flatten(step(e_{i,j})): the matrix read off the stepper.
inline RuleMatrix build_from_resolver(const BoundarySpec& spec, LatticeDims dims, const RuleCoefficients& k) {
    if (dims.m < 3 || dims.n < 3) throw Error(ErrorCode::TooSmall, "rule matrices need m, n >= 3");
    const FieldSpec F = k.field();
    DenseMatrix D(F, dims.cells(), dims.cells());
    for (std::size_t i = 1; i <= dims.m; ++i) {
        for (std::size_t j = 1; j <= dims.n; ++j) {
            const Configuration image = step(Configuration::unit(F, dims, i, j), k, spec);
            const std::size_t col = dims.index(i, j);
            for (std::size_t r = 0; r < dims.cells(); ++r) D(r, col) = image.cells()[r];
        }
    }
    RuleMatrix T = RuleMatrix::from_dense(D, dims, spec.name);
    T.set_coefficients(k);
    return T;
}

/// Dense CSV of integers, one matrix row per line.
inline void write_csv(std::ostream& out, const DenseMatrix& M) {
    for (std::size_t r = 0; r < M.rows(); ++r) {
        for (std::size_t c = 0; c < M.cols(); ++c) out << (c ? "," : "") << M(r, c);
        out << '\n';
    }
}

} // namespace lcaz
