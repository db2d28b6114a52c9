#pragma once

/**
 * @file dynamics.hpp
 * @brief Reversibility, inverse evolution, fixed points, nilpotency,
 * Garden-of-Eden census and orbit detection for a rule matrix.
 */

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/container_hash/hash.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "linalg.hpp"
#include "rulematrix.hpp"
#include "stepper.hpp"

namespace lcaz {

using BigInt = boost::multiprecision::cpp_int;

enum class RankMethod { Block, Dense };

inline constexpr std::string_view method_name(RankMethod m) noexcept {
    return m == RankMethod::Block ? "block" : "dense";
}

struct ReversibilityReport {
    std::size_t rank = 0;
    bool full_rank = false;
    RankMethod method = RankMethod::Dense;
    bool inverse_available = false;
    std::optional<DenseMatrix> inverse;
    LatticeDims dims;
};

/**
 * Rank of T and, when T is invertible, its inverse.
 *
 * Block tridiagonal matrices go through block_rank_lower, or
 * block_rank_upper when a superdiagonal block is singular. For phi with known
 * coefficients the closed-form det(B_1) decides up front whether the lower
 * variant can run. Everything else uses dense elimination.
 */
inline ReversibilityReport reversibility(const RuleMatrix& T) {
    ReversibilityReport report;
    report.dims = T.dims();
    const std::size_t N = T.size();

    bool done = false;
    if (T.is_block_tridiagonal() && T.dims().m >= 2) {
        bool try_lower = true;
        if (T.label() == "phi" && T.coefficients()) {
            const auto& k = *T.coefficients();
            try {
                try_lower = !det_B1_closed(T.field(), T.dims().n, k[Weight::e], k[Weight::f], k[Weight::g]).is_zero();
            } catch (const Error&) {
            }
        }
        if (try_lower) {
            try {
                report.rank = block_rank_lower(T).final_rank;
                done = true;
            } catch (const Error& err) {
                if (err.code() != ErrorCode::SingularX) throw;
            }
        }
        if (!done) {
            try {
                report.rank = block_rank_upper(T).final_rank;
                done = true;
            } catch (const Error& err) {
                if (err.code() != ErrorCode::SingularX) throw;
            }
        }
        if (done) report.method = RankMethod::Block;
    }

    const DenseMatrix D = T.dense();
    if (!done) report.rank = rank(D);
    report.full_rank = report.rank == N;
    if (report.full_rank) {
        report.inverse = invert(D);
        report.inverse_available = true;
    }
    return report;
}

inline Configuration step_backward(const Configuration& c, const ReversibilityReport& report) {
    if (!report.inverse_available || !report.inverse)
        throw Error(ErrorCode::NotReversible, "rule matrix has rank " + std::to_string(report.rank) + " < " +
                                                  std::to_string(report.dims.cells()));
    if (!(c.dims() == report.dims)) throw Error(ErrorCode::DimensionMismatch, "configuration size differs from T");
    return unflatten(report.inverse->apply(flatten(c)), c.dims());
}

// ---------------------------------------------------------------------------

struct FixedPointSet {
    std::size_t dimension = 0;
    std::vector<std::vector<Residue>> basis;
};

/// Nullspace of T - I.
inline FixedPointSet fixed_points(const RuleMatrix& T) {
    const DenseMatrix D = T.dense();
    const EliminationResult e = eliminate(D - DenseMatrix::identity(T.field(), T.size()));
    return {e.nullspace_basis.size(), e.nullspace_basis};
}

struct NilpotencyReport {
    bool nilpotent = false;
    std::size_t index = 0; ///< least k with T^k = 0; 0 when not nilpotent
};

/// T is nilpotent iff T^N = 0 for N = mn. Squares T up to the first power of
/// two >= N, then recovers the least index by binary search over the stored
/// powers T^(2^i).
inline NilpotencyReport is_nilpotent(const RuleMatrix& T) {
    const std::size_t N = T.size();
    std::vector<DenseMatrix> powers{T.dense()};
    std::size_t reach = 1;
    while (reach < N && !powers.back().is_zero()) {
        powers.push_back(powers.back() * powers.back());
        reach *= 2;
    }
    if (!powers.back().is_zero()) return {};

    // Largest k with T^k != 0, built bit by bit from the high end.
    std::optional<DenseMatrix> acc; // T^k, empty while k = 0
    std::size_t k = 0;
    for (std::size_t i = powers.size(); i-- > 0;) {
        DenseMatrix candidate = acc ? *acc * powers[i] : powers[i];
        if (!candidate.is_zero()) {
            acc = std::move(candidate);
            k += std::size_t{1} << i;
        }
    }
    return {true, k + 1};
}

// ---------------------------------------------------------------------------

struct GoeReport {
    std::size_t image_size_log_p = 0; ///< rank of T
    BigInt goe_count = 0;             ///< p^(mn) - p^rank
    std::optional<Configuration> witness;
};

inline BigInt big_pow(std::uint32_t base, std::size_t exp) {
    BigInt r = 1;
    for (std::size_t i = 0; i < exp; ++i) r *= base;
    return r;
}

/// Counts configurations with no predecessor. The witness is the first unit
/// configuration outside the image of T: e_k lies outside the column space
/// iff some left-nullspace vector of T is nonzero in position k.
inline GoeReport goe_census(const RuleMatrix& T) {
    const std::size_t N = T.size();
    const DenseMatrix D = T.dense();
    const EliminationResult left = eliminate(D.transpose());
    GoeReport report;
    report.image_size_log_p = left.rank;
    report.goe_count = big_pow(T.field().p(), N) - big_pow(T.field().p(), left.rank);
    if (left.rank < N) {
        std::size_t first = N;
        for (const auto& y : left.nullspace_basis)
            for (std::size_t k = 0; k < first; ++k)
                if (y[k] != 0) {
                    first = k;
                    break;
                }
        std::vector<Residue> w(N, 0);
        w[first] = 1 % T.field().p();
        report.witness = Configuration(T.field(), T.dims(), std::move(w));
    }
    return report;
}

// ---------------------------------------------------------------------------

struct OrbitReport {
    std::vector<Configuration> trajectory; ///< x_0, x_1, ... up to the first repeat (or the memory cap)
    std::size_t transient = 0;             ///< index of the first state on the cycle
    std::size_t cycle_length = 0;
    bool determined = false; ///< false when no repeat was found within max_steps
};

/**
 * Iterates step from c and finds the first repeated state.
 *
 * States are kept in a hash map while fewer than memory_cap have been seen.
 * Past the cap, Floyd's tortoise and hare restarts from c with O(1) memory.
 * The result is determined when the first repeat occurs within max_steps
 * applications of step.
 */
inline OrbitReport orbit(const Configuration& c, const RuleCoefficients& coeffs, const BoundarySpec& spec,
                         std::size_t max_steps, std::size_t memory_cap = std::size_t{1} << 16) {
    if (max_steps < 1) throw Error(ErrorCode::OutOfRange, "max_steps must be at least 1");
    using Key = std::vector<Residue>;
    std::unordered_map<Key, std::size_t, boost::hash<Key>> seen;
    OrbitReport report;

    Configuration x = c;
    for (std::size_t t = 0;; ++t) {
        if (const auto it = seen.find(x.cells()); it != seen.end()) {
            report.transient = it->second;
            report.cycle_length = t - it->second;
            report.determined = true;
            return report;
        }
        if (t == max_steps) return report;
        if (seen.size() >= memory_cap) break;
        seen.emplace(x.cells(), t);
        report.trajectory.push_back(x);
        x = step(x, coeffs, spec);
    }

    // Floyd: the hare moves two steps per round; give it 2 * max_steps.
    auto f = [&](const Configuration& y) { return step(y, coeffs, spec); };
    Configuration tortoise = f(c);
    Configuration hare = f(f(c));
    std::size_t rounds = 1;
    while (!(tortoise == hare)) {
        if (rounds >= max_steps) return report;
        tortoise = f(tortoise);
        hare = f(f(hare));
        ++rounds;
    }
    std::size_t mu = 0;
    tortoise = c;
    while (!(tortoise == hare)) {
        tortoise = f(tortoise);
        hare = f(hare);
        ++mu;
    }
    std::size_t lambda = 1;
    hare = f(tortoise);
    while (!(tortoise == hare)) {
        hare = f(hare);
        ++lambda;
    }
    report.transient = mu;
    report.cycle_length = lambda;
    report.determined = mu + lambda <= max_steps;
    return report;
}

} // namespace lcaz
