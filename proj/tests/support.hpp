#pragma once

// Seeded generators and brute-force oracles shared by the test suites.

#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "lcaz.hpp"

namespace lcaz::testkit {

inline constexpr std::array<std::int64_t, 3> small_primes = {2, 3, 5};

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
    }

    Residue residue(FieldSpec F) { return static_cast<Residue>(uniform(0, F.p() - 1)); }
    Residue nonzero(FieldSpec F) { return static_cast<Residue>(uniform(1, F.p() - 1)); }

    RuleCoefficients coeffs(FieldSpec F) {
        std::array<std::int64_t, 8> w{};
        for (auto& v : w) v = residue(F);
        return RuleCoefficients(F, w);
    }

    Configuration config(FieldSpec F, LatticeDims dims) {
        Configuration c(F, dims);
        for (auto& v : c.cells()) v = residue(F);
        return c;
    }

    DenseMatrix matrix(FieldSpec F, std::size_t rows, std::size_t cols) {
        DenseMatrix M(F, rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) M(r, c) = residue(F);
        return M;
    }

    DenseMatrix invertible(FieldSpec F, std::size_t n) {
        for (;;) {
            DenseMatrix M = matrix(F, n, n);
            if (!determinant(M).is_zero()) return M;
        }
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Every configuration over the lattice, in lexicographic order of the cells.
template <class Fn>
void for_each_configuration(FieldSpec F, LatticeDims dims, Fn&& fn) {
    Configuration c(F, dims);
    auto& cells = c.cells();
    for (;;) {
        fn(c);
        std::size_t k = 0;
        while (k < cells.size() && cells[k] == F.p() - 1) cells[k++] = 0;
        if (k == cells.size()) return;
        ++cells[k];
    }
}

/// Number of distinct images of step over all configurations.
inline std::size_t count_images(FieldSpec F, LatticeDims dims, const RuleCoefficients& k, const BoundarySpec& spec) {
    std::set<std::vector<Residue>> images;
    for_each_configuration(F, dims, [&](const Configuration& c) { images.insert(step(c, k, spec).cells()); });
    return images.size();
}

inline std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
}

} // namespace lcaz::testkit
