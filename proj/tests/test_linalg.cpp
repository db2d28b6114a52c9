#include <gtest/gtest.h>

#include "support.hpp"

using namespace lcaz;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::ParseError;
}

RuleMatrix all_ones_phi() {
    return build_theorem_matrix("phi", make_dims(4, 3), RuleCoefficients::uniform(make_field(3), 1));
}

DenseMatrix A1_minus_I(FieldSpec F, std::size_t n, Residue d, Residue h) {
    const auto prim = block_primitives(n, RuleCoefficients(F, {0, 0, 0, d, 0, 0, 0, h}));
    return prim.A + d * unit_block(F, n, n, n - 1) - DenseMatrix::identity(F, n);
}

DenseMatrix B1(FieldSpec F, std::size_t n, Residue e, Residue f, Residue g) {
    const auto prim = block_primitives(n, RuleCoefficients(F, {0, 0, 0, 0, e, f, g, 0}));
    return prim.B + e * unit_block(F, n, n, n - 1);
}

// Random block tridiagonal matrix whose superdiagonal (or subdiagonal) blocks are invertible.
RuleMatrix random_tridiagonal(testkit::Gen& gen, FieldSpec F, LatticeDims d, bool invertible_super) {
    RuleMatrix T(F, d);
    const bool constant = gen.uniform(0, 1) == 1;
    const DenseMatrix X = gen.invertible(F, d.n);
    for (std::size_t r = 0; r < d.m; ++r) {
        T.set_block(r, r, gen.matrix(F, d.n, d.n));
        if (r + 1 < d.m) {
            const DenseMatrix inv_block = constant ? X : gen.invertible(F, d.n);
            const DenseMatrix free_block = gen.matrix(F, d.n, d.n);
            T.set_block(r, r + 1, invertible_super ? inv_block : free_block);
            T.set_block(r + 1, r, invertible_super ? free_block : inv_block);
        }
    }
    return T;
}

} // namespace

TEST(Eliminate, Identity) {
    const auto F = make_field(3);
    const auto e = eliminate(DenseMatrix::identity(F, 4));
    EXPECT_EQ(e.rank, 4u);
    EXPECT_EQ(e.det->value(), 1u);
    EXPECT_TRUE(e.nullspace_basis.empty());
    EXPECT_EQ(e.pivots, (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(Eliminate, Zero) {
    const auto F = make_field(3);
    const auto e = eliminate(DenseMatrix(F, 3, 3));
    EXPECT_EQ(e.rank, 0u);
    EXPECT_TRUE(e.det->is_zero());
    ASSERT_EQ(e.nullspace_basis.size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) {
        std::vector<Residue> unit(3, 0);
        unit[k] = 1;
        EXPECT_EQ(e.nullspace_basis[k], unit);
    }
}

TEST(Eliminate, RectangularHasNoDeterminant) {
    const auto F = make_field(5);
    const auto e = eliminate(DenseMatrix(F, {{1, 2, 3}, {2, 4, 0}}));
    EXPECT_EQ(e.rank, 2u);
    EXPECT_FALSE(e.det.has_value());
    EXPECT_EQ(e.nullspace_basis.size(), 1u);
}

TEST(Eliminate, DeterminantBySwap) {
    const auto F = make_field(7);
    EXPECT_EQ(determinant(DenseMatrix(F, {{0, 1}, {1, 0}})).value(), 6u);
    EXPECT_EQ(determinant(DenseMatrix(F, {{2, 3}, {1, 4}})).value(), 5u);
}

TEST(Eliminate, AllOnesPhi4x3OverZ3IsFullRank) {
    const auto T = all_ones_phi();
    const auto e = eliminate(T.dense());
    EXPECT_EQ(e.rank, 12u);
    EXPECT_EQ(e.det->value(), 1u);
}

TEST(Eliminate, ExhaustiveImageCountAgrees) {
    // The image of the all-ones phi rule on 4x3 over Z_3 has 3^12 elements.
    const auto F = make_field(3);
    EXPECT_EQ(testkit::count_images(F, make_dims(4, 3), RuleCoefficients::uniform(F, 1), named_spec("phi")),
              testkit::ipow(3, 12));
}

TEST(Eliminate, Properties) {
    testkit::Gen gen(61);
    for (int trial = 0; trial < 100; ++trial) {
        const auto F = make_field(testkit::small_primes[gen.uniform(0, 2)]);
        const std::size_t rows = gen.uniform(1, 8), cols = gen.uniform(1, 8);
        DenseMatrix M = gen.matrix(F, rows, cols);
        if (trial % 3 == 0 && rows > 1)
            for (std::size_t c = 0; c < cols; ++c) M(rows - 1, c) = F.add(M(0, c), M(rows - 2, c));
        const auto e = eliminate(M);
        EXPECT_EQ(e.rank, rank(M.transpose()));
        EXPECT_EQ(e.rank + e.nullspace_basis.size(), cols);
        for (const auto& v : e.nullspace_basis) {
            const auto Mv = M.apply(StateVector{F, v});
            EXPECT_TRUE(std::all_of(Mv.entries.begin(), Mv.entries.end(), [](Residue x) { return x == 0; }));
        }
    }
}

TEST(Determinant, Multiplicative) {
    testkit::Gen gen(62);
    for (int trial = 0; trial < 30; ++trial) {
        const auto F = make_field(testkit::small_primes[gen.uniform(0, 2)]);
        const auto A = gen.matrix(F, 5, 5), B = gen.matrix(F, 5, 5);
        EXPECT_EQ(determinant(A * B), determinant(A) * determinant(B));
    }
}

TEST(Invert, IdentityAndBlock) {
    const auto F = make_field(3);
    EXPECT_EQ(invert(DenseMatrix::identity(F, 5)), DenseMatrix::identity(F, 5));
    const DenseMatrix X(F, {{1, 1, 0}, {1, 1, 1}, {0, 2, 1}});
    const DenseMatrix Xi = invert(X);
    EXPECT_EQ(X * Xi, DenseMatrix::identity(F, 3));
    EXPECT_EQ(Xi, DenseMatrix(F, {{2, 2, 1}, {2, 1, 2}, {2, 1, 0}}));
}

TEST(Invert, FullRankRuleMatrix) {
    const DenseMatrix D = all_ones_phi().dense();
    EXPECT_EQ(D * invert(D), DenseMatrix::identity(D.field(), 12));
}

TEST(Invert, Errors) {
    const auto F = make_field(5);
    EXPECT_EQ(code_of([&] { (void)invert(DenseMatrix(F, {{1, 2}, {2, 4}})); }), ErrorCode::Singular);
    EXPECT_EQ(code_of([&] { (void)invert(DenseMatrix(F, 2, 3)); }), ErrorCode::DimensionMismatch);
    EXPECT_EQ(code_of([&] { (void)invert(build_theorem_matrix("phi", make_dims(3, 3), RuleCoefficients::uniform(F, 0)).dense()); }),
              ErrorCode::Singular);
}

TEST(Solve, MembershipAndSolution) {
    testkit::Gen gen(63);
    for (int trial = 0; trial < 50; ++trial) {
        const auto F = make_field(5);
        DenseMatrix M = gen.matrix(F, 6, 6);
        for (std::size_t r = 0; r < 6; ++r) M(r, 5) = F.add(M(r, 0), M(r, 1)); // rank <= 5
        std::vector<Residue> x(6);
        for (auto& v : x) v = gen.residue(F);
        const auto b = M.apply(StateVector{F, x}).entries;
        const auto sol = solve(M, b);
        ASSERT_TRUE(sol.has_value());
        EXPECT_EQ(M.apply(StateVector{F, *sol}).entries, b);
    }
    const auto F = make_field(3);
    EXPECT_FALSE(solve(DenseMatrix(F, {{1, 1}, {1, 1}}), {0, 1}).has_value());
}

TEST(BlockRankLower, AllOnesPhiTrace) {
    const auto F = make_field(3);
    const auto trace = block_rank_lower(all_ones_phi());
    EXPECT_EQ(trace.final_rank, 12u);
    ASSERT_EQ(trace.P_sequence.size(), 4u);
    EXPECT_EQ(trace.P_sequence[0], DenseMatrix(F, {{0, 1, 0}, {1, 0, 1}, {0, 2, 0}}));
    EXPECT_EQ(trace.P_sequence[1], DenseMatrix(F, {{1, 0, 2}, {2, 2, 2}, {1, 1, 0}}));
    EXPECT_EQ(trace.P_sequence[2], DenseMatrix(F, {{2, 0, 2}, {0, 0, 0}, {0, 0, 0}}));
    EXPECT_EQ(trace.P_sequence[3], DenseMatrix(F, {{2, 0, 1}, {1, 1, 1}, {2, 2, 0}}));
    EXPECT_EQ(rank(trace.P_sequence[3]), 3u);
}

TEST(BlockRankLower, ZeroDiagonalBlocks) {
    testkit::Gen gen(64);
    const auto F = make_field(5);
    const LatticeDims d{4, 3};
    RuleMatrix T(F, d);
    const DenseMatrix X = gen.invertible(F, 3);
    for (std::size_t r = 0; r + 1 < d.m; ++r) {
        T.set_block(r, r + 1, X);
        T.set_block(r + 1, r, gen.matrix(F, 3, 3));
    }
    EXPECT_EQ(block_rank_lower(T).final_rank, rank(T.dense()));
}

TEST(BlockRankLower, Errors) {
    const auto F = make_field(3);
    EXPECT_EQ(code_of([&] {
                  (void)block_rank_lower(build_theorem_matrix("phi", make_dims(3, 3), RuleCoefficients::uniform(F, 0)));
              }),
              ErrorCode::SingularX);
    EXPECT_EQ(code_of([&] {
                  (void)block_rank_lower(build_theorem_matrix("pb", make_dims(4, 3), RuleCoefficients::uniform(F, 1)));
              }),
              ErrorCode::ShapeMismatch);
    EXPECT_EQ(code_of([&] {
                  (void)block_rank_upper(build_theorem_matrix("psi", make_dims(4, 3), RuleCoefficients::uniform(F, 1)));
              }),
              ErrorCode::ShapeMismatch);
}

TEST(BlockRankUpper, TransposeOfAllOnesPhi) {
    const auto T = all_ones_phi();
    const auto Tt = RuleMatrix::from_dense(T.dense().transpose(), T.dims());
    EXPECT_EQ(block_rank_upper(Tt).final_rank, 12u);
}

TEST(BlockRankUpper, Phi180MatchesDense) {
    testkit::Gen gen(65);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 20; ++trial) {
        const auto F = make_field(testkit::small_primes[gen.uniform(0, 2)]);
        const LatticeDims d{static_cast<std::size_t>(gen.uniform(3, 5)), static_cast<std::size_t>(gen.uniform(3, 5))};
        const auto T = build_theorem_matrix("phi180", d, gen.coeffs(F));
        try {
            EXPECT_EQ(block_rank_upper(T).final_rank, rank(T.dense()));
            ++checked;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::SingularX);
        }
    }
    EXPECT_EQ(checked, 20);
}

TEST(BlockRank, RandomInstancesMatchDense) {
    testkit::Gen gen(66);
    for (int trial = 0; trial < 200; ++trial) {
        const auto F = make_field(testkit::small_primes[trial % 3]);
        const LatticeDims d{static_cast<std::size_t>(gen.uniform(3, 5)), static_cast<std::size_t>(gen.uniform(3, 4))};
        const bool lower = trial % 2 == 0;
        const auto T = random_tridiagonal(gen, F, d, lower);
        const auto trace = lower ? block_rank_lower(T) : block_rank_upper(T);
        EXPECT_EQ(trace.final_rank, rank(T.dense())) << trial;
        EXPECT_EQ(trace.P_sequence.size(), d.m);
    }
}

TEST(DetA1MinusI, Examples) {
    EXPECT_EQ(det_A1_minus_I_closed(make_field(7), 5, 0, 3).value(), 6u);
    EXPECT_EQ(det_A1_minus_I_closed(make_field(5), 4, 2, 0).value(), 2u);
    EXPECT_EQ(code_of([] { (void)det_A1_minus_I_closed(make_field(2), 4, 1, 1); }), ErrorCode::EvenCharacteristic);
    // d + h = -1 never needs 1/2, so p = 2 is fine there.
    EXPECT_EQ(det_A1_minus_I_closed(make_field(2), 5, 1, 0), determinant(A1_minus_I(make_field(2), 5, 1, 0)));
}

TEST(DetA1MinusI, EveryCaseAgainstDense) {
    for (std::int64_t p : {3LL, 5LL, 7LL}) {
        const auto F = make_field(p);
        for (std::size_t n = 3; n <= 10; ++n)
            for (Residue d = 0; d < F.p(); ++d)
                for (Residue h = 0; h < F.p(); ++h)
                    ASSERT_EQ(det_A1_minus_I_closed(F, n, d, h), determinant(A1_minus_I(F, n, d, h)))
                        << "p=" << p << " n=" << n << " d=" << d << " h=" << h;
    }
}

TEST(DetB1, Examples) {
    EXPECT_EQ(det_B1_closed(make_field(5), 3, 0, 2, 4).value(), 3u);
    EXPECT_EQ(det_B1_closed(make_field(3), 4, 1, 1, 0).value(), 0u);
    EXPECT_EQ(det_B1_closed(make_field(3), 3, 1, 2, 1).value(), determinant(B1(make_field(3), 3, 1, 2, 1)).value());
    EXPECT_EQ(code_of([] { (void)det_B1_closed(make_field(5), 4, 1, 1, 1); }), ErrorCode::CaseNotCovered);
}

TEST(DetB1, EveryCoveredCaseAgainstDense) {
    for (std::int64_t p : {3LL, 5LL, 7LL}) {
        const auto F = make_field(p);
        for (std::size_t n = 3; n <= 10; ++n)
            for (Residue e = 0; e < F.p(); ++e)
                for (Residue f = 0; f < F.p(); ++f)
                    for (Residue g = 0; g < F.p(); ++g) {
                        const bool covered = e == 0 || g == 0 || f == F.add(e, g);
                        if (!covered) continue;
                        ASSERT_EQ(det_B1_closed(F, n, e, f, g), determinant(B1(F, n, e, f, g)))
                            << "p=" << p << " n=" << n << " e=" << e << " f=" << f << " g=" << g;
                    }
    }
}
