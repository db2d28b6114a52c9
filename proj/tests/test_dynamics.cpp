#include <gtest/gtest.h>

#include <map>

#include "support.hpp"

using namespace lcaz;

namespace {

RuleMatrix all_ones_phi() {
    return build_theorem_matrix("phi", make_dims(4, 3), RuleCoefficients::uniform(make_field(3), 1));
}

// A full-rank phi rule on 3x3 over Z_5, found by scanning seeds with the dense determinant.
struct Fixture {
    RuleCoefficients k;
    RuleMatrix T;
};

Fixture reversible_fixture(std::uint64_t seed) {
    testkit::Gen gen(seed);
    const auto F = make_field(5);
    for (;;) {
        const auto k = gen.coeffs(F);
        auto T = build_theorem_matrix("phi", make_dims(3, 3), k);
        if (!determinant(T.dense()).is_zero()) return {k, std::move(T)};
    }
}

} // namespace

TEST(Reversibility, AllOnesPhiIsFullRank) {
    const auto r = reversibility(all_ones_phi());
    EXPECT_EQ(r.rank, 12u);
    EXPECT_TRUE(r.full_rank);
    EXPECT_TRUE(r.inverse_available);
    EXPECT_EQ(r.method, RankMethod::Block);
}

TEST(Reversibility, ZeroRule) {
    const auto r = reversibility(build_theorem_matrix("phi", make_dims(3, 3), RuleCoefficients::uniform(make_field(3), 0)));
    EXPECT_EQ(r.rank, 0u);
    EXPECT_FALSE(r.full_rank);
    EXPECT_FALSE(r.inverse_available);
    EXPECT_EQ(r.method, RankMethod::Dense);
}

TEST(Reversibility, MethodSelection) {
    const auto F = make_field(5);
    // Corner blocks force dense elimination.
    EXPECT_EQ(reversibility(build_theorem_matrix("psi", make_dims(4, 3), RuleCoefficients::uniform(F, 1))).method,
              RankMethod::Dense);
    // Singular superdiagonal (f = e = g = 0) but invertible subdiagonal: the upper variant runs.
    const RuleCoefficients k(F, {1, 1, 1, 1, 0, 0, 0, 1});
    const auto T = build_theorem_matrix("phi", make_dims(4, 3), k);
    const auto r = reversibility(T);
    EXPECT_EQ(r.rank, rank(T.dense()));
}

TEST(Reversibility, AgreesWithDenseEverywhere) {
    testkit::Gen gen(71);
    for (auto name : named_spec_names)
        for (int trial = 0; trial < 10; ++trial) {
            const auto F = make_field(testkit::small_primes[gen.uniform(0, 2)]);
            const LatticeDims d{static_cast<std::size_t>(gen.uniform(3, 5)), static_cast<std::size_t>(gen.uniform(3, 5))};
            const auto T = build_theorem_matrix(name, d, gen.coeffs(F));
            const auto r = reversibility(T);
            EXPECT_EQ(r.rank, rank(T.dense())) << name;
            EXPECT_EQ(r.full_rank, r.rank == d.cells());
            EXPECT_EQ(r.full_rank, r.inverse_available);
        }
}

TEST(Reversibility, FullRankIffUniquePredecessors) {
    // Exhaustive over all 2^9 configurations.
    testkit::Gen gen(72);
    const auto F = make_field(2);
    const auto d = make_dims(3, 3);
    for (int trial = 0; trial < 12; ++trial) {
        const auto k = gen.coeffs(F);
        const auto spec = named_spec(named_spec_names[trial % named_spec_names.size()]);
        const auto T = build_from_resolver(spec, d, k);
        std::map<std::vector<Residue>, int> preds;
        testkit::for_each_configuration(F, d, [&](const Configuration& c) { ++preds[step(c, k, spec).cells()]; });
        const bool unique = preds.size() == 512;
        EXPECT_EQ(reversibility(T).full_rank, unique) << spec.name;
    }
}

TEST(StepBackward, RoundTrip) {
    const auto fx = reversible_fixture(73);
    const auto r = reversibility(fx.T);
    ASSERT_TRUE(r.full_rank);
    testkit::Gen gen(74);
    const auto F = make_field(5);
    const auto spec = named_spec("phi");
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = gen.config(F, make_dims(3, 3));
        EXPECT_EQ(step_backward(step(c, fx.k, spec), r), c);
        EXPECT_EQ(step(step_backward(c, r), fx.k, spec), c);
    }
    EXPECT_TRUE(step_backward(Configuration(F, make_dims(3, 3)), r).is_zero());
}

TEST(StepBackward, IrreversibleRule) {
    const auto F = make_field(3);
    const auto T = build_theorem_matrix("phi", make_dims(3, 3), RuleCoefficients::von_neumann(F, 1, 0, 0, 1));
    const auto r = reversibility(T);
    ASSERT_FALSE(r.full_rank);
    try {
        (void)step_backward(Configuration(F, make_dims(3, 3)), r);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotReversible);
    }
}

TEST(FixedPoints, EastOnlyRule) {
    // x'(i,j) = x(i,j+1) with a reflexive right side: rows constant in j are fixed.
    const auto F = make_field(3);
    const auto T = build_theorem_matrix("phi", make_dims(3, 3), RuleCoefficients::von_neumann(F, 0, 1, 0, 0));
    const auto fp = fixed_points(T);
    ASSERT_EQ(fp.dimension, 3u);
    testkit::for_each_configuration(F, LatticeDims{1, 3}, [&](const Configuration& x) {
        const Residue x1 = x.cells()[0], x4 = x.cells()[1], x7 = x.cells()[2];
        const std::vector<Residue> v = {x1, x1, x1, x4, x4, x4, x7, x7, x7};
        EXPECT_EQ(T.apply(StateVector{F, v}).entries, v);
    });
    // Every fixed point has that shape.
    std::size_t count = 0;
    testkit::for_each_configuration(F, make_dims(3, 3), [&](const Configuration& c) {
        if (T.apply(flatten(c)).entries != c.cells()) return;
        ++count;
        for (std::size_t i = 1; i <= 3; ++i) EXPECT_TRUE(c.at(i, 1) == c.at(i, 2) && c.at(i, 2) == c.at(i, 3));
    });
    EXPECT_EQ(count, 27u);
}

TEST(FixedPoints, Trivial) {
    const auto F = make_field(5);
    EXPECT_EQ(fixed_points(build_theorem_matrix("phi", make_dims(3, 3), RuleCoefficients::uniform(F, 0))).dimension, 0u);
    testkit::Gen gen(75);
    for (int trial = 0; trial < 20; ++trial) {
        const auto k = RuleCoefficients::von_neumann(F, gen.residue(F), 0, 0, gen.residue(F));
        EXPECT_EQ(fixed_points(build_theorem_matrix("phi", make_dims(4, 3), k)).dimension, 0u);
    }
}

TEST(FixedPoints, BasisVectorsAreFixed) {
    testkit::Gen gen(76);
    for (auto name : named_spec_names) {
        const auto F = make_field(3);
        const auto T = build_theorem_matrix(name, make_dims(3, 4), gen.coeffs(F));
        const auto fp = fixed_points(T);
        for (const auto& v : fp.basis) EXPECT_EQ(T.apply(StateVector{F, v}).entries, v) << name;
        EXPECT_EQ(fp.dimension, 12 - rank(T.dense() - DenseMatrix::identity(F, 12)));
    }
}

TEST(Nilpotency, VonNeumannWithoutEastAndSouth) {
    testkit::Gen gen(77);
    for (int trial = 0; trial < 20; ++trial) {
        const auto F = make_field(testkit::small_primes[gen.uniform(0, 2)]);
        const auto d = make_dims(gen.uniform(3, 5), gen.uniform(3, 5));
        const auto k = RuleCoefficients::von_neumann(F, gen.residue(F), 0, 0, gen.residue(F));
        const auto T = build_theorem_matrix("phi", d, k);
        const auto nil = is_nilpotent(T);
        ASSERT_TRUE(nil.nilpotent);
        // Least index: T^index = 0 and T^(index-1) != 0.
        DenseMatrix power = DenseMatrix::identity(F, d.cells());
        for (std::size_t i = 1; i < nil.index; ++i) power = power * T.dense();
        EXPECT_FALSE(power.is_zero());
        EXPECT_TRUE((power * T.dense()).is_zero());
        for (int c = 0; c < 10; ++c) EXPECT_TRUE(evolve(gen.config(F, d), k, named_spec("phi"), d.cells()).is_zero());
    }
}

TEST(Nilpotency, ZeroAndInvertible) {
    const auto F = make_field(3);
    const auto zero = is_nilpotent(build_theorem_matrix("phi", make_dims(3, 3), RuleCoefficients::uniform(F, 0)));
    EXPECT_TRUE(zero.nilpotent);
    EXPECT_EQ(zero.index, 1u);
    EXPECT_FALSE(is_nilpotent(all_ones_phi()).nilpotent);
    // Only north weight under a null top: a shift down by one row, index m.
    const auto shift = is_nilpotent(build_theorem_matrix("phi", make_dims(5, 3), RuleCoefficients::von_neumann(F, 1, 0, 0, 0)));
    EXPECT_TRUE(shift.nilpotent);
    EXPECT_EQ(shift.index, 5u);
}

TEST(Goe, FullRankHasNone) {
    const auto g = goe_census(all_ones_phi());
    EXPECT_EQ(g.goe_count, 0);
    EXPECT_EQ(g.image_size_log_p, 12u);
    EXPECT_FALSE(g.witness.has_value());
}

TEST(Goe, CountUsesBigIntegers) {
    const auto F = make_field(7);
    const auto g = goe_census(build_theorem_matrix("phi", make_dims(6, 6), RuleCoefficients::uniform(F, 0)));
    EXPECT_EQ(g.goe_count.str(), "2651730845859653471779023381600");
    EXPECT_EQ(g.image_size_log_p, 0u);
}

TEST(Goe, ExhaustiveCensus) {
    testkit::Gen gen(78);
    const auto F = make_field(2);
    const auto d = make_dims(3, 3);
    for (int trial = 0; trial < 12; ++trial) {
        const auto k = gen.coeffs(F);
        const auto spec = named_spec(named_spec_names[trial % named_spec_names.size()]);
        const auto T = build_from_resolver(spec, d, k);
        const auto g = goe_census(T);
        std::set<std::vector<Residue>> images;
        testkit::for_each_configuration(F, d, [&](const Configuration& c) { images.insert(step(c, k, spec).cells()); });
        EXPECT_EQ(g.goe_count + images.size(), 512) << spec.name;
        if (g.witness) {
            EXPECT_EQ(images.count(g.witness->cells()), 0u);
            EXPECT_FALSE(solve(T.dense(), g.witness->cells()).has_value());
        } else {
            EXPECT_EQ(images.size(), 512u);
        }
    }
}

TEST(Orbit, FixedPointInput) {
    const auto F = make_field(3);
    const auto k = RuleCoefficients::von_neumann(F, 0, 1, 0, 0);
    Configuration c(F, make_dims(3, 3));
    for (std::size_t j = 1; j <= 3; ++j) c.set(2, j, 2);
    const auto o = orbit(c, k, named_spec("phi"), 10);
    EXPECT_TRUE(o.determined);
    EXPECT_EQ(o.transient, 0u);
    EXPECT_EQ(o.cycle_length, 1u);
}

TEST(Orbit, NilpotentReachesZero) {
    testkit::Gen gen(79);
    const auto F = make_field(5);
    const auto d = make_dims(4, 4);
    const auto k = RuleCoefficients::von_neumann(F, 2, 0, 0, 3);
    const auto c = gen.config(F, d);
    const auto o = orbit(c, k, named_spec("phi"), 100);
    ASSERT_TRUE(o.determined);
    EXPECT_EQ(o.cycle_length, 1u);
    EXPECT_TRUE(o.trajectory.back().is_zero());
    EXPECT_LE(o.transient, d.cells());
}

TEST(Orbit, ReversibleRuleHasNoTransient) {
    const auto fx = reversible_fixture(80);
    testkit::Gen gen(81);
    for (int trial = 0; trial < 5; ++trial) {
        const auto c = gen.config(make_field(5), make_dims(3, 3));
        const auto o = orbit(c, fx.k, named_spec("phi"), 1u << 20, 1u << 20);
        ASSERT_TRUE(o.determined);
        EXPECT_EQ(o.transient, 0u);
        EXPECT_EQ(evolve(c, fx.k, named_spec("phi"), o.cycle_length), c);
    }
}

TEST(Orbit, FloydFallbackAgreesWithHashing) {
    testkit::Gen gen(82);
    const auto F = make_field(3);
    const auto d = make_dims(3, 3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto k = gen.coeffs(F);
        const auto c = gen.config(F, d);
        const auto hashed = orbit(c, k, named_spec("xi"), 100000);
        const auto floyd = orbit(c, k, named_spec("xi"), 100000, 2);
        ASSERT_TRUE(hashed.determined);
        EXPECT_EQ(floyd.determined, true);
        EXPECT_EQ(hashed.transient, floyd.transient);
        EXPECT_EQ(hashed.cycle_length, floyd.cycle_length);
    }
}

TEST(Orbit, Truncation) {
    const auto fx = reversible_fixture(83);
    const auto c = Configuration::unit(make_field(5), make_dims(3, 3), 1, 1);
    const auto cut = orbit(c, fx.k, named_spec("phi"), 5);
    EXPECT_FALSE(cut.determined);
    EXPECT_EQ(cut.trajectory.size(), 5u);
    EXPECT_EQ(cut.trajectory.back(), evolve(c, fx.k, named_spec("phi"), 4));
    EXPECT_THROW((void)orbit(c, fx.k, named_spec("phi"), 0), Error);
}
