#include "feq/aichinger.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace feq;

TEST(FindDecomposition, IdentityOnZ2) {
    FinAbGroup z2 = FinAbGroup::cyclic(2);
    FunctionTable f = FunctionTable::from_integers(z2, z2, {0, 1});
    auto d = find_decomposition(f, 1);
    ASSERT_TRUE(d.has_value());
    EXPECT_TRUE(verify_decomposition(f, *d));

    // The explicit certificate g1(x2) = x2, g2(x1) = x1 is also valid.
    AichingerDecomposition explicit_d;
    explicit_d.order = 1;
    explicit_d.parts = {FunctionTable::from_integers(z2, z2, {0, 1}),
                        FunctionTable::from_integers(z2, z2, {0, 1})};
    EXPECT_TRUE(verify_decomposition(f, explicit_d));
}

TEST(FindDecomposition, SquareOnZ3HasNoOrder1Decomposition) {
    FinAbGroup z3 = FinAbGroup::cyclic(3);
    FunctionTable f = FunctionTable::from_integers(z3, z3, {0, 1, 1});  // x^2
    EXPECT_FALSE(find_decomposition(f, 1).has_value());
    EXPECT_TRUE(find_decomposition(f, 2).has_value());
}

TEST(FindDecomposition, CapacityError) {
    FinAbGroup z3 = FinAbGroup::cyclic(3);
    FunctionTable f = FunctionTable::zero(z3, z3);
    EXPECT_THROW(find_decomposition(f, 10), CapacityError);
    AichingerConfig tight;
    tight.max_rows = 10;
    EXPECT_THROW(find_decomposition(f, 2, tight), CapacityError);
}

TEST(VerifyDecomposition, RejectsPerturbedCertificate) {
    FinAbGroup z2 = FinAbGroup::cyclic(2);
    FunctionTable f = FunctionTable::from_integers(z2, z2, {0, 1});
    auto d = find_decomposition(f, 1);
    ASSERT_TRUE(d.has_value());
    auto values = d->parts[0].value_indices();
    values[0] = (values[0] + 1) % 2;
    d->parts[0] = FunctionTable(z2, z2, values);
    EXPECT_FALSE(verify_decomposition(f, *d));
}

TEST(VerifyDecomposition, ZeroWithZeroParts) {
    FinAbGroup z3 = FinAbGroup::cyclic(3);
    FunctionTable f = FunctionTable::zero(z3, z3);
    AichingerDecomposition d;
    d.order = 1;
    d.parts = {FunctionTable::zero(z3, z3), FunctionTable::zero(z3, z3)};
    EXPECT_TRUE(verify_decomposition(f, d));
}

TEST(VerifyDecomposition, ShapeMismatch) {
    FinAbGroup z3 = FinAbGroup::cyclic(3);
    FunctionTable f = FunctionTable::zero(z3, z3);
    AichingerDecomposition d;
    d.order = 1;
    d.parts = {FunctionTable::zero(z3, z3)};  // one part missing
    EXPECT_THROW(verify_decomposition(f, d), StructuralError);
}

TEST(Characterize, SquareOnZ3) {
    FinAbGroup z3 = FinAbGroup::cyclic(3);
    FunctionTable f = FunctionTable::from_integers(z3, z3, {0, 1, 1});
    EXPECT_TRUE(characterize(f, 2));
    EXPECT_FALSE(characterize(f, 1));
    EXPECT_TRUE(characterize(FunctionTable::zero(z3, z3), 0));
}

TEST(Characterize, ExhaustiveTinyGroups) {
    // Smoke version of the acceptance criterion: Z2 -> Z2, all m in 0..2.
    FinAbGroup z2 = FinAbGroup::cyclic(2);
    for (const auto& f : oracle::all_functions(z2, z2))
        for (i64 m = 0; m <= 2; ++m) EXPECT_NO_THROW(characterize(f, m));
}

TEST(Decompositions, AddUnderPolynomialPerturbation) {
    // If f decomposes at order m, so does f + p for deg p <= m.
    FinAbGroup z3 = FinAbGroup::cyclic(3);
    FunctionTable f = FunctionTable::from_integers(z3, z3, {0, 1, 1});
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<i64> v(3);
        for (auto& x : v) x = static_cast<i64>(rng() % 3);
        FunctionTable p(z3, z3, v);
        if (!is_degree_at_most(p, 2)) continue;
        auto d = find_decomposition(f + p, 2);
        ASSERT_TRUE(d.has_value());
        EXPECT_TRUE(verify_decomposition(f + p, *d));
    }
}

TEST(Characterize, RandomEquivalenceOnZ5) {
    std::mt19937_64 rng(123);
    FinAbGroup z5 = FinAbGroup::cyclic(5);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<i64> v(5);
        for (auto& x : v) x = static_cast<i64>(rng() % 5);
        FunctionTable f(z5, z5, v);
        for (i64 m = 0; m <= 2; ++m) EXPECT_NO_THROW(characterize(f, m));
    }
}
