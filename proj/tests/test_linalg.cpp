#include "feq/linalg.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"

using namespace feq;

namespace {

IntLinearSystem make_system(i64 modulus, i64 unknowns,
                            std::vector<std::pair<std::vector<i64>, i64>> rows) {
    IntLinearSystem sys;
    sys.num_unknowns = unknowns;
    sys.value_group = FinAbGroup::cyclic(modulus);
    for (auto& [coeffs, rhs] : rows)
        sys.rows.push_back({std::move(coeffs), sys.value_group.element({rhs})});
    return sys;
}

std::set<std::vector<i64>> solution_set_by_membership(const ModuleCoset& cs,
                                                      const IntLinearSystem& sys) {
    std::set<std::vector<i64>> out;
    for (const auto& v : oracle::enumerate_solutions(sys)) {
        std::vector<i64> idx;
        for (const auto& e : v) idx.push_back(sys.value_group.index_of(e));
        out.insert(idx);
    }
    return out;
}

}  // namespace

TEST(Solve, SpecExamples) {
    // 2x = 2 (mod 4): particular 1, one generator 2, solutions {1,3}.
    auto sys = make_system(4, 1, {{{2}, 2}});
    ModuleCoset cs = solve(sys);
    ASSERT_FALSE(cs.empty());
    EXPECT_EQ(cs.particular()[0].residues()[0], 1);
    ASSERT_EQ(cs.homogeneous_generators().size(), 1u);
    EXPECT_EQ(cs.homogeneous_generators()[0][0].residues()[0], 2);

    // x = 3 (mod 5): unit coefficient, unique solution.
    auto sys2 = make_system(5, 1, {{{1}, 3}});
    ModuleCoset cs2 = solve(sys2);
    ASSERT_FALSE(cs2.empty());
    EXPECT_EQ(cs2.particular()[0].residues()[0], 3);
    EXPECT_TRUE(cs2.homogeneous_generators().empty());

    // 2x = 1 (mod 4): parity obstruction.
    EXPECT_TRUE(solve(make_system(4, 1, {{{2}, 1}})).empty());
}

TEST(Solve, CosetContains) {
    auto sys = make_system(4, 1, {{{2}, 2}});
    ModuleCoset cs = solve(sys);
    FinAbGroup z4 = FinAbGroup::cyclic(4);
    EXPECT_TRUE(coset_contains(cs, cs.particular()));
    std::vector<Element> shifted = {cs.particular()[0] + cs.homogeneous_generators()[0][0]};
    EXPECT_TRUE(coset_contains(cs, shifted));
    EXPECT_FALSE(coset_contains(cs, {z4.zero()}));
    EXPECT_THROW(coset_contains(cs, {z4.zero(), z4.zero()}), StructuralError);
}

TEST(Solve, EmptyCosetContainsNothing) {
    ModuleCoset cs = solve(make_system(4, 1, {{{2}, 1}}));
    EXPECT_TRUE(cs.empty());
    EXPECT_FALSE(coset_contains(cs, {FinAbGroup::cyclic(4).zero()}));
    EXPECT_THROW(cs.particular(), StructuralError);
}

TEST(Solve, MultiFactorValueGroup) {
    // Same coefficients acting factorwise on Z4 x Z3.
    IntLinearSystem sys;
    sys.num_unknowns = 1;
    sys.value_group = FinAbGroup({4, 3});
    sys.rows.push_back({{2}, sys.value_group.element({2, 1})});
    ModuleCoset cs = solve(sys);
    ASSERT_FALSE(cs.empty());
    // 2x = 2 mod 4 and 2x = 1 mod 3 -> x = (1, 2) canonical, generator (2, 0).
    EXPECT_EQ(cs.particular()[0], sys.value_group.element({1, 2}));

    auto oracle_solutions = oracle::enumerate_solutions(sys);
    for (const auto& v : oracle_solutions) EXPECT_TRUE(cs.contains(v));
    EXPECT_EQ(oracle_solutions.size(), 2u);
}

TEST(Solve, OracleEquivalenceExhaustiveSmall) {
    // Every system with <= 2 unknowns, <= 2 rows, coefficients in [0, m),
    // over a few small moduli: membership matches brute force exactly.
    for (i64 m : {2, 3, 4}) {
        FinAbGroup zm = FinAbGroup::cyclic(m);
        for (i64 a = 0; a < m; ++a)
            for (i64 b = 0; b < m; ++b)
                for (i64 r = 0; r < m; ++r) {
                    auto sys = make_system(m, 2, {{{a, b}, r}});
                    ModuleCoset cs = solve(sys);
                    auto expected = solution_set_by_membership(cs, sys);
                    EXPECT_EQ(cs.empty(), expected.empty());
                    i64 count = 0;
                    for (i64 x = 0; x < m; ++x)
                        for (i64 y = 0; y < m; ++y) {
                            std::vector<Element> v = {zm.element({x}), zm.element({y})};
                            bool member = cs.contains(v);
                            EXPECT_EQ(member, expected.count({x, y}) == 1)
                                << "m=" << m << " a=" << a << " b=" << b << " r=" << r
                                << " x=" << x << " y=" << y;
                            if (member) ++count;
                        }
                    EXPECT_EQ(static_cast<std::size_t>(count), expected.size());
                }
    }
}

TEST(Solve, OracleEquivalenceRandom) {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        i64 m = 2 + static_cast<i64>(rng() % 11);  // 2..12
        i64 unknowns = 1 + static_cast<i64>(rng() % 3);
        i64 nrows = 1 + static_cast<i64>(rng() % 3);
        IntLinearSystem sys;
        sys.num_unknowns = unknowns;
        sys.value_group = FinAbGroup::cyclic(m);
        for (i64 i = 0; i < nrows; ++i) {
            std::vector<i64> coeffs(static_cast<std::size_t>(unknowns));
            for (auto& c : coeffs) c = static_cast<i64>(rng() % (2 * m)) - m;
            sys.rows.push_back({std::move(coeffs), sys.value_group.element({static_cast<i64>(rng() % m)})});
        }
        ModuleCoset cs = solve(sys);
        auto expected = solution_set_by_membership(cs, sys);
        EXPECT_EQ(cs.empty(), expected.empty());
        // Check membership over all candidates.
        std::vector<i64> candidate(static_cast<std::size_t>(unknowns), 0);
        for (;;) {
            std::vector<Element> v;
            for (i64 c : candidate) v.push_back(sys.value_group.element({c}));
            EXPECT_EQ(cs.contains(v), expected.count(candidate) == 1);
            std::size_t pos = 0;
            while (pos < candidate.size() && ++candidate[pos] == m) {
                candidate[pos] = 0;
                ++pos;
            }
            if (pos == candidate.size()) break;
        }
    }
}

TEST(Solve, Deterministic) {
    auto build = [] {
        return make_system(12, 3, {{{6, 4, 3}, 5}, {{2, 0, 10}, 4}, {{6, 4, 3}, 5}});
    };
    ModuleCoset a = solve(build());
    ModuleCoset b = solve(build());
    ASSERT_EQ(a.empty(), b.empty());
    if (!a.empty()) {
        EXPECT_EQ(a.particular(), b.particular());
        EXPECT_EQ(a.homogeneous_generators(), b.homogeneous_generators());
    }
}

TEST(Solve, RowDedupDoesNotChangeAnswers) {
    auto once = make_system(8, 2, {{{2, 4}, 6}});
    auto twice = make_system(8, 2, {{{2, 4}, 6}, {{2, 4}, 6}, {{2, 4}, 6}});
    ModuleCoset a = solve(once);
    ModuleCoset b = solve(twice);
    ASSERT_FALSE(a.empty());
    EXPECT_EQ(a.particular(), b.particular());
    EXPECT_EQ(a.homogeneous_generators(), b.homogeneous_generators());
}

TEST(Solve, HomogeneousGeneratorsFormGroup) {
    auto sys = make_system(12, 2, {{{4, 6}, 0}, {{8, 3}, 0}});
    ModuleCoset cs = solve(sys);
    ASSERT_FALSE(cs.empty());
    const auto& gens = cs.homogeneous_generators();
    // Arbitrary Z-combinations of generators still solve the homogeneous rows.
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Element> v = {sys.value_group.zero(), sys.value_group.zero()};
        for (const auto& gen : gens) {
            i64 c = static_cast<i64>(rng() % 24) - 12;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = v[j] + gen[j].scaled(c);
        }
        for (const auto& row : sys.rows) {
            Element acc = sys.value_group.zero();
            for (std::size_t j = 0; j < v.size(); ++j) acc = acc + v[j].scaled(row.coeffs[j]);
            EXPECT_TRUE(acc.is_zero());
        }
    }
}

TEST(Solve, TrivialValueGroup) {
    IntLinearSystem sys;
    sys.num_unknowns = 2;
    sys.value_group = FinAbGroup::trivial();
    sys.rows.push_back({{1, 1}, sys.value_group.zero()});
    ModuleCoset cs = solve(sys);
    ASSERT_FALSE(cs.empty());
    EXPECT_TRUE(cs.contains({sys.value_group.zero(), sys.value_group.zero()}));
}

TEST(Solve, NoRowsMeansEverything) {
    IntLinearSystem sys;
    sys.num_unknowns = 1;
    sys.value_group = FinAbGroup::cyclic(6);
    ModuleCoset cs = solve(sys);
    ASSERT_FALSE(cs.empty());
    for (i64 x = 0; x < 6; ++x)
        EXPECT_TRUE(cs.contains({sys.value_group.element({x})}));
}
