#include "feq/equations.hpp"

#include <gtest/gtest.h>

#include <vector>

using namespace feq;

namespace {

// Independent check that a tuple of tables satisfies every clause pointwise.
bool satisfies(const LinearFunctionalEquation& eq, const std::vector<FunctionTable>& fs) {
    FinAbGroup vspace = eq.variable_space();
    for (i64 a = 0; a < vspace.order(); ++a) {
        std::vector<Element> assignment;
        i64 rest = a;
        for (const auto& v : eq.variables) {
            assignment.push_back(v.group.element_at(rest % v.group.order()));
            rest /= v.group.order();
        }
        for (const auto& clause : eq.clauses) {
            Element acc = eq.codomain().zero();
            for (const auto& t : clause.terms) {
                Element arg =
                    t.argument.evaluate(eq.variables, assignment, eq.unknowns[t.unknown].domain);
                acc = acc + fs[t.unknown](arg).scaled(t.coefficient);
            }
            Element rhs = clause.rhs ? eq.codomain().element_at(clause.rhs->value_index(a))
                                     : eq.codomain().zero();
            if (acc != rhs) return false;
        }
    }
    return true;
}

std::vector<FunctionTable> coset_tables(const LinearFunctionalEquation& eq,
                                        const std::vector<Element>& vec) {
    std::vector<FunctionTable> out;
    for (std::size_t i = 0; i < eq.unknowns.size(); ++i)
        out.push_back(slice_unknown(eq, i, vec));
    return out;
}

FunctionTable power_table(const FinAbGroup& g, i64 e, i64 scale = 1) {
    i64 m = g.moduli()[0];
    std::vector<i64> v(static_cast<std::size_t>(m));
    for (i64 x = 0; x < m; ++x) {
        i64 acc = 1 % m;
        for (i64 i = 0; i < e; ++i) acc = acc * x % m;
        v[static_cast<std::size_t>(x)] = mod_reduce(acc * scale, m);
    }
    return FunctionTable(g, g, std::move(v));
}

}  // namespace

TEST(Instantiate, WilsonCountsOnZ2) {
    FinAbGroup z2 = FinAbGroup::cyclic(2);
    auto eq = build_wilson(z2, z2, {GroupHom::identity(z2)}, {GroupHom::identity(z2)});
    IntLinearSystem sys = instantiate(eq);
    EXPECT_EQ(sys.num_unknowns, 6);  // f, a, b with 2 entries each
    EXPECT_EQ(sys.rows.size(), 4u);  // one per (x, y) before dedup
}

TEST(Instantiate, GffeCountsOnZ3) {
    FinAbGroup z3 = FinAbGroup::cyclic(3);
    auto eq = build_gffe(z3, z3, {0, 1, -2, 1});
    IntLinearSystem sys = instantiate(eq);
    EXPECT_EQ(sys.num_unknowns, 3);
    EXPECT_EQ(sys.rows.size(), 9u);
}

TEST(Instantiate, HomogeneousHasZeroParticular) {
    FinAbGroup z5 = FinAbGroup::cyclic(5);
    auto eq =
        build_ghurye_olkin(z5, RingZm(5), {GroupHom::scalar(z5, 1), GroupHom::scalar(z5, 2)},
                           {}, 0, {}, 0);
    ModuleCoset cs = solve(instantiate(eq));
    ASSERT_FALSE(cs.empty());
    for (const auto& e : cs.particular()) EXPECT_TRUE(e.is_zero());
}

TEST(SolveEquation, WilsonPexiderOnZ5) {
    FinAbGroup z5 = FinAbGroup::cyclic(5);
    auto eq = build_wilson(z5, z5, {GroupHom::identity(z5)}, {GroupHom::identity(z5)});
    // n = 1: the Pexider equation; every component is affine.
    SolutionReport rep = solve_equation(eq, 1);
    ASSERT_FALSE(rep.coset.empty());
    EXPECT_TRUE(rep.bound_holds);
    // And the solution set is nontrivial: the equation itself is homogeneous,
    // so every generator solves it directly.
    EXPECT_FALSE(rep.coset.homogeneous_generators().empty());
    for (const auto& gen : rep.coset.homogeneous_generators())
        EXPECT_TRUE(satisfies(eq, coset_tables(eq, gen)));
}

TEST(SolveEquation, SolutionsSolveTheEquation) {
    FinAbGroup z5 = FinAbGroup::cyclic(5);
    auto eq = build_wilson(z5, z5, {GroupHom::identity(z5), GroupHom::identity(z5)},
                           {GroupHom::scalar(z5, 1), GroupHom::scalar(z5, 2)});
    SolutionReport rep = solve_equation(eq, 2);
    ASSERT_FALSE(rep.coset.empty());
    EXPECT_TRUE(satisfies(eq, coset_tables(eq, rep.coset.particular())));
    // particular + generator still solves (coset structure).
    for (const auto& gen : rep.coset.homogeneous_generators()) {
        std::vector<Element> v = rep.coset.particular();
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = v[j] + gen[j];
        EXPECT_TRUE(satisfies(eq, coset_tables(eq, v)));
        EXPECT_TRUE(rep.coset.contains(v));
    }
}

TEST(SolveEquation, WilsonCriterion6) {
    FinAbGroup z5 = FinAbGroup::cyclic(5);
    auto eq = build_wilson(z5, z5, {GroupHom::identity(z5), GroupHom::identity(z5)},
                           {GroupHom::scalar(z5, 1), GroupHom::scalar(z5, 2)});
    SolutionReport rep = solve_equation(eq, *eq.claimed_bound);
    EXPECT_EQ(*eq.claimed_bound, 2);
    ASSERT_FALSE(rep.coset.empty());
    EXPECT_TRUE(rep.bound_holds);
}

TEST(SolveEquation, GffeCriterion7) {
    FinAbGroup z5 = FinAbGroup::cyclic(5);
    auto eq = build_gffe(z5, z5, {0, 1, -2, 1});
    EXPECT_EQ(*eq.claimed_bound, 2);
    EXPECT_TRUE(check_hypotheses(eq).satisfied);
    SolutionReport rep = solve_equation(eq, 2);
    ASSERT_FALSE(rep.coset.empty());
    EXPECT_TRUE(rep.bound_holds);
}

TEST(SolveEquation, KnwCriterion8) {
    auto eq = build_knw(13, 3, 3);
    EXPECT_EQ(*eq.claimed_bound, 3);
    EXPECT_TRUE(check_hypotheses(eq).satisfied);
    SolutionReport rep = solve_equation(eq, 3);
    ASSERT_FALSE(rep.coset.empty());
    EXPECT_TRUE(rep.bound_holds);
}

TEST(SolveEquation, LsdBoundsPAndQOnly) {
    FinAbGroup z5 = FinAbGroup::cyclic(5);
    auto eq = build_lsd(z5, z5, {GroupHom::identity(z5)}, {GroupHom::identity(z5)});
    EXPECT_EQ(*eq.claimed_bound, 1);
    EXPECT_FALSE(eq.unknowns[0].degree_claimed);
    EXPECT_TRUE(eq.unknowns[1].degree_claimed);  // P
    EXPECT_TRUE(eq.unknowns[2].degree_claimed);  // Q
    SolutionReport rep = solve_equation(eq, 1);
    ASSERT_FALSE(rep.coset.empty());
    EXPECT_TRUE(rep.bound_holds);
    EXPECT_TRUE(satisfies(eq, coset_tables(eq, rep.coset.particular())));
}

TEST(BuildKnw, RootValidation) {
    EXPECT_NO_THROW(build_knw(13, 3, 3));
    EXPECT_THROW(build_knw(13, 3, 5), StructuralError);   // 5^3 = 8 mod 13
    EXPECT_THROW(build_knw(13, 4, 3), StructuralError);   // order of 3 is 3, not 4
    EXPECT_THROW(build_knw(12, 3, 3), StructuralError);   // p not prime
    EXPECT_THROW(build_knw(13, 5, 1), StructuralError);   // 5 does not divide 12
}

TEST(BuildGhuryeOlkin, DegreeCapsValidated) {
    FinAbGroup z7 = FinAbGroup::cyclic(7);
    RingZm r7(7);
    // p(x) = x^2 declared deg <= 1: rejected.
    EXPECT_THROW(build_ghurye_olkin(z7, r7, {GroupHom::identity(z7)},
                                    {{power_table(z7, 2), power_table(z7, 0)}}, 1, {}, 0),
                 StructuralError);
}

TEST(CheckHypotheses, Gffe) {
    FinAbGroup z5 = FinAbGroup::cyclic(5);
    // a_0 != 0 brings in c(x) = 0, which is not an automorphism.
    auto eq0 = build_gffe(z5, z5, {1, 1});
    HypothesisReport rep0 = check_hypotheses(eq0);
    EXPECT_FALSE(rep0.satisfied);
    EXPECT_FALSE(rep0.homs[0].automorphism);
    EXPECT_FALSE(rep0.violation.empty());
}

TEST(CheckHypotheses, DuplicateHomsViolate) {
    FinAbGroup z5 = FinAbGroup::cyclic(5);
    auto eq = build_ghurye_olkin(z5, RingZm(5),
                                 {GroupHom::scalar(z5, 2), GroupHom::scalar(z5, 2)}, {}, 0, {},
                                 0);
    HypothesisReport rep = check_hypotheses(eq);
    EXPECT_FALSE(rep.satisfied);
    ASSERT_EQ(rep.pairs.size(), 1u);
    EXPECT_FALSE(rep.pairs[0].difference_automorphism);
}

TEST(CheckHypotheses, NonNormalizedFormRejected) {
    FinAbGroup z5 = FinAbGroup::cyclic(5);
    auto eq = build_wilson(z5, z5, {GroupHom::scalar(z5, 2)}, {GroupHom::scalar(z5, 3)});
    EXPECT_THROW(check_hypotheses(eq), StructuralError);
}

TEST(NormalizeRemark1, IdentityBetasChangeNothing) {
    FinAbGroup z5 = FinAbGroup::cyclic(5);
    auto eq = build_wilson(z5, z5, {GroupHom::identity(z5)}, {GroupHom::scalar(z5, 3)});
    NormalizedEquation norm = normalize_remark1(eq);
    EXPECT_EQ(norm.equation.clauses[0].terms[0].argument.parts[1]->matrix(),
              eq.clauses[0].terms[0].argument.parts[1]->matrix());
}

TEST(NormalizeRemark1, SpecExample) {
    // beta = 2, delta = 3 on Z5: normalized hom is 3 * 2^{-1} = 3*3 = 4.
    FinAbGroup z5 = FinAbGroup::cyclic(5);
    auto eq = build_wilson(z5, z5, {GroupHom::scalar(z5, 2)}, {GroupHom::scalar(z5, 3)});
    NormalizedEquation norm = normalize_remark1(eq);
    EXPECT_EQ(*norm.equation.clauses[0].terms[0].argument.parts[1], GroupHom::scalar(z5, 4));
    EXPECT_NO_THROW(check_hypotheses(norm.equation));
}

TEST(NormalizeRemark1, PullbackInvertsPushforward) {
    FinAbGroup z5 = FinAbGroup::cyclic(5);
    auto eq = build_wilson(z5, z5, {GroupHom::scalar(z5, 2), GroupHom::scalar(z5, 3)},
                           {GroupHom::scalar(z5, 3), GroupHom::scalar(z5, 1)});
    NormalizedEquation norm = normalize_remark1(eq);
    SolutionReport rep = solve_equation(eq, 2);
    ASSERT_FALSE(rep.coset.empty());
    auto tuple = coset_tables(eq, rep.coset.particular());
    EXPECT_EQ(norm.pullback(norm.pushforward(tuple)), tuple);
    // Normalized solutions solve the normalized equation and pull back.
    EXPECT_TRUE(satisfies(norm.equation, norm.pushforward(tuple)));
}

TEST(NormalizeRemark1, PreservesSolutionSets) {
    FinAbGroup z5 = FinAbGroup::cyclic(5);
    auto eq = build_wilson(z5, z5, {GroupHom::scalar(z5, 2), GroupHom::scalar(z5, 3)},
                           {GroupHom::scalar(z5, 3), GroupHom::scalar(z5, 1)});
    NormalizedEquation norm = normalize_remark1(eq);
    ModuleCoset orig = solve(instantiate(eq));
    ModuleCoset normed = solve(instantiate(norm.equation));
    ASSERT_FALSE(orig.empty());
    ASSERT_FALSE(normed.empty());

    auto flatten = [&](const LinearFunctionalEquation& e,
                       const std::vector<FunctionTable>& fs) {
        std::vector<Element> out;
        for (std::size_t i = 0; i < fs.size(); ++i)
            for (i64 j = 0; j < e.unknowns[i].domain.order(); ++j)
                out.push_back(e.unknowns[i].codomain.element_at(fs[i].value_index(j)));
        return out;
    };

    // Pushforward maps original solutions into the normalized coset and back.
    std::vector<std::vector<Element>> samples = {orig.particular()};
    for (const auto& gen : orig.homogeneous_generators()) {
        std::vector<Element> v = orig.particular();
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = v[j] + gen[j];
        samples.push_back(std::move(v));
    }
    for (const auto& v : samples) {
        auto pushed = norm.pushforward(coset_tables(eq, v));
        EXPECT_TRUE(normed.contains(flatten(norm.equation, pushed)));
        auto pulled = norm.pullback(pushed);
        EXPECT_TRUE(orig.contains(flatten(eq, pulled)));
    }
}

TEST(NormalizeRemark1, NonAutomorphismBetaRejected) {
    FinAbGroup z4 = FinAbGroup::cyclic(4);
    auto eq = build_wilson(z4, z4, {GroupHom::scalar(z4, 2)}, {GroupHom::identity(z4)});
    EXPECT_THROW(normalize_remark1(eq), StructuralError);
}

TEST(ReductionStep, SpecExample) {
    // n = 2 on Z5 with c1 = 1, c2 = 2, h = 1: single unknown differenced by
    // (1 - 2*1)(1) = -1 = 4.
    FinAbGroup z5 = FinAbGroup::cyclic(5);
    auto eq = build_ghurye_olkin(z5, RingZm(5),
                                 {GroupHom::scalar(z5, 1), GroupHom::scalar(z5, 2)}, {}, 0, {},
                                 0);
    ReducedEquation red = reduction_step(eq, z5.element({1}));
    ASSERT_EQ(red.equation.unknowns.size(), 1u);
    ASSERT_EQ(red.shifts.size(), 1u);
    EXPECT_EQ(red.shifts[0], z5.element({4}));
}

TEST(ReductionStep, ZeroShiftGivesZeroUnknowns) {
    FinAbGroup z5 = FinAbGroup::cyclic(5);
    auto eq = build_ghurye_olkin(z5, RingZm(5),
                                 {GroupHom::scalar(z5, 1), GroupHom::scalar(z5, 2)}, {}, 0, {},
                                 0);
    ReducedEquation red = reduction_step(eq, z5.zero());
    SolutionReport rep = solve_equation(eq, 1);
    ASSERT_FALSE(rep.coset.empty());
    for (const auto& gen : rep.coset.homogeneous_generators()) {
        auto mapped = red.map_solution(coset_tables(eq, gen));
        for (const auto& t : mapped) EXPECT_TRUE(t.is_zero());
    }
}

TEST(ReductionStep, SolutionsMapToSolutions) {
    FinAbGroup z5 = FinAbGroup::cyclic(5);
    auto eq = build_ghurye_olkin(z5, RingZm(5),
                                 {GroupHom::scalar(z5, 1), GroupHom::scalar(z5, 2)}, {}, 0, {},
                                 0);
    SolutionReport rep = solve_equation(eq, 1);
    ASSERT_FALSE(rep.coset.empty());
    for (const auto& h : enumerate(z5)) {
        ReducedEquation red = reduction_step(eq, h);
        for (const auto& gen : rep.coset.homogeneous_generators()) {
            auto mapped = red.map_solution(coset_tables(eq, gen));
            EXPECT_TRUE(satisfies(red.equation, mapped));
        }
    }
}

TEST(ReductionStep, IteratedReductionReachesOneTerm) {
    FinAbGroup z7 = FinAbGroup::cyclic(7);
    auto eq = build_ghurye_olkin(
        z7, RingZm(7),
        {GroupHom::scalar(z7, 1), GroupHom::scalar(z7, 2), GroupHom::scalar(z7, 4)}, {}, 0, {},
        0);
    Element h = z7.element({1});
    ReducedEquation r1 = reduction_step(eq, h);
    EXPECT_EQ(r1.equation.clauses[0].terms.size(), 2u);
    ReducedEquation r2 = reduction_step(r1.equation, h);
    EXPECT_EQ(r2.equation.clauses[0].terms.size(), 1u);
    EXPECT_THROW(reduction_step(r2.equation, h), StructuralError);
}

TEST(Theorem1, AttainmentWitnessOnZ7) {
    // The (x+y)^3 split: p1 = 3x, a1 = y^2; p2 = 1, a2 = y^3;
    // q1 = 1, b1 = x^3; q2 = 3y, b2 = x^2. Then f(t) = t^3 solves
    // f(x + y) = rhs and attains degree 3 = r + s + 1 with r = s = 1.
    FinAbGroup z7 = FinAbGroup::cyclic(7);
    RingZm r7(7);
    auto eq = build_ghurye_olkin(
        z7, r7, {GroupHom::identity(z7)},
        {{power_table(z7, 1, 3), power_table(z7, 2)}, {power_table(z7, 0), power_table(z7, 3)}},
        1,
        {{power_table(z7, 0), power_table(z7, 3)}, {power_table(z7, 1, 3), power_table(z7, 2)}},
        1);
    EXPECT_EQ(*eq.claimed_bound, 3);

    // rhs really is (x+y)^3.
    ASSERT_TRUE(eq.clauses[0].rhs.has_value());
    for (i64 x = 0; x < 7; ++x)
        for (i64 y = 0; y < 7; ++y) {
            i64 expect = (x + y) * (x + y) % 7 * (x + y) % 7;
            EXPECT_EQ(eq.clauses[0].rhs->value_index(pair_index(z7, x, y)), expect);
        }

    FunctionTable cube = power_table(z7, 3);
    EXPECT_TRUE(satisfies(eq, {cube}));
    EXPECT_EQ(degree(cube).degree, Degree::finite(3));

    SolutionReport rep = solve_equation(eq, 3);
    ASSERT_FALSE(rep.coset.empty());
    EXPECT_TRUE(rep.bound_holds);
    // The solver's coset contains the cube.
    std::vector<Element> v;
    for (i64 t = 0; t < 7; ++t) v.push_back(z7.element_at(cube.value_index(t)));
    EXPECT_TRUE(rep.coset.contains(v));
}

TEST(SolveEquation, GO_HomogeneousCriterion5) {
    FinAbGroup z5 = FinAbGroup::cyclic(5);
    auto eq = build_ghurye_olkin(z5, RingZm(5),
                                 {GroupHom::scalar(z5, 1), GroupHom::scalar(z5, 2)}, {}, 0, {},
                                 0);
    EXPECT_EQ(*eq.claimed_bound, 1);
    EXPECT_TRUE(check_hypotheses(eq).satisfied);
    SolutionReport rep = solve_equation(eq, 1);
    ASSERT_FALSE(rep.coset.empty());
    EXPECT_TRUE(rep.bound_holds);
}
