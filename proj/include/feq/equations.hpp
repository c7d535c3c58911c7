#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "feq/abelian.hpp"
#include "feq/errors.hpp"
#include "feq/functions.hpp"
#include "feq/linalg.hpp"
#include "feq/polynomial.hpp"

namespace feq {

// ---------------------------------------------------------------------------
// Model
// ---------------------------------------------------------------------------

struct EquationVariable {
    std::string name;
    FinAbGroup group;
};

struct EquationUnknown {
    std::string name;
    FinAbGroup domain;
    FinAbGroup codomain;
    // Whether the builder's degree bound applies to this unknown. The
    // linearized Skitovich-Darmois bound covers only P and Q, not the f_i.
    bool degree_claimed = true;
};

// A formal Z-linear argument: sum over variables of hom(variable). An absent
// hom is the zero map.
struct TermArgument {
    std::vector<std::optional<GroupHom>> parts;  // aligned with the variable list

    Element evaluate(const std::vector<EquationVariable>& vars,
                     const std::vector<Element>& assignment, const FinAbGroup& target) const {
        Element acc = target.zero();
        for (std::size_t v = 0; v < parts.size(); ++v)
            if (parts[v]) acc = acc + (*parts[v])(assignment[v]);
        return acc;
    }
};

struct EquationTerm {
    i64 coefficient = 1;
    std::size_t unknown = 0;  // index into unknowns
    TermArgument argument;
    // Terms participating in the automorphism hypotheses of the normalized
    // form x + c_i(y). Side unknowns (Wilson's a, b; the -N f(z) term of
    // Kakutani-Nagumo-Walsh) are excluded by their builders.
    bool hypothesis_relevant = true;
};

// One quantified identity: sum of terms = rhs (a known table over the
// product of the variable groups; absent means 0).
struct EquationClause {
    std::vector<EquationTerm> terms;
    std::optional<FunctionTable> rhs;
};

class LinearFunctionalEquation {
public:
    std::vector<EquationVariable> variables;
    std::vector<EquationUnknown> unknowns;
    std::vector<EquationClause> clauses;
    std::optional<i64> claimed_bound;  // set by the named builders

    FinAbGroup variable_space() const {
        FinAbGroup p = FinAbGroup::trivial();
        for (const auto& v : variables) p = FinAbGroup::product(p, v.group);
        return p;
    }

    const FinAbGroup& codomain() const {
        if (unknowns.empty()) throw StructuralError("equation has no unknowns");
        return unknowns.front().codomain;
    }

    void validate() const {
        if (unknowns.empty()) throw StructuralError("equation has no unknowns");
        for (const auto& u : unknowns)
            if (u.codomain != unknowns.front().codomain)
                throw StructuralError("equation: unknown codomains must coincide");
        FinAbGroup vspace = variable_space();
        for (const auto& clause : clauses) {
            for (const auto& t : clause.terms) {
                if (t.unknown >= unknowns.size())
                    throw StructuralError("equation: term references missing unknown");
                if (t.argument.parts.size() != variables.size())
                    throw StructuralError("equation: argument arity != variable count");
                for (std::size_t v = 0; v < variables.size(); ++v) {
                    if (!t.argument.parts[v]) continue;
                    const GroupHom& h = *t.argument.parts[v];
                    if (h.domain() != variables[v].group)
                        throw StructuralError("equation: hom domain != variable group");
                    if (h.codomain() != unknowns[t.unknown].domain)
                        throw StructuralError("equation: hom codomain != unknown domain");
                }
            }
            if (clause.rhs) {
                if (clause.rhs->domain() != vspace)
                    throw StructuralError("equation: rhs domain != variable space");
                if (clause.rhs->codomain() != unknowns.front().codomain)
                    throw StructuralError("equation: rhs codomain != unknown codomain");
            }
        }
    }

    i64 unknown_offset(std::size_t i) const {
        i64 off = 0;
        for (std::size_t j = 0; j < i; ++j) off += unknowns[j].domain.order();
        return off;
    }

    i64 total_entries() const {
        i64 n = 0;
        for (const auto& u : unknowns) n += u.domain.order();
        return n;
    }
};

// ---------------------------------------------------------------------------
// Instantiation and solving
// ---------------------------------------------------------------------------

// One constraint row per assignment of the quantified variables, one unknown
// slot per table entry of each unknown function.
inline IntLinearSystem instantiate(const LinearFunctionalEquation& eq,
                                   i64 max_rows = 2'000'000) {
    eq.validate();
    FinAbGroup vspace = eq.variable_space();
    const i64 assignments = vspace.order();
    if (assignments * static_cast<i64>(eq.clauses.size()) > max_rows)
        throw CapacityError("instantiate: too many constraint rows",
                            assignments * static_cast<i64>(eq.clauses.size()));

    IntLinearSystem sys;
    sys.num_unknowns = eq.total_entries();
    sys.value_group = eq.codomain();

    std::vector<i64> offsets(eq.unknowns.size());
    for (std::size_t i = 0; i < eq.unknowns.size(); ++i) offsets[i] = eq.unknown_offset(i);

    for (i64 a = 0; a < assignments; ++a) {
        // Split the product index into per-variable elements.
        std::vector<Element> assignment;
        assignment.reserve(eq.variables.size());
        i64 rest = a;
        for (const auto& v : eq.variables) {
            assignment.push_back(v.group.element_at(rest % v.group.order()));
            rest /= v.group.order();
        }
        for (const auto& clause : eq.clauses) {
            std::vector<i64> coeffs(static_cast<std::size_t>(sys.num_unknowns), 0);
            for (const auto& t : clause.terms) {
                const EquationUnknown& u = eq.unknowns[t.unknown];
                Element arg = t.argument.evaluate(eq.variables, assignment, u.domain);
                coeffs[static_cast<std::size_t>(offsets[t.unknown] + u.domain.index_of(arg))] +=
                    t.coefficient;
            }
            Element rhs = clause.rhs ? sys.value_group.element_at(clause.rhs->value_index(a))
                                     : sys.value_group.zero();
            sys.rows.push_back({std::move(coeffs), std::move(rhs)});
        }
    }
    return sys;
}

// Slice one unknown's block out of a solution vector.
inline FunctionTable slice_unknown(const LinearFunctionalEquation& eq, std::size_t i,
                                   const std::vector<Element>& solution) {
    const EquationUnknown& u = eq.unknowns[i];
    i64 off = eq.unknown_offset(i);
    std::vector<i64> values;
    values.reserve(static_cast<std::size_t>(u.domain.order()));
    for (i64 j = 0; j < u.domain.order(); ++j)
        values.push_back(u.codomain.index_of(solution[static_cast<std::size_t>(off + j)]));
    return FunctionTable(u.domain, u.codomain, std::move(values));
}

struct UnknownDegrees {
    std::string name;
    bool degree_claimed = true;
    DegreeReport particular;
    std::vector<DegreeReport> generators;
};

struct SolutionReport {
    ModuleCoset coset;
    i64 claimed_bound = 0;
    std::vector<UnknownDegrees> per_unknown;
    bool bound_holds = false;
};

inline SolutionReport solve_equation(const LinearFunctionalEquation& eq, i64 claimed_bound,
                                     i64 max_rows = 2'000'000) {
    SolutionReport rep;
    rep.coset = solve(instantiate(eq, max_rows));
    rep.claimed_bound = claimed_bound;
    rep.bound_holds = !rep.coset.empty();

    if (rep.coset.empty()) return rep;

    DegreeEngine engine;
    for (std::size_t i = 0; i < eq.unknowns.size(); ++i) {
        UnknownDegrees ud;
        ud.name = eq.unknowns[i].name;
        ud.degree_claimed = eq.unknowns[i].degree_claimed;
        ud.particular = engine.degree(slice_unknown(eq, i, rep.coset.particular()));
        for (const auto& gen : rep.coset.homogeneous_generators())
            ud.generators.push_back(engine.degree(slice_unknown(eq, i, gen)));
        if (ud.degree_claimed) {
            if (!ud.particular.degree.at_most(claimed_bound)) rep.bound_holds = false;
            for (const auto& g : ud.generators)
                if (!g.degree.at_most(claimed_bound)) rep.bound_holds = false;
        }
        rep.per_unknown.push_back(std::move(ud));
    }
    return rep;
}

inline SolutionReport solve_equation(const LinearFunctionalEquation& eq) {
    if (!eq.claimed_bound)
        throw StructuralError("solve_equation: equation carries no claimed bound");
    return solve_equation(eq, *eq.claimed_bound);
}

// ---------------------------------------------------------------------------
// Hypothesis checking (normalized form x + c_i(y))
// ---------------------------------------------------------------------------

struct HypothesisReport {
    struct HomVerdict {
        std::size_t term_index;
        std::string unknown_name;
        bool automorphism;
    };
    struct PairVerdict {
        std::size_t first_term, second_term;
        bool difference_automorphism;
    };
    std::vector<HomVerdict> homs;
    std::vector<PairVerdict> pairs;
    bool satisfied = true;
    std::string violation;  // human-readable name of the first violation
};

namespace detail {

// The c_i of the hypothesis-relevant terms, in term order. Requires the
// normalized shape: two variables, x-part = identity on each relevant term.
inline std::vector<std::pair<std::size_t, GroupHom>> normalized_homs(
    const LinearFunctionalEquation& eq) {
    if (eq.clauses.size() != 1)
        throw StructuralError("equation is not in normalized form: expected a single clause");
    if (eq.variables.size() != 2)
        throw StructuralError("equation is not in normalized form: expected two variables");
    const FinAbGroup& s = eq.variables[0].group;
    if (eq.variables[1].group != s)
        throw StructuralError("equation is not in normalized form: variable groups differ");
    GroupHom id = GroupHom::identity(s);

    std::vector<std::pair<std::size_t, GroupHom>> out;
    const auto& terms = eq.clauses.front().terms;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (!terms[i].hypothesis_relevant) continue;
        const auto& parts = terms[i].argument.parts;
        if (!parts[0] || !(*parts[0] == id))
            throw StructuralError(
                "equation is not in normalized form: term argument is not x + c(y); "
                "apply normalize_remark1 first");
        GroupHom c = parts[1] ? *parts[1] : GroupHom::zero(s, s);
        out.emplace_back(i, std::move(c));
    }
    return out;
}

}  // namespace detail

inline HypothesisReport check_hypotheses(const LinearFunctionalEquation& eq) {
    auto homs = detail::normalized_homs(eq);
    const auto& terms = eq.clauses.front().terms;
    HypothesisReport rep;
    for (const auto& [idx, c] : homs) {
        bool ok = is_automorphism(c);
        rep.homs.push_back({idx, eq.unknowns[terms[idx].unknown].name, ok});
        if (!ok && rep.satisfied) {
            rep.satisfied = false;
            rep.violation = "c for term " + std::to_string(idx) + " (unknown " +
                            eq.unknowns[terms[idx].unknown].name + ") is not an automorphism";
        }
    }
    for (std::size_t i = 0; i < homs.size(); ++i)
        for (std::size_t j = i + 1; j < homs.size(); ++j) {
            bool ok = is_automorphism(homs[i].second - homs[j].second);
            rep.pairs.push_back({homs[i].first, homs[j].first, ok});
            if (!ok && rep.satisfied) {
                rep.satisfied = false;
                rep.violation = "c_i - c_j for terms " + std::to_string(homs[i].first) + "," +
                                std::to_string(homs[j].first) + " is not an automorphism";
            }
        }
    return rep;
}

// ---------------------------------------------------------------------------
// Remark-1 normalization: f_i(beta_i(x) + delta_i(y)) -> f~_i(x + c_i(y))
// with f~_i = f_i ∘ beta_i and c_i = beta_i^{-1} ∘ delta_i.
// ---------------------------------------------------------------------------

struct NormalizedEquation {
    LinearFunctionalEquation equation;
    std::vector<std::optional<GroupHom>> betas;  // per term; nullopt for side terms

    // Old solution tuple -> normalized solution tuple. Unknown i's transform
    // comes from the first relevant term referencing it.
    std::vector<FunctionTable> pushforward(const std::vector<FunctionTable>& fs) const {
        return map(fs, /*invert=*/false);
    }
    std::vector<FunctionTable> pullback(const std::vector<FunctionTable>& fs) const {
        return map(fs, /*invert=*/true);
    }

private:
    std::vector<FunctionTable> map(const std::vector<FunctionTable>& fs, bool invert) const {
        if (fs.size() != equation.unknowns.size())
            throw StructuralError("NormalizedEquation: solution tuple has wrong arity");
        std::vector<FunctionTable> out = fs;
        const auto& terms = equation.clauses.front().terms;
        std::vector<bool> done(fs.size(), false);
        for (std::size_t t = 0; t < terms.size(); ++t) {
            if (!betas[t]) continue;
            std::size_t u = terms[t].unknown;
            if (done[u]) continue;
            done[u] = true;
            GroupHom b = invert ? invert_automorphism(*betas[t]) : *betas[t];
            out[u] = compose_with_hom(fs[u], b);
        }
        return out;
    }
};

inline NormalizedEquation normalize_remark1(const LinearFunctionalEquation& eq) {
    eq.validate();
    if (eq.clauses.size() != 1)
        throw StructuralError("normalize_remark1: expected a single clause");
    if (eq.variables.size() != 2)
        throw StructuralError("normalize_remark1: expected two variables");
    const FinAbGroup& s = eq.variables[0].group;

    NormalizedEquation out;
    out.equation = eq;
    out.betas.assign(eq.clauses.front().terms.size(), std::nullopt);

    auto& terms = out.equation.clauses.front().terms;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        if (!terms[t].hypothesis_relevant) continue;
        auto& parts = terms[t].argument.parts;
        if (!parts[0])
            throw StructuralError("normalize_remark1: relevant term lacks an x-part");
        GroupHom beta = *parts[0];
        if (!is_automorphism(beta))
            throw StructuralError("normalize_remark1: beta for term " + std::to_string(t) +
                                  " is not an automorphism");
        GroupHom beta_inv = invert_automorphism(beta);
        GroupHom delta = parts[1] ? *parts[1] : GroupHom::zero(s, s);
        parts[0] = GroupHom::identity(s);
        parts[1] = beta_inv.compose(delta);
        out.betas[t] = std::move(beta);
    }
    out.equation.validate();
    return out;
}

// ---------------------------------------------------------------------------
// The proof's reduction operator for the homogeneous Ghurye-Olkin equation:
// applying Δ_{(h, -c_1^{-1}(h))} to sum_i f_i(x + c_i(y)) = 0 yields the
// (n-1)-term equation in g_i = Δ_{(1 - c_i ∘ c_1^{-1})(h)} f_i, i >= 2.
// ---------------------------------------------------------------------------

struct ReducedEquation {
    LinearFunctionalEquation equation;
    std::vector<Element> shifts;  // per surviving unknown, in order

    // Solutions of the original equation map to solutions of the reduced one.
    std::vector<FunctionTable> map_solution(const std::vector<FunctionTable>& fs) const {
        if (fs.size() != shifts.size() + 1)
            throw StructuralError("ReducedEquation: expected a full original solution tuple");
        std::vector<FunctionTable> out;
        out.reserve(shifts.size());
        for (std::size_t i = 0; i < shifts.size(); ++i)
            out.push_back(difference(fs[i + 1], shifts[i]));
        return out;
    }
};

inline ReducedEquation reduction_step(const LinearFunctionalEquation& eq, const Element& h) {
    auto homs = detail::normalized_homs(eq);
    const auto& clause = eq.clauses.front();
    if (clause.rhs && !clause.rhs->is_zero())
        throw StructuralError("reduction_step: equation must be homogeneous");
    if (homs.size() != clause.terms.size() || homs.size() != eq.unknowns.size())
        throw StructuralError("reduction_step: expected one relevant term per unknown");
    if (homs.size() < 2)
        throw StructuralError("reduction_step: need at least two terms");
    const FinAbGroup& s = eq.variables[0].group;
    if (h.group() != s) throw StructuralError("reduction_step: shift not in the base group");

    const GroupHom& c1 = homs[0].second;
    if (!is_automorphism(c1))
        throw StructuralError("reduction_step: c_1 must be an automorphism");
    GroupHom c1_inv = invert_automorphism(c1);
    GroupHom id = GroupHom::identity(s);

    ReducedEquation out;
    out.equation.variables = eq.variables;
    out.equation.claimed_bound = std::nullopt;
    for (std::size_t i = 1; i < homs.size(); ++i) {
        const auto& term = clause.terms[homs[i].first];
        const EquationUnknown& u = eq.unknowns[term.unknown];
        out.shifts.push_back((id - homs[i].second.compose(c1_inv))(h));

        EquationUnknown gu;
        gu.name = "d_" + u.name;
        gu.domain = u.domain;
        gu.codomain = u.codomain;
        out.equation.unknowns.push_back(std::move(gu));

        EquationTerm gt;
        gt.coefficient = term.coefficient;
        gt.unknown = out.equation.unknowns.size() - 1;
        gt.argument.parts = {id, homs[i].second};
        out.equation.clauses.resize(1);
        out.equation.clauses[0].terms.push_back(std::move(gt));
    }
    out.equation.validate();
    return out;
}

// ---------------------------------------------------------------------------
// Named builders
// ---------------------------------------------------------------------------

namespace detail {

inline LinearFunctionalEquation two_variable_skeleton(const FinAbGroup& s,
                                                      const FinAbGroup& codomain) {
    LinearFunctionalEquation eq;
    eq.variables = {{"x", s}, {"y", s}};
    (void)codomain;
    eq.clauses.resize(1);
    return eq;
}

// rhs(x, y) = sum_j p_j(x) a_j(y) + sum_k q_k(y) b_k(x), as a table over S x S.
inline std::optional<FunctionTable> separated_rhs(
    const FinAbGroup& s, const RingZm& ring,
    const std::vector<std::pair<FunctionTable, FunctionTable>>& x_then_y,
    const std::vector<std::pair<FunctionTable, FunctionTable>>& y_then_x) {
    FinAbGroup cod = ring.additive_group();
    FinAbGroup space = FinAbGroup::product(s, s);
    std::vector<i64> values(static_cast<std::size_t>(space.order()), 0);
    bool any = false;
    auto accumulate = [&](const FunctionTable& fx, const FunctionTable& fy) {
        any = true;
        for (i64 iy = 0; iy < s.order(); ++iy)
            for (i64 ix = 0; ix < s.order(); ++ix) {
                auto& v = values[static_cast<std::size_t>(pair_index(s, ix, iy))];
                v = ring.add(v, ring.mul(fx.value_index(ix), fy.value_index(iy)));
            }
    };
    for (const auto& [p, a] : x_then_y) accumulate(p, a);
    for (const auto& [q, b] : y_then_x) accumulate(b, q);  // q_k(y) b_k(x)
    if (!any) return std::nullopt;
    return FunctionTable(space, cod, std::move(values));
}

inline void check_known_degrees(
    const std::vector<std::pair<FunctionTable, FunctionTable>>& pairs, i64 bound,
    const char* which, bool first_of_pair) {
    DegreeEngine engine;
    for (const auto& pr : pairs) {
        const FunctionTable& f = first_of_pair ? pr.first : pr.second;
        if (!engine.degree(f).degree.at_most(bound))
            throw StructuralError(std::string("builder: known table ") + which +
                                  " exceeds its declared degree cap " + std::to_string(bound));
    }
}

}  // namespace detail

// Ghurye-Olkin: sum_i f_i(x + c_i(y)) = sum_j p_j(x) a_j(y) + sum_k q_k(y) b_k(x)
// over a ring Z/m. Claimed bound: r+s+1 for n = 1, r+s+n in general, n-1 when
// the right-hand side vanishes (then any abelian codomain would do).
inline LinearFunctionalEquation build_ghurye_olkin(
    const FinAbGroup& s, const RingZm& ring, const std::vector<GroupHom>& cs,
    const std::vector<std::pair<FunctionTable, FunctionTable>>& pa_pairs, i64 r,
    const std::vector<std::pair<FunctionTable, FunctionTable>>& qb_pairs, i64 sdeg) {
    if (cs.empty()) throw StructuralError("build_ghurye_olkin: need at least one hom");
    FinAbGroup cod = ring.additive_group();
    for (const auto& c : cs)
        if (c.domain() != s || c.codomain() != s)
            throw StructuralError("build_ghurye_olkin: homs must be endomorphisms of S");
    for (const auto& [p, a] : pa_pairs)
        if (p.domain() != s || a.domain() != s || p.codomain() != cod || a.codomain() != cod)
            throw StructuralError("build_ghurye_olkin: malformed p/a table");
    for (const auto& [q, b] : qb_pairs)
        if (q.domain() != s || b.domain() != s || q.codomain() != cod || b.codomain() != cod)
            throw StructuralError("build_ghurye_olkin: malformed q/b table");
    detail::check_known_degrees(pa_pairs, r, "p_j", true);
    detail::check_known_degrees(qb_pairs, sdeg, "q_k", true);

    LinearFunctionalEquation eq = detail::two_variable_skeleton(s, cod);
    GroupHom id = GroupHom::identity(s);
    for (std::size_t i = 0; i < cs.size(); ++i) {
        eq.unknowns.push_back({"f" + std::to_string(i + 1), s, cod, true});
        EquationTerm t;
        t.coefficient = 1;
        t.unknown = i;
        t.argument.parts = {id, cs[i]};
        eq.clauses[0].terms.push_back(std::move(t));
    }
    eq.clauses[0].rhs = detail::separated_rhs(s, ring, pa_pairs, qb_pairs);

    const i64 n = static_cast<i64>(cs.size());
    if (!eq.clauses[0].rhs)
        eq.claimed_bound = n - 1;
    else
        eq.claimed_bound = (n == 1) ? r + sdeg + 1 : r + sdeg + n;
    eq.validate();
    return eq;
}

// Wilson: sum_i f_i(beta_i(x) + delta_i(y)) = a(x) + b(y); all unknowns are
// polynomial of degree at most n.
inline LinearFunctionalEquation build_wilson(const FinAbGroup& s, const FinAbGroup& h,
                                             const std::vector<GroupHom>& betas,
                                             const std::vector<GroupHom>& deltas) {
    if (betas.size() != deltas.size() || betas.empty())
        throw StructuralError("build_wilson: need matching nonempty beta/delta lists");
    const std::size_t n = betas.size();

    LinearFunctionalEquation eq = detail::two_variable_skeleton(s, h);
    GroupHom id = GroupHom::identity(s);
    for (std::size_t i = 0; i < n; ++i) {
        eq.unknowns.push_back({"f" + std::to_string(i + 1), s, h, true});
        EquationTerm t;
        t.coefficient = 1;
        t.unknown = i;
        t.argument.parts = {betas[i], deltas[i]};
        eq.clauses[0].terms.push_back(std::move(t));
    }
    eq.unknowns.push_back({"a", s, h, true});
    eq.unknowns.push_back({"b", s, h, true});

    EquationTerm ta;
    ta.coefficient = -1;
    ta.unknown = n;
    ta.argument.parts = {id, std::nullopt};
    ta.hypothesis_relevant = false;
    eq.clauses[0].terms.push_back(std::move(ta));

    EquationTerm tb;
    tb.coefficient = -1;
    tb.unknown = n + 1;
    tb.argument.parts = {std::nullopt, id};
    tb.hypothesis_relevant = false;
    eq.clauses[0].terms.push_back(std::move(tb));

    eq.claimed_bound = static_cast<i64>(n);
    eq.validate();
    return eq;
}

// Generalized Fréchet (unmixed): sum_k a_k f(x + k h) = 0. Claimed bound
// s = #{k : a_k != 0} - 1. The implied c_i(x) = k_i x are realized as
// multiplication homs and all terms with a_k != 0 are hypothesis-relevant;
// the bound is stated without the automorphism hypotheses, so callers
// should consult check_hypotheses alongside it.
inline LinearFunctionalEquation build_gffe(const FinAbGroup& s, const FinAbGroup& h,
                                           const std::vector<i64>& coefficients) {
    bool any = false;
    for (i64 a : coefficients) any = any || a != 0;
    if (!any) throw StructuralError("build_gffe: all coefficients vanish");

    LinearFunctionalEquation eq;
    eq.variables = {{"x", s}, {"h", s}};
    eq.clauses.resize(1);
    eq.unknowns.push_back({"f", s, h, true});

    GroupHom id = GroupHom::identity(s);
    i64 support = 0;
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
        if (coefficients[k] == 0) continue;
        ++support;
        EquationTerm t;
        t.coefficient = coefficients[k];
        t.unknown = 0;
        t.argument.parts = {id, GroupHom::scalar(s, static_cast<i64>(k))};
        eq.clauses[0].terms.push_back(std::move(t));
    }
    eq.claimed_bound = support - 1;
    eq.validate();
    return eq;
}

// Kakutani-Nagumo-Walsh over the finite field F_p (finite analog of the
// complex-plane statement): sum_{k=0}^{N-1} f(z + w^k h) = N f(z), with w a
// primitive N-th root of unity mod p. The 1/N prefactor is cleared by
// multiplying through by N, a unit mod p. Claimed bound N.
inline LinearFunctionalEquation build_knw(i64 p, i64 n, i64 w) {
    if (p < 2) throw StructuralError("build_knw: p must be >= 2");
    for (i64 d = 2; d * d <= p; ++d)
        if (p % d == 0) throw StructuralError("build_knw: p must be prime");
    if (n < 1 || (p - 1) % n != 0)
        throw StructuralError("build_knw: N must divide p - 1");
    // gcd(N, p) = 1 holds automatically for N | p-1, N >= 1; keep the check
    // explicit since clearing the prefactor depends on it.
    if (gcd_i64(n, p) != 1) throw StructuralError("build_knw: N must be a unit mod p");

    w = mod_reduce(w, p);
    i64 pow = 1;
    for (i64 k = 1; k <= n; ++k) {
        pow = pow * w % p;
        if (pow == 1 && k < n)
            throw StructuralError("build_knw: w^" + std::to_string(k) +
                                  " = 1, so w is not a primitive N-th root of unity");
    }
    if (pow != 1)
        throw StructuralError("build_knw: w^N != 1 mod p, not an N-th root of unity");

    FinAbGroup fp = FinAbGroup::cyclic(p);
    LinearFunctionalEquation eq;
    eq.variables = {{"z", fp}, {"h", fp}};
    eq.clauses.resize(1);
    eq.unknowns.push_back({"f", fp, fp, true});

    GroupHom id = GroupHom::identity(fp);
    i64 wk = 1;
    for (i64 k = 0; k < n; ++k) {
        EquationTerm t;
        t.coefficient = 1;
        t.unknown = 0;
        t.argument.parts = {id, GroupHom::scalar(fp, wk)};
        eq.clauses[0].terms.push_back(std::move(t));
        wk = wk * w % p;
    }
    EquationTerm mean;
    mean.coefficient = -n;
    mean.unknown = 0;
    mean.argument.parts = {id, std::nullopt};
    mean.hypothesis_relevant = false;
    eq.clauses[0].terms.push_back(std::move(mean));

    eq.claimed_bound = n;
    eq.validate();
    return eq;
}

// Linearized Skitovich-Darmois: sum_i f_i(beta_i(x) + delta_i(y)) =
// sum_i f_i(beta_i(x)) + sum_i f_i(delta_i(y)). P and Q enter as derived
// unknowns tied to the sums by extra clauses; the bound covers only P
// and Q (degree <= n), so the f_i carry no claim.
inline LinearFunctionalEquation build_lsd(const FinAbGroup& s, const FinAbGroup& h,
                                          const std::vector<GroupHom>& betas,
                                          const std::vector<GroupHom>& deltas) {
    if (betas.size() != deltas.size() || betas.empty())
        throw StructuralError("build_lsd: need matching nonempty beta/delta lists");
    const std::size_t n = betas.size();

    LinearFunctionalEquation eq;
    eq.variables = {{"x", s}, {"y", s}};
    eq.clauses.resize(3);
    GroupHom id = GroupHom::identity(s);

    for (std::size_t i = 0; i < n; ++i)
        eq.unknowns.push_back({"f" + std::to_string(i + 1), s, h, false});
    eq.unknowns.push_back({"P", s, h, true});
    eq.unknowns.push_back({"Q", s, h, true});
    const std::size_t pi = n, qi = n + 1;

    // (1) sum f_i(beta_i x + delta_i y) - P(x) - Q(y) = 0
    for (std::size_t i = 0; i < n; ++i) {
        EquationTerm t;
        t.coefficient = 1;
        t.unknown = i;
        t.argument.parts = {betas[i], deltas[i]};
        eq.clauses[0].terms.push_back(std::move(t));
    }
    {
        EquationTerm tp;
        tp.coefficient = -1;
        tp.unknown = pi;
        tp.argument.parts = {id, std::nullopt};
        tp.hypothesis_relevant = false;
        eq.clauses[0].terms.push_back(std::move(tp));
        EquationTerm tq;
        tq.coefficient = -1;
        tq.unknown = qi;
        tq.argument.parts = {std::nullopt, id};
        tq.hypothesis_relevant = false;
        eq.clauses[0].terms.push_back(std::move(tq));
    }

    // (2) P(x) = sum f_i(beta_i x)   (3) Q(y) = sum f_i(delta_i y)
    for (std::size_t i = 0; i < n; ++i) {
        EquationTerm t2;
        t2.coefficient = 1;
        t2.unknown = i;
        t2.argument.parts = {betas[i], std::nullopt};
        t2.hypothesis_relevant = false;
        eq.clauses[1].terms.push_back(std::move(t2));
        EquationTerm t3;
        t3.coefficient = 1;
        t3.unknown = i;
        t3.argument.parts = {std::nullopt, deltas[i]};
        t3.hypothesis_relevant = false;
        eq.clauses[2].terms.push_back(std::move(t3));
    }
    {
        EquationTerm tp;
        tp.coefficient = -1;
        tp.unknown = pi;
        tp.argument.parts = {id, std::nullopt};
        tp.hypothesis_relevant = false;
        eq.clauses[1].terms.push_back(std::move(tp));
        EquationTerm tq;
        tq.coefficient = -1;
        tq.unknown = qi;
        tq.argument.parts = {std::nullopt, id};
        tq.hypothesis_relevant = false;
        eq.clauses[2].terms.push_back(std::move(tq));
    }

    eq.claimed_bound = static_cast<i64>(n);
    eq.validate();
    return eq;
}

}  // namespace feq
