#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "feq/abelian.hpp"
#include "feq/errors.hpp"
#include "feq/functions.hpp"
#include "feq/linalg.hpp"

namespace feq {

// Degree of a function under the mixed-difference calculus:
//  - minus_infinity for the zero function,
//  - a finite m >= 0 when all (m+1)-fold mixed differences vanish,
//  - not_polynomial when no m up to the cap order(G) works (reachable when
//    the codomain has prime torsion foreign to the domain, e.g. Z3 -> Z2).
class Degree {
public:
    static Degree minus_infinity() { return Degree(Kind::MinusInfinity, 0); }
    static Degree finite(i64 d) {
        if (d < 0) throw StructuralError("Degree::finite: negative degree");
        return Degree(Kind::Finite, d);
    }
    static Degree not_polynomial() { return Degree(Kind::NotPolynomial, 0); }

    bool is_minus_infinity() const noexcept { return kind_ == Kind::MinusInfinity; }
    bool is_finite() const noexcept { return kind_ == Kind::Finite; }
    bool is_not_polynomial() const noexcept { return kind_ == Kind::NotPolynomial; }

    i64 value() const {
        if (!is_finite()) throw StructuralError("Degree::value: degree is not finite");
        return value_;
    }

    // degree <= bound, with minus_infinity below everything and
    // not_polynomial above everything.
    bool at_most(i64 bound) const noexcept {
        switch (kind_) {
            case Kind::MinusInfinity: return true;
            case Kind::Finite: return value_ <= bound;
            default: return false;
        }
    }

    bool operator==(const Degree& o) const noexcept {
        return kind_ == o.kind_ && (kind_ != Kind::Finite || value_ == o.value_);
    }
    bool operator!=(const Degree& o) const noexcept { return !(*this == o); }

    std::string to_string() const {
        switch (kind_) {
            case Kind::MinusInfinity: return "-inf";
            case Kind::Finite: return std::to_string(value_);
            default: return "not-polynomial";
        }
    }

private:
    enum class Kind { MinusInfinity, Finite, NotPolynomial };
    Degree(Kind k, i64 v) : kind_(k), value_(v) {}
    Kind kind_;
    i64 value_;
};

// Witness that deg(f) > m: shifts h_1..h_{m+1} and a point x with
// (Δ_{h_1}...Δ_{h_{m+1}} f)(x) = value != 0.
struct DegreeWitness {
    std::vector<Element> shifts;
    Element point;
    Element value;
};

struct DegreeReport {
    Degree degree = Degree::not_polynomial();
    std::optional<DegreeWitness> witness;
};

// Memoized degree computation. One engine instance shares its memo across
// queries; the difference recursion revisits identical tables heavily.
class DegreeEngine {
public:
    // true iff all (m+1)-fold mixed differences of f vanish.
    bool is_degree_at_most(const FunctionTable& f, i64 m,
                           std::optional<DegreeWitness>* witness = nullptr) {
        if (witness) witness->reset();
        auto [ok, w] = check(f, m);
        if (!ok && witness) *witness = w;
        return ok;
    }

    DegreeReport degree(const FunctionTable& f) {
        DegreeReport rep;
        if (f.is_zero()) {
            rep.degree = Degree::minus_infinity();
            return rep;
        }
        const i64 cap = f.domain().order();
        std::optional<DegreeWitness> last;
        for (i64 m = 0; m <= cap; ++m) {
            std::optional<DegreeWitness> w;
            if (is_degree_at_most(f, m, &w)) {
                rep.degree = Degree::finite(m);
                rep.witness = last;  // witness that m-1 fails, when m > 0
                return rep;
            }
            last = w;
        }
        rep.degree = Degree::not_polynomial();
        rep.witness = last;
        return rep;
    }

private:
    struct MemoKey {
        std::vector<i64> values;
        i64 m;
        bool operator==(const MemoKey& o) const { return m == o.m && values == o.values; }
    };
    struct MemoKeyHash {
        std::size_t operator()(const MemoKey& k) const noexcept {
            std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(k.m);
            for (i64 v : k.values) {
                h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            }
            return static_cast<std::size_t>(h);
        }
    };
    struct MemoValue {
        bool ok;
        std::optional<DegreeWitness> witness;
    };

    std::pair<bool, std::optional<DegreeWitness>> check(const FunctionTable& f, i64 m) {
        if (m < 0) {
            // Base case: degree <= -1 means f == 0.
            const FinAbGroup& g = f.domain();
            for (i64 i = 0; i < g.order(); ++i) {
                if (f.value_index(i) != 0) {
                    DegreeWitness w;
                    w.point = g.element_at(i);
                    w.value = f.codomain().element_at(f.value_index(i));
                    return {false, w};
                }
            }
            return {true, std::nullopt};
        }

        MemoKey key{f.value_indices(), m};
        auto it = memo_.find(key);
        if (it != memo_.end()) return {it->second.ok, it->second.witness};

        // Full sweep over all h in G, not only generators.
        const FinAbGroup& g = f.domain();
        MemoValue result{true, std::nullopt};
        for (i64 hi = 0; hi < g.order(); ++hi) {
            Element h = g.element_at(hi);
            auto [ok, sub] = check(difference(f, h), m - 1);
            if (!ok) {
                DegreeWitness w = *sub;
                w.shifts.insert(w.shifts.begin(), h);
                result = MemoValue{false, std::move(w)};
                break;
            }
        }
        memo_.emplace(std::move(key), result);
        return {result.ok, result.witness};
    }

    std::unordered_map<MemoKey, MemoValue, MemoKeyHash> memo_;
};

inline bool is_degree_at_most(const FunctionTable& f, i64 m,
                              std::optional<DegreeWitness>* witness = nullptr) {
    if (m < -1) throw StructuralError("is_degree_at_most: m must be >= -1");
    DegreeEngine engine;
    return engine.is_degree_at_most(f, m, witness);
}

inline DegreeReport degree(const FunctionTable& f) {
    DegreeEngine engine;
    return engine.degree(f);
}

// Generators of the submodule {f : G -> H with deg f <= d}, obtained by
// solving the homogeneous system "all (d+1)-fold mixed differences vanish"
// with one unknown per point of G.
inline std::vector<FunctionTable> degree_submodule_generators(const FinAbGroup& g,
                                                              const FinAbGroup& h, i64 d) {
    if (d < 0) throw StructuralError("degree_submodule_generators: d must be >= 0");
    const i64 n = g.order();
    const int k = static_cast<int>(d) + 1;

    double rows_estimate = static_cast<double>(n);
    for (int i = 0; i < k; ++i) rows_estimate *= static_cast<double>(n);
    if (rows_estimate > 2e7)
        throw CapacityError("degree_submodule_generators: too many constraint rows",
                            static_cast<long long>(rows_estimate));

    IntLinearSystem sys;
    sys.num_unknowns = n;
    sys.value_group = h;

    // One row per (h_1..h_{d+1}, x): the inclusion-exclusion expansion of the
    // iterated difference, coefficients accumulated per point.
    std::vector<i64> shifts(static_cast<std::size_t>(k), 0);
    Element zero_h = h.zero();
    for (;;) {
        for (i64 x = 0; x < n; ++x) {
            std::vector<i64> coeffs(static_cast<std::size_t>(n), 0);
            for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
                i64 pt = x;
                int bits = 0;
                for (int i = 0; i < k; ++i) {
                    if (mask & (1ull << i)) {
                        pt = g.add_indices(pt, shifts[static_cast<std::size_t>(i)]);
                        ++bits;
                    }
                }
                i64 sign = ((k - bits) % 2 == 0) ? 1 : -1;
                coeffs[static_cast<std::size_t>(pt)] += sign;
            }
            sys.rows.push_back({std::move(coeffs), zero_h});
        }
        int pos = 0;
        while (pos < k && ++shifts[static_cast<std::size_t>(pos)] == n) {
            shifts[static_cast<std::size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == k) break;
    }

    ModuleCoset coset = solve(sys);
    std::vector<FunctionTable> out;
    for (const auto& gen : coset.homogeneous_generators()) {
        std::vector<i64> values;
        values.reserve(static_cast<std::size_t>(n));
        for (const Element& e : gen) values.push_back(h.index_of(e));
        out.emplace_back(g, h, std::move(values));
    }
    return out;
}

}  // namespace feq
