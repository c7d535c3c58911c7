#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "feq/abelian.hpp"
#include "feq/errors.hpp"

namespace feq {

// An integer-coefficient linear system whose unknowns take values in a
// finite abelian group: for each row, sum_j coeffs[j] * x_j = rhs in
// value_group.
struct IntLinearSystem {
    struct Row {
        std::vector<i64> coeffs;
        Element rhs;
    };

    i64 num_unknowns = 0;
    FinAbGroup value_group;
    std::vector<Row> rows;
};

namespace detail {

// Canonical Howell normal form of a set of row vectors over Z/m.
// Properties used downstream:
//  - the form is a canonical invariant of the row span,
//  - a vector lies in the span iff reduce() maps it to zero,
//  - every span element with leading zeros is generated by the rows
//    sharing those leading zeros.
class HowellForm {
public:
    HowellForm(i64 modulus, std::size_t num_cols, std::vector<std::vector<i64>> rows)
        : m_(modulus), cols_(num_cols) {
        for (auto& r : rows) {
            for (auto& v : r) v = mod_reduce(v, m_);
            insert(std::move(r));
        }
        saturate();
        reduce_above_pivots();
    }

    i64 modulus() const noexcept { return m_; }
    const std::vector<std::vector<i64>>& rows() const noexcept { return rows_; }

    // Reduce v against the form; the result is the canonical representative
    // of v modulo the row span (zero iff v is in the span).
    std::vector<i64> reduce(std::vector<i64> v) const {
        for (auto& x : v) x = mod_reduce(x, m_);
        for (const auto& row : rows_) {
            std::size_t p = pivot_col(row);
            i64 g = row[p];
            i64 q = v[p] / g;
            if (q != 0) sub_scaled(v, row, q);
        }
        return v;
    }

    bool contains(const std::vector<i64>& v) const {
        auto r = reduce(v);
        return std::all_of(r.begin(), r.end(), [](i64 x) { return x == 0; });
    }

private:
    static std::size_t pivot_col(const std::vector<i64>& row) {
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0) return j;
        return row.size();
    }

    void sub_scaled(std::vector<i64>& a, const std::vector<i64>& b, i64 q) const {
        i64 qr = mod_reduce(q, m_);
        for (std::size_t j = 0; j < a.size(); ++j)
            a[j] = mod_reduce(a[j] - qr * b[j], m_);
    }

    // A unit u mod m with u*a == gcd(a,m) (mod m).
    i64 normalizing_unit(i64 a) const {
        i64 g = gcd_i64(a, m_);
        i64 a1 = a / g;
        i64 md = m_ / g;
        if (md == 1) return 1;
        i64 u = mod_inverse(mod_reduce(a1, md), md);
        while (gcd_i64(u, m_) != 1) u += md;
        return mod_reduce(u, m_);
    }

    // Insert a row, maintaining at most one row per pivot column and pivots
    // normalized to divisors of m.
    void insert(std::vector<i64> row) {
        for (;;) {
            std::size_t p = pivot_col(row);
            if (p == cols_) return;
            // Normalize the pivot to gcd(pivot, m).
            i64 u = normalizing_unit(row[p]);
            if (u != 1)
                for (auto& x : row) x = mod_reduce(x * u, m_);
            auto it = std::find_if(rows_.begin(), rows_.end(), [&](const auto& r) {
                return pivot_col(r) == p;
            });
            if (it == rows_.end()) {
                rows_.push_back(std::move(row));
                std::sort(rows_.begin(), rows_.end(), [](const auto& a, const auto& b) {
                    return pivot_col(a) < pivot_col(b);
                });
                return;
            }
            i64 a = (*it)[p], b = row[p];
            if (b % a == 0) {
                sub_scaled(row, *it, b / a);  // pivot killed, leading zeros grow
                continue;
            }
            // Combine to gcd: replace *it by s*it + t*row, continue with the
            // complementary combination whose pivot entry vanishes.
            i64 s, t;
            i64 g = ext_gcd(a, b, s, t);
            std::vector<i64> merged(cols_), rest(cols_);
            i64 sr = mod_reduce(s, m_), tr = mod_reduce(t, m_);
            i64 ar = mod_reduce(a / g, m_), br = mod_reduce(b / g, m_);
            for (std::size_t j = 0; j < cols_; ++j) {
                merged[j] = mod_reduce(sr * (*it)[j] + tr * row[j], m_);
                rest[j] = mod_reduce(ar * row[j] - br * (*it)[j], m_);
            }
            *it = std::move(merged);
            row = std::move(rest);
        }
    }

    // Howell completion: for each row with pivot g, (m/g) * row lies in the
    // span but has strictly more leading zeros; fold such rows in until the
    // form is stable.
    void saturate() {
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<std::vector<i64>> extras;
            for (const auto& row : rows_) {
                std::size_t p = pivot_col(row);
                i64 g = gcd_i64(row[p], m_);
                i64 c = m_ / g;
                if (c == 1) continue;
                std::vector<i64> extra(cols_);
                for (std::size_t j = 0; j < cols_; ++j)
                    extra[j] = mod_reduce(c * row[j], m_);
                if (!contains_echelon(extra)) extras.push_back(std::move(extra));
            }
            for (auto& e : extras) {
                insert(std::move(e));
                changed = true;
            }
        }
    }

    // Span test valid on an echelon set (pivot division only); used during
    // saturation before the final reduction pass.
    bool contains_echelon(std::vector<i64> v) const {
        for (const auto& row : rows_) {
            std::size_t p = pivot_col(row);
            if (v[p] % row[p] == 0 && v[p] != 0) sub_scaled(v, row, v[p] / row[p]);
        }
        return std::all_of(v.begin(), v.end(), [](i64 x) { return x == 0; });
    }

    void reduce_above_pivots() {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            for (std::size_t k = i + 1; k < rows_.size(); ++k) {
                std::size_t p = pivot_col(rows_[k]);
                i64 g = rows_[k][p];
                i64 q = rows_[i][p] / g;
                if (q != 0) sub_scaled(rows_[i], rows_[k], q);
            }
        }
    }

    i64 m_;
    std::size_t cols_;
    std::vector<std::vector<i64>> rows_;  // sorted by pivot column
};

// Kernel of A (rows x n) mod m, as the Howell form of the vectors x with
// A x == 0. Obtained from the Howell form of [A^T | I_n]: rows whose first
// `rows` columns vanish carry kernel vectors in the identity block, and the
// Howell property makes them generate the whole kernel.
inline HowellForm kernel_mod(const std::vector<std::vector<i64>>& a, std::size_t n, i64 m) {
    std::size_t k = a.size();
    std::vector<std::vector<i64>> stacked(n, std::vector<i64>(k + n, 0));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < k; ++i) stacked[j][i] = mod_reduce(a[i][j], m);
        stacked[j][k + j] = 1 % m;
    }
    HowellForm h(m, k + n, std::move(stacked));
    std::vector<std::vector<i64>> kernel_rows;
    for (const auto& row : h.rows()) {
        bool lead_zero = true;
        for (std::size_t i = 0; i < k; ++i)
            if (row[i] != 0) { lead_zero = false; break; }
        if (lead_zero) kernel_rows.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(k),
                                                row.end());
    }
    return HowellForm(m, n, std::move(kernel_rows));
}

// Complete solution set of A x == b (mod m): canonical particular solution
// plus the kernel Howell form, or nullopt when inconsistent.
struct CyclicSolution {
    std::vector<i64> particular;
    HowellForm kernel;
};

inline std::optional<CyclicSolution> solve_mod(const std::vector<std::vector<i64>>& a,
                                               const std::vector<i64>& b, std::size_t n, i64 m) {
    HowellForm ker = kernel_mod(a, n, m);
    if (m == 1) return CyclicSolution{std::vector<i64>(n, 0), std::move(ker)};

    // Kernel of the augmented matrix [A | -b]; a solution is a kernel vector
    // whose last coordinate is 1.
    std::vector<std::vector<i64>> aug(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        aug[i] = a[i];
        aug[i].push_back(mod_reduce(-b[i], m));
    }
    HowellForm aug_ker = kernel_mod(aug, n + 1, m);

    // Fold the generators' last coordinates to their gcd with m.
    std::vector<i64> acc(n + 1, 0);
    i64 acc_t = m;  // the zero coordinate, represented as m for the gcd fold
    for (const auto& gen : aug_ker.rows()) {
        i64 t = gen[n];
        if (t == 0) continue;
        i64 s0, t0;
        i64 g = ext_gcd(acc_t, t, s0, t0);
        for (std::size_t j = 0; j <= n; ++j)
            acc[j] = mod_reduce(s0 * acc[j] + t0 * gen[j], m);
        acc_t = g;
        if (g == 1) break;
    }
    if (acc_t != 1) return std::nullopt;

    std::vector<i64> particular(acc.begin(), acc.begin() + static_cast<std::ptrdiff_t>(n));
    particular = ker.reduce(std::move(particular));  // canonical representative
    return CyclicSolution{std::move(particular), std::move(ker)};
}

}  // namespace detail

// Solution set of an IntLinearSystem: a canonical particular solution plus
// homogeneous generators, one block per cyclic factor of the value group.
class ModuleCoset {
public:
    bool empty() const noexcept { return empty_; }
    i64 num_unknowns() const noexcept { return num_unknowns_; }
    const FinAbGroup& value_group() const noexcept { return value_group_; }

    const std::vector<Element>& particular() const {
        if (empty_) throw StructuralError("ModuleCoset: empty coset has no particular solution");
        return particular_;
    }

    const std::vector<std::vector<Element>>& homogeneous_generators() const noexcept {
        return generators_;
    }

    bool contains(const std::vector<Element>& v) const {
        if (static_cast<i64>(v.size()) != num_unknowns_)
            throw StructuralError("ModuleCoset::contains: dimension mismatch");
        for (const Element& e : v)
            if (e.group() != value_group_)
                throw StructuralError("ModuleCoset::contains: element of wrong group");
        if (empty_) return false;
        for (std::size_t t = 0; t < kernels_.size(); ++t) {
            std::vector<i64> diff(static_cast<std::size_t>(num_unknowns_));
            for (std::size_t j = 0; j < diff.size(); ++j)
                diff[j] = mod_reduce(v[j].residues()[t] - particular_[j].residues()[t],
                                     value_group_.moduli()[t]);
            if (!kernels_[t].contains(diff)) return false;
        }
        return true;
    }

private:
    friend ModuleCoset solve(const IntLinearSystem&);

    bool empty_ = false;
    i64 num_unknowns_ = 0;
    FinAbGroup value_group_;
    std::vector<Element> particular_;
    std::vector<std::vector<Element>> generators_;
    std::vector<detail::HowellForm> kernels_;  // one per cyclic factor
};

inline ModuleCoset solve(const IntLinearSystem& sys) {
    ModuleCoset out;
    out.num_unknowns_ = sys.num_unknowns;
    out.value_group_ = sys.value_group;
    const std::size_t n = static_cast<std::size_t>(sys.num_unknowns);

    for (const auto& row : sys.rows) {
        if (static_cast<i64>(row.coeffs.size()) != sys.num_unknowns)
            throw StructuralError("solve: row coefficient count != num_unknowns");
        if (row.rhs.group() != sys.value_group)
            throw StructuralError("solve: rhs not in the value group");
    }

    // Duplicate rows carry no information; instantiation produces many.
    std::vector<std::pair<std::vector<i64>, std::vector<i64>>> dedup;
    dedup.reserve(sys.rows.size());
    for (const auto& row : sys.rows) dedup.emplace_back(row.coeffs, row.rhs.residues());
    std::sort(dedup.begin(), dedup.end());
    dedup.erase(std::unique(dedup.begin(), dedup.end()), dedup.end());

    const auto& moduli = sys.value_group.moduli();
    std::vector<std::vector<i64>> per_factor_particular(moduli.size());

    for (std::size_t t = 0; t < moduli.size(); ++t) {
        i64 m = moduli[t];
        std::vector<std::vector<i64>> a;
        std::vector<i64> b;
        a.reserve(dedup.size());
        for (const auto& [coeffs, rhs] : dedup) {
            std::vector<i64> row(n);
            for (std::size_t j = 0; j < n; ++j) row[j] = mod_reduce(coeffs[j], m);
            a.push_back(std::move(row));
            b.push_back(rhs[t]);
        }
        auto sol = detail::solve_mod(a, b, n, m);
        if (!sol) {
            out.empty_ = true;
            return out;
        }
        per_factor_particular[t] = std::move(sol->particular);
        out.kernels_.push_back(std::move(sol->kernel));
    }

    out.particular_.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<i64> residues(moduli.size());
        for (std::size_t t = 0; t < moduli.size(); ++t) residues[t] = per_factor_particular[t][j];
        out.particular_.push_back(sys.value_group.element(std::move(residues)));
    }

    for (std::size_t t = 0; t < moduli.size(); ++t) {
        for (const auto& gen : out.kernels_[t].rows()) {
            std::vector<Element> v;
            v.reserve(n);
            for (std::size_t j = 0; j < n; ++j) {
                std::vector<i64> residues(moduli.size(), 0);
                residues[t] = gen[j];
                v.push_back(sys.value_group.element(std::move(residues)));
            }
            out.generators_.push_back(std::move(v));
        }
    }
    return out;
}

inline bool coset_contains(const ModuleCoset& cs, const std::vector<Element>& v) {
    return cs.contains(v);
}

}  // namespace feq
