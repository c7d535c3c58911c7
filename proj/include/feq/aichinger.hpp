#pragma once

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

// f(x_1 + ... + x_{m+1}) = sum_i g_i(x_1, ..., ^x_i, ..., x_{m+1}), each
// part omitting one variable. parts[i] is a table over G^m.
struct AichingerDecomposition {
    i64 order = 0;                          // m
    std::vector<MultiFunctionTable> parts;  // m+1 tables over G^m -> H
};

struct AichingerConfig {
    i64 max_order = 3;          // m+1 <= 4
    i64 max_rows = 1'000'000;   // |G|^{m+1} constraint rows
};

namespace detail {

// Index of (x_1..x_{m+1}) with variable i removed, in the enumeration of G^m.
inline i64 omit_index(const std::vector<i64>& tuple, std::size_t omit, i64 g_order) {
    i64 idx = 0, scale = 1;
    for (std::size_t j = 0; j < tuple.size(); ++j) {
        if (j == omit) continue;
        idx += tuple[j] * scale;
        scale *= g_order;
    }
    return idx;
}

inline void check_capacity(const FinAbGroup& g, i64 m, const AichingerConfig& cfg) {
    if (m < 0) throw StructuralError("aichinger: order m must be >= 0");
    if (m > cfg.max_order)
        throw CapacityError("aichinger: order m exceeds configured bound", m);
    double rows = 1;
    for (i64 i = 0; i <= m; ++i) rows *= static_cast<double>(g.order());
    if (rows > static_cast<double>(cfg.max_rows))
        throw CapacityError("aichinger: |G|^{m+1} = " + std::to_string(rows) +
                                " constraint rows exceed the configured bound",
                            static_cast<long long>(rows));
}

}  // namespace detail

// Solve for the parts g_i as the canonical solution of the linear system
// with one unknown per entry of each g_i and one row per (m+1)-tuple.
inline std::optional<AichingerDecomposition> find_decomposition(
    const FunctionTable& f, i64 m, const AichingerConfig& cfg = {}) {
    const FinAbGroup& g = f.domain();
    const FinAbGroup& h = f.codomain();
    detail::check_capacity(g, m, cfg);

    const i64 n = g.order();
    const std::size_t parts = static_cast<std::size_t>(m) + 1;
    i64 part_size = 1;
    for (i64 i = 0; i < m; ++i) part_size *= n;

    IntLinearSystem sys;
    sys.num_unknowns = static_cast<i64>(parts) * part_size;
    sys.value_group = h;

    std::vector<i64> tuple(parts, 0);
    for (;;) {
        std::vector<i64> coeffs(static_cast<std::size_t>(sys.num_unknowns), 0);
        for (std::size_t i = 0; i < parts; ++i)
            coeffs[static_cast<std::size_t>(static_cast<i64>(i) * part_size +
                                            detail::omit_index(tuple, i, n))] += 1;
        i64 sum = 0;
        for (i64 t : tuple) sum = g.add_indices(sum, t);
        sys.rows.push_back({std::move(coeffs), h.element_at(f.value_index(sum))});

        std::size_t pos = 0;
        while (pos < parts && ++tuple[pos] == n) {
            tuple[pos] = 0;
            ++pos;
        }
        if (pos == parts) break;
    }

    ModuleCoset coset = solve(sys);
    if (coset.empty()) return std::nullopt;

    FinAbGroup gm = FinAbGroup::power(g, static_cast<int>(m));
    AichingerDecomposition out;
    out.order = m;
    for (std::size_t i = 0; i < parts; ++i) {
        std::vector<i64> values;
        values.reserve(static_cast<std::size_t>(part_size));
        for (i64 j = 0; j < part_size; ++j)
            values.push_back(h.index_of(
                coset.particular()[static_cast<std::size_t>(static_cast<i64>(i) * part_size + j)]));
        out.parts.emplace_back(gm, h, std::move(values));
    }
    return out;
}

// Exhaustive check of the defining identity over G^{m+1}.
inline bool verify_decomposition(const FunctionTable& f, const AichingerDecomposition& d) {
    const FinAbGroup& g = f.domain();
    const FinAbGroup& h = f.codomain();
    const i64 n = g.order();
    const std::size_t parts = static_cast<std::size_t>(d.order) + 1;
    if (d.parts.size() != parts)
        throw StructuralError("verify_decomposition: wrong number of parts");
    FinAbGroup gm = FinAbGroup::power(g, static_cast<int>(d.order));
    for (const auto& p : d.parts)
        if (p.domain() != gm || p.codomain() != h)
            throw StructuralError("verify_decomposition: part has wrong shape");

    std::vector<i64> tuple(parts, 0);
    for (;;) {
        i64 sum = 0;
        for (i64 t : tuple) sum = g.add_indices(sum, t);
        i64 acc = 0;  // codomain index arithmetic
        for (std::size_t i = 0; i < parts; ++i)
            acc = h.add_indices(acc, d.parts[i].value_index(detail::omit_index(tuple, i, n)));
        if (acc != f.value_index(sum)) return false;

        std::size_t pos = 0;
        while (pos < parts && ++tuple[pos] == n) {
            tuple[pos] = 0;
            ++pos;
        }
        if (pos == parts) break;
    }
    return true;
}

// The characterization: f solves Aichinger's equation of order m iff
// deg f <= m. Both routes are computed and must agree; a disagreement is an
// implementation bug and raises TheoremViolation.
inline bool characterize(const FunctionTable& f, i64 m, const AichingerConfig& cfg = {}) {
    bool frechet = is_degree_at_most(f, m);
    auto decomposition = find_decomposition(f, m, cfg);
    bool aichinger = decomposition.has_value();
    if (frechet != aichinger)
        throw TheoremViolation(
            "characterize: degree check and decomposition solver disagree (m=" +
            std::to_string(m) + ", Frechet=" + std::to_string(frechet) +
            ", Aichinger=" + std::to_string(aichinger) + ")");
    if (aichinger && !verify_decomposition(f, *decomposition))
        throw TheoremViolation("characterize: solver returned an invalid decomposition");
    return frechet;
}

}  // namespace feq
