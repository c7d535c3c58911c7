#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "feq/abelian.hpp"
#include "feq/errors.hpp"

namespace feq {

// A total function G -> H stored as a dense table of codomain element
// indices, in the fixed mixed-radix enumeration order of G. Functions over
// product groups G^m (the g_i of a decomposition) are the same type with a
// product domain.
class FunctionTable {
public:
    FunctionTable(FinAbGroup domain, FinAbGroup codomain, std::vector<i64> value_indices)
        : domain_(std::move(domain)),
          codomain_(std::move(codomain)),
          values_(std::move(value_indices)) {
        if (static_cast<i64>(values_.size()) != domain_.order())
            throw StructuralError("FunctionTable: value count != domain order");
        for (i64 v : values_)
            if (v < 0 || v >= codomain_.order())
                throw StructuralError("FunctionTable: value index out of codomain range");
    }

    static FunctionTable zero(const FinAbGroup& domain, const FinAbGroup& codomain) {
        return FunctionTable(domain, codomain,
                             std::vector<i64>(static_cast<std::size_t>(domain.order()), 0));
    }

    static FunctionTable constant(const FinAbGroup& domain, const Element& value) {
        const FinAbGroup& h = value.group();
        return FunctionTable(domain, h,
                             std::vector<i64>(static_cast<std::size_t>(domain.order()),
                                              h.index_of(value)));
    }

    template <class Fn>
    static FunctionTable from_fn(const FinAbGroup& domain, const FinAbGroup& codomain, Fn fn) {
        std::vector<i64> v(static_cast<std::size_t>(domain.order()));
        for (i64 i = 0; i < domain.order(); ++i)
            v[static_cast<std::size_t>(i)] = codomain.index_of(fn(domain.element_at(i)));
        return FunctionTable(domain, codomain, std::move(v));
    }

    // Raw integer values, reduced into a cyclic codomain.
    static FunctionTable from_integers(const FinAbGroup& domain, const FinAbGroup& codomain,
                                       const std::vector<i64>& raw) {
        if (static_cast<i64>(raw.size()) != domain.order())
            throw StructuralError("FunctionTable::from_integers: wrong value count");
        if (codomain.rank() > 1)
            throw StructuralError("FunctionTable::from_integers: codomain must be cyclic");
        i64 m = codomain.is_trivial() ? 1 : codomain.moduli()[0];
        std::vector<i64> v(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) v[i] = mod_reduce(raw[i], m);
        return FunctionTable(domain, codomain, std::move(v));
    }

    const FinAbGroup& domain() const noexcept { return domain_; }
    const FinAbGroup& codomain() const noexcept { return codomain_; }
    const std::vector<i64>& value_indices() const noexcept { return values_; }

    Element operator()(const Element& x) const {
        return codomain_.element_at(values_[static_cast<std::size_t>(domain_.index_of(x))]);
    }
    i64 value_index(i64 domain_index) const {
        return values_[static_cast<std::size_t>(domain_index)];
    }

    bool is_zero() const noexcept {
        for (i64 v : values_)
            if (v != 0) return false;
        return true;
    }

    bool operator==(const FunctionTable& o) const noexcept {
        return domain_ == o.domain_ && codomain_ == o.codomain_ && values_ == o.values_;
    }
    bool operator!=(const FunctionTable& o) const noexcept { return !(*this == o); }

    FunctionTable operator+(const FunctionTable& o) const {
        check_compatible(o, "FunctionTable::operator+");
        std::vector<i64> v(values_.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = codomain_.add_indices(values_[i], o.values_[i]);
        return FunctionTable(domain_, codomain_, std::move(v));
    }

    FunctionTable operator-(const FunctionTable& o) const {
        check_compatible(o, "FunctionTable::operator-");
        std::vector<i64> v(values_.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = codomain_.sub_indices(values_[i], o.values_[i]);
        return FunctionTable(domain_, codomain_, std::move(v));
    }

    FunctionTable operator-() const {
        std::vector<i64> v(values_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = codomain_.neg_index(values_[i]);
        return FunctionTable(domain_, codomain_, std::move(v));
    }

    // FNV-1a over moduli and values; used as the memoization hash in the
    // degree recursion.
    std::uint64_t content_hash() const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&h](std::uint64_t x) {
            for (int b = 0; b < 8; ++b) {
                h ^= (x >> (8 * b)) & 0xff;
                h *= 1099511628211ull;
            }
        };
        for (i64 m : domain_.moduli()) mix(static_cast<std::uint64_t>(m));
        mix(0xfeull);
        for (i64 m : codomain_.moduli()) mix(static_cast<std::uint64_t>(m));
        mix(0xffull);
        for (i64 v : values_) mix(static_cast<std::uint64_t>(v));
        return h;
    }

private:
    void check_compatible(const FunctionTable& o, const char* where) const {
        if (domain_ != o.domain_ || codomain_ != o.codomain_)
            throw StructuralError(std::string(where) + ": tables over different groups");
    }

    FinAbGroup domain_;
    FinAbGroup codomain_;
    std::vector<i64> values_;
};

using MultiFunctionTable = FunctionTable;

// result(x) = f(x + h)
inline FunctionTable translate(const FunctionTable& f, const Element& h) {
    if (h.group() != f.domain())
        throw StructuralError("translate: shift not in the function's domain");
    const FinAbGroup& g = f.domain();
    i64 hi = g.index_of(h);
    std::vector<i64> v(static_cast<std::size_t>(g.order()));
    for (i64 i = 0; i < g.order(); ++i)
        v[static_cast<std::size_t>(i)] = f.value_index(g.add_indices(i, hi));
    return FunctionTable(g, f.codomain(), std::move(v));
}

// (Δ_h f)(x) = f(x + h) - f(x)
inline FunctionTable difference(const FunctionTable& f, const Element& h) {
    if (h.group() != f.domain())
        throw StructuralError("difference: shift not in the function's domain");
    const FinAbGroup& g = f.domain();
    const FinAbGroup& cod = f.codomain();
    i64 hi = g.index_of(h);
    std::vector<i64> v(static_cast<std::size_t>(g.order()));
    for (i64 i = 0; i < g.order(); ++i)
        v[static_cast<std::size_t>(i)] =
            cod.sub_indices(f.value_index(g.add_indices(i, hi)), f.value_index(i));
    return FunctionTable(g, cod, std::move(v));
}

// Left fold of difference over hs. The operators commute, so the result is
// independent of the list order.
inline FunctionTable mixed_difference(const FunctionTable& f, const std::vector<Element>& hs) {
    FunctionTable out = f;
    for (const Element& h : hs) out = difference(out, h);
    return out;
}

// result(x) = f(c(x))
inline FunctionTable compose_with_hom(const FunctionTable& f, const GroupHom& c) {
    if (c.codomain() != f.domain())
        throw StructuralError("compose_with_hom: hom codomain != function domain");
    const FinAbGroup& g = c.domain();
    std::vector<i64> v(static_cast<std::size_t>(g.order()));
    for (i64 i = 0; i < g.order(); ++i)
        v[static_cast<std::size_t>(i)] = f.value_index(c.apply_index(i));
    return FunctionTable(g, f.codomain(), std::move(v));
}

// Pointwise residue product; both codomains must be the same Z/m viewed as a
// ring.
inline FunctionTable pointwise_ring_product(const FunctionTable& u, const FunctionTable& v) {
    if (u.domain() != v.domain())
        throw StructuralError("pointwise_ring_product: domains differ");
    if (u.codomain() != v.codomain())
        throw StructuralError("pointwise_ring_product: codomains differ");
    if (u.codomain().rank() != 1)
        throw StructuralError("pointwise_ring_product: codomain is not a ring Z/m");
    i64 m = u.codomain().moduli()[0];
    std::vector<i64> out(u.value_indices().size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = u.value_indices()[i] * v.value_indices()[i] % m;
    return FunctionTable(u.domain(), u.codomain(), std::move(out));
}

// Index of (x, y) in the enumeration of product(gx, gy), x varying fastest.
inline i64 pair_index(const FinAbGroup& gx, i64 ix, i64 iy) { return ix + gx.order() * iy; }

}  // namespace feq
