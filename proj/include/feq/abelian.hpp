#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "feq/errors.hpp"

namespace feq {

using i64 = std::int64_t;

inline i64 mod_reduce(i64 v, i64 m) {
    v %= m;
    return v < 0 ? v + m : v;
}

// Extended gcd: returns g = gcd(a,b) >= 0 and s,t with s*a + t*b = g.
inline i64 ext_gcd(i64 a, i64 b, i64& s, i64& t) {
    i64 old_r = a, r = b;
    i64 old_s = 1, s1 = 0;
    i64 old_t = 0, t1 = 1;
    while (r != 0) {
        i64 q = old_r / r;
        i64 tmp;
        tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s1; old_s = s1; s1 = tmp;
        tmp = old_t - q * t1; old_t = t1; t1 = tmp;
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    s = old_s;
    t = old_t;
    return old_r;
}

inline i64 gcd_i64(i64 a, i64 b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

// Inverse of a mod m for gcd(a,m) = 1.
inline i64 mod_inverse(i64 a, i64 m) {
    i64 s, t;
    i64 g = ext_gcd(mod_reduce(a, m), m, s, t);
    if (g != 1) throw StructuralError("mod_inverse: element is not a unit");
    return mod_reduce(s, m);
}

class Element;

// A finite abelian group presented as Z_{n1} x ... x Z_{nk}.
// Canonical form drops factors of size 1; the trivial group has no factors.
// Elements are indexed by a fixed mixed-radix bijection: the first factor
// varies fastest.
class FinAbGroup {
public:
    static constexpr i64 kMaxOrder = 1'000'000;

    FinAbGroup() : order_(1) {}

    explicit FinAbGroup(std::vector<i64> moduli) {
        order_ = 1;
        for (i64 n : moduli) {
            if (n < 1) throw StructuralError("FinAbGroup: modulus must be >= 1");
            if (n == 1) continue;  // canonical form
            if (order_ > kMaxOrder / n)
                throw StructuralError("FinAbGroup: order exceeds desk-scale bound 10^6");
            order_ *= n;
            moduli_.push_back(n);
        }
    }

    static FinAbGroup trivial() { return FinAbGroup(); }
    static FinAbGroup cyclic(i64 n) { return FinAbGroup(std::vector<i64>{n}); }

    static FinAbGroup product(const FinAbGroup& a, const FinAbGroup& b) {
        std::vector<i64> m = a.moduli_;
        m.insert(m.end(), b.moduli_.begin(), b.moduli_.end());
        return FinAbGroup(std::move(m));
    }

    static FinAbGroup power(const FinAbGroup& g, int m) {
        if (m < 0) throw StructuralError("FinAbGroup::power: negative exponent");
        FinAbGroup out = trivial();
        for (int i = 0; i < m; ++i) out = product(out, g);
        return out;
    }

    const std::vector<i64>& moduli() const noexcept { return moduli_; }
    std::size_t rank() const noexcept { return moduli_.size(); }
    i64 order() const noexcept { return order_; }
    bool is_trivial() const noexcept { return moduli_.empty(); }

    bool operator==(const FinAbGroup& o) const noexcept { return moduli_ == o.moduli_; }
    bool operator!=(const FinAbGroup& o) const noexcept { return !(*this == o); }

    Element zero() const;
    Element element(std::vector<i64> residues) const;
    Element element_at(i64 index) const;
    i64 index_of(const Element& e) const;

    // Index arithmetic without materializing elements.
    i64 add_indices(i64 a, i64 b) const {
        i64 out = 0, scale = 1;
        for (i64 n : moduli_) {
            i64 r = (a % n + b % n) % n;
            out += r * scale;
            scale *= n;
            a /= n;
            b /= n;
        }
        return out;
    }

    i64 sub_indices(i64 a, i64 b) const {
        i64 out = 0, scale = 1;
        for (i64 n : moduli_) {
            i64 r = mod_reduce(a % n - b % n, n);
            out += r * scale;
            scale *= n;
            a /= n;
            b /= n;
        }
        return out;
    }

    i64 neg_index(i64 a) const { return sub_indices(0, a); }

    std::string to_string() const {
        if (moduli_.empty()) return "Z1";
        std::ostringstream os;
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
            if (i) os << " x ";
            os << "Z" << moduli_[i];
        }
        return os.str();
    }

private:
    std::vector<i64> moduli_;
    i64 order_;
};

// An element of a FinAbGroup. Residues are always reduced.
class Element {
public:
    Element() = default;

    Element(FinAbGroup group, std::vector<i64> residues)
        : group_(std::move(group)), residues_(std::move(residues)) {
        if (residues_.size() != group_.rank())
            throw StructuralError("Element: residue vector has wrong length");
        for (std::size_t i = 0; i < residues_.size(); ++i)
            residues_[i] = mod_reduce(residues_[i], group_.moduli()[i]);
    }

    const FinAbGroup& group() const noexcept { return group_; }
    const std::vector<i64>& residues() const noexcept { return residues_; }

    bool is_zero() const noexcept {
        return std::all_of(residues_.begin(), residues_.end(), [](i64 r) { return r == 0; });
    }

    bool operator==(const Element& o) const noexcept {
        return group_ == o.group_ && residues_ == o.residues_;
    }
    bool operator!=(const Element& o) const noexcept { return !(*this == o); }

    Element operator+(const Element& o) const {
        check_same_group(o, "Element::operator+");
        std::vector<i64> r(residues_.size());
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = (residues_[i] + o.residues_[i]) % group_.moduli()[i];
        return Element(group_, std::move(r), unchecked{});
    }

    Element operator-(const Element& o) const {
        check_same_group(o, "Element::operator-");
        std::vector<i64> r(residues_.size());
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = mod_reduce(residues_[i] - o.residues_[i], group_.moduli()[i]);
        return Element(group_, std::move(r), unchecked{});
    }

    Element operator-() const {
        std::vector<i64> r(residues_.size());
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = mod_reduce(-residues_[i], group_.moduli()[i]);
        return Element(group_, std::move(r), unchecked{});
    }

    // n-fold sum, n may be negative.
    Element scaled(i64 n) const {
        std::vector<i64> r(residues_.size());
        for (std::size_t i = 0; i < r.size(); ++i) {
            i64 m = group_.moduli()[i];
            r[i] = mod_reduce(mod_reduce(n, m) * residues_[i], m);
        }
        return Element(group_, std::move(r), unchecked{});
    }

    std::string to_string() const {
        std::ostringstream os;
        os << "(";
        for (std::size_t i = 0; i < residues_.size(); ++i) {
            if (i) os << ",";
            os << residues_[i];
        }
        os << ")";
        return os.str();
    }

private:
    friend class FinAbGroup;
    struct unchecked {};
    Element(FinAbGroup group, std::vector<i64> residues, unchecked)
        : group_(std::move(group)), residues_(std::move(residues)) {}

    void check_same_group(const Element& o, const char* where) const {
        if (group_ != o.group_)
            throw StructuralError(std::string(where) + ": elements of different groups");
    }

    FinAbGroup group_;
    std::vector<i64> residues_;
};

inline Element FinAbGroup::zero() const {
    return Element(*this, std::vector<i64>(rank(), 0), Element::unchecked{});
}

inline Element FinAbGroup::element(std::vector<i64> residues) const {
    return Element(*this, std::move(residues));
}

inline Element FinAbGroup::element_at(i64 index) const {
    if (index < 0 || index >= order_)
        throw StructuralError("FinAbGroup::element_at: index out of range");
    std::vector<i64> r(rank());
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        r[i] = index % moduli_[i];
        index /= moduli_[i];
    }
    return Element(*this, std::move(r), Element::unchecked{});
}

inline i64 FinAbGroup::index_of(const Element& e) const {
    if (e.group() != *this)
        throw StructuralError("FinAbGroup::index_of: element of a different group");
    i64 idx = 0, scale = 1;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        idx += e.residues()[i] * scale;
        scale *= moduli_[i];
    }
    return idx;
}

inline Element add(const Element& a, const Element& b) { return a + b; }

// Fixed mixed-radix enumeration of a group.
inline std::vector<Element> enumerate(const FinAbGroup& g) {
    std::vector<Element> out;
    out.reserve(static_cast<std::size_t>(g.order()));
    for (i64 i = 0; i < g.order(); ++i) out.push_back(g.element_at(i));
    return out;
}

// A homomorphism between finite abelian groups. Matrix-backed homs carry an
// integer matrix acting on residue vectors; table-backed homs (produced by
// invert_automorphism on groups with non-coprime moduli) store the full image
// table. Both behave identically under application, composition and
// difference.
class GroupHom {
public:
    GroupHom(FinAbGroup domain, FinAbGroup codomain, std::vector<std::vector<i64>> matrix)
        : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
        if (matrix_.size() != codomain_.rank())
            throw StructuralError("GroupHom: matrix row count != codomain rank");
        for (auto& row : matrix_) {
            if (row.size() != domain_.rank())
                throw StructuralError("GroupHom: matrix column count != domain rank");
        }
        // Well-definedness: a_ij * n_j == 0 (mod m_i).
        for (std::size_t i = 0; i < matrix_.size(); ++i) {
            i64 mi = codomain_.moduli()[i];
            for (std::size_t j = 0; j < matrix_[i].size(); ++j) {
                i64 nj = domain_.moduli()[j];
                matrix_[i][j] = mod_reduce(matrix_[i][j], mi);
                if (mod_reduce(matrix_[i][j] % mi * (nj % mi), mi) != 0)
                    throw StructuralError("GroupHom: matrix entry does not define a homomorphism");
            }
        }
    }

    static GroupHom identity(const FinAbGroup& g) { return scalar(g, 1); }

    static GroupHom zero(const FinAbGroup& domain, const FinAbGroup& codomain) {
        return GroupHom(domain, codomain,
                        std::vector<std::vector<i64>>(codomain.rank(),
                                                      std::vector<i64>(domain.rank(), 0)));
    }

    // Multiplication by k: x -> k*x.
    static GroupHom scalar(const FinAbGroup& g, i64 k) {
        std::vector<std::vector<i64>> m(g.rank(), std::vector<i64>(g.rank(), 0));
        for (std::size_t i = 0; i < g.rank(); ++i) m[i][i] = mod_reduce(k, g.moduli()[i]);
        return GroupHom(g, g, std::move(m));
    }

    const FinAbGroup& domain() const noexcept { return domain_; }
    const FinAbGroup& codomain() const noexcept { return codomain_; }
    bool is_matrix_backed() const noexcept { return table_.empty(); }
    const std::vector<std::vector<i64>>& matrix() const {
        if (!is_matrix_backed()) throw StructuralError("GroupHom: table-backed hom has no matrix");
        return matrix_;
    }

    Element operator()(const Element& x) const {
        if (x.group() != domain_)
            throw StructuralError("GroupHom: argument not in the domain");
        if (!table_.empty())
            return codomain_.element_at(table_[static_cast<std::size_t>(domain_.index_of(x))]);
        std::vector<i64> out(codomain_.rank(), 0);
        for (std::size_t i = 0; i < out.size(); ++i) {
            i64 mi = codomain_.moduli()[i];
            i64 acc = 0;
            for (std::size_t j = 0; j < domain_.rank(); ++j)
                acc = (acc + matrix_[i][j] * (x.residues()[j] % mi)) % mi;
            out[i] = acc;
        }
        return codomain_.element(std::move(out));
    }

    i64 apply_index(i64 idx) const {
        if (!table_.empty()) return table_[static_cast<std::size_t>(idx)];
        return codomain_.index_of((*this)(domain_.element_at(idx)));
    }

    // this ∘ inner
    GroupHom compose(const GroupHom& inner) const {
        if (inner.codomain_ != domain_)
            throw StructuralError("GroupHom::compose: domains do not match");
        if (is_matrix_backed() && inner.is_matrix_backed()) {
            std::vector<std::vector<i64>> m(codomain_.rank(),
                                            std::vector<i64>(inner.domain_.rank(), 0));
            for (std::size_t i = 0; i < codomain_.rank(); ++i) {
                i64 mi = codomain_.moduli()[i];
                for (std::size_t j = 0; j < inner.domain_.rank(); ++j) {
                    i64 acc = 0;
                    for (std::size_t k = 0; k < domain_.rank(); ++k)
                        acc = (acc + matrix_[i][k] % mi * (inner.matrix_[k][j] % mi)) % mi;
                    m[i][j] = acc;
                }
            }
            return GroupHom(inner.domain_, codomain_, std::move(m));
        }
        return from_pointwise(inner.domain_, codomain_, [&](const Element& x) {
            return (*this)(inner(x));
        });
    }

    GroupHom operator-(const GroupHom& o) const {
        if (domain_ != o.domain_ || codomain_ != o.codomain_)
            throw StructuralError("GroupHom::operator-: mismatched domains");
        if (is_matrix_backed() && o.is_matrix_backed()) {
            auto m = matrix_;
            for (std::size_t i = 0; i < m.size(); ++i)
                for (std::size_t j = 0; j < m[i].size(); ++j)
                    m[i][j] = mod_reduce(m[i][j] - o.matrix_[i][j], codomain_.moduli()[i]);
            return GroupHom(domain_, codomain_, std::move(m));
        }
        return from_pointwise(domain_, codomain_,
                              [&](const Element& x) { return (*this)(x) - o(x); });
    }

    GroupHom operator+(const GroupHom& o) const {
        if (domain_ != o.domain_ || codomain_ != o.codomain_)
            throw StructuralError("GroupHom::operator+: mismatched domains");
        if (is_matrix_backed() && o.is_matrix_backed()) {
            auto m = matrix_;
            for (std::size_t i = 0; i < m.size(); ++i)
                for (std::size_t j = 0; j < m[i].size(); ++j)
                    m[i][j] = mod_reduce(m[i][j] + o.matrix_[i][j], codomain_.moduli()[i]);
            return GroupHom(domain_, codomain_, std::move(m));
        }
        return from_pointwise(domain_, codomain_,
                              [&](const Element& x) { return (*this)(x) + o(x); });
    }

    bool operator==(const GroupHom& o) const {
        if (domain_ != o.domain_ || codomain_ != o.codomain_) return false;
        if (is_matrix_backed() && o.is_matrix_backed()) return matrix_ == o.matrix_;
        for (i64 i = 0; i < domain_.order(); ++i)
            if (apply_index(i) != o.apply_index(i)) return false;
        return true;
    }

private:
    struct table_tag {};
    GroupHom(FinAbGroup domain, FinAbGroup codomain, std::vector<i64> table, table_tag)
        : domain_(std::move(domain)), codomain_(std::move(codomain)), table_(std::move(table)) {}

    template <class Fn>
    static GroupHom from_pointwise(const FinAbGroup& domain, const FinAbGroup& codomain, Fn fn) {
        std::vector<i64> table(static_cast<std::size_t>(domain.order()));
        for (i64 i = 0; i < domain.order(); ++i)
            table[static_cast<std::size_t>(i)] = codomain.index_of(fn(domain.element_at(i)));
        return GroupHom(domain, codomain, std::move(table), table_tag{});
    }

    friend bool is_automorphism(const GroupHom&);
    friend GroupHom invert_automorphism(const GroupHom&);

    FinAbGroup domain_;
    FinAbGroup codomain_;
    std::vector<std::vector<i64>> matrix_;
    std::vector<i64> table_;  // non-empty iff table-backed
};

inline Element apply_hom(const GroupHom& c, const Element& x) { return c(x); }

// Bijectivity by enumeration with early exit on the first collision.
inline bool is_automorphism(const GroupHom& c) {
    if (c.domain() != c.codomain()) return false;
    const i64 n = c.domain().order();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (i64 i = 0; i < n; ++i) {
        i64 img = c.apply_index(i);
        if (seen[static_cast<std::size_t>(img)]) return false;
        seen[static_cast<std::size_t>(img)] = 1;
    }
    return true;
}

inline GroupHom invert_automorphism(const GroupHom& c) {
    if (!is_automorphism(c))
        throw StructuralError("invert_automorphism: hom is not an automorphism");
    const FinAbGroup& g = c.domain();
    const i64 n = g.order();

    // Single cyclic factor with a unit scalar inverts in closed form.
    if (c.is_matrix_backed() && g.rank() == 1) {
        i64 a = c.matrix()[0][0];
        i64 inv = mod_inverse(a, g.moduli()[0]);
        return GroupHom::scalar(g, inv);
    }

    std::vector<i64> table(static_cast<std::size_t>(n));
    for (i64 i = 0; i < n; ++i) table[static_cast<std::size_t>(c.apply_index(i))] = i;
    return GroupHom(g, g, std::move(table), GroupHom::table_tag{});
}

// Z/m with residue multiplication; its additive group is FinAbGroup({m}).
class RingZm {
public:
    explicit RingZm(i64 m) : m_(m) {
        if (m < 2) throw StructuralError("RingZm: modulus must be >= 2");
        if (m > FinAbGroup::kMaxOrder) throw StructuralError("RingZm: modulus exceeds bound");
    }

    i64 modulus() const noexcept { return m_; }
    FinAbGroup additive_group() const { return FinAbGroup::cyclic(m_); }

    i64 add(i64 a, i64 b) const { return mod_reduce(a + b, m_); }
    i64 mul(i64 a, i64 b) const { return mod_reduce(mod_reduce(a, m_) * mod_reduce(b, m_), m_); }
    i64 neg(i64 a) const { return mod_reduce(-a, m_); }
    i64 zero() const noexcept { return 0; }
    i64 one() const noexcept { return 1 % m_; }

    bool operator==(const RingZm& o) const noexcept { return m_ == o.m_; }
    bool operator!=(const RingZm& o) const noexcept { return m_ != o.m_; }

private:
    i64 m_;
};

inline std::ostream& operator<<(std::ostream& os, const FinAbGroup& g) {
    return os << g.to_string();
}
inline std::ostream& operator<<(std::ostream& os, const Element& e) {
    return os << e.to_string();
}

}  // namespace feq
