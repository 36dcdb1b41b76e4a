#pragma once

#include <hm/gaussian_rational.hpp>
#include <hm/index_basis.hpp>

#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hm {

// Finite combination of monomials of one space. Zero coefficients are never stored.
class HElement {
public:
    using TermMap = std::map<MonomialIndex, GR, CanonicalOrder>;

    explicit HElement(Space s = Space::hartogs) : space_(s) {}

    static HElement monomial(MonomialIndex i, Space s = Space::hartogs, GR c = GR(1)) {
        HElement e(s);
        e.add_term(i, std::move(c));
        return e;
    }

    Space space() const { return space_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(MonomialIndex i, const GR& c) {
        if (c.is_zero()) return;
        if (!in_space(i, space_))
            throw std::invalid_argument(std::string("index ") + i.str() + " outside the " + space_name(space_) + " index set");
        auto it = terms_.find(i);
        if (it == terms_.end()) {
            terms_.emplace(i, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    GR coeff(MonomialIndex i) const {
        auto it = terms_.find(i);
        return it == terms_.end() ? GR(0) : it->second;
    }

    mpq_class norm_squared() const {
        mpq_class s = 0;
        for (auto& [i, c] : terms_) s += c.norm2();
        return s;
    }

    HElement retagged(Space s) const {
        HElement r(s);
        for (auto& [i, c] : terms_) r.add_term(i, c);
        return r;
    }

    HElement& operator+=(const HElement& o) {
        check_space(o);
        for (auto& [i, c] : o.terms_) add_term(i, c);
        return *this;
    }
    HElement& operator-=(const HElement& o) {
        check_space(o);
        for (auto& [i, c] : o.terms_) add_term(i, -c);
        return *this;
    }
    HElement& operator*=(const GR& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [i, c] : terms_) c *= s;
        return *this;
    }

    friend HElement operator+(HElement a, const HElement& b) { return a += b; }
    friend HElement operator-(HElement a, const HElement& b) { return a -= b; }
    friend HElement operator*(const GR& s, HElement a) { return a *= s; }
    HElement operator-() const { return GR(-1) * *this; }

    friend bool operator==(const HElement& a, const HElement& b) {
        return a.space_ == b.space_ && a.terms_ == b.terms_;
    }

    long min_degree() const { return terms_.empty() ? 0 : lattice_degree(terms_.begin()->first); }
    long max_degree() const { return terms_.empty() ? 0 : lattice_degree(terms_.rbegin()->first); }

    // Keeps the terms whose index satisfies pred.
    template <class Pred>
    HElement filtered(Pred pred) const {
        HElement r(space_);
        for (auto& [i, c] : terms_)
            if (pred(i)) r.terms_.emplace(i, c);
        return r;
    }

private:
    void check_space(const HElement& o) const {
        if (o.space_ != space_) throw std::invalid_argument("space tags differ");
    }

    Space space_;
    TermMap terms_;
};

// Pairing linear in the first argument, conjugate-linear in the second.
inline GR inner_product(const HElement& u, const HElement& v) {
    if (u.space() != v.space()) throw std::invalid_argument("inner product of elements from different spaces");
    const HElement& small = u.size() <= v.size() ? u : v;
    const HElement& large = u.size() <= v.size() ? v : u;
    GR s(0);
    for (auto& [i, c] : small.terms()) {
        auto it = large.terms().find(i);
        if (it == large.terms().end()) continue;
        s += (&small == &u) ? c * it->second.conj() : it->second * c.conj();
    }
    return s;
}

// Terms grouped by degree; concatenation reproduces v.
inline std::map<long, HElement> level_of_element(const HElement& v) {
    std::map<long, HElement> parts;
    for (auto& [i, c] : v.terms()) {
        long d = v.space() == Space::hartogs ? hartogs_degree(i) : lattice_degree(i);
        parts.try_emplace(d, v.space()).first->second.add_term(i, c);
    }
    return parts;
}

// Formal product of two finite elements; the result is tagged with `s`.
inline HElement convolve(const HElement& a, const HElement& b, Space s) {
    HElement r(s);
    for (auto& [i, c] : a.terms())
        for (auto& [j, d] : b.terms()) r.add_term(i + j, c * d);
    return r;
}

// Multiplier acting on the Hartogs space. Polynomial multipliers live in the closed
// quadrant; bounded ones only need alpha1 >= 0 and alpha1 + alpha2 >= 0 (|z| < |w|).
class Multiplier {
public:
    enum class Kind { polynomial, bounded };

    Multiplier() : poly_(Space::hartogs) {}

    static Multiplier polynomial(const HElement& p) { return Multiplier(p, Kind::polynomial); }
    static Multiplier bounded(const HElement& p) { return Multiplier(p, Kind::bounded); }

    const HElement& element() const { return poly_; }
    Kind kind() const { return kind_; }
    bool is_zero() const { return poly_.is_zero(); }

    static long shift(MonomialIndex i) { return 2 * i.alpha1 + i.alpha2; }

    std::set<long> shift_set() const {
        std::set<long> s;
        for (auto& [i, c] : poly_.terms()) s.insert(shift(i));
        return s;
    }
    long min_shift() const { return *shift_set().begin(); }
    long max_shift() const { return *shift_set().rbegin(); }

    HElement component(long s) const {
        return poly_.filtered([s](MonomialIndex i) { return shift(i) == s; });
    }

    bool is_monomial() const { return poly_.size() == 1; }

private:
    Multiplier(const HElement& p, Kind k) : poly_(p.retagged(Space::hartogs)), kind_(k) {
        for (auto& [i, c] : poly_.terms()) {
            bool ok = k == Kind::polynomial ? is_bidisc_index(i) : (i.alpha1 >= 0 && i.alpha1 + i.alpha2 >= 0);
            if (!ok) throw std::invalid_argument("exponent " + i.str() + " not allowed in a multiplier");
        }
    }

    HElement poly_;
    Kind kind_ = Kind::polynomial;
};

using MultiplierPoly = Multiplier;

inline HElement multiply(const Multiplier& p, const HElement& v) { return convolve(p.element(), v, v.space()); }

}  // namespace hm
