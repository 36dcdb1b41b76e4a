#pragma once

#include <hm/gaussian_rational.hpp>

#include <utility>
#include <vector>

namespace hm {

// Univariate polynomial, coefficients from degree 0 upward, no trailing zeros.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<GR> c) : c_(std::move(c)) { trim(); }

    const std::vector<GR>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const GR& lead() const { return c_.back(); }
    GR at(std::size_t k) const { return k < c_.size() ? c_[k] : GR(0); }

    UPoly monic() const {
        if (is_zero()) return *this;
        GR inv = GR(1) / lead();
        UPoly r = *this;
        for (auto& x : r.c_) x *= inv;
        return r;
    }

    UPoly derivative() const {
        std::vector<GR> d;
        for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(GR(static_cast<long>(k)) * c_[k]);
        return UPoly(d);
    }

    // Euclidean division; returns {quotient, remainder}.
    std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        std::vector<GR> r = c_;
        long dd = d.degree();
        std::vector<GR> q(std::max<long>(degree() - dd + 1, 0));
        GR inv = GR(1) / d.lead();
        for (long k = degree(); k >= dd; --k) {
            if (r[k].is_zero()) continue;
            GR f = r[k] * inv;
            q[k - dd] = f;
            for (long j = 0; j <= dd; ++j) r[k - dd + j] -= f * d.c_[j];
        }
        return {UPoly(q), UPoly(r)};
    }

    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<GR> c_;
};

inline UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline UPoly squarefree_part(const UPoly& p) {
    if (p.degree() <= 0) return p;
    return p.divmod(gcd(p, p.derivative())).first.monic();
}

namespace detail {

// Lower/upper bounds of |c| as doubles; exact when |c|^2 is a rational square.
inline bool exact_modulus(const GR& c, mpq_class& out) {
    mpq_class n = c.norm2();
    mpz_class num = n.get_num(), den = n.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return false;
    out = mpq_class(sqrt(num), sqrt(den));
    out.canonicalize();
    return true;
}

}  // namespace detail

// |c0| >= sum_{k>=1} |ck| forces p to have no zeros in the open unit disc.
// Exact for coefficients with rational modulus, conservative otherwise.
inline bool coefficient_dominance(const UPoly& p) {
    if (p.is_zero()) return false;
    if (p.degree() == 0) return true;
    bool all_exact = true;
    std::vector<mpq_class> mods;
    for (auto& c : p.coeffs()) {
        mpq_class m;
        if (!detail::exact_modulus(c, m)) {
            all_exact = false;
            break;
        }
        mods.push_back(m);
    }
    if (all_exact) {
        mpq_class rest = 0;
        for (std::size_t k = 1; k < mods.size(); ++k) rest += mods[k];
        return mods[0] >= rest;
    }
    double rest = 0;
    for (std::size_t k = 1; k < p.coeffs().size(); ++k) rest = add_upper(rest, sqrt_upper(p.coeffs()[k].norm2()));
    return sqrt_lower(p.coeffs()[0].norm2()) > rest;
}

// Sufficient test that p has no zeros in the open unit disc.
inline bool zero_free_on_disc(const UPoly& p) {
    if (p.is_zero()) return false;
    return coefficient_dominance(p) || coefficient_dominance(squarefree_part(p));
}

}  // namespace hm
