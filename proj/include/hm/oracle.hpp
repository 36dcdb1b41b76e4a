#pragma once

// Deliberately naive reference computations. They share only the scalar and element
// types with the engines so that agreement is meaningful.

#include <hm/element.hpp>

#include <vector>

namespace hm::oracle {

// Row echelon elimination (not reduced), counting pivots.
inline long rank(std::vector<std::vector<GR>> rows) {
    if (rows.empty()) return 0;
    std::size_t ncols = rows[0].size();
    long r = 0;
    for (std::size_t c = 0; c < ncols && r < static_cast<long>(rows.size()); ++c) {
        long piv = -1;
        for (long i = r; i < static_cast<long>(rows.size()); ++i)
            if (!rows[i][c].is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[piv], rows[r]);
        for (long i = r + 1; i < static_cast<long>(rows.size()); ++i) {
            if (rows[i][c].is_zero()) continue;
            GR f = rows[i][c] / rows[r][c];
            for (std::size_t j = c; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    return r;
}

// dim(Q_p cap F_m) = (m+1) - rank of <E_j, p*g> over every Hartogs monomial g with h(g) <= m.
inline long quotient_level_dim(const HElement& p, long m) {
    std::vector<std::vector<GR>> rows;
    for (long a1 = 0; a1 <= m; ++a1) {
        for (long a2 = -a1 - 1; 2 * a1 + a2 + 1 <= m; ++a2) {
            HElement g = HElement::monomial({a1, a2});
            HElement pg(Space::hartogs);
            for (auto& [i, c] : p.terms()) pg.add_term(i + MonomialIndex{a1, a2}, c);
            std::vector<GR> row;
            bool any = false;
            for (long j = 0; j <= m; ++j) {
                GR v = inner_product(pg, HElement::monomial({m - j, 2 * j - m - 1}));
                any = any || !v.is_zero();
                row.push_back(v);
            }
            if (any) rows.push_back(row);
        }
    }
    return (m + 1) - rank(rows);
}

// Adjoint of multiplication by a monomial on the Hartogs space, monomial by monomial.
inline HElement monomial_adjoint(MonomialIndex shift, const HElement& v) {
    HElement r(v.space());
    for (auto& [i, c] : v.terms()) {
        MonomialIndex j = i - shift;
        if (in_space(j, v.space())) r.add_term(j, c);
    }
    return r;
}

inline HElement monomial_times(MonomialIndex shift, const HElement& v) {
    HElement r(v.space());
    for (auto& [i, c] : v.terms()) r.add_term(i + shift, c);
    return r;
}

// (I - Mz Mz*)(I - Mw Mw*) v on the full Hartogs space.
inline HElement defect_product(const HElement& v) {
    HElement x = v - monomial_times({0, 1}, monomial_adjoint({0, 1}, v));
    return x - monomial_times({1, 0}, monomial_adjoint({1, 0}, x));
}

// Truncated Blaschke factor c(z - a)/(1 - a z) by long multiplication of the geometric series.
inline std::vector<GR> blaschke_coefficients(const mpq_class& a, const GR& c, long n) {
    std::vector<GR> geo(n + 1), out(n + 1);
    mpq_class pw = 1;
    for (long k = 0; k <= n; ++k, pw *= a) geo[k] = GR(pw);
    for (long k = 0; k <= n; ++k) {
        if (k >= 1) out[k] += geo[k - 1];
        out[k] -= GR(a) * geo[k];
        out[k] *= c;
    }
    return out;
}

}  // namespace hm::oracle
