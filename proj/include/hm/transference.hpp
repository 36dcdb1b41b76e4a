#pragma once

#include <hm/element.hpp>
#include <hm/parse.hpp>

#include <string>
#include <vector>

namespace hm {

// Psi on exponents: (a1, a2) -> (a1, a1 + a2 + 1), i.e. f -> w * f(zw, w).
inline MonomialIndex psi_forward(MonomialIndex i) { return {i.alpha1, i.alpha1 + i.alpha2 + 1}; }
inline MonomialIndex psi_backward(MonomialIndex i) { return {i.alpha1, i.alpha2 - i.alpha1 - 1}; }

inline HElement psi(const HElement& v) {
    if (v.space() != Space::hartogs) throw std::invalid_argument("psi expects a Hartogs element");
    HElement r(Space::bidisc);
    for (auto& [i, c] : v.terms()) r.add_term(psi_forward(i), c);
    return r;
}

inline HElement psi_inverse(const HElement& v) {
    if (v.space() != Space::bidisc) throw std::invalid_argument("psi_inverse expects a bidisc element");
    HElement r(Space::hartogs);
    for (auto& [i, c] : v.terms()) r.add_term(psi_backward(i), c);
    return r;
}

struct IntertwiningReport {
    long level_max = 0;
    long monomials_checked = 0;
    long identities_checked = 0;
    std::vector<std::string> checked;     // one line per identity
    std::vector<std::string> violations;  // must stay empty
    bool ok() const { return violations.empty(); }
};

// psi(z e) = z w psi(e) and psi(w e) = w psi(e) for every monomial e of degree <= level_max.
inline IntertwiningReport verify_intertwining(long level_max, bool keep_lines = false) {
    IntertwiningReport rep;
    rep.level_max = level_max;
    HElement z = HElement::monomial({1, 0}), w = HElement::monomial({0, 1});
    HElement zw_b = HElement::monomial({1, 1}, Space::bidisc), w_b = HElement::monomial({0, 1}, Space::bidisc);
    for (long m = 0; m <= level_max; ++m) {
        for (auto& idx : level_basis(m).entries) {
            HElement e = HElement::monomial(idx);
            ++rep.monomials_checked;
            HElement lhs1 = psi(convolve(z, e, Space::hartogs)), rhs1 = convolve(zw_b, psi(e), Space::bidisc);
            HElement lhs2 = psi(convolve(w, e, Space::hartogs)), rhs2 = convolve(w_b, psi(e), Space::bidisc);
            rep.identities_checked += 2;
            std::string at = render(e);
            if (keep_lines) {
                rep.checked.push_back("psi(z*" + at + ") = " + render(lhs1) + " = z*w*psi(" + at + ")");
                rep.checked.push_back("psi(w*" + at + ") = " + render(lhs2) + " = w*psi(" + at + ")");
            }
            if (!(lhs1 == rhs1)) rep.violations.push_back("z-identity fails at " + at);
            if (!(lhs2 == rhs2)) rep.violations.push_back("w-identity fails at " + at);
        }
    }
    return rep;
}

}  // namespace hm
