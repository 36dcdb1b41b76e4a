#pragma once

#include <hm/element.hpp>
#include <hm/linalg.hpp>
#include <hm/parallel.hpp>
#include <hm/parse.hpp>
#include <hm/univariate.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hm {

struct SubspaceBasis {
    Space space = Space::hartogs;
    long level = -1;  // -1 when the elements span several levels
    std::vector<HElement> elements;

    std::size_t size() const { return elements.size(); }

    // G(i, j) = <b_j, b_i>
    Matrix gram() const {
        Matrix g(size(), size());
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j) g(i, j) = inner_product(elements[j], elements[i]);
        return g;
    }
};

// Generators p_s * g landing in F_m: one per shift s of p and monomial g of degree m - s.
inline std::vector<HElement> quotient_constraints(const Multiplier& p, long m) {
    std::vector<HElement> out;
    for (long s : p.shift_set()) {
        if (m - s < 0) continue;
        HElement ps = p.component(s);
        for (auto& g : level_basis(m - s).entries) out.push_back(convolve(ps, HElement::monomial(g), Space::hartogs));
    }
    return out;
}

// Basis (reduced echelon over the F_m ordering) of the f in F_m orthogonal to p*H^2.
inline SubspaceBasis quotient_level_basis(const Multiplier& p, long m) {
    if (p.is_zero()) throw std::invalid_argument("the zero polynomial generates no quotient");
    if (m < 0) throw std::invalid_argument("level must be nonnegative");
    auto cons = quotient_constraints(p, m);
    LevelBasis lb = level_basis(m);
    Matrix a(cons.size(), lb.size());
    for (std::size_t r = 0; r < cons.size(); ++r)
        for (auto& [i, c] : cons[r].terms()) a(r, lb.position(i)) = c.conj();
    Matrix k = nullspace(a);
    SubspaceBasis out;
    out.level = m;
    for (std::size_t r = 0; r < k.rows(); ++r) {
        HElement e;
        for (std::size_t j = 0; j < lb.size(); ++j) e.add_term(lb.entries[j], k(r, j));
        out.elements.push_back(std::move(e));
    }
    return out;
}

inline long quotient_level_dim(const Multiplier& p, long m) {
    return static_cast<long>(quotient_level_basis(p, m).size());
}

inline std::vector<long> quotient_dims(const Multiplier& p, long m_max, unsigned width = 0) {
    std::vector<long> d(static_cast<std::size_t>(std::max<long>(m_max + 1, 0)));
    parallel_for(0, m_max + 1, width, [&](long m) { d[m] = quotient_level_dim(p, m); });
    return d;
}

// ---- closed-form predictions ----

enum class DimCase { monomial, distinct_shifts, equal_shifts, none };

inline const char* case_name(DimCase c) {
    switch (c) {
        case DimCase::monomial: return "monomial";
        case DimCase::distinct_shifts: return "distinct-shifts";
        case DimCase::equal_shifts: return "equal-shifts";
        default: return "none";
    }
}

struct Prediction {
    DimCase kind = DimCase::none;
    std::optional<long> value;
    std::optional<long> stabilization;  // distinct-shifts case: first level of agreement
};

class PredictionModel {
public:
    explicit PredictionModel(const Multiplier& p, unsigned width = 0) {
        if (p.is_zero()) return;
        if (p.kind() != Multiplier::Kind::polynomial) return;
        std::vector<MonomialIndex> t;
        for (auto& [i, c] : p.element().terms()) t.push_back(i);
        auto shifts = p.shift_set();
        if (t.size() == 1) {
            kind_ = DimCase::monomial;
            threshold_ = Multiplier::shift(t[0]);
            return;
        }
        if (shifts.size() == 1) {
            kind_ = DimCase::equal_shifts;
            auto lo = *std::min_element(t.begin(), t.end(), [](auto a, auto b) { return a.alpha1 < b.alpha1; });
            long qt = std::max_element(t.begin(), t.end(), [](auto a, auto b) { return a.alpha1 < b.alpha1; })->alpha1;
            threshold_ = 2 * lo.alpha1 + lo.alpha2;
            upper_ = qt + lo.alpha1 + lo.alpha2;
            return;
        }
        bool constant = std::any_of(t.begin(), t.end(), [](auto i) { return i.alpha1 == 0 && i.alpha2 == 0; });
        if (shifts.size() == t.size() && !constant) {
            kind_ = DimCase::distinct_shifts;
            long min_deg = t[0].alpha1 + t[0].alpha2, min_q = t[0].alpha1, max_q = 0, max_deg = 0;
            for (auto i : t) {
                min_deg = std::min(min_deg, i.alpha1 + i.alpha2);
                min_q = std::min(min_q, i.alpha1);
                max_q = std::max(max_q, i.alpha1);
                max_deg = std::max(max_deg, i.alpha1 + i.alpha2);
            }
            stable_value_ = min_deg + min_q;
            // Past this level every per-term image interval overlaps its neighbours.
            horizon_ = max_q + max_deg;
            auto d = quotient_dims(p, horizon_, width);
            if (d[horizon_] != stable_value_) return;
            long m0 = horizon_;
            while (m0 > 0 && d[m0 - 1] == stable_value_) --m0;
            stabilization_ = m0;
        }
    }

    DimCase kind() const { return kind_; }
    std::optional<long> stabilization() const { return stabilization_; }

    Prediction at(long m) const {
        Prediction r;
        r.kind = kind_;
        switch (kind_) {
            case DimCase::monomial:
                r.value = m < threshold_ ? m + 1 : threshold_;
                break;
            case DimCase::equal_shifts:
                if (m < threshold_) r.value = m + 1;
                else if (m >= upper_) r.value = threshold_;
                break;
            case DimCase::distinct_shifts:
                r.stabilization = stabilization_;
                if (stabilization_ && m >= *stabilization_) r.value = stable_value_;
                break;
            default:
                break;
        }
        return r;
    }

private:
    DimCase kind_ = DimCase::none;
    long threshold_ = 0, upper_ = 0, stable_value_ = 0, horizon_ = 0;
    std::optional<long> stabilization_;
};

inline Prediction predicted_dim(const Multiplier& p, long m) { return PredictionModel(p).at(m); }

struct DimRow {
    long m = 0;
    long computed = 0;
    Prediction predicted;
    bool agree = true;
};

inline std::vector<DimRow> dim_table(const Multiplier& p, long m_min, long m_max, unsigned width = 0) {
    if (p.is_zero()) throw std::invalid_argument("the zero polynomial generates no quotient");
    PredictionModel model(p, width);
    std::vector<DimRow> rows(static_cast<std::size_t>(std::max<long>(m_max - m_min + 1, 0)));
    parallel_for(m_min, m_max + 1, width, [&](long m) {
        DimRow& r = rows[m - m_min];
        r.m = m;
        r.computed = quotient_level_dim(p, m);
        r.predicted = model.at(m);
        r.agree = !r.predicted.value || *r.predicted.value == r.computed;
    });
    return rows;
}

// ---- submodule slice ----

// Basis of {p*g} intersected with F_{<= M}. Only g of degree above M - maxShift can
// reach past M; their admissible combinations form the kernel of the overflow map.
inline SubspaceBasis submodule_slice(const Multiplier& p, long M) {
    if (p.is_zero()) throw std::invalid_argument("the zero polynomial generates no submodule");
    SubspaceBasis out;
    long S = p.max_shift(), s0 = p.min_shift();
    for (long L = 0; L <= M - S; ++L)
        for (auto& g : level_basis(L).entries) out.elements.push_back(multiply(p, HElement::monomial(g)));
    std::vector<HElement> images;
    std::map<MonomialIndex, std::size_t, CanonicalOrder> rows;
    for (long L = std::max<long>(0, M - S + 1); L <= M - s0; ++L)
        for (auto& g : level_basis(L).entries) {
            images.push_back(multiply(p, HElement::monomial(g)));
            for (auto& [i, c] : images.back().terms())
                if (lattice_degree(i) > M) rows.try_emplace(i, rows.size());
        }
    if (images.empty()) return out;
    Matrix a(rows.size(), images.size());
    for (std::size_t j = 0; j < images.size(); ++j)
        for (auto& [i, c] : images[j].terms())
            if (lattice_degree(i) > M) a(rows.at(i), j) = c;
    Matrix k = nullspace(a);
    for (std::size_t r = 0; r < k.rows(); ++r) {
        HElement e;
        for (std::size_t j = 0; j < images.size(); ++j)
            if (!k(r, j).is_zero()) e += k(r, j) * images[j];
        out.elements.push_back(std::move(e));
    }
    return out;
}

// ---- generator reduction ----

struct ReducedGenerator {
    Multiplier generator;
    bool changed = false;
    std::vector<std::string> removed;  // cyclic factors divided out, in the transferred variables
};

namespace detail {

inline std::string render_upoly(const UPoly& p, const std::string& var) {
    HElement e(Space::bidisc);
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) e.add_term({static_cast<long>(k), 0}, p.coeffs()[k]);
    std::string s = render(e), out;
    for (char c : s) {
        if (c == 'z') out += var;
        else out += c;
    }
    return out;
}

}  // namespace detail

// In the bidisc picture p(z, w) becomes P(u, w) = p(uw, w). A one-variable factor of P
// with no zeros in the open disc is cyclic, so dividing it out leaves the closure of
// p*H^2 unchanged. The quotient p' maps back to a bounded multiplier z^a w^(c-a).
inline ReducedGenerator reduce_generator(const Multiplier& p) {
    ReducedGenerator out{p, false, {}};
    if (p.is_zero()) return out;
    std::map<std::pair<long, long>, GR> P;
    long a0 = -1, b0 = -1;
    for (auto& [i, c] : p.element().terms()) {
        long u = i.alpha1, w = i.alpha1 + i.alpha2;
        P[{u, w}] = c;
        a0 = a0 < 0 ? u : std::min(a0, u);
        b0 = b0 < 0 ? w : std::min(b0, w);
    }
    std::map<std::pair<long, long>, GR> Q;
    for (auto& [k, c] : P) Q[{k.first - a0, k.second - b0}] = c;

    // Content along one variable: gcd of the coefficient polynomials in that variable.
    auto content = [](const std::map<std::pair<long, long>, GR>& R, bool in_u) {
        std::map<long, std::map<long, GR>> groups;
        for (auto& [k, c] : R) {
            long outer = in_u ? k.second : k.first, inner = in_u ? k.first : k.second;
            groups[outer][inner] = c;
        }
        std::optional<UPoly> g;
        for (auto& [o, coeffs] : groups) {
            std::vector<GR> v(static_cast<std::size_t>(coeffs.rbegin()->first + 1));
            for (auto& [e, c] : coeffs) v[e] = c;
            UPoly up(v);
            g = g ? gcd(*g, up) : up.monic();
        }
        return g ? *g : UPoly({GR(1)});
    };
    auto divide = [](const std::map<std::pair<long, long>, GR>& R, const UPoly& f, bool in_u) {
        std::map<long, std::map<long, GR>> groups;
        for (auto& [k, c] : R) groups[in_u ? k.second : k.first][in_u ? k.first : k.second] = c;
        std::map<std::pair<long, long>, GR> res;
        for (auto& [o, coeffs] : groups) {
            std::vector<GR> v(static_cast<std::size_t>(coeffs.rbegin()->first + 1));
            for (auto& [e, c] : coeffs) v[e] = c;
            auto [q, r] = UPoly(v).divmod(f);
            if (!r.is_zero()) throw std::logic_error("content does not divide");
            for (std::size_t e = 0; e < q.coeffs().size(); ++e)
                if (!q.coeffs()[e].is_zero())
                    res[in_u ? std::pair<long, long>{static_cast<long>(e), o} : std::pair<long, long>{o, static_cast<long>(e)}] =
                        q.coeffs()[e];
        }
        return res;
    };

    for (bool in_u : {true, false}) {
        UPoly c = content(Q, in_u);
        if (c.degree() >= 1 && zero_free_on_disc(c)) {
            Q = divide(Q, c, in_u);
            out.changed = true;
            out.removed.push_back(detail::render_upoly(c, in_u ? "u" : "w"));
        }
    }
    if (!out.changed) return out;
    HElement r(Space::hartogs);
    for (auto& [k, c] : Q) {
        long u = k.first + a0, w = k.second + b0;
        r.add_term({u, w - u}, c);
    }
    bool quadrant = true;
    for (auto& [i, c] : r.terms()) quadrant = quadrant && i.alpha2 >= 0;
    out.generator = quadrant ? Multiplier::polynomial(r) : Multiplier::bounded(r);
    return out;
}

// ---- gradedness certificate ----

struct GradedCertificate {
    long levelMax = 0;
    std::vector<long> quotientDims;
    long submoduleSliceDim = 0;
    bool graded = false;
    long defect = 0;
    // generator used for the count; equals the input unless a cyclic factor was removed
    std::string generator;
    std::vector<std::string> removedFactors;
    bool provenAllLevels = false;  // reduced generator has a single shift
    long rawSubmoduleSliceDim = 0;
    long rawDefect = 0;
};

inline GradedCertificate graded_certificate(const Multiplier& p, long level_max, unsigned width = 0) {
    if (p.is_zero()) throw std::invalid_argument("the zero polynomial generates no submodule");
    GradedCertificate cert;
    cert.levelMax = level_max;
    cert.quotientDims = quotient_dims(p, level_max, width);
    long total = count_up_to_level(level_max), sum = 0;
    for (long d : cert.quotientDims) sum += d;

    cert.rawSubmoduleSliceDim = static_cast<long>(submodule_slice(p, level_max).size());
    cert.rawDefect = total - sum - cert.rawSubmoduleSliceDim;

    ReducedGenerator red = reduce_generator(p);
    cert.generator = render(red.generator);
    cert.removedFactors = red.removed;
    if (red.changed) {
        auto d2 = quotient_dims(red.generator, level_max, width);
        if (d2 != cert.quotientDims) throw std::logic_error("reduced generator changed the quotient slices");
        cert.submoduleSliceDim = static_cast<long>(submodule_slice(red.generator, level_max).size());
    } else {
        cert.submoduleSliceDim = cert.rawSubmoduleSliceDim;
    }
    cert.defect = total - sum - cert.submoduleSliceDim;
    cert.graded = cert.defect == 0;
    cert.provenAllLevels = red.generator.shift_set().size() == 1;
    return cert;
}

}  // namespace hm
