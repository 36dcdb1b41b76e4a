#pragma once

#include <hm/modules_engine.hpp>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hm {

// Level slices of a graded subspace of the Hartogs space, with Gram data per level.
struct GradedSpace {
    long levelMax = 0;
    std::string description;
    std::vector<SubspaceBasis> slices;
    std::vector<Matrix> gram, gramInv;

    std::size_t dim(long L) const { return slices.at(static_cast<std::size_t>(L)).size(); }

    void finalize(unsigned width = 0) {
        gram.assign(slices.size(), Matrix());
        gramInv.assign(slices.size(), Matrix());
        parallel_for(0, static_cast<long>(slices.size()), width, [&](long L) {
            gram[L] = slices[L].gram();
            gramInv[L] = inverse(gram[L]);
        });
    }

    // Coordinates of the orthogonal projection of v onto slice L.
    std::vector<GR> project(long L, const HElement& v) const {
        const auto& b = slices.at(static_cast<std::size_t>(L)).elements;
        std::vector<GR> rhs(b.size());
        for (std::size_t j = 0; j < b.size(); ++j) rhs[j] = inner_product(v, b[j]);
        return gramInv[L].apply(rhs);
    }

    HElement element(long L, const std::vector<GR>& c) const {
        HElement e;
        const auto& b = slices.at(static_cast<std::size_t>(L)).elements;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!c[j].is_zero()) e += c[j] * b[j];
        return e;
    }

    // Coordinates of v if it lies in slice L.
    std::optional<std::vector<GR>> coordinates(long L, const HElement& v) const {
        if (L < 0 || L > levelMax) return std::nullopt;
        auto c = project(L, v);
        if (!(element(L, c) == v)) return std::nullopt;
        return c;
    }

    bool contains(long L, const HElement& v) const { return coordinates(L, v).has_value(); }
};

using GradedSpacePtr = std::shared_ptr<const GradedSpace>;

inline GradedSpacePtr quotient_space(const Multiplier& p, long level_max, unsigned width = 0) {
    auto s = std::make_shared<GradedSpace>();
    s->levelMax = level_max;
    s->description = "quotient by " + render(p);
    s->slices.resize(static_cast<std::size_t>(level_max + 1));
    parallel_for(0, level_max + 1, width, [&](long m) { s->slices[m] = quotient_level_basis(p, m); });
    s->finalize(width);
    return s;
}

// Levelwise operator: blocks[m] maps slice m to slice m + shift.
struct BlockOperator {
    GradedSpacePtr space;
    long shift = 0;
    std::string name;
    std::map<long, Matrix> blocks;

    // Block at source level m; a target below level 0 means the zero map.
    std::optional<Matrix> block(long m) const {
        if (m < 0 || m > space->levelMax) return std::nullopt;
        if (m + shift < 0) return Matrix(0, space->dim(m));
        auto it = blocks.find(m);
        if (it == blocks.end()) return std::nullopt;
        return it->second;
    }

    std::optional<HElement> apply(long m, const HElement& v) const {
        auto b = block(m);
        if (!b) return std::nullopt;
        if (m + shift < 0) return HElement();
        auto c = space->coordinates(m, v);
        if (!c) throw std::invalid_argument("vector is not in the slice at level " + std::to_string(m));
        return space->element(m + shift, b->apply(*c));
    }
};

// P M_x restricted to the space, level by level. Levels whose image exceeds levelMax are omitted.
inline BlockOperator levelwise_compress(GradedSpacePtr space, Letter x, unsigned width = 0) {
    BlockOperator op;
    op.space = space;
    op.shift = letter_shift(x);
    op.name = std::string("compression of ") + letter_name(x);
    long top = space->levelMax - op.shift;
    std::vector<Matrix> tmp(static_cast<std::size_t>(std::max<long>(top + 1, 0)));
    HElement mono = HElement::monomial(letter_index(x));
    parallel_for(0, top + 1, width, [&](long m) {
        long t = m + op.shift;
        Matrix b(space->dim(t), space->dim(m));
        for (std::size_t i = 0; i < space->dim(m); ++i) {
            auto c = space->project(t, convolve(mono, space->slices[m].elements[i], Space::hartogs));
            for (std::size_t r = 0; r < c.size(); ++r) b(r, i) = c[r];
        }
        tmp[m] = std::move(b);
    });
    for (long m = 0; m <= top; ++m) op.blocks.emplace(m, std::move(tmp[m]));
    return op;
}

inline BlockOperator levelwise_compress(const Multiplier& p, Letter x, long level_max, unsigned width = 0) {
    return levelwise_compress(quotient_space(p, level_max, width), x, width);
}

struct NotGraded : std::runtime_error {
    GradedCertificate certificate;
    NotGraded(const std::string& what, GradedCertificate c) : std::runtime_error(what), certificate(std::move(c)) {}
};

// Compression onto a quotient whose gradedness is certified up to levelMax + shift.
inline BlockOperator compress(const Multiplier& p, Letter x, long level_max, unsigned width = 0) {
    auto cert = graded_certificate(p, level_max + letter_shift(x), width);
    if (!cert.graded)
        throw NotGraded("quotient by " + render(p) + " is not certified graded (defect " + std::to_string(cert.defect) +
                            " at level " + std::to_string(cert.levelMax) + "); levelwise projection would be wrong",
                        cert);
    return levelwise_compress(p, x, level_max, width);
}

// A* = G_m^{-1} A^H G_{m'} for each block A: m -> m'.
inline BlockOperator adjoint(const BlockOperator& t) {
    BlockOperator a;
    a.space = t.space;
    a.shift = -t.shift;
    a.name = "adjoint of " + t.name;
    for (auto& [m, blk] : t.blocks) {
        long tgt = m + t.shift;
        if (tgt < 0 || tgt > t.space->levelMax) continue;
        a.blocks.emplace(tgt, t.space->gramInv[m] * blk.conjugate_transpose() * t.space->gram[tgt]);
    }
    return a;
}

// a after b
inline BlockOperator compose(const BlockOperator& a, const BlockOperator& b) {
    if (a.space != b.space) throw std::invalid_argument("operators act on different spaces");
    BlockOperator c;
    c.space = a.space;
    c.shift = a.shift + b.shift;
    c.name = "(" + a.name + ")(" + b.name + ")";
    long top = a.space->levelMax;
    for (long m = 0; m <= top; ++m) {
        long tgt = m + c.shift;
        if (tgt < 0 || tgt > top) continue;
        auto bb = b.block(m);
        if (!bb) continue;
        long mid = m + b.shift;
        if (mid < 0) {
            c.blocks.emplace(m, Matrix(a.space->dim(tgt), a.space->dim(m)));
            continue;
        }
        auto ab = a.block(mid);
        if (!ab) continue;
        c.blocks.emplace(m, *ab * *bb);
    }
    return c;
}

inline BlockOperator difference(const BlockOperator& a, const BlockOperator& b) {
    if (a.space != b.space || a.shift != b.shift) throw std::invalid_argument("incompatible gradings");
    BlockOperator c;
    c.space = a.space;
    c.shift = a.shift;
    c.name = a.name + " - " + b.name;
    for (auto& [m, blk] : a.blocks) {
        auto other = b.block(m);
        if (other) c.blocks.emplace(m, blk - *other);
    }
    return c;
}

// [A*, B]
inline BlockOperator commutator(const BlockOperator& a, const BlockOperator& b) {
    BlockOperator as = adjoint(a);
    BlockOperator c = difference(compose(as, b), compose(b, as));
    c.name = "[" + a.name + "*, " + b.name + "]";
    return c;
}

// ---- commutator diagnostics ----

struct DefectBlock {
    long source = 0, target = 0;
    Matrix coords;   // coordinates of [A*,B] f_i in the target slice basis
    Matrix pairing;  // entry (j, i) = <[A*,B] f_i, f_j>
    bool zero = true;
};

struct CommutatorDefect {
    std::string pair;
    long levelMax = 0;
    bool levelwise = false;  // computed on the graded part without a certificate
    GradedSpacePtr space;
    std::vector<DefectBlock> blocks;
    bool all_zero() const {
        for (auto& b : blocks)
            if (!b.zero) return false;
        return true;
    }
};

inline std::pair<Letter, Letter> parse_pair(const std::string& pair) {
    std::string s;
    for (char c : pair)
        if (c == 'z' || c == 'w') s += c;
    if (s.size() != 2) throw std::invalid_argument("pair must name two letters from {z, w}: '" + pair + "'");
    auto l = [](char c) { return c == 'z' ? Letter::z : Letter::w; };
    return {l(s[0]), l(s[1])};
}

inline CommutatorDefect defect_from(const BlockOperator& a, const BlockOperator& b, const std::string& pair, long level_max) {
    CommutatorDefect out;
    out.pair = pair;
    out.levelMax = level_max;
    out.space = a.space;
    BlockOperator c = commutator(a, b);
    for (auto& [m, blk] : c.blocks) {
        DefectBlock d;
        d.source = m;
        d.target = m + c.shift;
        d.coords = blk;
        d.pairing = c.space->gram[d.target] * blk;
        d.zero = blk.is_zero();
        out.blocks.push_back(std::move(d));
    }
    return out;
}

// Pair "zw" means [Q_z*, Q_w]. With levelwise = true no certificate is required and the
// result describes the compression to the graded part.
inline CommutatorDefect commutator_defect(const Multiplier& p, const std::string& pair, long level_max, bool levelwise = false,
                                          unsigned width = 0) {
    auto [x, y] = parse_pair(pair);
    if (!levelwise) {
        long need = level_max + std::max(letter_shift(x), letter_shift(y));
        auto cert = graded_certificate(p, need, width);
        if (!cert.graded)
            throw NotGraded("quotient by " + render(p) + " is not certified graded (defect " + std::to_string(cert.defect) +
                                " at level " + std::to_string(need) + ")",
                            cert);
    }
    auto space = quotient_space(p, level_max, width);
    auto a = levelwise_compress(space, x, width), b = levelwise_compress(space, y, width);
    auto out = defect_from(a, b, std::string(letter_name(x)) + letter_name(y), level_max);
    out.levelwise = levelwise;
    return out;
}

// ---- essential normality witness ----

struct WitnessReport {
    std::string shape;  // a, b, c when p = a z + b w + c w^2, otherwise empty
    bool hypothesis = false;
    std::string hypothesisFailure;
    std::vector<long> spanTopLevels;  // levels whose slice is span{E^m_m}
    long kMax = 0;
    long identitiesChecked = 0;
    std::vector<std::string> failures;
    std::vector<GR> diagonal;  // <[Qz*,Qz]E^k_k, E^k_k> for k = 1..kMax
    bool ok() const { return hypothesis && failures.empty(); }
};

inline std::string thepolynomial_shape(const Multiplier& p) {
    GR a, b, c;
    for (auto& [i, v] : p.element().terms()) {
        if (i == MonomialIndex{1, 0}) a = v;
        else if (i == MonomialIndex{0, 1}) b = v;
        else if (i == MonomialIndex{0, 2}) c = v;
        else return "";
    }
    return "a=" + a.str() + ", b=" + b.str() + ", c=" + c.str();
}

inline WitnessReport essential_normality_witness(const Multiplier& p, long k_max, unsigned width = 0) {
    WitnessReport rep;
    rep.kMax = k_max;
    rep.shape = thepolynomial_shape(p);
    long top = k_max + 2;
    auto space = quotient_space(p, top, width);
    for (long m = 0; m <= top; ++m)
        if (space->dim(m) == 1 && space->contains(m, HElement::monomial(level_monomial(m, m)))) rep.spanTopLevels.push_back(m);
    rep.hypothesis = true;
    for (long k = 1; k <= k_max + 1 && rep.hypothesis; ++k) {
        for (long A : {k, k - 1}) {
            if (k == k_max + 1 && A == k - 1) continue;
            if (!space->contains(k, HElement::monomial(level_monomial(k, A)))) {
                rep.hypothesis = false;
                rep.hypothesisFailure = "E^" + std::to_string(k) + "_" + std::to_string(A) + " is not in the quotient";
                break;
            }
        }
    }
    if (!rep.hypothesis) return rep;
    auto cert = graded_certificate(p, top + 2, width);
    if (!cert.graded) throw NotGraded("quotient by " + render(p) + " is not certified graded", cert);
    auto qz = levelwise_compress(space, Letter::z, width), qw = levelwise_compress(space, Letter::w, width);
    auto czz = commutator(qz, qz), cwz = commutator(qw, qz);
    for (long k = 1; k <= k_max; ++k) {
        HElement e = HElement::monomial(level_monomial(k, k));
        HElement next = HElement::monomial(level_monomial(k + 1, k + 1));
        auto r1 = czz.apply(k, e);
        auto r2 = cwz.apply(k, e);
        rep.identitiesChecked += 2;
        if (!r1 || !(*r1 == e)) rep.failures.push_back("[Qz*,Qz]E^k_k != E^k_k at k=" + std::to_string(k));
        if (!r2 || !(*r2 == next)) rep.failures.push_back("[Qw*,Qz]E^k_k != E^(k+1)_(k+1) at k=" + std::to_string(k));
        rep.diagonal.push_back(r1 ? inner_product(*r1, e) : GR(0));
    }
    return rep;
}

// ---- submodules generated by a monomial ----

enum class SubmoduleVariant { plusSpace, fullSpace };

inline bool submodule_contains(MonomialIndex q, SubmoduleVariant v, MonomialIndex e) {
    if (!is_hartogs_index(e)) return false;
    MonomialIndex d = e - q;
    return v == SubmoduleVariant::plusSpace ? is_bidisc_index(d) : is_hartogs_index(d);
}

template <class Pred>
GradedSpacePtr monomial_space(Pred member, long level_max, std::string description) {
    auto s = std::make_shared<GradedSpace>();
    s->levelMax = level_max;
    s->description = std::move(description);
    s->slices.resize(static_cast<std::size_t>(level_max + 1));
    for (long L = 0; L <= level_max; ++L) {
        s->slices[L].level = L;
        for (auto& e : level_basis(L).entries)
            if (member(e)) s->slices[L].elements.push_back(HElement::monomial(e));
    }
    s->finalize(1);
    return s;
}

inline GradedSpacePtr monomial_submodule_space(MonomialIndex q, SubmoduleVariant v, long level_max) {
    return monomial_space([&](MonomialIndex e) { return submodule_contains(q, v, e); }, level_max,
                          "submodule generated by " + render(HElement::monomial(q)));
}

inline GradedSpacePtr whole_space(long level_max) {
    return monomial_space([](MonomialIndex) { return true; }, level_max, "H^2 of the Hartogs triangle");
}

struct RestrictionReport {
    std::string q;
    SubmoduleVariant variant = SubmoduleVariant::plusSpace;
    long levelMax = 0;
    BlockOperator sz, sw;
    CommutatorDefect zw;  // [S_z*, S_w]
    CommutatorDefect wz;  // [S_w*, S_z]
    long vectorsChecked = 0;
    bool doublyCommuting = false;
    std::string witness;  // first basis vector with nonzero [S_z*, S_w] image
    // fullSpace: S_w*S_z(qE^i_i) = qE^(i+1)_(i+1) and S_z S_w*(qE^i_i) = 0
    long indexWitnessChecked = 0;
    bool indexWitnessHolds = false;
};

inline RestrictionReport submodule_restriction(const HElement& q, SubmoduleVariant variant, long level_max) {
    if (q.size() != 1 || !q.terms().begin()->second.is_one())
        throw std::invalid_argument("exact mode needs a single monic monomial generator");
    MonomialIndex qi = q.terms().begin()->first;
    if (!is_hartogs_index(qi)) throw std::invalid_argument("generator must be a Hartogs monomial");
    RestrictionReport rep;
    rep.q = render(q);
    rep.variant = variant;
    rep.levelMax = level_max;
    auto space = monomial_submodule_space(qi, variant, level_max);
    rep.sz = levelwise_compress(space, Letter::z, 1);
    rep.sw = levelwise_compress(space, Letter::w, 1);
    rep.zw = defect_from(rep.sz, rep.sw, "zw", level_max);
    rep.wz = defect_from(rep.sw, rep.sz, "wz", level_max);
    rep.doublyCommuting = rep.zw.all_zero();
    for (auto& b : rep.zw.blocks) {
        rep.vectorsChecked += static_cast<long>(b.coords.cols());
        if (!rep.witness.empty() || b.zero) continue;
        for (std::size_t i = 0; i < b.coords.cols(); ++i) {
            HElement img = space->element(b.target, b.coords.column(i));
            if (img.is_zero()) continue;
            rep.witness = "[S_z*,S_w](" + render(space->slices[b.source].elements[i]) + ") = " + render(img);
            break;
        }
    }
    if (variant == SubmoduleVariant::fullSpace) {
        auto swa = adjoint(rep.sw);
        auto lhs = compose(swa, rep.sz), rhs = compose(rep.sz, swa);
        long sq = Multiplier::shift(qi);
        rep.indexWitnessHolds = true;
        for (long i = 0; i + sq + 2 <= level_max; ++i) {
            HElement e = convolve(q, HElement::monomial(level_monomial(i, i)), Space::hartogs);
            HElement e1 = convolve(q, HElement::monomial(level_monomial(i + 1, i + 1)), Space::hartogs);
            long L = i + sq;
            auto a = lhs.apply(L, e), b = rhs.apply(L, e);
            ++rep.indexWitnessChecked;
            if (!a || !b || !(*a == e1) || !b->is_zero()) rep.indexWitnessHolds = false;
        }
        if (rep.indexWitnessChecked == 0) rep.indexWitnessHolds = false;
    }
    return rep;
}

// ---- defect product on the full space ----

// (I - S_z S_z*)(I - S_w S_w*) with S = H^2 of the Hartogs triangle, through the block machinery.
struct DefectProduct {
    GradedSpacePtr space;
    BlockOperator dz, dw;  // S_z S_z* and S_w S_w* (shift 0)

    explicit DefectProduct(long level_max) {
        space = whole_space(level_max);
        auto sz = levelwise_compress(space, Letter::z, 1), sw = levelwise_compress(space, Letter::w, 1);
        dz = compose(sz, adjoint(sz));
        dw = compose(sw, adjoint(sw));
    }

    HElement apply(const HElement& v) const {
        HElement out;
        for (auto& [L, part] : level_of_element(v)) {
            auto bw = dw.apply(L, part);
            if (!bw) throw std::out_of_range("level above the represented range");
            HElement x = part - *bw;
            auto bz = dz.apply(L, x);
            out += x - *bz;
        }
        return out;
    }
};

struct DefectProductReport {
    long levelMax = 0;
    std::vector<std::pair<HElement, HElement>> values;  // monomial input, output
    bool witnessNonzero = false;                        // on z/w^2
    long nonzeroCount = 0;
};

inline DefectProductReport defect_product_witness(long level_max) {
    DefectProductReport rep;
    rep.levelMax = level_max;
    DefectProduct dp(level_max);
    for (long m = 0; m <= level_max; ++m)
        for (auto& e : level_basis(m).entries) {
            HElement in = HElement::monomial(e), out = dp.apply(in);
            if (!out.is_zero()) ++rep.nonzeroCount;
            if (e == MonomialIndex{1, -2}) rep.witnessNonzero = !out.is_zero();
            rep.values.emplace_back(in, out);
        }
    return rep;
}

}  // namespace hm
