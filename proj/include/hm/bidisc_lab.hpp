#pragma once

// Box-truncated series on the bidisc. A vector is carried as exact coefficients on
// {0..N}^2 together with a rigorous upper bound on its distance to the true vector.

#include <hm/element.hpp>
#include <hm/linalg.hpp>
#include <hm/parallel.hpp>
#include <hm/parse.hpp>

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

namespace hm {

struct TruncatedSeries {
    HElement coeffs{Space::bidisc};
    long N = 0;
    mpq_class tailBoundBase = 0;       // geometric decay rate of the dropped coefficients
    std::optional<mpq_class> normSq;  // exact squared norm of the untruncated function, if known

    mpq_class tail_norm_sq() const { return normSq ? *normSq - coeffs.norm_squared() : mpq_class(0); }
    double tail_bound() const { return sqrt_upper(tail_norm_sq()); }
};

inline bool in_box(MonomialIndex i, long N) { return i.alpha1 >= 0 && i.alpha2 >= 0 && i.alpha1 <= N && i.alpha2 <= N; }

namespace detail {

inline void require_unit_parameter(const mpq_class& a) {
    if (abs(a) >= 1) throw std::invalid_argument("parameter must satisfy |a| < 1");
}

}  // namespace detail

// c (z - a)/(1 - a z) = c(-a + sum_{k>=1} (1 - a^2) a^(k-1) z^k), truncated at z^N.
inline TruncatedSeries blaschke_series(const mpq_class& a, const GR& c, long N) {
    detail::require_unit_parameter(a);
    if (N < 1) throw std::invalid_argument("truncation must be at least 1");
    TruncatedSeries s;
    s.N = N;
    s.tailBoundBase = abs(a);
    s.normSq = c.norm2();
    s.coeffs.add_term({0, 0}, c * GR(-a));
    mpq_class pw = 1, lead = 1 - a * a;
    for (long k = 1; k <= N; ++k, pw *= a) s.coeffs.add_term({k, 0}, c * GR(lead * pw));
    return s;
}

// (zw - a)/(1 - a zw) = -a + (1 - a^2) sum_{k>=1} a^(k-1) (zw)^k for k <= N.
inline TruncatedSeries theta_a_series(const mpq_class& a, long N) {
    if (a <= 0 || a >= 1) throw std::invalid_argument("theta_a needs 0 < a < 1");
    if (N < 2) throw std::invalid_argument("truncation must be at least 2");
    TruncatedSeries s;
    s.N = N;
    s.tailBoundBase = a;
    s.normSq = mpq_class(1);
    s.coeffs.add_term({0, 0}, GR(-a));
    mpq_class pw = 1, lead = 1 - a * a;
    for (long k = 1; k <= N; ++k, pw *= a) s.coeffs.add_term({k, k}, GR(lead * pw));
    return s;
}

// 1 + a theta_a = (1 - a^2) sum_k a^k (zw)^k, times z^i w^j; squared norm 1 - a^2.
inline TruncatedSeries theta_a_basis_vector(const mpq_class& a, long i, long j, long N) {
    TruncatedSeries s;
    s.N = N;
    s.tailBoundBase = a;
    s.normSq = 1 - a * a;
    mpq_class pw = 1, lead = 1 - a * a;
    for (long k = 0; k + std::max(i, j) <= N; ++k, pw *= a) s.coeffs.add_term({k + i, k + j}, GR(lead * pw));
    return s;
}

// One-variable inner factor: constant c, c x^n, or c (x - a)/(1 - a x).
struct InnerFactor {
    enum class Kind { constant, monomial, blaschke };
    Kind kind = Kind::constant;
    GR c{1};
    long power = 0;
    mpq_class a = 0;

    bool is_constant() const { return kind == Kind::constant; }

    std::vector<GR> coefficients(long N) const {
        std::vector<GR> v(static_cast<std::size_t>(N + 1));
        switch (kind) {
            case Kind::constant: v[0] = c; break;
            case Kind::monomial:
                if (power <= N) v[power] = c;
                break;
            case Kind::blaschke: {
                auto s = blaschke_series(a, c, N);
                for (auto& [i, x] : s.coeffs.terms()) v[i.alpha1] = x;
                break;
            }
        }
        return v;
    }

    mpq_class decay() const { return kind == Kind::blaschke ? mpq_class(abs(a)) : mpq_class(0); }

    std::string str(char var) const {
        std::string cs = c.is_one() ? "" : c.str() + ":";
        switch (kind) {
            case Kind::constant: return c.str();
            case Kind::monomial: return cs + var + (power == 1 ? "" : "^" + std::to_string(power));
            default: return cs + "blaschke(" + a.get_str() + ")";
        }
    }
};

// Accepts "1", "-1", "I", "-I", "z", "z^2", "c:z^2", "blaschke(p/q)", "c:blaschke(p/q)".
// The factor's variable comes from its position, so "z^2" and "w^2" mean the same power.
inline InnerFactor parse_inner_factor(const std::string& text, char var) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    auto unimodular = [&](const std::string& t) -> GR {
        if (t == "1") return GR(1);
        if (t == "-1") return GR(-1);
        if (t == "I") return GR::I();
        if (t == "-I") return -GR::I();
        throw std::invalid_argument("unimodular constant must be one of 1, -1, I, -I: '" + t + "'");
    };
    InnerFactor f;
    auto colon = s.find(':');
    std::string body = s;
    if (colon != std::string::npos) {
        f.c = unimodular(s.substr(0, colon));
        body = s.substr(colon + 1);
    }
    if (body.empty()) throw std::invalid_argument("empty inner function spec");
    if (body.rfind("blaschke(", 0) == 0 && body.back() == ')') {
        f.kind = InnerFactor::Kind::blaschke;
        f.a = GR::parse_rational(body.substr(9, body.size() - 10));
        detail::require_unit_parameter(f.a);
        if (f.a == 0) {
            f.kind = InnerFactor::Kind::monomial;
            f.power = 1;
        }
        return f;
    }
    if (body[0] == var || body[0] == 'z' || body[0] == 'w') {
        f.kind = InnerFactor::Kind::monomial;
        f.power = 1;
        if (body.size() > 1) {
            if (body[1] != '^') throw std::invalid_argument("bad inner function spec '" + text + "'");
            f.power = std::stol(body.substr(2));
            if (f.power < 0) throw std::invalid_argument("negative power in '" + text + "'");
        }
        if (f.power == 0) f.kind = InnerFactor::Kind::constant;
        return f;
    }
    if (colon != std::string::npos) throw std::invalid_argument("unsupported inner function spec '" + text + "'");
    f.c = unimodular(body);
    return f;
}

// Either theta1(z) theta2(w) or theta_a(z, w).
struct InnerSpec {
    enum class Kind { product, theta };
    Kind kind = Kind::product;
    InnerFactor t1, t2;
    mpq_class a = 0;

    static InnerSpec product(InnerFactor x, InnerFactor y) { return {Kind::product, std::move(x), std::move(y), 0}; }
    static InnerSpec theta(const mpq_class& a) {
        if (a <= 0 || a >= 1) throw std::invalid_argument("theta_a needs 0 < a < 1");
        return {Kind::theta, {}, {}, a};
    }

    bool exact_data() const {
        return kind == Kind::product && t1.kind != InnerFactor::Kind::blaschke && t2.kind != InnerFactor::Kind::blaschke;
    }
    mpq_class decay() const { return kind == Kind::theta ? a : std::max(t1.decay(), t2.decay()); }
    std::string str() const {
        if (kind == Kind::theta) return "theta_" + a.get_str();
        return t1.str('z') + " * " + t2.str('w');
    }
};

// Box-supported vector with an upper bound on the distance to the vector it stands for.
struct Tracked {
    HElement value{Space::bidisc};
    double error = 0.0;
    bool exact() const { return error == 0.0; }
};

inline Tracked track(const TruncatedSeries& s) { return {s.coeffs, s.tail_bound()}; }

inline Tracked operator-(const Tracked& a, const Tracked& b) { return {a.value - b.value, add_upper(a.error, b.error)}; }
inline Tracked operator*(const GR& c, const Tracked& t) {
    return {c * t.value, mul_upper(sqrt_upper(c.norm2()), t.error)};
}

// Quotient H^2(D^2) minus theta H^2(D^2), worked on the box {0..N}^2.
class QuotientModel {
public:
    QuotientModel(InnerSpec spec, long N) : spec_(std::move(spec)), N_(N) {
        if (N < 1) throw std::invalid_argument("truncation must be at least 1");
        if (spec_.kind == InnerSpec::Kind::product) {
            th1_ = nonzero(spec_.t1.coefficients(N));
            th2_ = nonzero(spec_.t2.coefficients(N));
        } else {
            auto s = theta_a_series(spec_.a, N);
            for (auto& [i, c] : s.coeffs.terms()) th_.emplace_back(i.alpha1, c);
        }
    }

    const InnerSpec& spec() const { return spec_; }
    long N() const { return N_; }

    // theta* v; exact for box-supported v since the adjoint only lowers exponents.
    HElement theta_adjoint(const HElement& v) const {
        if (spec_.kind == InnerSpec::Kind::theta) {
            HElement u(Space::bidisc);
            for (auto& [i, c] : v.terms())
                for (auto& [k, t] : th_)
                    if (k <= i.alpha1 && k <= i.alpha2) u.add_term({i.alpha1 - k, i.alpha2 - k}, c * t.conj());
            return u;
        }
        return along(along(v, th1_, true, true), th2_, false, true);
    }

    // Box part of theta * u.
    HElement theta_times(const HElement& u) const {
        if (spec_.kind == InnerSpec::Kind::theta) {
            HElement r(Space::bidisc);
            for (auto& [i, c] : u.terms())
                for (auto& [k, t] : th_)
                    if (i.alpha1 + k <= N_ && i.alpha2 + k <= N_) r.add_term({i.alpha1 + k, i.alpha2 + k}, c * t);
            return r;
        }
        return along(along(u, th1_, true, false), th2_, false, false);
    }

    // P v = v - theta theta* v. The part of theta theta* v outside the box has squared norm
    // |theta* v|^2 - |box part|^2 because multiplication by theta is an isometry.
    Tracked project(const Tracked& x) const {
        HElement u = theta_adjoint(x.value);
        HElement tu = theta_times(u);
        mpq_class lost = u.norm_squared() - tu.norm_squared();
        if (sgn(lost) < 0) throw std::logic_error("negative truncation mass");
        return {x.value - tu, add_upper(x.error, sqrt_upper(lost))};
    }

    Tracked multiply(Letter x, const Tracked& t) const {
        Tracked r;
        r.error = t.error;
        mpq_class lost = 0;
        for (auto& [i, c] : t.value.terms()) {
            MonomialIndex j = x == Letter::z ? MonomialIndex{i.alpha1 + 1, i.alpha2} : MonomialIndex{i.alpha1, i.alpha2 + 1};
            if (in_box(j, N_)) r.value.add_term(j, c);
            else lost += c.norm2();
        }
        r.error = add_upper(r.error, sqrt_upper(lost));
        return r;
    }

    Tracked multiply_adjoint(Letter x, const Tracked& t) const {
        Tracked r;
        r.error = t.error;
        for (auto& [i, c] : t.value.terms()) {
            MonomialIndex j = x == Letter::z ? MonomialIndex{i.alpha1 - 1, i.alpha2} : MonomialIndex{i.alpha1, i.alpha2 - 1};
            if (is_bidisc_index(j)) r.value.add_term(j, c);
        }
        return r;
    }

    // Q_1 = P M_z, Q_2 = P M_w on the quotient.
    Tracked q(Letter x, const Tracked& t) const { return project(multiply(x, t)); }
    Tracked q_adjoint(Letter x, const Tracked& t) const { return project(multiply_adjoint(x, t)); }

    struct CommutatorParts {
        Tracked q1q2q2s;  // Q1 Q2 Q2* f
        Tracked q2sq1q2;  // Q2* Q1 Q2 f
        Tracked defect;   // [Q1 Q2, Q2*] f
    };

    CommutatorParts commutator(const Tracked& f) const {
        CommutatorParts r;
        r.q1q2q2s = q(Letter::z, q(Letter::w, q_adjoint(Letter::w, f)));
        r.q2sq1q2 = q_adjoint(Letter::w, q(Letter::z, q(Letter::w, f)));
        r.defect = r.q1q2q2s - r.q2sq1q2;
        return r;
    }

private:
    static std::vector<std::pair<long, GR>> nonzero(const std::vector<GR>& v) {
        std::vector<std::pair<long, GR>> out;
        for (std::size_t k = 0; k < v.size(); ++k)
            if (!v[k].is_zero()) out.emplace_back(static_cast<long>(k), v[k]);
        return out;
    }

    // Multiply by (or apply the adjoint of) a one-variable series along z or w, staying in the box.
    HElement along(const HElement& v, const std::vector<std::pair<long, GR>>& th, bool in_z, bool adj) const {
        HElement r(Space::bidisc);
        for (auto& [i, c] : v.terms())
            for (auto& [k, t] : th) {
                long e = (in_z ? i.alpha1 : i.alpha2) + (adj ? -k : k);
                if (e < 0 || e > N_) continue;
                MonomialIndex j = in_z ? MonomialIndex{e, i.alpha2} : MonomialIndex{i.alpha1, e};
                r.add_term(j, c * (adj ? t.conj() : t));
            }
        return r;
    }

    InnerSpec spec_;
    long N_;
    std::vector<std::pair<long, GR>> th1_, th2_, th_;
};

inline Tracked quotient_projection(const InnerSpec& spec, const TruncatedSeries& v) {
    QuotientModel model(spec, v.N);
    return model.project(track(v));
}

// Exact rank of the truncated one-variable projection I - Pi T T* on span{x^0..x^N}.
inline long truncated_quotient_rank(const InnerFactor& f, long N) {
    QuotientModel model(InnerSpec::product(InnerFactor{}, f), N);
    Matrix m(static_cast<std::size_t>(N + 1), static_cast<std::size_t>(N + 1));
    for (long j = 0; j <= N; ++j) {
        auto r = model.project({HElement::monomial({0, j}, Space::bidisc), 0.0});
        for (auto& [i, c] : r.value.terms()) m(static_cast<std::size_t>(i.alpha2), static_cast<std::size_t>(j)) = c;
    }
    return static_cast<long>(rank(m));
}

// ---- checks ----

struct DefectEstimate {
    std::string vector;  // name of f
    mpq_class computedNormSq;
    double computedNorm = 0;
    double error = 0;
    double upper = 0;  // certified bound on the true defect norm
    bool nonzero = false;  // computed norm exceeds the error, so the true defect is nonzero
};

inline DefectEstimate estimate(const std::string& name, const Tracked& d) {
    DefectEstimate e;
    e.vector = name;
    e.computedNormSq = d.value.norm_squared();
    e.computedNorm = std::sqrt(e.computedNormSq.get_d());
    e.error = d.error;
    e.upper = add_upper(sqrt_upper(e.computedNormSq), d.error);
    e.nonzero = sqrt_lower(e.computedNormSq) > d.error;
    return e;
}

struct PhiDcWitness {
    std::string vector;
    std::string q1q2q2s, q2sq1q2, defect;  // truncated renderings
    DefectEstimate estimate;
    std::string relation;  // extra identity confirmed for the witness, if any
};

struct PhiDcReport {
    std::string theta1, theta2;
    long N = 0;
    bool trivialQuotient = false;
    bool exact = false;  // every error term vanished
    bool pass = false;
    double maxUpper = 0;
    long vectorsChecked = 0;
    std::vector<DefectEstimate> estimates;
    std::optional<PhiDcWitness> witness;
};

namespace detail {

inline std::string render_truncated(const HElement& v, std::size_t max_terms = 6) {
    if (v.size() <= max_terms) return render(v);
    HElement head(Space::bidisc);
    std::size_t n = 0;
    for (auto& [i, c] : v.terms()) {
        if (n++ == max_terms) break;
        head.add_term(i, c);
    }
    return render(head) + " + ... (" + std::to_string(v.size()) + " terms)";
}

inline std::string fmt_g(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// Decimal rendering for display only.
inline std::string render_decimal(const HElement& v, std::size_t max_terms = 6, int digits = 6) {
    if (v.is_zero()) return "0";
    std::string out;
    std::size_t n = 0;
    for (auto& [i, c] : v.terms()) {
        if (n++ == max_terms) {
            out += " + ... (" + std::to_string(v.size()) + " terms)";
            break;
        }
        char buf[64];
        if (c.is_real()) std::snprintf(buf, sizeof buf, "%.*g", digits, c.real_double());
        else std::snprintf(buf, sizeof buf, "(%.*g%+.*g*I)", digits, c.real_double(), digits, c.imag_double());
        std::string mono = render(HElement::monomial(i, Space::bidisc));
        std::string t = std::string(buf) + (mono == "1" ? "" : "*" + mono);
        out += out.empty() ? t : (t[0] == '-' ? " - " + t.substr(1) : " + " + t);
    }
    return out;
}

inline TruncatedSeries kernel_series(const mpq_class& a, long N, bool in_z) {
    TruncatedSeries s;
    s.N = N;
    s.tailBoundBase = abs(a);
    s.normSq = 1 / (1 - a * a);
    mpq_class pw = 1;
    for (long k = 0; k <= N; ++k, pw *= a) s.coeffs.add_term(in_z ? MonomialIndex{k, 0} : MonomialIndex{0, k}, GR(pw));
    return s;
}

inline TruncatedSeries factor_series(const InnerFactor& f, long N, bool in_z) {
    TruncatedSeries s;
    s.N = N;
    s.tailBoundBase = f.decay();
    s.normSq = f.c.norm2();
    auto v = f.coefficients(N);
    for (long k = 0; k <= N; ++k) s.coeffs.add_term(in_z ? MonomialIndex{k, 0} : MonomialIndex{0, k}, v[k]);
    return s;
}

// Product of functions of separate variables: norms multiply and so do the truncations.
inline TruncatedSeries separate_product(const TruncatedSeries& x, const TruncatedSeries& y) {
    TruncatedSeries s;
    s.N = x.N;
    s.tailBoundBase = std::max(x.tailBoundBase, y.tailBoundBase);
    s.coeffs = convolve(x.coeffs, y.coeffs, Space::bidisc);
    if (x.normSq && y.normSq) s.normSq = *x.normSq * *y.normSq;
    return s;
}

inline TruncatedSeries monomial_series(long i, long j, long N) {
    TruncatedSeries s;
    s.N = N;
    s.coeffs.add_term({i, j}, GR(1));
    s.normSq = mpq_class(1);
    return s;
}

}  // namespace detail

// Candidates shaped like the classical witnesses for the given data, most specific first,
// tried before the generic monomial family.
inline std::vector<std::pair<std::string, TruncatedSeries>> witness_candidates(const InnerSpec& spec, long N) {
    std::vector<std::pair<std::string, TruncatedSeries>> out;
    auto one = detail::monomial_series(0, 0, N);
    if (spec.kind != InnerSpec::Kind::product) {
        out.emplace_back("1", one);
        return out;
    }
    const auto &t1 = spec.t1, &t2 = spec.t2;
    auto th2 = detail::factor_series(t2, N, false);
    if (t1.kind == InnerFactor::Kind::blaschke) {
        auto ka = detail::kernel_series(t1.a, N, true);
        if (t2.kind == InnerFactor::Kind::blaschke) out.emplace_back("k_a(z)*theta2(w)", detail::separate_product(ka, th2));
        out.emplace_back("k_a(z)", ka);
    }
    if (t1.kind == InnerFactor::Kind::monomial && t2.kind == InnerFactor::Kind::blaschke) {
        long n = t1.power;
        std::string name = n == 1 ? "theta2(w)" : "z^" + std::to_string(n - 1) + "*theta2(w)";
        out.emplace_back(name, detail::separate_product(detail::monomial_series(n - 1, 0, N), th2));
    }
    out.emplace_back("1", one);
    return out;
}

// [Q1 Q2, Q2*] on the truncated quotient: the classical candidates plus P(z^i w^j), i, j <= K.
inline PhiDcReport phi_dc_check(const InnerFactor& theta1, const InnerFactor& theta2, long N, long K = 3, unsigned width = 0) {
    PhiDcReport rep;
    rep.theta1 = theta1.str('z');
    rep.theta2 = theta2.str('w');
    rep.N = N;
    K = std::max<long>(0, std::min(K, N - 3));
    InnerSpec spec = InnerSpec::product(theta1, theta2);
    QuotientModel model(spec, N);
    rep.trivialQuotient = theta1.is_constant() && theta2.is_constant();

    std::vector<std::pair<std::string, TruncatedSeries>> inputs = witness_candidates(spec, N);
    for (long i = 0; i <= K; ++i)
        for (long j = 0; j <= K; ++j)
            inputs.emplace_back("P(" + render(HElement::monomial({i, j}, Space::bidisc)) + ")", detail::monomial_series(i, j, N));

    std::vector<QuotientModel::CommutatorParts> parts(inputs.size());
    std::vector<Tracked> starts(inputs.size());
    parallel_for(0, static_cast<long>(inputs.size()), width, [&](long k) {
        starts[k] = model.project(track(inputs[k].second));
        parts[k] = model.commutator(starts[k]);
    });
    rep.exact = true;
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        auto e = estimate(inputs[k].first, parts[k].defect);
        rep.exact = rep.exact && parts[k].defect.exact();
        rep.maxUpper = std::max(rep.maxUpper, e.upper);
        rep.estimates.push_back(e);
        if (e.nonzero && !rep.witness) {
            PhiDcWitness w;
            w.vector = inputs[k].first;
            auto show = [](const Tracked& t) {
                return t.exact() ? detail::render_truncated(t.value) : detail::render_decimal(t.value) + " (display, error <= " + detail::fmt_g(t.error) + ")";
            };
            w.q1q2q2s = show(parts[k].q1q2q2s);
            w.q2sq1q2 = show(parts[k].q2sq1q2);
            w.defect = show(parts[k].defect);
            w.estimate = e;
            // The defect often equals -Q1 f; record it when the data supports it.
            Tracked q1f = model.q(Letter::z, starts[k]);
            Tracked sum{parts[k].defect.value + q1f.value, add_upper(parts[k].defect.error, q1f.error)};
            auto se = estimate("", sum);
            if (sgn(se.computedNormSq) == 0 || sqrt_lower(se.computedNormSq) <= sum.error)
                w.relation = sum.error == 0.0 ? "defect = -Q1 f exactly" : "defect = -Q1 f within error bound";
            if (parts[k].q1q2q2s.value.is_zero() && parts[k].q1q2q2s.exact()) w.relation += (w.relation.empty() ? "" : "; ") + std::string("Q1 Q2 Q2* f = 0");
            rep.witness = w;
        }
    }
    rep.vectorsChecked = static_cast<long>(inputs.size());
    rep.pass = !rep.witness.has_value();
    return rep;
}

// ---- theta_a family ----

struct ThetaACheck {
    std::string name;
    DefectEstimate estimate;
    bool consistent = false;  // computed defect within its error bound
};

struct ThetaAReport {
    mpq_class a;
    long N = 0;
    mpq_class normSqTruncated;  // |Pi(1 + a theta_a)|^2
    mpq_class normDeficit;      // (1 - a^2) minus the above
    mpq_class maxInnerProduct;  // largest |<b_i, b_j>|^2 over distinct tested basis vectors
    double orthogonalityBound = 0;
    std::vector<ThetaACheck> membership;  // |P b - b| for b in the basis
    std::vector<ThetaACheck> actions;     // Q2 formulas
    std::vector<ThetaACheck> commutators;
    std::vector<ThetaACheck> adjointPlain;      // Q2* b_i = a b_{i+1}
    std::vector<ThetaACheck> adjointWithNorm;   // Q2* b_i = a |b_i|^2 b_{i+1}
    bool plainConvention = false;
    bool normConvention = false;
    bool ok() const {
        auto all = [](const std::vector<ThetaACheck>& v) {
            for (auto& c : v)
                if (!c.consistent) return false;
            return true;
        };
        return all(membership) && all(actions) && all(commutators) && sgn(maxInnerProduct) == 0;
    }
};

inline std::string basis_name(long i, long j) {
    if (i == 0 && j == 0) return "(1+a*theta_a)";
    if (j == 0) return "(1+a*theta_a)*z^" + std::to_string(i);
    return "(1+a*theta_a)*w^" + std::to_string(j);
}

// Ten basis vectors: (1 + a theta_a) z^i for i <= 4 and (1 + a theta_a) w^j for 1 <= j <= 5.
inline std::vector<std::pair<long, long>> theta_a_test_family() {
    std::vector<std::pair<long, long>> v;
    for (long i = 0; i <= 4; ++i) v.emplace_back(i, 0);
    for (long j = 1; j <= 5; ++j) v.emplace_back(0, j);
    return v;
}

inline ThetaAReport theta_a_verify(const mpq_class& a, long N, unsigned width = 0) {
    if (a <= 0 || a >= 1) throw std::invalid_argument("theta_a needs 0 < a < 1");
    if (N < 8) throw std::invalid_argument("theta_a checks need truncation at least 8");
    ThetaAReport rep;
    rep.a = a;
    rep.N = N;
    QuotientModel model(InnerSpec::theta(a), N);
    auto b = [&](long i, long j) { return theta_a_basis_vector(a, i, j, N); };
    auto consistent = [](const std::string& name, const Tracked& d) {
        ThetaACheck c;
        c.name = name;
        c.estimate = estimate(name, d);
        c.consistent = !c.estimate.nonzero;
        return c;
    };

    auto b0 = b(0, 0);
    rep.normSqTruncated = b0.coeffs.norm_squared();
    rep.normDeficit = (1 - a * a) - rep.normSqTruncated;

    auto fam = theta_a_test_family();
    std::vector<TruncatedSeries> vecs;
    for (auto [i, j] : fam) vecs.push_back(b(i, j));
    double maxnorm = sqrt_upper(mpq_class(1 - a * a));
    for (std::size_t x = 0; x < vecs.size(); ++x)
        for (std::size_t y = x + 1; y < vecs.size(); ++y) {
            mpq_class ip = inner_product(vecs[x].coeffs, vecs[y].coeffs).norm2();
            if (ip > rep.maxInnerProduct) rep.maxInnerProduct = ip;
            double bound = add_upper(mul_upper(maxnorm, vecs[x].tail_bound()), mul_upper(maxnorm, vecs[y].tail_bound()));
            rep.orthogonalityBound = std::max(rep.orthogonalityBound, bound);
        }

    std::vector<ThetaACheck> membership(fam.size()), commutators(fam.size());
    parallel_for(0, static_cast<long>(fam.size()), width, [&](long k) {
        Tracked t = track(vecs[k]);
        auto name = basis_name(fam[k].first, fam[k].second);
        membership[k] = consistent(name, model.project(t) - t);
        commutators[k] = consistent(name, model.commutator(t).defect);
    });
    rep.membership = membership;
    rep.commutators = commutators;

    // Q2 b z^i = a b z^(i-1) for i >= 1, and Q2 b w^j = b w^(j+1).
    for (long i = 1; i <= 4; ++i) {
        Tracked lhs = model.q(Letter::w, track(b(i, 0)));
        rep.actions.push_back(consistent("Q2 " + basis_name(i, 0) + " = a*" + basis_name(i - 1, 0),
                                         lhs - GR(a) * track(b(i - 1, 0))));
    }
    for (long j = 0; j <= 4; ++j) {
        Tracked lhs = model.q(Letter::w, track(b(0, j)));
        rep.actions.push_back(consistent("Q2 " + basis_name(0, j) + " = " + basis_name(0, j + 1), lhs - track(b(0, j + 1))));
    }

    // Adjoint convention: which coefficient does Q2* b z^i = c b z^(i+1) carry?
    mpq_class nrm = 1 - a * a;
    rep.plainConvention = rep.normConvention = true;
    for (long i = 0; i <= 3; ++i) {
        Tracked lhs = model.q_adjoint(Letter::w, track(b(i, 0)));
        auto p1 = consistent("Q2* " + basis_name(i, 0) + " = a*" + basis_name(i + 1, 0), lhs - GR(a) * track(b(i + 1, 0)));
        auto p2 = consistent("Q2* " + basis_name(i, 0) + " = a*|.|^2*" + basis_name(i + 1, 0),
                             lhs - GR(a * nrm) * track(b(i + 1, 0)));
        rep.plainConvention = rep.plainConvention && p1.consistent;
        rep.normConvention = rep.normConvention && p2.consistent;
        rep.adjointPlain.push_back(p1);
        rep.adjointWithNorm.push_back(p2);
    }
    return rep;
}

// [Q1 Q2, Q2*] f over the test family at one truncation, for the doubling comparison.
inline std::vector<DefectEstimate> theta_a_commutator_estimates(const mpq_class& a, long N, unsigned width = 0) {
    QuotientModel model(InnerSpec::theta(a), N);
    auto fam = theta_a_test_family();
    std::vector<DefectEstimate> out(fam.size());
    parallel_for(0, static_cast<long>(fam.size()), width, [&](long k) {
        auto name = basis_name(fam[k].first, fam[k].second);
        out[k] = estimate(name, model.commutator(track(theta_a_basis_vector(a, fam[k].first, fam[k].second, N))).defect);
    });
    return out;
}

struct DoublingRow {
    std::string vector;
    mpq_class normSqN, normSq2N;  // exact truncated defects
    double upperN = 0, upper2N = 0;
    bool shrinks = false;  // |D_2N|^2 <= a^(2N) |D_N|^2, exact
};

inline std::vector<DoublingRow> theta_a_doubling(const mpq_class& a, long N, unsigned width = 0) {
    auto e1 = theta_a_commutator_estimates(a, N, width), e2 = theta_a_commutator_estimates(a, 2 * N, width);
    mpq_class factor = 1;
    for (long k = 0; k < 2 * N; ++k) factor *= a;
    std::vector<DoublingRow> out;
    for (std::size_t k = 0; k < e1.size(); ++k) {
        DoublingRow r;
        r.vector = e1[k].vector;
        r.normSqN = e1[k].computedNormSq;
        r.normSq2N = e2[k].computedNormSq;
        r.upperN = e1[k].upper;
        r.upper2N = e2[k].upper;
        r.shrinks = r.normSq2N <= factor * r.normSqN;
        out.push_back(r);
    }
    return out;
}

}  // namespace hm
