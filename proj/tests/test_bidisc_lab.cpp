#include <hm/bidisc_lab.hpp>
#include <hm/oracle.hpp>

#include <gtest/gtest.h>

#include <cmath>

#include "frozen_values.inc"
#include "generators.hpp"

using namespace hm;

namespace {
InnerFactor zf(const char* s) { return parse_inner_factor(s, 'z'); }
InnerFactor wf(const char* s) { return parse_inner_factor(s, 'w'); }
}  // namespace

TEST(Rounding, DirectedBoundsBracketTheExactValue) {
    gen::Rng rng(71);
    for (int t = 0; t < 200; ++t) {
        mpq_class x(rng.uniform(0, 1000000), rng.uniform(1, 1000000));
        x.canonicalize();
        double lo = sqrt_lower(x), hi = sqrt_upper(x);
        EXPECT_LE(mpq_class(lo) * mpq_class(lo), x);
        EXPECT_GE(mpq_class(hi) * mpq_class(hi), x);
        double a = rng.uniform(1, 1000) / 7.0, b = rng.uniform(1, 1000) / 3.0;
        EXPECT_GE(mpq_class(add_upper(a, b)), mpq_class(a) + mpq_class(b));
        EXPECT_GE(mpq_class(mul_upper(a, b)), mpq_class(a) * mpq_class(b));
    }
}

TEST(Blaschke, SeriesCoefficients) {
    auto s = blaschke_series(mpq_class(1, 2), GR(1), 3);
    for (long k = 0; k <= 3; ++k) EXPECT_EQ(s.coeffs.coeff({k, 0}).str(), frozen::blaschke_half_3[k]) << k;
    auto o = oracle::blaschke_coefficients(mpq_class(1, 2), GR(1), 3);
    for (long k = 0; k <= 3; ++k) EXPECT_EQ(s.coeffs.coeff({k, 0}), o[k]);

    auto z = blaschke_series(mpq_class(0), GR(1), 5);
    EXPECT_EQ(z.coeffs, HElement::monomial({1, 0}, Space::bidisc));
    EXPECT_EQ(z.tail_norm_sq(), 0);

    EXPECT_THROW(blaschke_series(mpq_class(1), GR(1), 3), std::invalid_argument);
    EXPECT_THROW(blaschke_series(mpq_class(-3, 2), GR(1), 3), std::invalid_argument);
}

TEST(BlaschkeProperty, LongDivisionOracleAndTailMass) {
    gen::Rng rng(72);
    for (int t = 0; t < 20; ++t) {
        mpq_class a(rng.uniform(-9, 9), 10);
        long N = rng.uniform(1, 12);
        GR c = rng.coin() ? GR(1) : GR::I();
        auto s = blaschke_series(a, c, N);
        auto o = oracle::blaschke_coefficients(a, c, N);
        for (long k = 0; k <= N; ++k) EXPECT_EQ(s.coeffs.coeff({k, 0}), o[k]);
        // inner, so the full series has norm 1 and the truncation loses a nonnegative amount
        EXPECT_GE(s.tail_norm_sq(), 0);
    }
}

TEST(ThetaA, SeriesAndNormDeficit) {
    auto s = theta_a_series(mpq_class(1, 2), 4);
    EXPECT_EQ(s.coeffs.coeff({0, 0}).str(), "-1/2");
    EXPECT_EQ(s.coeffs.coeff({1, 1}).str(), "3/4");
    EXPECT_EQ(s.coeffs.coeff({2, 2}).str(), "3/8");
    EXPECT_TRUE(s.coeffs.coeff({1, 0}).is_zero());
    EXPECT_THROW(theta_a_series(mpq_class(0), 4), std::invalid_argument);

    auto r = theta_a_verify(mpq_class(1, 2), 20);
    EXPECT_EQ(r.normDeficit.get_str(), frozen::theta_half_deficit_20);
    EXPECT_LE(r.normDeficit, mpq_class(1) / (mpq_class(1) << 38));
    EXPECT_EQ(theta_a_verify(mpq_class(1, 2), 24).normDeficit.get_str(), frozen::theta_half_deficit_24);
}

TEST(Projection, Examples) {
    // quotient by z*w: 1 stays put
    auto one = quotient_projection(InnerSpec::product(zf("z"), wf("w")), detail::monomial_series(0, 0, 8));
    EXPECT_TRUE(one.exact());
    EXPECT_EQ(one.value, HElement::monomial({0, 0}, Space::bidisc));
    // quotient by z^2: z^3 is removed
    auto z3 = quotient_projection(InnerSpec::product(zf("z^2"), wf("1")), detail::monomial_series(3, 0, 8));
    EXPECT_TRUE(z3.exact());
    EXPECT_TRUE(z3.value.is_zero());
    // theta_a basis vectors already lie in the quotient, up to the truncation error
    auto b = theta_a_basis_vector(mpq_class(1, 2), 1, 0, 20);
    auto pb = quotient_projection(InnerSpec::theta(mpq_class(1, 2)), b);
    auto d = estimate("", pb - track(b));
    EXPECT_FALSE(d.nonzero);
    EXPECT_LT(d.upper, 1e-5);
}

TEST(ProjectionProperty, IdempotentAndSelfAdjointOnExactData) {
    gen::Rng rng(73);
    const char* t1s[] = {"1", "z", "z^2", "I:z^3"};
    const char* t2s[] = {"1", "w", "-1:w^2"};
    for (int t = 0; t < 30; ++t) {
        InnerSpec spec = InnerSpec::product(zf(t1s[rng.uniform(0, 3)]), wf(t2s[rng.uniform(0, 2)]));
        QuotientModel m(spec, 6);
        HElement u = rng.bidisc_element(6, 4), v = rng.bidisc_element(6, 4);
        auto pu = m.project({u, 0.0}), pv = m.project({v, 0.0});
        ASSERT_TRUE(pu.exact());
        EXPECT_EQ(m.project(pu).value, pu.value);
        EXPECT_EQ(inner_product(pu.value, v), inner_product(u, pv.value));
    }
}

TEST(PhiDc, MonomialDataIsExact) {
    for (const char* a : {"1", "z", "z^2", "z^3"})
        for (const char* b : {"1", "w", "w^2"}) {
            auto r = phi_dc_check(zf(a), wf(b), 10);
            EXPECT_TRUE(r.exact) << a << " " << b;
        }
}

TEST(PhiDc, Cases) {
    auto zw = phi_dc_check(zf("z"), wf("w"), 16);
    EXPECT_TRUE(zw.pass);
    EXPECT_FALSE(zw.witness.has_value());

    auto triv = phi_dc_check(zf("1"), wf("1"), 8);
    EXPECT_TRUE(triv.trivialQuotient);
    EXPECT_TRUE(triv.pass);

    auto z2 = phi_dc_check(zf("z^2"), wf("1"), 16);
    EXPECT_FALSE(z2.pass);
    ASSERT_TRUE(z2.witness);
    EXPECT_EQ(z2.witness->vector, "1");
    EXPECT_TRUE(z2.witness->estimate.nonzero);

    auto fz = phi_dc_check(zf("blaschke(1/2)"), wf("1"), 20);
    EXPECT_FALSE(fz.pass);
    ASSERT_TRUE(fz.witness);
    EXPECT_EQ(fz.witness->vector, "k_a(z)");
    EXPECT_EQ(fz.witness->relation.rfind("defect = -Q1 f", 0), 0u);

    auto zf_ = phi_dc_check(zf("z"), wf("blaschke(1/2)"), 20);
    ASSERT_TRUE(zf_.witness);
    EXPECT_EQ(zf_.witness->vector, "theta2(w)");

    auto fw = phi_dc_check(zf("1"), wf("blaschke(1/2)"), 24);
    EXPECT_TRUE(fw.pass);
    EXPECT_FALSE(fw.exact);
    EXPECT_LE(fw.maxUpper, std::ldexp(1.0, -16));
}

TEST(PhiDc, InnerFactorParsing) {
    EXPECT_EQ(zf("w^2").power, 2);  // position decides the variable
    EXPECT_EQ(zf("I:z").c, GR::I());
    EXPECT_EQ(zf("blaschke(0)").kind, InnerFactor::Kind::monomial);
    EXPECT_EQ(zf("z^0").kind, InnerFactor::Kind::constant);
    EXPECT_THROW(zf("2"), std::invalid_argument);
    EXPECT_THROW(zf("blaschke(1)"), std::invalid_argument);
    EXPECT_THROW(zf("2:z"), std::invalid_argument);
    EXPECT_THROW(zf("z^-1"), std::invalid_argument);
}

TEST(OneVariableQuotient, BlaschkeRankIsOne) {
    for (long N : {4L, 8L, 12L}) EXPECT_EQ(truncated_quotient_rank(wf("blaschke(1/3)"), N), 1) << N;
    EXPECT_EQ(truncated_quotient_rank(wf("w^3"), 8), 3);
    EXPECT_EQ(truncated_quotient_rank(wf("1"), 8), 0);
}

TEST(ThetaA, AdjointConventionAndCommutators) {
    auto r = theta_a_verify(mpq_class(1, 2), 24);
    EXPECT_TRUE(r.ok());
    EXPECT_TRUE(r.plainConvention);
    EXPECT_FALSE(r.normConvention);
    EXPECT_EQ(r.commutators.size(), 10u);

    auto third = theta_a_verify(mpq_class(1, 3), 16);
    EXPECT_TRUE(third.ok());
    for (auto& c : third.commutators) EXPECT_TRUE(c.consistent) << c.name;
}

TEST(ThetaA, DoublingShrinks) {
    for (auto& row : theta_a_doubling(mpq_class(1, 2), 12)) {
        EXPECT_TRUE(row.shrinks) << row.vector;
        EXPECT_LE(row.upper2N, row.upperN) << row.vector;
    }
}

TEST(Witnesses, CandidateOrder) {
    auto names = [](const InnerSpec& s) {
        std::vector<std::string> v;
        for (auto& [n, _] : witness_candidates(s, 8)) v.push_back(n);
        return v;
    };
    EXPECT_EQ(names(InnerSpec::product(zf("blaschke(1/2)"), wf("blaschke(1/3)"))),
              (std::vector<std::string>{"k_a(z)*theta2(w)", "k_a(z)", "1"}));
    EXPECT_EQ(names(InnerSpec::product(zf("z^2"), wf("blaschke(1/3)"))), (std::vector<std::string>{"z^1*theta2(w)", "1"}));
    EXPECT_EQ(names(InnerSpec::theta(mpq_class(1, 2))), (std::vector<std::string>{"1"}));
}
