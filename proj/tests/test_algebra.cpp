#include <hm/element.hpp>
#include <hm/parse.hpp>

#include <gtest/gtest.h>

#include "generators.hpp"

using namespace hm;

namespace {
HElement el(const std::string& s) { return parse_element(s); }
GR q(long a, long b = 1) { return GR(mpq_class(a, b)); }
}  // namespace

TEST(GaussianRational, ExactArithmetic) {
    GR a(mpq_class(1, 2), mpq_class(3, 4)), b(mpq_class(-2, 3), mpq_class(1));
    EXPECT_EQ((a * b) / b, a);
    EXPECT_EQ(a + b - b, a);
    EXPECT_EQ(GR::I() * GR::I(), GR(-1));
    EXPECT_EQ(a.conj().conj(), a);
    EXPECT_EQ(a.norm2(), mpq_class(13, 16));
    EXPECT_THROW(a / GR(0), std::domain_error);
}

TEST(GaussianRational, Rendering) {
    EXPECT_EQ(GR(mpq_class(1, 2), mpq_class(3, 4)).str(), "1/2+3/4*I");
    EXPECT_EQ((-GR::I()).str(), "-I");
    EXPECT_EQ(GR(mpq_class(0), mpq_class(3, 4)).str(), "3/4*I");
    EXPECT_EQ(GR(mpq_class(-5, 10)).str(), "-1/2");
}

TEST(GaussianRationalProperty, FieldAxioms) {
    gen::Rng rng(21);
    for (int t = 0; t < 300; ++t) {
        GR a = rng.scalar(), b = rng.scalar(), c = rng.scalar();
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
        EXPECT_EQ((a * b).norm2(), a.norm2() * b.norm2());
        if (!b.is_zero()) {
            EXPECT_EQ(a / b * b, a);
        }
    }
}

TEST(InnerProduct, Examples) {
    EXPECT_EQ(inner_product(el("z*w"), el("z*w")), GR(1));
    EXPECT_EQ(inner_product(el("w^-1"), el("w")), GR(0));
    EXPECT_EQ(inner_product(el("z + I*w"), el("z")), GR(1));
    EXPECT_EQ(inner_product(el("z"), el("I*z")), -GR::I());  // conjugate-linear in the second slot
}

TEST(InnerProduct, RejectsMixedSpaces) {
    EXPECT_THROW(inner_product(el("z"), parse_element("z", ParseMode::bidisc)), std::invalid_argument);
}

TEST(InnerProductProperty, SesquilinearAndPositive) {
    gen::Rng rng(22);
    for (int t = 0; t < 200; ++t) {
        HElement u = rng.hartogs_element(8, 5), v = rng.hartogs_element(8, 5), w = rng.hartogs_element(8, 5);
        GR a = rng.scalar();
        EXPECT_EQ(inner_product(a * u + v, w), a * inner_product(u, w) + inner_product(v, w));
        EXPECT_EQ(inner_product(w, a * u), a.conj() * inner_product(w, u));
        EXPECT_EQ(inner_product(u, v), inner_product(v, u).conj());
        GR uu = inner_product(u, u);
        EXPECT_TRUE(uu.is_real());
        EXPECT_GE(uu.re(), 0);
        EXPECT_EQ(uu.re(), u.norm_squared());
        EXPECT_EQ(uu.is_zero(), u.is_zero());
    }
}

TEST(Multiply, Examples) {
    // z * (1/w)(z/w)^i moves (i, -i-1) to (i+1, -i-1)
    for (long i = 0; i < 6; ++i)
        EXPECT_EQ(multiply(parse_poly("z"), HElement::monomial({i, -i - 1})), HElement::monomial({i + 1, -i - 1}));
    EXPECT_EQ(multiply(parse_poly("w"), el("1")), el("w"));
    EXPECT_EQ(multiply(parse_poly("z+w^2"), el("w^-1")), el("z*w^-1 + w"));
}

TEST(MultiplyProperty, DistributesAndShiftsDegree) {
    gen::Rng rng(23);
    for (int t = 0; t < 150; ++t) {
        Multiplier p = Multiplier::polynomial(rng.polynomial(4, 3));
        HElement u = rng.hartogs_element(8, 4), v = rng.hartogs_element(8, 4);
        EXPECT_EQ(multiply(p, u + v), multiply(p, u) + multiply(p, v));
        EXPECT_EQ(multiply(parse_poly("1"), u), u);
        // a monomial multiplier shifts every degree by 2q+n
        auto [mi, mc] = *p.element().terms().begin();
        Multiplier mono = Multiplier::polynomial(HElement::monomial(mi));
        HElement shifted = multiply(mono, u);
        for (auto& [i, c] : shifted.terms()) EXPECT_TRUE(u.coeff(i - mi) == c);
        for (auto& [i, c] : u.terms()) EXPECT_EQ(hartogs_degree(i + mi), hartogs_degree(i) + Multiplier::shift(mi));
    }
}

TEST(Multiplier, ShiftSet) {
    auto p = parse_poly("z*w^5+z^2*w^3+z^3*w^5+z^5*w");
    EXPECT_EQ(p.shift_set(), (std::set<long>{7, 11}));
    EXPECT_EQ(parse_poly("z+w^2").shift_set(), (std::set<long>{2}));
    EXPECT_EQ(parse_poly("w-1/2").shift_set(), (std::set<long>{0, 1}));
}

TEST(Parser, ExamplePolynomial) {
    auto p = parse_poly("z*w^5 + z^2*w^3 + z^3*w^5 + z^5*w");
    EXPECT_EQ(p.element().size(), 4u);
    EXPECT_EQ(p.element().coeff({1, 5}), GR(1));
    EXPECT_EQ(p.element().coeff({5, 1}), GR(1));
    EXPECT_EQ(p.element().coeff({3, 5}), GR(1));
}

TEST(Parser, ZeroAndNegativeExponents) {
    EXPECT_TRUE(parse_poly("0").is_zero());
    EXPECT_EQ(el("w^-1"), HElement::monomial({0, -1}));
    EXPECT_EQ(el("w^(-3)*z^2"), HElement::monomial({2, -3}));
}

TEST(Parser, CoefficientsAndJuxtaposition) {
    EXPECT_EQ(el("3/4*I*z").coeff({1, 0}), GR(mpq_class(0), mpq_class(3, 4)));
    EXPECT_EQ(el("2 z w"), el("2*z*w"));
    EXPECT_EQ(el("(1/2 + I)*w").coeff({0, 1}), GR(mpq_class(1, 2), mpq_class(1)));
    EXPECT_EQ(el("-z + z"), HElement());
    EXPECT_EQ(el("z + z").coeff({1, 0}), q(2));  // duplicates merge
}

TEST(Parser, Errors) {
    EXPECT_THROW(parse_poly("w^-1"), std::exception);
    EXPECT_THROW(parse_element("z^-1"), ParseError);  // outside the Hartogs set
    EXPECT_THROW(parse_element("w^-1", ParseMode::bidisc), ParseError);
    try {
        parse_element("z + * w");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position, 4u);
    }
    EXPECT_THROW(parse_element("z +"), ParseError);
    EXPECT_THROW(parse_element("x"), ParseError);
    EXPECT_THROW(parse_element("1/0"), std::exception);
}

TEST(Parser, RenderRoundTrip) {
    for (const char* s : {"z*w^5 + z^2*w^3 + z^5*w + z^3*w^5", "w^-1", "-1/2 + w", "(1/2+3/4*I)*z - I*w^2", "0", "z^2*w^-3"}) {
        HElement v = el(s);
        EXPECT_EQ(el(render(v)), v) << s;
        EXPECT_EQ(render(el(render(v))), render(v));
    }
}

TEST(ParserProperty, RoundTripRandom) {
    gen::Rng rng(24);
    for (int t = 0; t < 300; ++t) {
        HElement v = rng.hartogs_element(12, 6);
        EXPECT_EQ(el(render(v)), v) << render(v);
        HElement b = rng.bidisc_element(10, 5);
        EXPECT_EQ(parse_element(render(b), ParseMode::bidisc), b);
    }
}
