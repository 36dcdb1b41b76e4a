#include <hm/parse.hpp>
#include <hm/transference.hpp>

#include <gtest/gtest.h>

#include <set>

#include "generators.hpp"

using namespace hm;

namespace {
HElement h(const std::string& s) { return parse_element(s); }
HElement b(const std::string& s) { return parse_element(s, ParseMode::bidisc); }
}  // namespace

TEST(Psi, Examples) {
    EXPECT_EQ(psi(h("w^-1")), b("1"));
    EXPECT_EQ(psi(h("z^2*w^-3")), b("z^2"));
    EXPECT_EQ(psi(h("1")), b("w"));
    EXPECT_EQ(psi_inverse(b("1")), h("w^-1"));
    EXPECT_EQ(psi_inverse(b("z^2")), h("z^2*w^-3"));
    EXPECT_EQ(psi_inverse(b("z*w")), h("z*w^-1"));
}

TEST(Psi, ForwardLandsInQuadrantAndInverts) {
    for (long m = 0; m <= 40; ++m)
        for (auto& e : level_basis(m).entries) {
            auto f = psi_forward(e);
            EXPECT_TRUE(is_bidisc_index(f));
            EXPECT_EQ(psi_backward(f), e);
        }
    for (long a = 0; a <= 30; ++a)
        for (long c = 0; c <= 30; ++c) {
            auto e = psi_backward({a, c});
            EXPECT_TRUE(is_hartogs_index(e));
            EXPECT_EQ(psi_forward(e), (MonomialIndex{a, c}));
        }
}

TEST(Intertwining, SmallLevels) {
    auto r0 = verify_intertwining(0, true);
    EXPECT_EQ(r0.monomials_checked, 1);
    EXPECT_TRUE(r0.ok());
    // psi(z * 1/w) = z w = z w psi(1/w)
    EXPECT_EQ(psi(h("z*w^-1")), b("z*w"));
    auto r1 = verify_intertwining(1);
    EXPECT_EQ(r1.monomials_checked, 3);
    EXPECT_EQ(r1.identities_checked, 6);
    EXPECT_TRUE(r1.ok());
    EXPECT_TRUE(verify_intertwining(25).ok());
}

TEST(PsiProperty, Isometry) {
    gen::Rng rng(41);
    for (int t = 0; t < 300; ++t) {
        HElement u = rng.hartogs_element(20, 6), v = rng.hartogs_element(20, 6);
        EXPECT_EQ(inner_product(psi(u), psi(v)), inner_product(u, v));
        EXPECT_EQ(psi(u).norm_squared(), u.norm_squared());
        EXPECT_EQ(psi_inverse(psi(u)), u);
    }
}

// Hartogs-side closure under (1,0) and (0,1) matches bidisc-side closure under (1,1) and (0,1).
TEST(PsiProperty, SubmoduleClosureCorrespondence) {
    gen::Rng rng(42);
    for (int t = 0; t < 50; ++t) {
        const long H = 14;
        std::set<MonomialIndex> gens;
        for (int k = 0; k < 3; ++k) gens.insert(rng.hartogs_index(6));
        auto close = [&](std::set<MonomialIndex> s, MonomialIndex d1, MonomialIndex d2, auto deg) {
            std::vector<MonomialIndex> work(s.begin(), s.end());
            while (!work.empty()) {
                auto e = work.back();
                work.pop_back();
                for (auto d : {d1, d2}) {
                    auto f = e + d;
                    if (deg(f) <= H && s.insert(f).second) work.push_back(f);
                }
            }
            return s;
        };
        auto hdeg = [](MonomialIndex i) { return lattice_degree(i); };
        auto bdeg = [](MonomialIndex i) { return lattice_degree(psi_backward(i)); };
        auto left = close(gens, {1, 0}, {0, 1}, hdeg);
        std::set<MonomialIndex> img;
        for (auto g : gens) img.insert(psi_forward(g));
        auto right = close(img, {1, 1}, {0, 1}, bdeg);
        std::set<MonomialIndex> mapped;
        for (auto e : left) mapped.insert(psi_forward(e));
        EXPECT_EQ(mapped, right);
    }
}
