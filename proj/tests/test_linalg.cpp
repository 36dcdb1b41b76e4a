#include <hm/linalg.hpp>
#include <hm/oracle.hpp>

#include <gtest/gtest.h>

#include "generators.hpp"

using namespace hm;

namespace {
Matrix random_matrix(gen::Rng& rng, std::size_t r, std::size_t c, int zero_bias = 2) {
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (rng.uniform(0, zero_bias) == 0) m(i, j) = rng.scalar();
    return m;
}
}  // namespace

TEST(Linalg, RrefOfKnownMatrix) {
    Matrix m(2, 3);
    m(0, 0) = GR(2); m(0, 1) = GR(4); m(0, 2) = GR(6);
    m(1, 0) = GR(1); m(1, 1) = GR(2); m(1, 2) = GR(4);
    auto piv = rref(m);
    EXPECT_EQ(piv, (std::vector<std::size_t>{0, 2}));
    EXPECT_EQ(m(0, 1), GR(2));
    EXPECT_EQ(m(0, 2), GR(0));
    EXPECT_EQ(m(1, 2), GR(1));
}

TEST(Linalg, SingularInverseThrows) {
    Matrix m(2, 2);
    m(0, 0) = GR(1); m(0, 1) = GR(2);
    m(1, 0) = GR(2); m(1, 1) = GR(4);
    EXPECT_THROW(inverse(m), std::domain_error);
}

TEST(LinalgProperty, NullspaceIsKernelAndRankNullity) {
    gen::Rng rng(31);
    for (int t = 0; t < 120; ++t) {
        std::size_t r = rng.uniform(1, 6), c = rng.uniform(1, 7);
        Matrix m = random_matrix(rng, r, c);
        Matrix n = nullspace(m);
        EXPECT_EQ(rank(m) + n.rows(), c);
        EXPECT_EQ(rank(n), n.rows());
        for (std::size_t k = 0; k < n.rows(); ++k) {
            std::vector<GR> v(c);
            for (std::size_t j = 0; j < c; ++j) v[j] = n(k, j);
            for (auto& y : m.apply(v)) EXPECT_TRUE(y.is_zero());
        }
    }
}

TEST(LinalgProperty, RankMatchesOracleElimination) {
    gen::Rng rng(32);
    for (int t = 0; t < 150; ++t) {
        std::size_t r = rng.uniform(1, 6), c = rng.uniform(1, 6);
        Matrix m = random_matrix(rng, r, c, 3);
        std::vector<std::vector<GR>> rows(r, std::vector<GR>(c));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) rows[i][j] = m(i, j);
        EXPECT_EQ(static_cast<long>(rank(m)), oracle::rank(rows));
    }
}

TEST(LinalgProperty, InverseAndSolve) {
    gen::Rng rng(33);
    int tested = 0;
    for (int t = 0; t < 200 && tested < 60; ++t) {
        std::size_t n = rng.uniform(1, 5);
        Matrix a = random_matrix(rng, n, n, 1);
        if (rank(a) != n) continue;
        ++tested;
        Matrix inv = inverse(a);
        EXPECT_EQ(a * inv, Matrix::identity(n));
        std::vector<GR> b(n);
        for (auto& x : b) x = rng.scalar();
        EXPECT_EQ(a.apply(solve(a, b)), b);
    }
    EXPECT_GE(tested, 30);
}

TEST(LinalgProperty, ConjugateTransposeReversesProducts) {
    gen::Rng rng(34);
    for (int t = 0; t < 80; ++t) {
        Matrix a = random_matrix(rng, 3, 4), b = random_matrix(rng, 4, 2);
        EXPECT_EQ((a * b).conjugate_transpose(), b.conjugate_transpose() * a.conjugate_transpose());
        EXPECT_EQ(a.conjugate_transpose().conjugate_transpose(), a);
    }
}
