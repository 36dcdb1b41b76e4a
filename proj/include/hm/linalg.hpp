#pragma once

#include <hm/gaussian_rational.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace hm {

// Dense row-major matrix over the Gaussian rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = GR(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    GR& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const GR& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_zero() const {
        for (auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    std::vector<GR> column(std::size_t j) const {
        std::vector<GR> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    Matrix conjugate_transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j).conj();
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shapes do not compose");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const GR& x = a(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero()) c(i, j) += x * b(k, j);
            }
        return c;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shapes differ");
        Matrix c = a;
        for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
        return c;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shapes differ");
        Matrix c = a;
        for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    std::vector<GR> apply(const std::vector<GR>& x) const {
        if (x.size() != cols_) throw std::invalid_argument("vector length mismatch");
        std::vector<GR> y(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!x[j].is_zero() && !(*this)(i, j).is_zero()) y[i] += (*this)(i, j) * x[j];
        return y;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<GR> a_;
};

// In-place reduced row echelon form; returns pivot columns in order.
inline std::vector<std::size_t> rref(Matrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        GR inv = GR(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            if (!m(r, j).is_zero()) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            GR f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(Matrix m) { return rref(m).size(); }

// Basis of {x : m x = 0}, returned as the rows of a matrix in reduced echelon form.
inline Matrix nullspace(const Matrix& m) {
    Matrix a = m;
    auto piv = rref(a);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free.push_back(c);
    Matrix basis(free.size(), m.cols());
    for (std::size_t k = 0; k < free.size(); ++k) {
        basis(k, free[k]) = GR(1);
        for (std::size_t r = 0; r < piv.size(); ++r) basis(k, piv[r]) = -a(r, free[k]);
    }
    rref(basis);
    return basis;
}

// Solves a x = b for square nonsingular a.
inline std::vector<GR> solve(const Matrix& a, const std::vector<GR>& b) {
    std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve: shape mismatch");
    Matrix aug(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    auto piv = rref(aug);
    if (piv.size() != n || (n > 0 && piv.back() != n - 1)) throw std::domain_error("singular system");
    std::vector<GR> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = aug(i, n);
    return x;
}

inline Matrix inverse(const Matrix& a) {
    std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("inverse of non-square matrix");
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = GR(1);
    }
    auto piv = rref(aug);
    if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1)) throw std::domain_error("singular matrix");
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

inline std::string matrix_str(const Matrix& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += i ? "; " : "";
        for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + m(i, j).str();
    }
    return s + "]";
}

}  // namespace hm
