#pragma once

#include <gmpxx.h>

#include <cmath>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace hm {

// Exact complex scalar re + im*I with rational parts.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(int v) : re_(v) {}
    GaussianRational(long v) : re_(v) {}
    GaussianRational(mpq_class re) : re_(std::move(re)) { re_.canonicalize(); }
    GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussianRational I() { return {mpq_class(0), mpq_class(1)}; }

    // p/q or integer; throws std::invalid_argument on bad text or zero denominator
    static mpq_class parse_rational(const std::string& text) {
        auto slash = text.find('/');
        auto check = [&](const std::string& s) {
            std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
            if (i >= s.size()) throw std::invalid_argument("bad rational '" + text + "'");
            for (; i < s.size(); ++i)
                if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad rational '" + text + "'");
        };
        auto strip_plus = [](std::string s) { return (!s.empty() && s[0] == '+') ? s.substr(1) : s; };
        if (slash == std::string::npos) {
            check(text);
            return mpq_class(mpz_class(strip_plus(text)));
        }
        std::string num = text.substr(0, slash), den = text.substr(slash + 1);
        check(num);
        check(den);
        mpz_class d(strip_plus(den));
        if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
        mpq_class q(mpz_class(strip_plus(num)), d);
        q.canonicalize();
        return q;
    }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    mpq_class norm2() const { return re_ * re_ + im_ * im_; }

    GaussianRational operator-() const { return {-re_, -im_}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        if (sgn(im_) == 0 && sgn(o.im_) == 0) {
            re_ *= o.re_;
            return *this;
        }
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw std::domain_error("division by zero");
        if (sgn(o.im_) == 0) {
            re_ /= o.re_;
            im_ /= o.re_;
            return *this;
        }
        mpq_class n = o.norm2();
        *this *= o.conj();
        re_ /= n;
        im_ /= n;
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    // "3/4", "-I", "1/2*I", "1/2+3/4*I"
    std::string str() const {
        if (sgn(im_) == 0) return re_.get_str();
        std::string imag;
        if (im_ == 1) imag = "I";
        else if (im_ == -1) imag = "-I";
        else imag = im_.get_str() + "*I";
        if (sgn(re_) == 0) return imag;
        if (imag[0] == '-') return re_.get_str() + imag;
        return re_.get_str() + "+" + imag;
    }

    double real_double() const { return re_.get_d(); }
    double imag_double() const { return im_.get_d(); }

    std::size_t hash() const {
        std::hash<std::string> h;
        return h(re_.get_str()) * 31u + h(im_.get_str());
    }

private:
    mpq_class re_{0};
    mpq_class im_{0};
};

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << g.str(); }

using GR = GaussianRational;

// Rigorous outward-rounded square roots of nonnegative rationals.
inline double sqrt_upper(const mpq_class& x) {
    if (sgn(x) < 0) throw std::domain_error("sqrt of negative");
    if (sgn(x) == 0) return 0.0;
    double d = std::nextafter(x.get_d(), INFINITY);
    return std::nextafter(std::sqrt(d), INFINITY);
}

inline double sqrt_lower(const mpq_class& x) {
    if (sgn(x) <= 0) return 0.0;
    double d = std::nextafter(x.get_d(), 0.0);
    if (d <= 0.0) return 0.0;
    return std::nextafter(std::sqrt(d), 0.0);
}

inline double add_upper(double a, double b) {
    double s = a + b;
    return s == 0.0 ? 0.0 : std::nextafter(s, INFINITY);
}

inline double mul_upper(double a, double b) {
    double s = a * b;
    return s == 0.0 ? 0.0 : std::nextafter(s, INFINITY);
}

}  // namespace hm

template <>
struct std::hash<hm::GaussianRational> {
    std::size_t operator()(const hm::GaussianRational& g) const { return g.hash(); }
};
