#pragma once

#include <hm/element.hpp>

#include <cctype>
#include <stdexcept>
#include <string>

namespace hm {

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

enum class ParseMode { polynomial, hartogs, bidisc };

namespace detail {

// sum    := ['+'|'-'] term (('+'|'-') term)*
// term   := factor (['*'] factor)*
// factor := rational | 'I' | ('z'|'w') ['^' int] | '(' constant sum ')'
class Parser {
public:
    Parser(const std::string& text, ParseMode mode) : s_(text), mode_(mode) {}

    HElement run() {
        skip();
        HElement r = sum();
        skip();
        if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return r;
    }

private:
    Space space() const { return mode_ == ParseMode::bidisc ? Space::bidisc : Space::hartogs; }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    HElement sum() {
        HElement acc(space());
        bool first = true;
        for (;;) {
            skip();
            GR sign(1);
            if (peek('+') || peek('-')) {
                if (s_[pos_] == '-') sign = GR(-1);
                ++pos_;
            } else if (!first) {
                break;
            }
            if (pos_ >= s_.size()) throw ParseError("expected a term", pos_);
            acc += sign * term();
            first = false;
        }
        return acc;
    }

    bool factor_start() {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == 'I' || c == 'z' || c == 'w' || c == '(';
    }

    HElement term() {
        GR coef(1);
        MonomialIndex exp{0, 0};
        if (!factor_start()) throw ParseError("expected a factor", pos_);
        factor(coef, exp);
        for (;;) {
            if (peek('*')) {
                ++pos_;
                if (!factor_start()) throw ParseError("expected a factor after '*'", pos_);
                factor(coef, exp);
            } else if (factor_start()) {
                factor(coef, exp);
            } else {
                break;
            }
        }
        if (mode_ == ParseMode::polynomial && (exp.alpha1 < 0 || exp.alpha2 < 0))
            throw ParseError("negative exponent in polynomial mode", pos_);
        if (!in_space(exp, space()))
            throw ParseError("monomial " + exp.str() + " outside the " + space_name(space()) + " index set", pos_);
        return HElement::monomial(exp, space(), coef);
    }

    long integer_exponent() {
        skip();
        bool paren = false;
        if (peek('(')) {
            paren = true;
            ++pos_;
        }
        skip();
        std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        std::size_t digits = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == digits) throw ParseError("expected an integer exponent", start);
        long v = std::stol(s_.substr(start, pos_ - start));
        if (paren) {
            if (!peek(')')) throw ParseError("expected ')'", pos_);
            ++pos_;
        }
        return v;
    }

    void factor(GR& coef, MonomialIndex& exp) {
        skip();
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string num = s_.substr(start, pos_ - start);
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                std::size_t ds = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                if (ds == pos_) throw ParseError("expected a denominator", ds);
                std::string den = s_.substr(ds, pos_ - ds);
                if (mpz_class(den) == 0) throw ParseError("zero denominator", ds);
                num += "/" + den;
            }
            coef *= GR(GR::parse_rational(num));
        } else if (c == 'I') {
            ++pos_;
            coef *= GR::I();
        } else if (c == 'z' || c == 'w') {
            ++pos_;
            long e = 1;
            if (peek('^')) {
                ++pos_;
                e = integer_exponent();
            }
            (c == 'z' ? exp.alpha1 : exp.alpha2) += e;
        } else if (c == '(') {
            std::size_t open = pos_++;
            HElement inner = sum();
            if (!peek(')')) throw ParseError("expected ')'", pos_);
            ++pos_;
            if (inner.is_zero()) {
                coef = GR(0);
                return;
            }
            auto it = inner.terms().begin();
            if (inner.size() != 1 || it->first != MonomialIndex{0, 0})
                throw ParseError("parentheses may only hold a constant coefficient", open);
            coef *= it->second;
        } else {
            throw ParseError(std::string("unexpected '") + c + "'", pos_);
        }
    }

    const std::string& s_;
    ParseMode mode_;
    std::size_t pos_ = 0;
};

}  // namespace detail

// Parses a whitespace-insensitive sum of terms such as "z*w^5 - 1/2*I*z^2 + w^-1".
inline HElement parse_element(const std::string& text, ParseMode mode = ParseMode::hartogs) {
    return detail::Parser(text, mode).run();
}

inline Multiplier parse_poly(const std::string& text) {
    return Multiplier::polynomial(detail::Parser(text, ParseMode::polynomial).run());
}

// Canonical text: terms in canonical order, "c*z^a*w^b", rationals as p/q, imaginary unit I.
inline std::string render(const HElement& v) {
    if (v.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto& [i, c] : v.terms()) {
        std::string mono;
        auto var = [&](char name, long e) {
            if (e == 0) return;
            if (!mono.empty()) mono += "*";
            mono += name;
            if (e != 1) mono += "^" + std::to_string(e);
        };
        var('z', i.alpha1);
        var('w', i.alpha2);

        bool negative = false;
        std::string coef;
        if (c.is_real()) {
            negative = sgn(c.re()) < 0;
            mpq_class a = abs(c.re());
            if (a != 1 || mono.empty()) coef = a.get_str();
        } else if (sgn(c.re()) == 0) {
            negative = sgn(c.im()) < 0;
            mpq_class a = abs(c.im());
            coef = a == 1 ? "I" : a.get_str() + "*I";
        } else {
            coef = "(" + c.str() + ")";
        }
        std::string t = coef;
        if (!mono.empty()) t = coef.empty() ? mono : coef + "*" + mono;
        if (first) out += negative ? "-" + t : t;
        else out += negative ? " - " + t : " + " + t;
        first = false;
    }
    return out;
}

inline std::string render(const Multiplier& p) { return render(p.element()); }

}  // namespace hm
