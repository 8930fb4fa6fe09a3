#include "densitymod/scalar.hpp"

#include <regex>

namespace densitymod {

std::string to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
    static const std::regex re(R"(^\s*([+-]?\d+)(?:/(\d+))?\s*$)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw ParseError("bad rational literal: '" + s + "'");
    mpz_class num(m[1].str()[0] == '+' ? m[1].str().substr(1) : m[1].str());
    mpz_class den(m[2].matched ? m[2].str() : std::string("1"));
    if (den == 0) throw ParseError("zero denominator in '" + s + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re += o.re;
    if (sgn(o.im) != 0) im += o.im;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re -= o.re;
    if (sgn(o.im) != 0) im -= o.im;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (sgn(im) == 0 && sgn(o.im) == 0) {
        re *= o.re;
        return *this;
    }
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero in Q(i)");
    if (sgn(o.im) == 0) {
        re /= o.re;
        if (sgn(im) != 0) im /= o.re;
        return *this;
    }
    Rational d = o.norm2();
    Rational r = (re * o.re + im * o.im) / d;
    Rational i = (im * o.re - re * o.im) / d;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

std::string to_string(const GaussianRational& z) {
    if (z.is_real()) return to_string(z.re);
    std::string s = to_string(z.re);
    if (sgn(z.im) > 0) s += "+";
    return s + to_string(z.im) + "*i";
}

GaussianRational parse_gaussian(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParseError("empty literal");

    static const std::regex full(R"(^([+-]?\d+(?:/\d+)?)(?:([+-])(\d+(?:/\d+)?)?\*?i)?$)");
    static const std::regex imag_only(R"(^([+-]?)(\d+(?:/\d+)?)?\*?i$)");
    std::smatch m;
    if (std::regex_match(s, m, full)) {
        Rational re = parse_rational(m[1].str());
        Rational im = 0;
        if (m[2].matched) {
            im = m[3].matched ? parse_rational(m[3].str()) : Rational(1);
            if (m[2].str() == "-") im = -im;
        }
        return {re, im};
    }
    if (std::regex_match(s, m, imag_only)) {
        Rational im = m[2].matched ? parse_rational(m[2].str()) : Rational(1);
        if (m[1].str() == "-") im = -im;
        return {Rational(0), im};
    }
    throw ParseError("bad Gaussian rational literal: '" + text + "'");
}

GaussianRational pow(const GaussianRational& z, unsigned e) {
    GaussianRational r(1), b = z;
    while (e) {
        if (e & 1u) r *= b;
        e >>= 1u;
        if (e) b *= b;
    }
    return r;
}

}  // namespace densitymod
