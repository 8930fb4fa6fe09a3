#pragma once

#include <complex>
#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace densitymod {

using Rational = mpq_class;

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// "p/q", always with an explicit denominator.
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& s);

// Element of Q(i).
class GaussianRational {
public:
    Rational re, im;

    GaussianRational() = default;
    GaussianRational(long v) : re(v), im(0) {}
    GaussianRational(const Rational& r) : re(r), im(0) {}
    GaussianRational(const Rational& r, const Rational& i) : re(r), im(i) {}
    GaussianRational(long num, long den) : re(num, den), im(0) { re.canonicalize(); }

    static GaussianRational I() { return GaussianRational(Rational(0), Rational(1)); }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    GaussianRational conj() const { return GaussianRational(re, -im); }
    Rational norm2() const { return re * re + im * im; }

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    GaussianRational operator-() const { return GaussianRational(-re, -im); }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

// "p/q" when real, otherwise "p/q+r/s*i" (or "-r/s*i").
std::string to_string(const GaussianRational& z);

// Accepts "p", "p/q", "p/q+r/s*i", "p/q-r/s*i", "r/s*i", "i".
GaussianRational parse_gaussian(const std::string& s);

GaussianRational pow(const GaussianRational& z, unsigned e);

}  // namespace densitymod
