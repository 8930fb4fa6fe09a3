#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "densitymod/scalar.hpp"

namespace densitymod {

constexpr int kMaxVars = 8;

// Exponent vectors are packed one byte per variable, variable 0 in the most
// significant byte, so integer order on keys is lexicographic order.
namespace mono {
inline unsigned exp(uint64_t key, int i) { return unsigned(key >> (8 * (7 - i))) & 0xffu; }
inline uint64_t unit(int i) { return uint64_t(1) << (8 * (7 - i)); }
inline unsigned degree(uint64_t key) {
    unsigned d = 0;
    for (int i = 0; i < kMaxVars; ++i) d += exp(key, i);
    return d;
}
uint64_t pack(const std::vector<int>& exps);
std::vector<int> unpack(uint64_t key, int nvars);
// Graded lexicographic order.
inline bool grlex_less(uint64_t a, uint64_t b) {
    unsigned da = degree(a), db = degree(b);
    return da != db ? da < db : a < b;
}
}  // namespace mono

// Sparse polynomial over Q(i) in nvars <= 8 variables. Terms are kept sorted
// in decreasing graded-lex order with no zero coefficients.
class MultiPoly {
public:
    struct Term {
        uint64_t key;
        GaussianRational coeff;
    };

    explicit MultiPoly(int nvars = 0);

    static MultiPoly constant(int nvars, const GaussianRational& c);
    static MultiPoly variable(int nvars, int i);
    static MultiPoly monomial(int nvars, const std::vector<int>& exps, const GaussianRational& c = 1);
    // sum of x_i^2 over all variables, plus c
    static MultiPoly quadric(int nvars, const GaussianRational& c = 0);
    // Builds from unsorted terms, merging duplicates and dropping zeros.
    static MultiPoly from_terms(int nvars, std::vector<Term> terms);

    int nvars() const { return nvars_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    // -1 for the zero polynomial
    int degree() const;
    // true with *deg set when every term has the same total degree (zero counts, deg = -1)
    bool is_homogeneous(int* deg = nullptr) const;
    GaussianRational coeff(const std::vector<int>& exps) const;
    GaussianRational coeff_key(uint64_t key) const;

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const GaussianRational& c);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const GaussianRational& c) { return a *= c; }
    friend MultiPoly operator*(const GaussianRational& c, MultiPoly a) { return a *= c; }
    MultiPoly operator-() const;
    friend bool operator==(const MultiPoly& a, const MultiPoly& b);
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    // multiply by a single monomial
    MultiPoly shifted(uint64_t key, const GaussianRational& c) const;
    MultiPoly conj() const;

    std::complex<double> eval(const std::vector<std::complex<double>>& x) const;
    std::complex<double> eval(const std::vector<double>& x) const;

    // Canonical text: "[coeff*x0^a*x1^b, ...]" in decreasing graded-lex order.
    std::string to_string(const std::string& var = "x") const;

private:
    int nvars_;
    std::vector<Term> terms_;
    friend MultiPoly poly_arith_merge(const MultiPoly&, const MultiPoly&, bool);
};

enum class ArithOp { Add, Mul, Scale };
// For Scale, q must be a constant; its nvars is not checked.
MultiPoly poly_arith(const MultiPoly& p, const MultiPoly& q, ArithOp op);

MultiPoly diff(const MultiPoly& p, int i);
MultiPoly laplacian(const MultiPoly& p);
MultiPoly pow(const MultiPoly& p, unsigned e);
MultiPoly homogeneous_part(const MultiPoly& p, int d);
// Sum_i x_i dp/dx_i
MultiPoly euler(const MultiPoly& p);

// denom^m * p(numerators / denom) for p homogeneous of degree m.
MultiPoly homogeneous_subst(const MultiPoly& p, const std::vector<MultiPoly>& numerators,
                            const MultiPoly& denom);
// Plain substitution x_i -> args[i].
MultiPoly substitute(const MultiPoly& p, const std::vector<MultiPoly>& args);

// Exact quotient p / (c + sum x_i^2), or nullopt when it does not divide.
std::optional<MultiPoly> divide_by_quadric(const MultiPoly& p, const GaussianRational& c);

// Re-embed into a ring with more variables, variable i -> i + offset.
MultiPoly embed(const MultiPoly& p, int nvars, int offset);

}  // namespace densitymod
