#pragma once

#include <optional>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "densitymod/poly.hpp"

namespace densitymod {

// Conformal generators in the stereographic chart; indices are 1-based.
struct GeneratorTag {
    enum Kind { Trans, Rot, Dil, Sconf };
    Kind kind = Dil;
    int i = 0;
    int j = 0;

    static GeneratorTag trans(int i) { return {Trans, i, 0}; }
    static GeneratorTag rot(int i, int j) { return {Rot, i, j}; }
    static GeneratorTag dil() { return {Dil, 0, 0}; }
    static GeneratorTag sconf(int i) { return {Sconf, i, 0}; }

    bool operator==(const GeneratorTag& o) const { return kind == o.kind && i == o.i && j == o.j; }
    bool operator<(const GeneratorTag& o) const {
        return std::tie(kind, i, j) < std::tie(o.kind, o.i, o.j);
    }
};

std::string to_string(const GeneratorTag& t);
// Trans(1..n), Rot(i<j), Dil, Sconf(1..n): a basis of o(n+1,1).
std::vector<GeneratorTag> all_generators(int n);

struct VectorField {
    int n = 0;
    std::vector<MultiPoly> coeffs;  // coefficient of d/ds_i, variable i-1

    bool is_zero() const;
    bool operator==(const VectorField& o) const { return n == o.n && coeffs == o.coeffs; }
    VectorField operator+(const VectorField& o) const;
    VectorField operator*(const GaussianRational& c) const;
    // X(f) = sum X^i df/ds_i
    MultiPoly apply(const MultiPoly& f) const;
};

VectorField generator_field(const GeneratorTag& tag, int n);
MultiPoly divergence(const VectorField& f);
VectorField field_bracket(const VectorField& x, const VectorField& y);
VectorField field_bracket(const GeneratorTag& a, const GeneratorTag& b, int n);
// Coordinates of a polynomial field in the generator basis, or nullopt.
std::optional<std::vector<std::pair<GeneratorTag, GaussianRational>>> express_in_generators(
    const VectorField& f);

// R(s) (1+|s|^2)^(-k-n*lambda) (ds)^lambda
struct ChartDensity {
    int n = 1;
    GaussianRational lambda;
    MultiPoly R;
    int k = 0;

    ChartDensity() : R(1) {}
    ChartDensity(int n_, GaussianRational lam, MultiPoly r, int k_)
        : n(n_), lambda(std::move(lam)), R(std::move(r)), k(k_) {}

    bool is_zero() const { return R.is_zero(); }
};

// 1 + |s|^2 in n variables
MultiPoly chart_weight(int n);

ChartDensity normalize(const ChartDensity& d);
// Equality after cross-multiplying to a common power of the weight.
bool same_density(const ChartDensity& a, const ChartDensity& b);
ChartDensity add(const ChartDensity& a, const ChartDensity& b);
ChartDensity scale(const ChartDensity& a, const GaussianRational& c);

ChartDensity lie_derivative(const VectorField& x, const ChartDensity& d);
ChartDensity lie_derivative(const GeneratorTag& tag, const ChartDensity& d);

}  // namespace densitymod
