#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "densitymod/chart.hpp"
#include "densitymod/linalg.hpp"

namespace densitymod {

struct HarmonicElement {
    int m = 0;
    MultiPoly P;
};

// Basis of the harmonic homogeneous polynomials of degree m in nvars variables.
// nvars = 2 gives (x0 + i x1)^m, (x0 - i x1)^m. Otherwise the basis is the
// Gegenbauer/Gelfand-Tsetlin one, which is real and L2-orthogonal.
std::vector<HarmonicElement> harmonic_basis(int nvars, int m);
// dim of the degree-m harmonic space in nvars variables, from binomials
long harmonic_dimension(int nvars, int m);

// Harmonic component of a homogeneous P.
MultiPoly harmonic_projection(const MultiPoly& P);

struct GaussComponent {
    int j;  // power of |x|^2
    HarmonicElement h;
};
// P = sum_j |x|^(2j) H_j with H_j harmonic; zero components are omitted.
std::vector<GaussComponent> gauss_decompose(const MultiPoly& P);

// Stereographic numerators (1 - |s|^2, 2 s_1, ..., 2 s_n) over the common denominator 1 + |s|^2.
std::vector<MultiPoly> stereo_numerators(int n);

ChartDensity chart_embed(const HarmonicElement& h, const GaussianRational& lambda);
ChartDensity psi_element(int i, int l, int n, const GaussianRational& lambda);

// A polynomial in x0..xn whose restriction to the sphere is R / (1+|s|^2)^k.
MultiPoly lift_to_sphere(const ChartDensity& d);
// Degree -> harmonic piece of the restriction of G to the sphere.
std::map<int, MultiPoly> harmonic_components(const MultiPoly& G);

struct NotInSpan : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BasisElement {
    int label = 0;  // degree, or signed index when n = 1
    int slot = 0;
    HarmonicElement source;
    ChartDensity image;
    GaussianRational fischer_norm;  // sum alpha! |c_alpha|^2
};

class GradedBasis {
public:
    GradedBasis() = default;
    GradedBasis(int n, int D, const GaussianRational& lambda);

    int n() const { return n_; }
    int cap() const { return D_; }
    const GaussianRational& lambda() const { return lambda_; }
    // sorted labels: 0..D, or -D..D for n = 1
    const std::vector<int>& labels() const { return labels_; }
    const std::vector<BasisElement>& at(int label) const { return elems_.at(label); }
    bool has(int label) const { return elems_.count(label) != 0; }
    int dim(int label) const { return has(label) ? int(elems_.at(label).size()) : 0; }
    int degree_of(int label) const { return label < 0 ? -label : label; }
    int total_dimension() const;
    // labels carrying a given harmonic degree
    std::vector<int> labels_of_degree(int m) const;

private:
    int n_ = 0, D_ = 0;
    GaussianRational lambda_;
    std::vector<int> labels_;
    std::map<int, std::vector<BasisElement>> elems_;
};

using Coefficients = std::map<int, Vector>;

// Exact coordinates of d in the chart images of the basis. Throws NotInSpan
// when d has a component above the cap or outside the harmonic span.
Coefficients chart_decompose(const ChartDensity& d, const GradedBasis& basis);

// Normalized integral of x^alpha over S^n, alpha of length n+1.
Rational sphere_monomial_integral(const std::vector<int>& alpha, int n);
// Normalized L2 pairing of P and conj(Q) on S^n through exact moments.
GaussianRational sphere_inner_product(const MultiPoly& P, const MultiPoly& Q);
// sum alpha! P_alpha conj(Q_alpha)
GaussianRational fischer_product(const MultiPoly& P, const MultiPoly& Q);

enum class GramMethod { Moments, Fischer };
// G_ij = int P_i conj(P_j) dsigma over the elements with this label.
Matrix gram_matrix(int label, const GradedBasis& basis, GramMethod method = GramMethod::Fischer);

// Max discrepancy between the projective-coordinate lift and the stereographic
// chart image, compared through the explicit change of chart. Points are on
// the sphere (x0..xn) and must have x0 > 0.
double projective_lift_check(const HarmonicElement& h, const GaussianRational& lambda,
                             const std::vector<std::vector<double>>& points);

}  // namespace densitymod
