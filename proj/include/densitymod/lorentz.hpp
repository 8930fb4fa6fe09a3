#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "densitymod/poly.hpp"

namespace densitymod {

using Complex = std::complex<double>;
// Spherical coordinates theta_1..theta_n; theta_1 is the azimuth.
using Angles = std::vector<double>;
using SphereFunction = std::function<Complex(const Angles&)>;

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr double kAngleGuard = 1e-6;

// Matrices are (n+2)x(n+2) with the Lorentz form J = diag(1,...,1,-1).
Eigen::MatrixXd lorentz_form(int n);
Eigen::MatrixXd h_matrix(int n, double t);
Eigen::MatrixXd n_matrix(const Eigen::VectorXd& a);
Eigen::MatrixXd k_embed(const Eigen::MatrixXd& R);
Eigen::MatrixXd lorentz_inverse(const Eigen::MatrixXd& g);

// Throws ValidationError unless g^T J g = J, det g = 1 and g_{n+2,n+2} >= 1.
void validate_lorentz(const Eigen::MatrixXd& g);
bool is_lorentz(const Eigen::MatrixXd& g);

struct AlgebraTag {
    enum Kind { H, Ni, Kij };
    Kind kind = H;
    int i = 0;
    int j = 0;
    static AlgebraTag h() { return {H, 0, 0}; }
    static AlgebraTag ni(int i) { return {Ni, i, 0}; }
    static AlgebraTag kij(int i, int j) { return {Kij, i, j}; }
};
std::string to_string(const AlgebraTag& t);
Eigen::MatrixXd lie_generator_matrix(int n, const AlgebraTag& tag);

struct IwasawaFactors {
    Eigen::MatrixXd k;  // (n+1)x(n+1)
    double t = 0;
    Eigen::VectorXd a;
    double residual = 0;  // max-norm of k h(t) n(a) - g
};
IwasawaFactors iwasawa(const Eigen::MatrixXd& g);
Eigen::MatrixXd reconstruct(const IwasawaFactors& f);

// Cartesian point (x_0..x_n) of the angles and its derivative matrix d x / d theta.
Eigen::VectorXd sphere_point(const Angles& theta);
Eigen::MatrixXd sphere_jacobian(const Angles& theta);
// Inverse of sphere_point; theta_1 in [0, 2pi). Throws std::domain_error when
// some theta_j, j >= 2, comes within the guard of 0 or pi.
Angles angles_from_point(const Eigen::VectorXd& p, double guard = kAngleGuard);
void validate_angles(const Angles& theta, double guard = kAngleGuard);

// k_1 k_2 ... k_n embedded in the Lorentz group; its column n+1 is sphere_point(theta).
Eigen::MatrixXd k_from_angles(const Angles& theta);
Angles angles_from_k(const Eigen::MatrixXd& k, double guard = kAngleGuard);

// Polynomial in x_0..x_n restricted to the sphere.
class TestFunction {
public:
    explicit TestFunction(MultiPoly p);
    int n() const { return n_; }
    const MultiPoly& poly() const { return p_; }
    Complex operator()(const Angles& theta) const;
    std::vector<Complex> gradient(const Angles& theta) const;

private:
    int n_;
    MultiPoly p_;
    std::vector<MultiPoly> dp_;
};

// (I_nu(g) f)(theta) for g = h(t), g = n(a), and general g.
Complex induced_A(Complex nu, double t, const SphereFunction& f, const Angles& theta);
Complex induced_N(Complex nu, const Eigen::VectorXd& a, const SphereFunction& f, const Angles& theta);
Complex induced_general(Complex nu, const Eigen::MatrixXd& g, const SphereFunction& f, const Angles& theta);
// e^u and theta' for g = n(a)
double n_multiplier(const Eigen::VectorXd& a, const Angles& theta);
Angles n_angles(const Eigen::VectorXd& a, const Angles& theta);

Complex dI_H(Complex nu, const TestFunction& f, const Angles& theta);
Complex dI_N(Complex nu, int i, const TestFunction& f, const Angles& theta);
// Same operators on a value and gradient at theta.
Complex dI_H(Complex nu, Complex value, const std::vector<Complex>& grad, const Angles& theta);
Complex dI_N(Complex nu, int i, Complex value, const std::vector<Complex>& grad, const Angles& theta);

// |central difference of s -> I_nu(exp(s X)) f at 0 minus dI_nu(X) f|, X = H or n_i.
double fd_consistency(Complex nu, const AlgebraTag& tag, const TestFunction& f, const Angles& theta, double step);
// Least-squares slope of log residual against log step.
double fitted_order(const std::vector<double>& steps, const std::vector<double>& residuals);

}  // namespace densitymod
