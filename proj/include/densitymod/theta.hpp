#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "densitymod/chart.hpp"
#include "densitymod/lorentz.hpp"

namespace densitymod {

// Value and theta-gradient of a function at one point.
struct Jet {
    Complex value;
    std::vector<Complex> grad;
};
Jet jet(const TestFunction& f, const Angles& theta);

// c0(theta) + sum_i c_i(theta) d/dtheta_i
struct ThetaOperator {
    int n = 0;
    std::function<Complex(const Angles&)> c0;
    std::function<std::vector<double>(const Angles&)> c;

    Complex apply(const Jet& f, const Angles& theta) const;
    Complex apply(const TestFunction& f, const Angles& theta) const;
};

// Dil and Sconf(i) in spherical coordinates, with the stereographic chart
// s_n = x_0/(1 - x_n), s_{n-i} = x_i/(1 - x_n).
ThetaOperator theta_field(const GeneratorTag& tag, int n);
// Same field obtained by pushing generator_field forward through the chart.
std::vector<double> theta_field_pushforward(const GeneratorTag& tag, const Angles& theta);
double theta_divergence(const GeneratorTag& tag, const Angles& theta);
// d X^n / d theta_n
double theta_dXn(const GeneratorTag& tag, const Angles& theta);

ThetaOperator lie_theta_operator(Complex lambda, const GeneratorTag& tag, int n);
ThetaOperator m_operator(Complex nu, const GeneratorTag& tag, int n);
Complex L_theta(Complex lambda, const GeneratorTag& tag, const TestFunction& f, const Angles& theta);
Complex M_nu(Complex nu, const GeneratorTag& tag, const TestFunction& f, const Angles& theta);

// phi = -sum_k (k-1) ln sin theta_k
double phi_value(const Angles& theta);
double phi_multiplier(const Angles& theta);
std::vector<double> phi_gradient(const Angles& theta);

// Div X - alpha dX^n/dtheta_n - dphi(X)
double coboundary_residual(double alpha, const GeneratorTag& tag, const Angles& theta);

// theta_n -> theta_n + pi
Angles pi_shift(const Angles& theta);
// Dil -> H, Sconf(k) -> -n_{n-k+1}
std::pair<AlgebraTag, double> matching_generator(const GeneratorTag& tag, int n);
// dI_nu of the matching generator, with its sign
Complex dI_matching(Complex nu, const GeneratorTag& tag, const Jet& f, const Angles& theta);
// generators used by the equivalence: Dil, Sconf(1..n)
std::vector<GeneratorTag> noncompact_generators(int n);

struct Theorem1Config {
    int n = 1;
    Complex lambda = 0;
    int points = 200;
    int probes = 5;
    unsigned seed = 1;
    double margin = 0.05;        // sampled theta_j, j >= 2, stay this far from 0 and pi
    Complex force_nu_offset = 0;  // nu = n lambda + offset in the main checks
    Complex control_offset = 0.5;
    double tolerance = 1e-9;
    double threshold = 1e-2;
};

struct GeneratorResidual {
    std::string generator;
    std::string matched;
    double equivariance = 0;  // pi o dI_nu(Y) - M^nu_X o pi
    double intertwining = 0;  // M^nu_X(e^{lambda phi} f) - e^{lambda phi} L^lambda_X f
    double control = 0;       // intertwining at nu = n lambda + control offset
};

struct Theorem1Report {
    Theorem1Config config;
    Complex nu;
    std::vector<GeneratorResidual> generators;
    double max_equivariance = 0;
    double max_intertwining = 0;
    double max_control = 0;
    bool residuals_ok = false;
    bool control_ok = false;
    bool pass = false;
};

Theorem1Report verify_theorem1(const Theorem1Config& config);

}  // namespace densitymod
