#include "densitymod/lorentz.hpp"

#include <algorithm>
#include <cmath>

namespace densitymod {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

double prod_sin(const Angles& th, int from, int to) {
    // sin theta_from ... sin theta_to, 1-based, empty product is 1
    double p = 1;
    for (int l = from; l <= to; ++l) p *= std::sin(th[l - 1]);
    return p;
}

Complex cpow_pos(double base, Complex nu) {
    if (!(base > 0)) throw std::domain_error("multiplier must be positive");
    return std::exp(-nu * std::log(base));
}

}  // namespace

MatrixXd lorentz_form(int n) {
    MatrixXd J = MatrixXd::Identity(n + 2, n + 2);
    J(n + 1, n + 1) = -1;
    return J;
}

MatrixXd h_matrix(int n, double t) {
    MatrixXd g = MatrixXd::Identity(n + 2, n + 2);
    g(n, n) = g(n + 1, n + 1) = std::cosh(t);
    g(n, n + 1) = g(n + 1, n) = std::sinh(t);
    return g;
}

MatrixXd n_matrix(const VectorXd& a) {
    int n = int(a.size());
    double h = a.squaredNorm() / 2;
    MatrixXd g = MatrixXd::Identity(n + 2, n + 2);
    for (int i = 0; i < n; ++i) {
        g(i, n) = a[i];
        g(i, n + 1) = -a[i];
        g(n, i) = -a[i];
        g(n + 1, i) = -a[i];
    }
    g(n, n) = 1 - h;
    g(n, n + 1) = h;
    g(n + 1, n) = -h;
    g(n + 1, n + 1) = 1 + h;
    return g;
}

MatrixXd k_embed(const MatrixXd& R) {
    int m = int(R.rows());
    MatrixXd g = MatrixXd::Identity(m + 1, m + 1);
    g.topLeftCorner(m, m) = R;
    return g;
}

MatrixXd lorentz_inverse(const MatrixXd& g) {
    MatrixXd J = lorentz_form(int(g.rows()) - 2);
    return J * g.transpose() * J;
}

void validate_lorentz(const MatrixXd& g) {
    if (g.rows() != g.cols() || g.rows() < 3) throw ValidationError("expected a square matrix of size n+2 >= 3");
    if (!g.allFinite()) throw ValidationError("matrix has non-finite entries");
    int n = int(g.rows()) - 2;
    MatrixXd J = lorentz_form(n);
    double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    double defect = (g.transpose() * J * g - J).cwiseAbs().maxCoeff();
    // entries of g^T J g carry roundoff proportional to |g|^2
    if (defect > 1e-10 * scale * scale) throw ValidationError("g^T J g differs from J by " + std::to_string(defect));
    double det = g.determinant();
    if (std::abs(det - 1) > 1e-8) throw ValidationError("determinant is " + std::to_string(det));
    if (g(n + 1, n + 1) < 1 - 1e-12) throw ValidationError("not in the identity component");
}

bool is_lorentz(const MatrixXd& g) {
    try {
        validate_lorentz(g);
        return true;
    } catch (const ValidationError&) {
        return false;
    }
}

std::string to_string(const AlgebraTag& t) {
    switch (t.kind) {
        case AlgebraTag::H: return "H";
        case AlgebraTag::Ni: return "N" + std::to_string(t.i);
        case AlgebraTag::Kij: return "K" + std::to_string(t.i) + "," + std::to_string(t.j);
    }
    return "?";
}

MatrixXd lie_generator_matrix(int n, const AlgebraTag& tag) {
    MatrixXd X = MatrixXd::Zero(n + 2, n + 2);
    // 1-based indices as in E_{ij}
    auto E = [&](int i, int j, double v) { X(i - 1, j - 1) += v; };
    switch (tag.kind) {
        case AlgebraTag::H:
            E(n + 1, n + 2, 1);
            E(n + 2, n + 1, 1);
            break;
        case AlgebraTag::Ni:
            if (tag.i < 1 || tag.i > n) throw std::out_of_range("N index out of range");
            E(tag.i, n + 1, 1);
            E(n + 1, tag.i, -1);
            E(tag.i, n + 2, -1);
            E(n + 2, tag.i, -1);
            break;
        case AlgebraTag::Kij:
            if (tag.i < 1 || tag.j > n + 1 || tag.i >= tag.j) throw std::out_of_range("K indices out of range");
            E(tag.i, tag.j, 1);
            E(tag.j, tag.i, -1);
            break;
    }
    return X;
}

IwasawaFactors iwasawa(const MatrixXd& g) {
    validate_lorentz(g);
    int n = int(g.rows()) - 2;
    VectorXd xi0 = VectorXd::Zero(n + 2);
    xi0[n] = xi0[n + 1] = 1;
    // n(a) xi0 = xi0 and h(t) xi0 = e^t xi0, so g xi0 = e^t k xi0
    VectorXd v = g * xi0;
    IwasawaFactors f;
    double et = v[n + 1];
    f.t = std::log(et);
    f.a = VectorXd(n);
    f.k = MatrixXd(n + 1, n + 1);
    for (int i = 0; i < n; ++i) {
        // column i of k = g n(a)^{-1} e_i = g e_i + a_i g xi0, whose last entry must vanish
        f.a[i] = -g(n + 1, i) / et;
        f.k.col(i) = (g.col(i) + f.a[i] * v).head(n + 1);
    }
    f.k.col(n) = v.head(n + 1) / et;
    f.residual = (reconstruct(f) - g).cwiseAbs().maxCoeff();
    return f;
}

MatrixXd reconstruct(const IwasawaFactors& f) {
    int n = int(f.a.size());
    return k_embed(f.k) * h_matrix(n, f.t) * n_matrix(f.a);
}

VectorXd sphere_point(const Angles& th) {
    int n = int(th.size());
    VectorXd x(n + 1);
    x[0] = prod_sin(th, 1, n);
    for (int i = 1; i <= n; ++i) x[i] = std::cos(th[i - 1]) * prod_sin(th, i + 1, n);
    return x;
}

MatrixXd sphere_jacobian(const Angles& th) {
    int n = int(th.size());
    MatrixXd J = MatrixXd::Zero(n + 1, n);
    auto partial_prod = [&](int from, int skip) {
        double p = 1;
        for (int l = from; l <= n; ++l)
            if (l != skip) p *= std::sin(th[l - 1]);
        return p;
    };
    for (int j = 1; j <= n; ++j) J(0, j - 1) = std::cos(th[j - 1]) * partial_prod(1, j);
    for (int i = 1; i <= n; ++i) {
        J(i, i - 1) = -std::sin(th[i - 1]) * prod_sin(th, i + 1, n);
        for (int j = i + 1; j <= n; ++j) J(i, j - 1) = std::cos(th[i - 1]) * std::cos(th[j - 1]) * partial_prod(i + 1, j);
    }
    return J;
}

void validate_angles(const Angles& th, double guard) {
    if (th.empty()) throw std::domain_error("no angles");
    for (size_t j = 1; j < th.size(); ++j)
        if (!(th[j] > guard && th[j] < M_PI - guard))
            throw std::domain_error("theta_" + std::to_string(j + 1) + " is at a coordinate singularity");
}

Angles angles_from_point(const VectorXd& p, double guard) {
    int n = int(p.size()) - 1;
    if (n < 1) throw std::domain_error("point needs at least two coordinates");
    Angles th(n);
    for (int j = n; j >= 2; --j) th[j - 1] = std::atan2(p.head(j).norm(), p[j]);
    double t1 = std::atan2(p[0], p[1]);
    th[0] = t1 < 0 ? t1 + 2 * M_PI : t1;
    validate_angles(th, guard);
    return th;
}

MatrixXd k_from_angles(const Angles& th) {
    int n = int(th.size());
    MatrixXd k = MatrixXd::Identity(n + 2, n + 2);
    for (int i = 0; i < n; ++i) {
        MatrixXd ki = MatrixXd::Identity(n + 2, n + 2);
        double c = std::cos(th[i]), s = std::sin(th[i]);
        ki(i, i) = c;
        ki(i, i + 1) = s;
        ki(i + 1, i) = -s;
        ki(i + 1, i + 1) = c;
        k = k * ki;
    }
    return k;
}

Angles angles_from_k(const MatrixXd& k, double guard) {
    int n = int(k.rows()) - 2;
    return angles_from_point(k.col(n).head(n + 1), guard);
}

TestFunction::TestFunction(MultiPoly p) : n_(p.nvars() - 1), p_(std::move(p)) {
    if (n_ < 1) throw DimensionError("test function needs at least two variables");
    for (int c = 0; c <= n_; ++c) dp_.push_back(diff(p_, c));
}

Complex TestFunction::operator()(const Angles& th) const {
    if (int(th.size()) != n_) throw DimensionError("angle count does not match the test function");
    VectorXd x = sphere_point(th);
    return p_.eval(std::vector<double>(x.data(), x.data() + x.size()));
}

std::vector<Complex> TestFunction::gradient(const Angles& th) const {
    if (int(th.size()) != n_) throw DimensionError("angle count does not match the test function");
    VectorXd x = sphere_point(th);
    std::vector<double> xs(x.data(), x.data() + x.size());
    MatrixXd J = sphere_jacobian(th);
    std::vector<Complex> g(n_, 0.0);
    for (int c = 0; c <= n_; ++c) {
        Complex d = dp_[c].eval(xs);
        for (int j = 0; j < n_; ++j) g[j] += d * J(c, j);
    }
    return g;
}

Complex induced_A(Complex nu, double t, const SphereFunction& f, const Angles& th) {
    int n = int(th.size());
    double c = std::cos(th[n - 1]);
    double m = std::cosh(t) - c * std::sinh(t);
    double cp = std::clamp((c * std::cosh(t) - std::sinh(t)) / m, -1.0, 1.0);
    Angles shifted = th;
    if (n == 1) {
        // theta_1 is the azimuth: keep the sign of sin theta'
        double t1 = std::atan2(std::sin(th[0]) / m, cp);
        shifted[0] = t1 < 0 ? t1 + 2 * M_PI : t1;
    } else {
        shifted[n - 1] = std::acos(cp);
    }
    return cpow_pos(m, nu) * f(shifted);
}

double n_multiplier(const VectorXd& a, const Angles& th) {
    int n = int(th.size());
    if (a.size() != n) throw DimensionError("a must have n entries");
    VectorXd x = sphere_point(th);
    double h = a.squaredNorm() / 2;
    return 1 + h + a.dot(x.head(n)) - h * x[n];
}

Angles n_angles(const VectorXd& a, const Angles& th) {
    int n = int(th.size());
    VectorXd x = sphere_point(th);
    double eu = n_multiplier(a, th);
    VectorXd y(n + 1);
    for (int r = 0; r < n; ++r) y[r] = (a[r] + x[r] - a[r] * x[n]) / eu;
    y[n] = 1 + (x[n] - 1) / eu;
    if (std::abs(y.norm() - 1) > 1e-12 * (1 + a.squaredNorm()))
        throw std::logic_error("primed point is off the sphere");
    // the tangent recursions amount to reading spherical coordinates of y
    return angles_from_point(y);
}

Complex induced_N(Complex nu, const VectorXd& a, const SphereFunction& f, const Angles& th) {
    return cpow_pos(n_multiplier(a, th), nu) * f(n_angles(a, th));
}

Complex induced_general(Complex nu, const MatrixXd& g, const SphereFunction& f, const Angles& th) {
    int n = int(th.size());
    if (g.rows() != n + 2) throw DimensionError("group element size does not match the angles");
    IwasawaFactors kan = iwasawa(lorentz_inverse(g) * k_from_angles(th));
    Angles moved = angles_from_point(kan.k.col(n));
    return std::exp(-nu * kan.t) * f(moved);
}

Complex dI_H(Complex nu, Complex value, const std::vector<Complex>& grad, const Angles& th) {
    int n = int(th.size());
    return nu * std::cos(th[n - 1]) * value + std::sin(th[n - 1]) * grad[n - 1];
}

Complex dI_N(Complex nu, int i, Complex value, const std::vector<Complex>& grad, const Angles& th) {
    int n = int(th.size());
    if (i < 1 || i > n) throw std::out_of_range("N index out of range");
    auto c = [&](int l) { return std::cos(th[l - 1]); };
    double one_minus = 1 - c(n);
    Complex r = 0;
    if (i == 1) {
        r -= nu * prod_sin(th, 1, n) * value;
        for (int l = 1; l <= n - 1; ++l)
            r += one_minus * prod_sin(th, 1, l) / prod_sin(th, l, n) * c(l) * grad[l - 1];
        r -= one_minus * prod_sin(th, 1, n - 1) * grad[n - 1];
        return r;
    }
    int k = i - 1;
    r -= nu * c(k) * prod_sin(th, k + 1, n) * value;
    r -= one_minus * std::sin(th[k - 1]) / prod_sin(th, k + 1, n) * grad[k - 1];
    for (int j = k + 1; j <= n - 1; ++j)
        r += one_minus * prod_sin(th, k + 1, j) / prod_sin(th, j, n) * c(k) * c(j) * grad[j - 1];
    r -= one_minus * c(k) * prod_sin(th, k + 1, n - 1) * grad[n - 1];
    return r;
}

Complex dI_H(Complex nu, const TestFunction& f, const Angles& th) { return dI_H(nu, f(th), f.gradient(th), th); }

Complex dI_N(Complex nu, int i, const TestFunction& f, const Angles& th) {
    return dI_N(nu, i, f(th), f.gradient(th), th);
}

double fd_consistency(Complex nu, const AlgebraTag& tag, const TestFunction& f, const Angles& th, double step) {
    int n = int(th.size());
    Complex plus, minus, exact;
    if (tag.kind == AlgebraTag::H) {
        plus = induced_A(nu, step, f, th);
        minus = induced_A(nu, -step, f, th);
        exact = dI_H(nu, f, th);
    } else if (tag.kind == AlgebraTag::Ni) {
        VectorXd a = VectorXd::Zero(n);
        a[tag.i - 1] = step;
        plus = induced_N(nu, a, f, th);
        minus = induced_N(nu, -a, f, th);
        exact = dI_N(nu, tag.i, f, th);
    } else {
        throw std::invalid_argument("fd_consistency supports H and N tags");
    }
    return std::abs((plus - minus) / (2 * step) - exact);
}

double fitted_order(const std::vector<double>& steps, const std::vector<double>& residuals) {
    if (steps.size() != residuals.size() || steps.size() < 2) throw std::invalid_argument("need two or more samples");
    double mx = 0, my = 0;
    size_t m = steps.size();
    for (size_t i = 0; i < m; ++i) {
        mx += std::log(steps[i]);
        my += std::log(residuals[i]);
    }
    mx /= m;
    my /= m;
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < m; ++i) {
        double dx = std::log(steps[i]) - mx;
        sxy += dx * (std::log(residuals[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

}  // namespace densitymod
