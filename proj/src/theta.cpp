#include "densitymod/theta.hpp"

#include <unsupported/Eigen/AutoDiff>
#include <algorithm>
#include <cmath>
#include <random>

#include "densitymod/parallel.hpp"

namespace densitymod {

namespace {

using AD = Eigen::AutoDiffScalar<Eigen::VectorXd>;

template <class T>
T prod_sin(const std::vector<T>& th, int from, int to) {
    T p = T(1.0);
    for (int l = from; l <= to; ++l) p = p * sin(th[l - 1]);
    return p;
}

void check_tag(const GeneratorTag& tag, int n) {
    if (tag.kind == GeneratorTag::Dil) return;
    if (tag.kind == GeneratorTag::Sconf && tag.i >= 1 && tag.i <= n) return;
    throw std::invalid_argument("only Dil and Sconf(1..n) have spherical closed forms");
}

// Closed-form coefficients; T is double or an autodiff scalar.
template <class T>
std::vector<T> field_coeffs(const GeneratorTag& tag, const std::vector<T>& th) {
    using std::cos;
    using std::sin;
    int n = int(th.size());
    check_tag(tag, n);
    std::vector<T> X(n, T(0.0));
    auto c = [&](int l) { return T(cos(th[l - 1])); };
    auto s = [&](int l) { return T(sin(th[l - 1])); };
    if (tag.kind == GeneratorTag::Dil) {
        X[n - 1] = -s(n);
        return X;
    }
    T cap = T(1.0) + c(n);
    if (tag.i == n) {
        for (int i = 1; i <= n - 1; ++i) X[i - 1] = cap * prod_sin(th, 1, i) / prod_sin(th, i, n) * c(i);
        X[n - 1] = cap * prod_sin(th, 1, n - 1);
        return X;
    }
    int i = n - tag.i;
    // the d/dtheta_i coefficient carries the full product sin theta_{i+1} ... sin theta_n
    X[i - 1] = -cap * s(i) / prod_sin(th, i + 1, n);
    for (int j = i + 1; j <= n - 1; ++j) X[j - 1] = cap * prod_sin(th, i + 1, j) / prod_sin(th, j, n) * c(i) * c(j);
    X[n - 1] = cap * c(i) * prod_sin(th, i + 1, n - 1);
    return X;
}

std::vector<AD> seeded(const Angles& th) {
    int n = int(th.size());
    std::vector<AD> v;
    for (int i = 0; i < n; ++i) v.emplace_back(th[i], n, i);
    return v;
}

MultiPoly random_probe_poly(int nvars, std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4), deg(1, 4), var(0, nvars - 1);
    while (true) {
        std::vector<MultiPoly::Term> terms;
        for (int k = 0; k < 4; ++k) {
            std::vector<int> e(nvars, 0);
            int d = deg(rng);
            for (int j = 0; j < d; ++j) ++e[var(rng)];
            GaussianRational c(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
            c.re.canonicalize();
            c.im.canonicalize();
            terms.push_back({mono::pack(e), c});
        }
        MultiPoly p = MultiPoly::from_terms(nvars, std::move(terms));
        if (p.degree() >= 1) return p;
    }
}

}  // namespace

Jet jet(const TestFunction& f, const Angles& th) { return {f(th), f.gradient(th)}; }

Complex ThetaOperator::apply(const Jet& f, const Angles& th) const {
    auto coeffs = c(th);
    Complex r = c0 ? c0(th) * f.value : Complex(0);
    for (int i = 0; i < n; ++i) r += coeffs[i] * f.grad[i];
    return r;
}

Complex ThetaOperator::apply(const TestFunction& f, const Angles& th) const { return apply(jet(f, th), th); }

ThetaOperator theta_field(const GeneratorTag& tag, int n) {
    check_tag(tag, n);
    ThetaOperator op;
    op.n = n;
    op.c = [tag](const Angles& th) { return field_coeffs<double>(tag, th); };
    return op;
}

std::vector<double> theta_field_pushforward(const GeneratorTag& tag, const Angles& th) {
    int n = int(th.size());
    check_tag(tag, n);
    Eigen::VectorXd x = sphere_point(th);
    Eigen::MatrixXd Jx = sphere_jacobian(th);
    double d = 1 - x[n];
    // s_k = x_{n-k} / (1 - x_n)
    std::vector<double> s(n);
    Eigen::MatrixXd Js(n, n);
    for (int k = 1; k <= n; ++k) {
        s[k - 1] = x[n - k] / d;
        Js.row(k - 1) = (Jx.row(n - k) * d + x[n - k] * Jx.row(n)) / (d * d);
    }
    VectorField field = generator_field(tag, n);
    Eigen::VectorXd Xs(n);
    for (int k = 0; k < n; ++k) Xs[k] = field.coeffs[k].eval(s).real();
    Eigen::VectorXd Xt = Js.partialPivLu().solve(Xs);
    return std::vector<double>(Xt.data(), Xt.data() + n);
}

double theta_divergence(const GeneratorTag& tag, const Angles& th) {
    auto X = field_coeffs<AD>(tag, seeded(th));
    double div = 0;
    for (size_t i = 0; i < X.size(); ++i)
        if (X[i].derivatives().size() > 0) div += X[i].derivatives()[i];
    return div;
}

double theta_dXn(const GeneratorTag& tag, const Angles& th) {
    auto X = field_coeffs<AD>(tag, seeded(th));
    int n = int(th.size());
    return X[n - 1].derivatives().size() > 0 ? X[n - 1].derivatives()[n - 1] : 0.0;
}

ThetaOperator lie_theta_operator(Complex lambda, const GeneratorTag& tag, int n) {
    ThetaOperator op = theta_field(tag, n);
    op.c0 = [lambda, tag](const Angles& th) { return lambda * theta_divergence(tag, th); };
    return op;
}

ThetaOperator m_operator(Complex nu, const GeneratorTag& tag, int n) {
    ThetaOperator op = theta_field(tag, n);
    op.c0 = [nu, tag](const Angles& th) { return nu * theta_dXn(tag, th); };
    return op;
}

Complex L_theta(Complex lambda, const GeneratorTag& tag, const TestFunction& f, const Angles& th) {
    return lie_theta_operator(lambda, tag, int(th.size())).apply(f, th);
}

Complex M_nu(Complex nu, const GeneratorTag& tag, const TestFunction& f, const Angles& th) {
    return m_operator(nu, tag, int(th.size())).apply(f, th);
}

double phi_value(const Angles& th) {
    validate_angles(th);
    double p = 0;
    for (size_t k = 2; k <= th.size(); ++k) p -= double(k - 1) * std::log(std::sin(th[k - 1]));
    return p;
}

double phi_multiplier(const Angles& th) { return std::exp(phi_value(th)); }

std::vector<double> phi_gradient(const Angles& th) {
    validate_angles(th);
    std::vector<double> g(th.size(), 0.0);
    for (size_t k = 2; k <= th.size(); ++k) g[k - 1] = -double(k - 1) / std::tan(th[k - 1]);
    return g;
}

double coboundary_residual(double alpha, const GeneratorTag& tag, const Angles& th) {
    auto X = field_coeffs<double>(tag, th);
    auto dphi = phi_gradient(th);
    double r = theta_divergence(tag, th) - alpha * theta_dXn(tag, th);
    for (size_t k = 0; k < X.size(); ++k) r -= X[k] * dphi[k];
    return r;
}

Angles pi_shift(const Angles& th) {
    Angles s = th;
    s.back() += M_PI;
    return s;
}

std::pair<AlgebraTag, double> matching_generator(const GeneratorTag& tag, int n) {
    check_tag(tag, n);
    if (tag.kind == GeneratorTag::Dil) return {AlgebraTag::h(), 1.0};
    return {AlgebraTag::ni(n - tag.i + 1), -1.0};
}

Complex dI_matching(Complex nu, const GeneratorTag& tag, const Jet& f, const Angles& th) {
    auto [y, sign] = matching_generator(tag, int(th.size()));
    if (y.kind == AlgebraTag::H) return sign * dI_H(nu, f.value, f.grad, th);
    return sign * dI_N(nu, y.i, f.value, f.grad, th);
}

std::vector<GeneratorTag> noncompact_generators(int n) {
    std::vector<GeneratorTag> g{GeneratorTag::dil()};
    for (int i = 1; i <= n; ++i) g.push_back(GeneratorTag::sconf(i));
    return g;
}

Theorem1Report verify_theorem1(const Theorem1Config& cfg) {
    if (cfg.n < 1 || cfg.n > 4) throw DimensionError("verify_theorem1: n must be in 1..4");
    if (cfg.points < 1 || cfg.probes < 1) throw std::invalid_argument("verify_theorem1: empty sample");
    Theorem1Report rep;
    rep.config = cfg;
    const int n = cfg.n;
    const Complex lambda = cfg.lambda;
    rep.nu = double(n) * lambda + cfg.force_nu_offset;
    const Complex nu_control = double(n) * lambda + cfg.control_offset;

    std::mt19937 rng(cfg.seed);
    std::vector<TestFunction> probes;
    for (int p = 0; p < cfg.probes; ++p) probes.emplace_back(random_probe_poly(n + 1, rng));
    std::uniform_real_distribution<double> azimuth(0, 2 * M_PI), polar(cfg.margin, M_PI - cfg.margin);
    std::vector<Angles> points(cfg.points);
    for (auto& th : points) {
        th.resize(n);
        th[0] = azimuth(rng);
        for (int j = 1; j < n; ++j) th[j] = polar(rng);
    }
    if (n == 1)
        for (auto& th : points)
            // keep clear of the pole of the stereographic chart
            if (std::abs(std::remainder(th[0], 2 * M_PI)) < cfg.margin) th[0] += cfg.margin;

    auto gens = noncompact_generators(n);
    const size_t G = gens.size();
    // per point, per generator: equivariance, intertwining, control
    std::vector<std::vector<std::array<double, 3>>> res(points.size(), std::vector<std::array<double, 3>>(G));
    parallel_for(points.size(), [&](size_t pi) {
        const Angles& th = points[pi];
        Angles shifted = pi_shift(th);
        double ph = phi_value(th);
        auto dphi = phi_gradient(th);
        Complex mult = std::exp(lambda * ph);
        for (size_t g = 0; g < G; ++g) {
            auto& out = res[pi][g];
            out = {0, 0, 0};
            ThetaOperator M = m_operator(rep.nu, gens[g], n);
            ThetaOperator Mc = m_operator(nu_control, gens[g], n);
            ThetaOperator L = lie_theta_operator(lambda, gens[g], n);
            for (const auto& f : probes) {
                // (i) the pi-shift intertwines dI_nu and M^nu
                Jet at_shift = jet(f, shifted);
                Complex lhs = dI_matching(rep.nu, gens[g], at_shift, shifted);
                Complex rhs = M.apply(at_shift, th);
                out[0] = std::max(out[0], std::abs(lhs - rhs) / (1 + std::max(std::abs(lhs), std::abs(rhs))));
                // (ii) multiplication by e^{lambda phi} intertwines L^lambda and M^{n lambda}
                Jet fj = jet(f, th);
                Jet g_jet{mult * fj.value, std::vector<Complex>(n)};
                for (int k = 0; k < n; ++k) g_jet.grad[k] = mult * (lambda * dphi[k] * fj.value + fj.grad[k]);
                Complex lf = L.apply(fj, th);
                double scale = std::abs(mult) * (1 + std::abs(lf));
                out[1] = std::max(out[1], std::abs(M.apply(g_jet, th) - mult * lf) / scale);
                out[2] = std::max(out[2], std::abs(Mc.apply(g_jet, th) - mult * lf) / scale);
            }
        }
    });
    for (size_t g = 0; g < G; ++g) {
        GeneratorResidual gr;
        gr.generator = to_string(gens[g]);
        auto [y, sign] = matching_generator(gens[g], n);
        gr.matched = (sign < 0 ? "-" : "") + to_string(y);
        for (const auto& r : res) {
            gr.equivariance = std::max(gr.equivariance, r[g][0]);
            gr.intertwining = std::max(gr.intertwining, r[g][1]);
            gr.control = std::max(gr.control, r[g][2]);
        }
        rep.max_equivariance = std::max(rep.max_equivariance, gr.equivariance);
        rep.max_intertwining = std::max(rep.max_intertwining, gr.intertwining);
        rep.max_control = std::max(rep.max_control, gr.control);
        rep.generators.push_back(gr);
    }
    rep.residuals_ok = rep.max_equivariance <= cfg.tolerance && rep.max_intertwining <= cfg.tolerance;
    rep.control_ok = rep.max_control >= cfg.threshold;
    rep.pass = rep.residuals_ok && rep.control_ok;
    return rep;
}

}  // namespace densitymod
