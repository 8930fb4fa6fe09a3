#include "densitymod/harmonic.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <unordered_map>

namespace densitymod {

namespace {

long binom(long n, long k) {
    if (k < 0 || n < k) return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

MultiPoly suffix_norm(int nvars, int a) {
    MultiPoly r(nvars);
    for (int i = a; i < nvars; ++i) r += MultiPoly::variable(nvars, i) * MultiPoly::variable(nvars, i);
    return r;
}

// (alpha)_k
Rational rising(const Rational& alpha, int k) {
    Rational r = 1;
    for (int i = 0; i < k; ++i) r *= alpha + i;
    return r;
}

Rational factorial(int k) {
    Rational r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

// |x|^K C_K^alpha(x_a / |x|) over the suffix x_a..x_{N-1}, up to a constant.
MultiPoly gegenbauer_hom(int nvars, int a, int K, const Rational& alpha) {
    MultiPoly xa = MultiPoly::variable(nvars, a) * GaussianRational(2);
    MultiPoly r2 = suffix_norm(nvars, a);
    MultiPoly out(nvars);
    for (int r = 0; 2 * r <= K; ++r) {
        Rational c = rising(alpha, K - r) / (factorial(r) * factorial(K - 2 * r));
        if (r % 2) c = -c;
        out += pow(xa, unsigned(K - 2 * r)) * pow(r2, unsigned(r)) * GaussianRational(c);
    }
    return out;
}

// Gelfand-Tsetlin harmonic basis of degree m in the variables x_a..x_{N-1}.
std::vector<MultiPoly> gt_basis(int nvars, int a, int m) {
    int k = nvars - a;
    if (m == 0) return {MultiPoly::constant(nvars, 1)};
    if (k == 1) {
        if (m == 1) return {MultiPoly::variable(nvars, a)};
        return {};
    }
    if (k == 2) {
        MultiPoly z = pow(MultiPoly::variable(nvars, a) +
                              MultiPoly::variable(nvars, a + 1) * GaussianRational::I(),
                          unsigned(m));
        std::vector<MultiPoly::Term> re, im;
        for (const auto& t : z.terms()) {
            re.push_back({t.key, GaussianRational(t.coeff.re)});
            im.push_back({t.key, GaussianRational(t.coeff.im)});
        }
        return {MultiPoly::from_terms(nvars, std::move(re)), MultiPoly::from_terms(nvars, std::move(im))};
    }
    std::vector<MultiPoly> out;
    for (int j = 0; j <= m; ++j) {
        Rational alpha = Rational(2 * j + k - 2, 2);
        alpha.canonicalize();
        MultiPoly g = gegenbauer_hom(nvars, a, m - j, alpha);
        for (auto& h : gt_basis(nvars, a + 1, j)) out.push_back(g * h);
    }
    return out;
}

// proj(L_0) given the Laplacian chain L_q = Delta^q L_0, L_0 homogeneous of degree d.
MultiPoly project_chain(const std::vector<MultiPoly>& chain, size_t start, int d, int N) {
    int nv = chain[start].nvars();
    size_t len = chain.size() - start;
    // a_q = (-1)^q / (2^q q! prod_{p=1}^q (N + 2d - 2 - 2p))
    std::vector<Rational> a(len);
    a[0] = 1;
    for (size_t q = 1; q < len; ++q) {
        Rational den = Rational(2 * long(q) * (N + 2 * d - 2 - 2 * long(q)));
        a[q] = -a[q - 1] / den;
    }
    MultiPoly r2 = MultiPoly::quadric(nv, 0);
    MultiPoly acc(nv);
    for (size_t q = len; q-- > 0;) {
        if (!acc.is_zero()) acc = r2 * acc;
        if (!chain[start + q].is_zero()) acc += chain[start + q] * GaussianRational(a[q]);
    }
    return acc;
}

std::vector<MultiPoly> laplacian_chain(const MultiPoly& p) {
    std::vector<MultiPoly> chain{p};
    while (!chain.back().is_zero() && chain.back().degree() >= 2) chain.push_back(laplacian(chain.back()));
    while (chain.size() > 1 && chain.back().is_zero()) chain.pop_back();
    return chain;
}

Rational key_factorial(uint64_t key, int nvars) {
    Rational r = 1;
    for (int i = 0; i < nvars; ++i) r *= factorial(int(mono::exp(key, i)));
    return r;
}

}  // namespace

long harmonic_dimension(int nvars, int m) {
    if (nvars < 1 || m < 0) return 0;
    return binom(m + nvars - 1, nvars - 1) - binom(m + nvars - 3, nvars - 1);
}

std::vector<HarmonicElement> harmonic_basis(int nvars, int m) {
    if (nvars < 1 || nvars > kMaxVars) throw DimensionError("harmonic_basis: bad number of variables");
    if (m < 0) throw std::out_of_range("harmonic_basis: negative degree");
    std::vector<HarmonicElement> out;
    if (nvars == 2 && m > 0) {
        MultiPoly x0 = MultiPoly::variable(2, 0), ix1 = MultiPoly::variable(2, 1) * GaussianRational::I();
        out.push_back({m, pow(x0 + ix1, unsigned(m))});
        out.push_back({m, pow(x0 - ix1, unsigned(m))});
        return out;
    }
    for (auto& p : gt_basis(nvars, 0, m)) out.push_back({m, std::move(p)});
    return out;
}

MultiPoly harmonic_projection(const MultiPoly& P) {
    int d = 0;
    if (!P.is_homogeneous(&d)) throw ShapeError("harmonic_projection: polynomial is not homogeneous");
    if (P.is_zero()) return P;
    return project_chain(laplacian_chain(P), 0, d, P.nvars());
}

std::vector<GaussComponent> gauss_decompose(const MultiPoly& P) {
    int m = 0;
    if (!P.is_homogeneous(&m)) throw ShapeError("gauss_decompose: polynomial is not homogeneous");
    std::vector<GaussComponent> out;
    if (P.is_zero()) return out;
    int N = P.nvars();
    auto chain = laplacian_chain(P);
    for (size_t i = 0; i < chain.size(); ++i) {
        int d = m - 2 * int(i);
        if (d < 0) break;
        if (chain[i].is_zero()) continue;
        // Delta^i (|x|^{2i} H_d) = prod_{t=1}^i 2t(2t + 2d + N - 2) H_d
        Rational c = 1;
        for (int t = 1; t <= int(i); ++t) c *= Rational(2 * t * (2 * t + 2 * d + N - 2));
        MultiPoly h = project_chain(chain, i, d, N) * GaussianRational(1 / c);
        if (!h.is_zero()) out.push_back({int(i), {d, std::move(h)}});
    }
    return out;
}

std::vector<MultiPoly> stereo_numerators(int n) {
    std::vector<MultiPoly> x;
    x.push_back(MultiPoly::constant(n, 1) - MultiPoly::quadric(n, 0));
    for (int i = 0; i < n; ++i) x.push_back(MultiPoly::variable(n, i) * GaussianRational(2));
    return x;
}

ChartDensity chart_embed(const HarmonicElement& h, const GaussianRational& lambda) {
    int n = h.P.nvars() - 1;
    if (n < 1) throw DimensionError("chart_embed needs at least two variables");
    MultiPoly R = homogeneous_subst(h.P, stereo_numerators(n), chart_weight(n));
    return ChartDensity(n, lambda, std::move(R), h.m);
}

ChartDensity psi_element(int i, int l, int n, const GaussianRational& lambda) {
    if (i < 1 || i > n) throw std::out_of_range("psi_element: axis out of range");
    if (l < 0) throw std::out_of_range("psi_element: negative degree");
    MultiPoly z = MultiPoly::variable(n + 1, 0) + MultiPoly::variable(n + 1, i) * GaussianRational::I();
    return chart_embed({l, pow(z, unsigned(l))}, lambda);
}

namespace {

// A(x') + x0 B(x') on the sphere, where x0^2 = 1 - |x'|^2.
struct SpherePair {
    MultiPoly A, B;
};

SpherePair times_sigma(const SpherePair& p, const MultiPoly& u) {
    // (A + x0 B)(1 + x0) = A + B - uB + x0 (A + B)
    MultiPoly s = p.A + p.B;
    return {s - u * p.B, s};
}

std::optional<SpherePair> over_sigma(const SpherePair& p) {
    auto d = divide_by_quadric(p.B - p.A, 0);
    if (!d) return std::nullopt;
    return SpherePair{p.B - *d, *d};
}

}  // namespace

MultiPoly lift_to_sphere(const ChartDensity& d) {
    const int n = d.n;
    if (d.R.nvars() != n) throw DimensionError("density numerator has wrong nvars");
    if (d.R.is_zero()) return MultiPoly(n + 1);
    // With sigma = 1 + x0: s = x'/sigma and 1/w = sigma/2, so
    // R/w^k = 2^-k sum_d R_d(x') sigma^(k-d).
    MultiPoly u = MultiPoly::quadric(n, 0);
    int dmax = d.R.degree();
    SpherePair t{homogeneous_part(d.R, 0), MultiPoly(n)};
    for (int deg = 1; deg <= dmax; ++deg) {
        t = times_sigma(t, u);
        t.A += homogeneous_part(d.R, deg);
    }
    int e = dmax - d.k;
    for (; e < 0; ++e) t = times_sigma(t, u);
    for (; e > 0; --e) {
        auto q = over_sigma(t);
        if (!q) throw NotInSpan("not in span: density is not a polynomial on the sphere");
        t = std::move(*q);
    }
    MultiPoly G = embed(t.A, n + 1, 1) + MultiPoly::variable(n + 1, 0) * embed(t.B, n + 1, 1);
    Rational scale = 1;
    if (d.k >= 0)
        scale = Rational(1) / Rational(mpz_class(1) << d.k);
    else
        scale = Rational(mpz_class(1) << -d.k);
    return G * GaussianRational(scale);
}

std::map<int, MultiPoly> harmonic_components(const MultiPoly& G) {
    std::map<int, MultiPoly> out;
    int top = G.degree();
    for (int j = 0; j <= top; ++j) {
        MultiPoly part = homogeneous_part(G, j);
        if (part.is_zero()) continue;
        for (auto& c : gauss_decompose(part)) {
            auto it = out.find(c.h.m);
            if (it == out.end())
                out.emplace(c.h.m, std::move(c.h.P));
            else
                it->second += c.h.P;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.is_zero())
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

GaussianRational fischer_product(const MultiPoly& P, const MultiPoly& Q) {
    if (P.nvars() != Q.nvars()) throw DimensionError("fischer_product: nvars mismatch");
    GaussianRational s = 0;
    const auto& a = P.terms();
    const auto& b = Q.terms();
    size_t i = 0, j = 0;
    // both sorted in decreasing grlex order
    while (i < a.size() && j < b.size()) {
        if (a[i].key == b[j].key) {
            s += a[i].coeff * b[j].coeff.conj() * GaussianRational(key_factorial(a[i].key, P.nvars()));
            ++i;
            ++j;
        } else if (mono::grlex_less(b[j].key, a[i].key)) {
            ++i;
        } else {
            ++j;
        }
    }
    return s;
}

GradedBasis::GradedBasis(int n, int D, const GaussianRational& lambda) : n_(n), D_(D), lambda_(lambda) {
    if (n < 1 || n + 1 > kMaxVars) throw DimensionError("GradedBasis: dimension out of range");
    if (D < 0) throw std::out_of_range("GradedBasis: negative cap");
    for (int m = 0; m <= D; ++m) {
        auto hs = harmonic_basis(n + 1, m);
        auto make = [&](int label, int slot, HarmonicElement h) {
            BasisElement e;
            e.label = label;
            e.slot = slot;
            e.image = chart_embed(h, lambda);
            e.fischer_norm = fischer_product(h.P, h.P);
            e.source = std::move(h);
            return e;
        };
        if (n == 1 && m > 0) {
            elems_[m].push_back(make(m, 0, hs[0]));
            elems_[-m].push_back(make(-m, 0, hs[1]));
        } else {
            auto& v = elems_[m];
            for (size_t s = 0; s < hs.size(); ++s) v.push_back(make(m, int(s), hs[s]));
        }
    }
    for (const auto& [l, v] : elems_) labels_.push_back(l);
}

int GradedBasis::total_dimension() const {
    int s = 0;
    for (const auto& [l, v] : elems_) s += int(v.size());
    return s;
}

std::vector<int> GradedBasis::labels_of_degree(int m) const {
    if (m < 0 || m > D_) return {};
    if (n_ == 1 && m > 0) return {-m, m};
    return {m};
}

Coefficients chart_decompose(const ChartDensity& d, const GradedBasis& basis) {
    if (d.n != basis.n()) throw DimensionError("chart_decompose: dimension mismatch");
    Coefficients out;
    if (d.is_zero()) return out;
    auto comps = harmonic_components(lift_to_sphere(d));
    for (auto& [m, H] : comps) {
        if (m > basis.cap())
            throw NotInSpan("not in span: component of degree " + std::to_string(m) + " above cap " +
                            std::to_string(basis.cap()));
        MultiPoly residual = H;
        for (int label : basis.labels_of_degree(m)) {
            const auto& elems = basis.at(label);
            Vector c(elems.size(), GaussianRational(0));
            bool any = false;
            for (size_t s = 0; s < elems.size(); ++s) {
                c[s] = fischer_product(H, elems[s].source.P) / elems[s].fischer_norm;
                if (!c[s].is_zero()) {
                    residual -= elems[s].source.P * c[s];
                    any = true;
                }
            }
            if (any) out[label] = std::move(c);
        }
        if (!residual.is_zero())
            throw NotInSpan("not in span: nonzero residual in degree " + std::to_string(m));
    }
    return out;
}

Rational sphere_monomial_integral(const std::vector<int>& alpha, int n) {
    if (int(alpha.size()) != n + 1) throw DimensionError("sphere_monomial_integral: need n+1 exponents");
    // prod (alpha_i - 1)!! / (N (N+2) ... (N + |alpha| - 2)), N = n + 1
    mpz_class num = 1, den = 1;
    int total = 0;
    for (int a : alpha) {
        if (a < 0) throw std::out_of_range("negative exponent");
        if (a % 2) return 0;
        for (int t = a - 1; t > 1; t -= 2) num *= t;
        total += a;
    }
    for (int j = 0; 2 * j < total; ++j) den *= n + 1 + 2 * j;
    Rational r(num, den);
    r.canonicalize();
    return r;
}

GaussianRational sphere_inner_product(const MultiPoly& P, const MultiPoly& Q) {
    if (P.nvars() != Q.nvars()) throw DimensionError("sphere_inner_product: nvars mismatch");
    int N = P.nvars();
    std::unordered_map<uint64_t, Rational> cache;
    GaussianRational s = 0;
    for (const auto& a : P.terms())
        for (const auto& b : Q.terms()) {
            uint64_t key = a.key + b.key;
            auto it = cache.find(key);
            if (it == cache.end()) {
                auto e = mono::unpack(key, N);
                it = cache.emplace(key, sphere_monomial_integral(e, N - 1)).first;
            }
            if (sgn(it->second) != 0) s += a.coeff * b.coeff.conj() * GaussianRational(it->second);
        }
    return s;
}

Matrix gram_matrix(int label, const GradedBasis& basis, GramMethod method) {
    const auto& elems = basis.at(label);
    int m = basis.degree_of(label);
    int N = basis.n() + 1;
    Rational den = 1;
    for (int t = 0; t < m; ++t) den *= N + 2 * t;
    GaussianRational inv_den(Rational(1) / den);
    Matrix g = zeros(elems.size(), elems.size());
    for (size_t i = 0; i < elems.size(); ++i)
        for (size_t j = 0; j <= i; ++j) {
            const auto& p = elems[i].source.P;
            const auto& q = elems[j].source.P;
            GaussianRational v = method == GramMethod::Moments ? sphere_inner_product(p, q)
                                                               : fischer_product(p, q) * inv_den;
            g[i][j] = v;
            g[j][i] = v.conj();
        }
    return g;
}

double projective_lift_check(const HarmonicElement& h, const GaussianRational& lambda,
                             const std::vector<std::vector<double>>& points) {
    using cd = std::complex<double>;
    const int n = h.P.nvars() - 1;
    ChartDensity img = chart_embed(h, lambda);
    const cd lam = lambda.to_complex();
    double worst = 0;
    for (const auto& raw : points) {
        if (int(raw.size()) != n + 1) throw DimensionError("projective_lift_check: point has wrong size");
        double norm = 0;
        for (double v : raw) norm += v * v;
        norm = std::sqrt(norm);
        if (!(norm > 0) || raw[0] / norm < 1e-8)
            throw std::domain_error("projective_lift_check: singular sample point (x0 <= 0)");
        std::vector<double> x(raw.size());
        for (size_t i = 0; i < x.size(); ++i) x[i] = raw[i] / norm;

        // projective side: phi(t) = H(1, t) (1 + |t|^2)^(-(m + (n+1) lambda)/2)
        std::vector<double> t(n), one_t(n + 1);
        double t2 = 0;
        one_t[0] = 1;
        for (int i = 0; i < n; ++i) {
            t[i] = x[i + 1] / x[0];
            one_t[i + 1] = t[i];
            t2 += t[i] * t[i];
        }
        cd phi = h.P.eval(one_t) * std::exp(-(double(h.m) + double(n + 1) * lam) / 2.0 * std::log1p(t2));

        // stereographic side, moved over by s(t) = t / (1 + sqrt(1 + |t|^2))
        double r = std::sqrt(1 + t2);
        std::vector<double> s(n);
        double s2 = 0;
        for (int i = 0; i < n; ++i) {
            s[i] = t[i] / (r + 1);
            s2 += s[i] * s[i];
        }
        double w = 1 + s2;
        cd rho_s = img.R.eval(s) * std::exp(-(double(img.k) + double(n) * lam) * std::log(w));
        Eigen::MatrixXd J(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                J(i, j) = (i == j ? 1 / (r + 1) : 0.0) - t[i] * t[j] / (r * (r + 1) * (r + 1));
        double det = J.determinant();
        cd rhs = std::exp(double(n) * lam * std::log(2.0)) * rho_s * std::exp(lam * std::log(std::abs(det)));
        worst = std::max(worst, std::abs(phi - rhs));
    }
    return worst;
}

}  // namespace densitymod
