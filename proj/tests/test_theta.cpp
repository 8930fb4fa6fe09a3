#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "densitymod/theta.hpp"
#include "gen.hpp"

using namespace densitymod;

namespace {

double ps(const Angles& th, int from, int to) {
    double p = 1;
    for (int l = from; l <= to; ++l) p *= std::sin(th[l - 1]);
    return p;
}

TestFunction random_probe(int n) {
    MultiPoly p(n + 1);
    while (p.degree() < 1) p = gen::poly(n + 1, 4, 4);
    return TestFunction(p);
}

TestFunction constant_probe(int n) { return TestFunction(MultiPoly::constant(n + 1, 1)); }

// Zero-order terms of L^lambda for Sconf fields written out in spherical
// coordinates (lambda = 1).
double zero_order_sconf(int k, const Angles& th) {
    int n = int(th.size());
    double cn = std::cos(th[n - 1]);
    if (k == n) {
        double r = -ps(th, 1, n);
        for (int i = 1; i <= n - 1; ++i) r -= (1 + cn) * ps(th, 1, i) / ps(th, i, n) * std::sin(th[i - 1]);
        return r;
    }
    int i = n - k;
    double ci = std::cos(th[i - 1]);
    double r = -(1 + cn) * ci / ps(th, i + 1, n);
    for (int j = i + 1; j <= n - 1; ++j)
        r -= (1 + cn) * ps(th, 1, j) / (ps(th, 1, i) * ps(th, j, n)) * ci * std::sin(th[j - 1]);
    r -= std::sin(th[n - 1]) * ci * ps(th, i, n - 1) / std::sin(th[i - 1]);
    return r;
}

}  // namespace

TEST_CASE("closed-form fields match the stereographic pushforward") {
    for (int n = 1; n <= 4; ++n)
        for (const auto& tag : noncompact_generators(n))
            for (int trial = 0; trial < 100; ++trial) {
                Angles th = gen::angles(n, 0.05);
                if (n == 1 && std::cos(th[0]) > 0.999) continue;
                auto a = theta_field(tag, n).c(th);
                auto b = theta_field_pushforward(tag, th);
                for (int i = 0; i < n; ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-9 * (1 + std::abs(b[i])));
            }
}

TEST_CASE("the d/dtheta_i coefficient of Sconf(n-i) needs the full sine product") {
    // short form -(1 + cos theta_n) sin theta_i / (sin theta_{i+1} sin theta_n) equals
    // the full product only when n = i + 2
    for (Angles th : {Angles{0.8, 1.1}, Angles{0.8, 1.1, 1.9, 1.4}}) {
        int n = int(th.size()), i = 1;
        auto b = theta_field_pushforward(GeneratorTag::sconf(n - i), th);
        double cap = 1 + std::cos(th[n - 1]);
        double short_form = -cap * std::sin(th[0]) / (std::sin(th[1]) * std::sin(th[n - 1]));
        double corrected = -cap * std::sin(th[0]) / ps(th, 2, n);
        CHECK(std::abs(b[0] - corrected) <= 1e-12);
        CHECK(std::abs(b[0] - short_form) > 1e-2);
    }
}

TEST_CASE("theta_field examples") {
    for (int n = 1; n <= 3; ++n) {
        Angles th = gen::angles(n);
        TestFunction c(MultiPoly::variable(n + 1, n));  // cos theta_n
        double sn = std::sin(th[n - 1]);
        CHECK(std::abs(theta_field(GeneratorTag::dil(), n).apply(c, th) - sn * sn) <= 1e-13);
        CHECK(std::abs(theta_field(GeneratorTag::sconf(n), n).apply(constant_probe(n), th)) == 0);
    }
    CHECK_THROWS_AS(theta_field(GeneratorTag::trans(1), 2), std::invalid_argument);
    CHECK_THROWS_AS(theta_field(GeneratorTag::sconf(3), 2), std::invalid_argument);
}

TEST_CASE("L_theta examples") {
    Complex lam(0.3, -1.2);
    for (int n = 1; n <= 4; ++n)
        for (int trial = 0; trial < 20; ++trial) {
            Angles th = gen::angles(n);
            CHECK(std::abs(L_theta(lam, GeneratorTag::dil(), constant_probe(n), th) + lam * std::cos(th[n - 1])) <=
                  1e-13);
            TestFunction f = random_probe(n);
            for (const auto& tag : noncompact_generators(n)) {
                CHECK(std::abs(L_theta(0.0, tag, f, th) - theta_field(tag, n).apply(f, th)) == 0);
                if (tag.kind == GeneratorTag::Sconf) {
                    Complex got = L_theta(lam, tag, constant_probe(n), th);
                    Complex want = lam * zero_order_sconf(tag.i, th);
                    CHECK(std::abs(got - want) <= 1e-10 * (1 + std::abs(want)));
                }
            }
        }
}

TEST_CASE("M_nu examples") {
    Complex nu(1.5, 0.25);
    for (int n = 1; n <= 3; ++n) {
        Angles th = gen::angles(n);
        CHECK(std::abs(M_nu(nu, GeneratorTag::dil(), constant_probe(n), th) + nu * std::cos(th[n - 1])) <= 1e-13);
        TestFunction f = random_probe(n);
        for (const auto& tag : noncompact_generators(n))
            CHECK(std::abs(M_nu(0.0, tag, f, th) - theta_field(tag, n).apply(f, th)) == 0);
    }
}

TEST_CASE("pi-shift correspondence for Dil and H") {
    Complex nu(0.4, 0.9);
    for (int n = 1; n <= 3; ++n)
        for (int trial = 0; trial < 30; ++trial) {
            Angles th = gen::angles(n);
            TestFunction f = random_probe(n);
            Angles sh = pi_shift(th);
            Jet at = jet(f, sh);
            Complex a = m_operator(nu, GeneratorTag::dil(), n).apply(at, th);
            Complex b = dI_H(nu, at.value, at.grad, sh);
            CHECK(std::abs(a - b) <= 1e-9 * (1 + std::abs(b)));
        }
}

TEST_CASE("pi-shift is an involution up to 2 pi") {
    for (int n = 1; n <= 3; ++n)
        for (int trial = 0; trial < 20; ++trial) {
            Angles th = gen::angles(n);
            TestFunction f = random_probe(n);
            Angles twice = pi_shift(pi_shift(th));
            CHECK(std::abs(twice.back() - th.back() - 2 * M_PI) <= 1e-15);
            CHECK(std::abs(f(twice) - f(th)) <= 1e-12 * (1 + std::abs(f(th))));
        }
}

TEST_CASE("phi") {
    CHECK(phi_value({1.0}) == 0);
    CHECK(phi_multiplier({2.0}) == 1);
    CHECK(phi_multiplier({0.4, M_PI / 2}) == doctest::Approx(1).epsilon(1e-15));
    for (int n = 1; n <= 4; ++n)
        for (int trial = 0; trial < 20; ++trial) {
            Angles th = gen::angles(n);
            auto g = phi_gradient(th);
            CHECK(phi_multiplier(th) > 0);
            for (int k = 0; k < n; ++k) {
                Angles p = th, m = th;
                p[k] += 1e-6;
                m[k] -= 1e-6;
                double fd = (phi_value(p) - phi_value(m)) / 2e-6;
                CHECK(std::abs(fd - g[k]) <= 1e-7 * (1 + std::abs(g[k])));
                CHECK(g[k] == doctest::Approx(-double(k) / std::tan(th[k])));
            }
        }
    CHECK_THROWS_AS(phi_value({0.3, 0.0}), std::domain_error);
}

TEST_CASE("coboundary residual vanishes exactly at alpha = n") {
    for (int n = 1; n <= 4; ++n)
        for (const auto& tag : noncompact_generators(n))
            for (int trial = 0; trial < 200; ++trial) {
                Angles th = gen::angles(n, 0.05);
                CHECK(std::abs(coboundary_residual(n, tag, th)) <= 1e-9);
            }
}

TEST_CASE("coboundary residual away from alpha = n") {
    for (int n = 1; n <= 4; ++n) {
        // Dil: Div X = dX^n/dtheta_n = -cos theta_n and dphi(X) = (n-1) cos theta_n,
        // so the residual is (alpha - n) cos theta_n
        for (int trial = 0; trial < 20; ++trial) {
            Angles th = gen::angles(n);
            double c = std::cos(th[n - 1]);
            CHECK(coboundary_residual(n + 1, GeneratorTag::dil(), th) == doctest::Approx(c).epsilon(1e-12));
            CHECK(coboundary_residual(n - 0.5, GeneratorTag::dil(), th) == doctest::Approx(-0.5 * c).epsilon(1e-12));
        }
        for (double alpha : {n - 1.0, n + 1.0, n - 0.5, n + 0.5}) {
            bool some_nonzero = false;
            for (const auto& tag : noncompact_generators(n))
                for (int trial = 0; trial < 20; ++trial)
                    some_nonzero |= std::abs(coboundary_residual(alpha, tag, gen::angles(n))) > 1e-2;
            CHECK(some_nonzero);
        }
    }
}

TEST_CASE("generator correspondence") {
    CHECK(matching_generator(GeneratorTag::dil(), 3).first.kind == AlgebraTag::H);
    auto m = matching_generator(GeneratorTag::sconf(3), 3);
    CHECK(m.first.kind == AlgebraTag::Ni);
    CHECK(m.first.i == 1);
    CHECK(m.second == -1);
    CHECK(matching_generator(GeneratorTag::sconf(1), 3).first.i == 3);
}

TEST_CASE("verify_theorem1 examples") {
    struct Case {
        int n;
        Complex lambda;
    };
    for (auto c : {Case{1, 1.0 / 3}, Case{2, -0.5}, Case{3, Complex(0.5, 1.0)}}) {
        Theorem1Config cfg;
        cfg.n = c.n;
        cfg.lambda = c.lambda;
        cfg.seed = 11;
        auto r = verify_theorem1(cfg);
        CHECK(r.max_equivariance <= 1e-9);
        CHECK(r.max_intertwining <= 1e-9);
        CHECK(r.max_control >= 1e-2);
        CHECK(r.pass);
        CHECK(r.generators.size() == size_t(c.n + 1));
    }
}

TEST_CASE("verify_theorem1 fails when nu is off by 1/2") {
    Theorem1Config cfg;
    cfg.n = 2;
    cfg.lambda = 1.0 / 3;
    cfg.force_nu_offset = 0.5;
    auto r = verify_theorem1(cfg);
    CHECK(r.max_equivariance <= 1e-9);  // the pi-shift step holds for every nu
    CHECK(r.max_intertwining >= 1e-2);
    CHECK_FALSE(r.pass);
}

TEST_CASE("verify_theorem1 is deterministic and validates input") {
    Theorem1Config cfg;
    cfg.n = 2;
    cfg.lambda = 0.25;
    cfg.points = 30;
    auto a = verify_theorem1(cfg), b = verify_theorem1(cfg);
    CHECK(a.max_equivariance == b.max_equivariance);
    CHECK(a.max_control == b.max_control);
    cfg.n = 0;
    CHECK_THROWS_AS(verify_theorem1(cfg), DimensionError);
    cfg.n = 2;
    cfg.points = 0;
    CHECK_THROWS_AS(verify_theorem1(cfg), std::invalid_argument);
}
