#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "densitymod/harmonic.hpp"
#include "gen.hpp"

using namespace densitymod;

namespace {

GaussianRational q(long a, long b = 1) { return GaussianRational(a, b); }
MultiPoly x(int nv, int i) { return MultiPoly::variable(nv, i); }

void monomials(int nv, int deg, std::vector<int>& cur, int pos, std::vector<std::vector<int>>& out) {
    if (pos == nv - 1) {
        cur[pos] = deg;
        out.push_back(cur);
        return;
    }
    for (int e = deg; e >= 0; --e) {
        cur[pos] = e;
        monomials(nv, deg - e, cur, pos + 1, out);
    }
}

std::vector<std::vector<int>> monomials(int nv, int deg) {
    std::vector<std::vector<int>> out;
    if (deg < 0) return out;
    std::vector<int> cur(nv, 0);
    monomials(nv, deg, cur, 0, out);
    return out;
}

// Oracle: nullity of the Laplacian matrix from degree m to degree m-2 monomials.
long laplacian_nullity(int nv, int m) {
    auto src = monomials(nv, m), dst = monomials(nv, m - 2);
    if (dst.empty()) return long(src.size());
    Matrix a = zeros(dst.size(), src.size());
    for (size_t c = 0; c < src.size(); ++c) {
        MultiPoly img = laplacian(MultiPoly::monomial(nv, src[c]));
        for (size_t r = 0; r < dst.size(); ++r) a[r][c] = img.coeff(dst[r]);
    }
    return long(src.size()) - long(rank(a));
}

// Gauss-Legendre nodes on [-1, 1] by Newton iteration.
void gauss_legendre(int N, std::vector<double>& xs, std::vector<double>& ws) {
    xs.assign(N, 0);
    ws.assign(N, 0);
    for (int i = 0; i < N; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (N + 0.5)), pp = 0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1, p2 = 0;
            for (int j = 1; j <= N; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2 * j - 1) * z * p2 - (j - 1) * p3) / j;
            }
            pp = N * (z * p1 - p2) / (z * z - 1);
            double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        xs[i] = z;
        ws[i] = 2 / ((1 - z * z) * pp * pp);
    }
}

}  // namespace

TEST_CASE("harmonic_basis examples") {
    for (int nv = 1; nv <= 5; ++nv) {
        auto b = harmonic_basis(nv, 0);
        REQUIRE(b.size() == 1);
        CHECK(b[0].P == MultiPoly::constant(nv, 1));
    }
    for (int m = 1; m <= 6; ++m) {
        auto b = harmonic_basis(2, m);
        REQUIRE(b.size() == 2);
        CHECK(b[0].P == pow(x(2, 0) + x(2, 1) * GaussianRational::I(), m));
        CHECK(b[1].P == pow(x(2, 0) - x(2, 1) * GaussianRational::I(), m));
    }
    CHECK(harmonic_basis(3, 2).size() == 5);
    CHECK(laplacian_nullity(3, 2) == 5);
}

TEST_CASE("harmonic dimensions match the Laplacian nullity oracle") {
    for (int nv = 2; nv <= 5; ++nv)
        for (int m = 0; m <= (nv <= 3 ? 9 : 6); ++m) {
            auto b = harmonic_basis(nv, m);
            long oracle = laplacian_nullity(nv, m);
            CHECK(long(b.size()) == oracle);
            CHECK(harmonic_dimension(nv, m) == oracle);
            if (nv == 3) CHECK(oracle == 2 * m + 1);
            if (nv == 4) CHECK(oracle == (m + 1) * (m + 1));
            Matrix coords = zeros(b.size(), 0);
            auto mons = monomials(nv, m);
            for (size_t i = 0; i < b.size(); ++i) {
                CHECK(b[i].m == m);
                int d = -2;
                CHECK(b[i].P.is_homogeneous(&d));
                CHECK(d == m);
                CHECK(laplacian(b[i].P).is_zero());
                for (const auto& e : mons) coords[i].push_back(b[i].P.coeff(e));
            }
            CHECK(rank(coords) == b.size());
        }
}

TEST_CASE("gauss_decompose examples") {
    MultiPoly h = x(3, 0) * x(3, 1);
    auto c = gauss_decompose(h);
    REQUIRE(c.size() == 1);
    CHECK(c[0].j == 0);
    CHECK(c[0].h.P == h);

    auto r = gauss_decompose(MultiPoly::quadric(3, 0));
    REQUIRE(r.size() == 1);
    CHECK(r[0].j == 1);
    CHECK(r[0].h.P == MultiPoly::constant(3, 1));

    // x0^2 = (x0^2 - |x|^2/3) + |x|^2 * 1/3, solved by hand
    auto s = gauss_decompose(x(3, 0) * x(3, 0));
    REQUIRE(s.size() == 2);
    CHECK(s[0].j == 0);
    CHECK(s[0].h.P == x(3, 0) * x(3, 0) - MultiPoly::quadric(3, 0) * q(1, 3));
    CHECK(s[1].j == 1);
    CHECK(s[1].h.P == MultiPoly::constant(3, q(1, 3)));

    CHECK_THROWS_AS(gauss_decompose(x(3, 0) + MultiPoly::constant(3, 1)), ShapeError);
}

TEST_CASE("gauss_decompose reconstruction on random input") {
    for (int trial = 0; trial < 40; ++trial) {
        int nv = gen::uniform(2, 4), m = gen::uniform(0, 8);
        MultiPoly p = gen::homogeneous(nv, m, 5);
        MultiPoly back(nv);
        for (const auto& c : gauss_decompose(p)) {
            CHECK(laplacian(c.h.P).is_zero());
            CHECK(c.h.m == m - 2 * c.j);
            back += pow(MultiPoly::quadric(nv, 0), c.j) * c.h.P;
        }
        CHECK(back == p);
    }
}

TEST_CASE("chart_embed examples") {
    auto one = chart_embed({0, MultiPoly::constant(2, 1)}, q(1, 3));
    CHECK(one.k == 0);
    CHECK(one.R == MultiPoly::constant(1, 1));
    auto e = chart_embed({1, x(2, 0)}, q(1, 3));
    CHECK(e.k == 1);
    CHECK(e.R == MultiPoly::constant(1, 1) - x(1, 0) * x(1, 0));
    for (int n = 1; n <= 3; ++n)
        for (int m = 0; m <= 4; ++m) {
            MultiPoly z = pow(x(n + 1, 0) + x(n + 1, 1) * GaussianRational::I(), m);
            CHECK(same_density(chart_embed({m, z}, q(1, 4)), psi_element(1, m, n, q(1, 4))));
        }
    CHECK_THROWS_AS(psi_element(0, 1, 2, 0), std::out_of_range);
    CHECK_THROWS_AS(psi_element(3, 1, 2, 0), std::out_of_range);
}

TEST_CASE("psi examples") {
    for (int n = 1; n <= 3; ++n) {
        auto c = psi_element(1, 0, n, q(2, 5));
        CHECK(c.k == 0);
        CHECK(c.R == MultiPoly::constant(n, 1));
    }
    // n = 1: psi_{1,m} is the label +m element
    GradedBasis b(1, 5, q(1, 3));
    for (int m = 1; m <= 5; ++m) CHECK(same_density(psi_element(1, m, 1, q(1, 3)), b.at(m)[0].image));
    // rotations keep psi in its degree, at two values of lambda
    for (auto lam : {q(1, 3), GaussianRational(Rational(1, 2), Rational(2))}) {
        GradedBasis b3(3, 4, lam);
        for (int l = 0; l <= 3; ++l)
            for (int i = 1; i <= 3; ++i)
                for (int a = 1; a <= 3; ++a)
                    for (int c = a + 1; c <= 3; ++c) {
                        auto r = lie_derivative(GeneratorTag::rot(a, c), psi_element(i, l, 3, lam));
                        auto co = chart_decompose(r, b3);
                        for (const auto& [label, v] : co) CHECK(label == l);
                    }
    }
}

TEST_CASE("graded basis shape") {
    GradedBasis b1(1, 4, 0);
    CHECK(b1.labels() == std::vector<int>{-4, -3, -2, -1, 0, 1, 2, 3, 4});
    CHECK(b1.total_dimension() == 9);
    GradedBasis b3(3, 4, 0);
    for (int m = 0; m <= 4; ++m) CHECK(b3.dim(m) == (m + 1) * (m + 1));
    CHECK_THROWS_AS(GradedBasis(0, 3, 0), DimensionError);
}

TEST_CASE("chart_decompose round trip and linearity") {
    for (int n = 1; n <= 3; ++n) {
        GradedBasis b(n, n == 1 ? 6 : 4, q(2, 7));
        for (int label : b.labels())
            for (const auto& e : b.at(label)) {
                auto co = chart_decompose(e.image, b);
                REQUIRE(co.size() == 1);
                REQUIRE(co.count(label) == 1);
                for (size_t s = 0; s < co[label].size(); ++s)
                    CHECK(co[label][s] == (int(s) == e.slot ? q(1) : q(0)));
            }
        // 2 e1 + i e2
        int l1 = b.labels().front(), l2 = b.labels().back();
        auto d = add(scale(b.at(l1)[0].image, q(2)), scale(b.at(l2)[0].image, GaussianRational::I()));
        auto co = chart_decompose(d, b);
        CHECK(co[l1][0] == q(2));
        CHECK(co[l2][0] == GaussianRational::I());
    }
}

TEST_CASE("Trans(1) images are banded") {
    for (int n = 1; n <= 3; ++n) {
        int D = n == 1 ? 6 : 4;
        GradedBasis b(n, D, q(1, 3));
        for (int label : b.labels()) {
            int m = b.degree_of(label);
            if (m >= D) continue;
            for (const auto& e : b.at(label)) {
                auto co = chart_decompose(lie_derivative(GeneratorTag::trans(1), e.image), b);
                for (const auto& [l, v] : co) {
                    int mm = b.degree_of(l);
                    CHECK(mm >= m - 1);
                    CHECK(mm <= m + 1);
                }
            }
        }
    }
}

TEST_CASE("chart_decompose rejects out-of-span input") {
    GradedBasis b(2, 2, 0);
    auto top = harmonic_basis(3, 3)[0];
    CHECK_THROWS_AS(chart_decompose(chart_embed(top, 0), b), NotInSpan);
    // s1 alone is not a polynomial on the sphere
    CHECK_THROWS_AS(chart_decompose(ChartDensity(2, 0, x(2, 0), 0), b), NotInSpan);
}

TEST_CASE("sphere_monomial_integral examples") {
    for (int n = 1; n <= 5; ++n) {
        CHECK(sphere_monomial_integral(std::vector<int>(n + 1, 0), n) == 1);
        std::vector<int> a(n + 1, 0);
        a[0] = 2;
        CHECK(sphere_monomial_integral(a, n) == Rational(1, n + 1));
        a[0] = 3;
        CHECK(sphere_monomial_integral(a, n) == 0);
    }
    CHECK(sphere_monomial_integral({4, 0, 0}, 2) == Rational(1, 5));
}

TEST_CASE("sphere moments against quadrature on S^2") {
    // Gauss-Legendre in cos(theta), equispaced in phi: exact for these degrees up to roundoff
    std::vector<double> xs, ws;
    gauss_legendre(20, xs, ws);
    int P = 40;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> a{gen::uniform(0, 6), gen::uniform(0, 6), gen::uniform(0, 6)};
        double acc = 0;
        for (size_t i = 0; i < xs.size(); ++i)
            for (int k = 0; k < P; ++k) {
                double ph = 2 * M_PI * k / P, c = xs[i], s = std::sqrt(1 - c * c);
                double v[3] = {c, s * std::cos(ph), s * std::sin(ph)};
                acc += ws[i] * (2 * M_PI / P) * std::pow(v[0], a[0]) * std::pow(v[1], a[1]) * std::pow(v[2], a[2]);
            }
        acc /= 4 * M_PI;
        CHECK(acc == doctest::Approx(sphere_monomial_integral(a, 2).get_d()).epsilon(1e-12));
    }
}

TEST_CASE("gram matrices") {
    GradedBasis b1(1, 6, 0);
    CHECK(gram_matrix(0, b1) == Matrix{{q(1)}});
    CHECK(sphere_inner_product(b1.at(1)[0].source.P, b1.at(-1)[0].source.P).is_zero());
    for (int n = 1; n <= 3; ++n) {
        GradedBasis b(n, n == 1 ? 6 : (n == 2 ? 6 : 4), 0);
        for (int label : b.labels()) {
            Matrix g = gram_matrix(label, b, GramMethod::Moments);
            CHECK(g == gram_matrix(label, b, GramMethod::Fischer));
            CHECK(is_hermitian(g));
            CHECK(is_hermitian_positive_definite(g));
            for (size_t i = 0; i < g.size(); ++i) {
                CHECK(g[i][i].is_real());
                CHECK(sgn(g[i][i].re) > 0);
            }
        }
    }
}

TEST_CASE("projective lift check") {
    std::vector<std::vector<double>> pts;
    for (int k = 0; k < 100; ++k) {
        auto p = gen::point(3, 1.0);
        p[0] = std::abs(p[0]) + 0.05;
        pts.push_back(p);
    }
    CHECK(projective_lift_check({0, MultiPoly::constant(3, 1)}, 0, pts) <= 1e-12);
    CHECK(projective_lift_check({1, x(3, 0)}, q(1, 2), pts) <= 1e-10);
    MultiPoly z = pow(x(3, 0) + x(3, 1) * GaussianRational::I(), 3);
    CHECK(projective_lift_check({3, z}, q(1, 3), pts) <= 1e-10);
    CHECK(projective_lift_check({3, z}, GaussianRational(Rational(1, 2), Rational(3, 2)), pts) <= 1e-10);
    CHECK_THROWS_AS(projective_lift_check({1, x(3, 0)}, 0, {{-1.0, 0.0, 0.0}}), std::domain_error);
    CHECK_THROWS_AS(projective_lift_check({1, x(3, 0)}, 0, {{0.0, 1.0, 0.0}}), std::domain_error);
}
