#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "densitymod/poly.hpp"
#include "gen.hpp"

using namespace densitymod;

namespace {

MultiPoly x(int nv, int i) { return MultiPoly::variable(nv, i); }
GaussianRational q(long a, long b = 1) { return GaussianRational(a, b); }

}  // namespace

TEST_CASE("rational canonical form") {
    Rational r(6, -4);
    r.canonicalize();
    CHECK(to_string(r) == "-3/2");
    CHECK(to_string(Rational(0)) == "0/1");
    CHECK(to_string(Rational(3)) == "3/1");
    CHECK(parse_rational("10/4") == Rational(5, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
}

TEST_CASE("gaussian text round trip") {
    GaussianRational z(Rational(3, 2), Rational(-1, 3));
    CHECK(to_string(z) == "3/2-1/3*i");
    CHECK(parse_gaussian(to_string(z)) == z);
    CHECK(parse_gaussian("i") == GaussianRational::I());
    CHECK(parse_gaussian("-2/5*i") == GaussianRational(Rational(0), Rational(-2, 5)));
    CHECK(parse_gaussian("1/2+1/2*i") == GaussianRational(Rational(1, 2), Rational(1, 2)));
    CHECK(parse_gaussian("7") == q(7));
    for (int k = 0; k < 50; ++k) {
        auto w = gen::small_gaussian();
        CHECK(parse_gaussian(to_string(w)) == w);
    }
}

TEST_CASE("gaussian field axioms") {
    for (int k = 0; k < 200; ++k) {
        auto a = gen::small_gaussian(), b = gen::small_gaussian(), c = gen::small_gaussian();
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a * b == b * a);
        CHECK(a.conj().conj() == a);
        CHECK((a * b).conj() == a.conj() * b.conj());
        if (!a.is_zero()) CHECK(a * (GaussianRational(1) / a) == GaussianRational(1));
    }
    CHECK(GaussianRational::I() * GaussianRational::I() == q(-1));
    CHECK_THROWS(q(1) / q(0));
}

TEST_CASE("poly_arith examples") {
    MultiPoly a = x(2, 0) + x(2, 1), b = x(2, 0) - x(2, 1);
    CHECK(poly_arith(a, b, ArithOp::Mul) == x(2, 0) * x(2, 0) - x(2, 1) * x(2, 1));
    CHECK(poly_arith(a, MultiPoly(2), ArithOp::Add) == a);
    GaussianRational c(Rational(3, 2), Rational(1, 2));
    MultiPoly x02 = x(2, 0) * x(2, 0);
    MultiPoly scaled = poly_arith(x02, MultiPoly::constant(2, c), ArithOp::Scale);
    CHECK(scaled.coeff({2, 0}) == c);
    CHECK(scaled.size() == 1);
    CHECK_THROWS_AS(poly_arith(x(2, 0), x(3, 0), ArithOp::Add), DimensionError);
    CHECK_THROWS_AS(poly_arith(x(2, 0), x(3, 0), ArithOp::Mul), DimensionError);
    CHECK_THROWS_AS(poly_arith(x(2, 0), x(2, 1), ArithOp::Scale), ShapeError);
}

TEST_CASE("no stored zeros and canonical text") {
    MultiPoly p = x(2, 0) - x(2, 0);
    CHECK(p.is_zero());
    CHECK(p.to_string() == "[]");
    MultiPoly r = x(2, 0) * x(2, 0) * q(2) + x(2, 1) * GaussianRational::I() + MultiPoly::constant(2, q(-1, 2));
    CHECK(r.to_string() == "[2/1*x0^2, 0/1+1/1*i*x1, -1/2]");
}

TEST_CASE("poly_diff examples") {
    MultiPoly p = x(2, 0) * x(2, 0) * x(2, 1);
    CHECK(diff(p, 0) == x(2, 0) * x(2, 1) * q(2));
    CHECK(diff(x(2, 0) * x(2, 0), 1).is_zero());
    MultiPoly z = x(2, 0) + x(2, 1) * GaussianRational::I();
    // oracle: termwise derivative of the explicit expansion x0^3 + 3i x0^2 x1 - 3 x0 x1^2 - i x1^3
    MultiPoly expanded = x(2, 0) * x(2, 0) * x(2, 0) + x(2, 0) * x(2, 0) * x(2, 1) * GaussianRational(Rational(0), Rational(3)) -
                         x(2, 0) * x(2, 1) * x(2, 1) * q(3) - x(2, 1) * x(2, 1) * x(2, 1) * GaussianRational::I();
    REQUIRE(pow(z, 3) == expanded);
    MultiPoly d = x(2, 0) * x(2, 0) * q(3) + x(2, 0) * x(2, 1) * GaussianRational(Rational(0), Rational(6)) - x(2, 1) * x(2, 1) * q(3);
    CHECK(diff(pow(z, 3), 0) == d);
    CHECK(d == pow(z, 2) * q(3));
    CHECK_THROWS_AS(diff(p, 2), std::out_of_range);
    CHECK_THROWS_AS(diff(p, -1), std::out_of_range);
}

TEST_CASE("laplacian examples") {
    CHECK(laplacian(x(2, 0) * x(2, 0) - x(2, 1) * x(2, 1)).is_zero());
    CHECK(laplacian(x(2, 0) * x(2, 0)) == MultiPoly::constant(2, 2));
    MultiPoly z = x(3, 0) + x(3, 1) * GaussianRational::I();
    CHECK(laplacian(pow(z, 5)).is_zero());
}

TEST_CASE("homogeneous_subst examples") {
    MultiPoly s = x(1, 0);
    std::vector<MultiPoly> nums{MultiPoly::constant(1, 1) - s * s, s * q(2)};
    MultiPoly w = MultiPoly::constant(1, 1) + s * s;
    CHECK(homogeneous_subst(x(2, 0), nums, w) == MultiPoly::constant(1, 1) - s * s);
    CHECK(homogeneous_subst(MultiPoly::quadric(2, 0), nums, w) == w * w);
    CHECK(homogeneous_subst(MultiPoly::constant(2, 1), nums, w) == MultiPoly::constant(1, 1));
    CHECK_THROWS_AS(homogeneous_subst(x(2, 0) + MultiPoly::constant(2, 1), nums, w), ShapeError);
}

TEST_CASE("homogeneous_subst agrees with numeric evaluation") {
    // oracle: w^m p(num/w) evaluated in floating point at random s
    for (int trial = 0; trial < 30; ++trial) {
        int n = gen::uniform(1, 3), m = gen::uniform(0, 5);
        MultiPoly p = gen::homogeneous(n + 1, m, 4);
        MultiPoly w = MultiPoly::quadric(n, 1);
        std::vector<MultiPoly> nums{MultiPoly::constant(n, 1) - MultiPoly::quadric(n, 0)};
        for (int i = 0; i < n; ++i) nums.push_back(x(n, i) * q(2));
        MultiPoly r = homogeneous_subst(p, nums, w);
        auto s = gen::point(n);
        double ww = 1;
        for (double v : s) ww += v * v;
        std::vector<double> xs;
        for (auto& nu : nums) xs.push_back(nu.eval(s).real() / ww);
        auto expect = p.eval(xs) * std::pow(ww, m);
        CHECK(std::abs(r.eval(s) - expect) <= 1e-9 * (1 + std::abs(expect)));
    }
}

TEST_CASE("ring axioms on random polynomials") {
    for (int trial = 0; trial < 40; ++trial) {
        int nv = gen::uniform(1, 4);
        MultiPoly p = gen::poly(nv, 3, 4), r = gen::poly(nv, 3, 4), s = gen::poly(nv, 3, 4);
        CHECK((p + r) * s == p * s + r * s);
        CHECK(p * r == r * p);
        CHECK((p * r) * s == p * (r * s));
        CHECK(p - p == MultiPoly(nv));
    }
}

TEST_CASE("homogeneous_subst is multiplicative") {
    for (int trial = 0; trial < 20; ++trial) {
        int n = gen::uniform(1, 3);
        MultiPoly a = gen::homogeneous(n + 1, gen::uniform(0, 3), 3);
        MultiPoly b = gen::homogeneous(n + 1, gen::uniform(0, 3), 3);
        if (a.is_zero() || b.is_zero()) continue;
        std::vector<MultiPoly> nums{MultiPoly::constant(n, 1) - MultiPoly::quadric(n, 0)};
        for (int i = 0; i < n; ++i) nums.push_back(x(n, i) * q(2));
        MultiPoly w = MultiPoly::quadric(n, 1);
        CHECK(homogeneous_subst(a * b, nums, w) == homogeneous_subst(a, nums, w) * homogeneous_subst(b, nums, w));
    }
}

TEST_CASE("laplacian of |x|^2 p") {
    for (int trial = 0; trial < 40; ++trial) {
        int nv = gen::uniform(1, 5);
        MultiPoly p = gen::poly(nv, 4, 5);
        MultiPoly r2 = MultiPoly::quadric(nv, 0);
        MultiPoly lhs = laplacian(r2 * p) - r2 * laplacian(p) - p * q(2 * nv) - euler(p) * q(4);
        CHECK(lhs.is_zero());
        // linearity
        MultiPoly t = gen::poly(nv, 4, 5);
        auto c = gen::small_gaussian();
        CHECK(laplacian(p + t * c) == laplacian(p) + laplacian(t) * c);
    }
}

TEST_CASE("divide_by_quadric") {
    for (int trial = 0; trial < 30; ++trial) {
        int nv = gen::uniform(1, 4);
        MultiPoly p = gen::poly(nv, 3, 4);
        auto c = gen::small_gaussian(false);
        MultiPoly qd = MultiPoly::quadric(nv, c);
        auto back = divide_by_quadric(p * qd, c);
        REQUIRE(back.has_value());
        CHECK(*back == p);
        if (!p.is_zero() && p.degree() < 2) CHECK_FALSE(divide_by_quadric(p, c).has_value());
    }
    CHECK_FALSE(divide_by_quadric(x(2, 0) * x(2, 0), 1).has_value());
}
