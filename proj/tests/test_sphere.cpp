#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "wres/sphere.hpp"

using namespace wres;

TEST_CASE("basic moments") {
  CHECK(moment(mi_zero(6), 6) == 1);
  CHECK(moment(mi_unit(6, 0), 6) == 0);  // odd symmetry
  MultiIndex a2 = mi_zero(6);
  a2[0] = 2;
  CHECK(moment(a2, 6) == rat(1, 6));
  MultiIndex a4 = mi_zero(6);
  a4[0] = 4;
  CHECK(moment(a4, 6) == rat(1, 16));
  MultiIndex a22 = mi_zero(6);
  a22[0] = 2;
  a22[1] = 2;
  CHECK(moment(a22, 6) == rat(1, 48));
  // n=2: int x^2 = 1/2 on the circle
  MultiIndex c2 = {2, 0};
  CHECK(moment(c2, 2) == rat(1, 2));
}

TEST_CASE("monte carlo oracle for n=6 moments") {
  // crude 3-digit check of 1/6, 1/16, 1/48 by sampling the sphere
  std::mt19937_64 rng(42);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double s2 = 0, s4 = 0, s22 = 0;
  const int N = 1000000;
  for (int it = 0; it < N; ++it) {
    double x[6], nrm = 0;
    for (double& v : x) {
      v = gauss(rng);
      nrm += v * v;
    }
    nrm = std::sqrt(nrm);
    for (double& v : x) v /= nrm;
    s2 += x[0] * x[0];
    s4 += x[0] * x[0] * x[0] * x[0];
    s22 += x[0] * x[0] * x[1] * x[1];
  }
  CHECK(std::abs(s2 / N - 1.0 / 6) < 2e-3);
  CHECK(std::abs(s4 / N - 1.0 / 16) < 2e-3);
  CHECK(std::abs(s22 / N - 1.0 / 48) < 2e-3);
}

TEST_CASE("moment recursion and trace identity") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> e(0, 3);
  for (int n : {2, 4, 6}) {
    Rational s = 0;
    for (int i = 0; i < n; ++i) s += moment(mi_add(mi_unit(n, i), mi_unit(n, i)), n);
    CHECK(s == 1);  // sum_i int xi_i^2 = 1
    for (int trial = 0; trial < 40; ++trial) {
      MultiIndex a(n);
      for (int& v : a) v = 2 * e(rng);
      for (int i = 0; i < n; ++i) {
        MultiIndex a2 = a;
        a2[i] += 2;
        CHECK(moment(a2, n) * Rational(n + mi_order(a)) ==
              moment(a, n) * Rational(a[i] + 1));
      }
      // permutation invariance
      MultiIndex p = a;
      std::shuffle(p.begin(), p.end(), rng);
      CHECK(moment(p, n) == moment(a, n));
    }
  }
}

TEST_CASE("integrate_poly and integrate_symbol") {
  int n = 6;
  Poly nsq = Poly::norm_sq(n, n);
  CHECK(integrate_poly(nsq, n) == 1);  // |xi|^2 = 1 on the sphere
  Poly xy = Poly::variable(n, 0) * Poly::variable(n, 1);
  CHECK(integrate_poly(xy, n) == 0);
  // (xi1^2 + xi2^2)^2 = xi1^4 + 2 xi1^2 xi2^2 + xi2^4 -> 2/16 + 2/48
  Poly p = Poly::norm_sq(n, 2);
  CHECK(integrate_poly(p * p, n) == rat(2, 16) + rat(2, 48));
  CHECK(integrate_symbol(Symbol(Poly::constant(n, 1), 1), n) == 1);  // 1/|xi|^2
  Poly x1 = Poly::variable(n, 0);
  CHECK(integrate_symbol(Symbol(x1 * x1, 1), n) == rat(1, 6));
  // linearity
  Symbol a(Poly::constant(n, 1), 1), b(x1 * x1, 1);
  CHECK(integrate_symbol(a + b, n) == integrate_symbol(a, n) + integrate_symbol(b, n));
}

TEST_CASE("sphere area as formal pi power") {
  auto [c2, p2] = sphere_area_pi(2);
  CHECK(c2 == 2);
  CHECK(p2 == 1);  // 2 pi
  auto [c6, p6] = sphere_area_pi(6);
  CHECK(c6 == 1);
  CHECK(p6 == 3);  // pi^3
}
