#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "wres/jets.hpp"
#include "wres/sphere.hpp"

using namespace wres;

TEST_CASE("commutator symbol, order -1") {
  for (int n : {2, 4, 6}) {
    JetSymbol js = commutator_sigma(1, n);
    CHECK(js.terms.size() == (size_t)n);
    for (const auto& t : js.terms) {
      CHECK(t.coeff == 1);
      CHECK(t.ipow == 3);  // one factor of -i
      REQUIRE(t.jets.size() == 1);
      CHECK(t.jets[0].tag == 0);
      CHECK(mi_order(t.jets[0].a) == 1);
      for (const auto& s : t.sym.e) {
        if (!s.num.is_zero()) CHECK(s.homogeneity() == -1);
      }
    }
  }
}

TEST_CASE("product symbol term count and homogeneity") {
  int n = 2;
  JetSymbol js = sigma_minus_n_product(n);
  // splits of 2 into (alpha,beta,delta), |beta|,|delta| >= 1, dim 2 each:
  // alpha = 0, beta and delta unit vectors -> 4 terms
  CHECK(js.terms.size() == 4);
  for (const auto& t : js.terms) {
    CHECK(t.ipow == (3 * n) % 4);
    for (const auto& s : t.sym.e) {
      if (!s.num.is_zero()) CHECK(s.homogeneity() == -n);
    }
  }
}

TEST_CASE("n=2 trace density integrates to the classical Dirichlet form") {
  // wres density of [F,f][F,h] in the plane: the only surviving jets are
  // first derivatives and the integrated coefficient is -4 times the
  // (-i)^2 = -1 carried phase, i.e. +4 <df, dh> before the phase and
  // -4 <df, dh> once i^2 is folded in.
  int n = 2;
  JetSymbol js = trace_density(sigma_minus_n_product(n));
  std::map<std::vector<JetMonomial>, Rational> acc;
  for (const auto& t : js.terms) {
    REQUIRE(t.ipow == 2);  // i^2 = -1, uniform at n = 2
    REQUIRE(t.sym.rows == 1);
    acc[t.jets] += t.coeff * integrate_symbol(t.sym.e[0], n);
  }
  std::vector<JetMonomial> fx_hx = {{0, {1, 0}}, {1, {1, 0}}};
  std::vector<JetMonomial> fy_hy = {{0, {0, 1}}, {1, {0, 1}}};
  std::vector<JetMonomial> fx_hy = {{0, {1, 0}}, {1, {0, 1}}};
  CHECK(acc[fx_hx] == 4);  // times i^2 -> -4 f_x h_x
  CHECK(acc[fy_hy] == 4);
  CHECK(acc[fx_hy] == 0);
}

TEST_CASE("odd-order commutator pieces have odd symbols") {
  // each entry of an order -k part is (even poly)/|xi|^{2m} with parity
  // matching (-1)^k; checked via xi -> -xi on every entry for n=4, k=1,2
  int n = 4;
  for (int k : {1, 2}) {
    JetSymbol js = commutator_sigma(k, n);
    for (const auto& t : js.terms) {
      for (const auto& s : t.sym.e) {
        if (s.num.is_zero()) continue;
        int deg = s.num.degree();
        CHECK((deg - k) % 2 == 0);
      }
    }
  }
}
