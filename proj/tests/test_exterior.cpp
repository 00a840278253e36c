#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wres/exterior.hpp"

using namespace wres;

namespace {

MatrixSym identity_like(int N, int dim) {
  MatrixSym m(N, N, dim);
  for (int i = 0; i < N; ++i) m.at(i, i) = Symbol::constant(dim, 1);
  return m;
}

}  // namespace

TEST_CASE("epsilon n=2 k=0 is (xi1, xi2)^T") {
  MatrixSym e = epsilon_matrix(2, 0);
  CHECK(e.rows == 2);
  CHECK(e.cols == 1);
  CHECK(e.at(0, 0) == Symbol::poly(Poly::variable(2, 0)));
  CHECK(e.at(1, 0) == Symbol::poly(Poly::variable(2, 1)));
}

TEST_CASE("iota n=2 k=1 maps e^i to xi_i") {
  MatrixSym io = iota_matrix(2, 1);
  CHECK(io.rows == 1);
  CHECK(io.cols == 2);
  CHECK(io.at(0, 0) == Symbol::poly(Poly::variable(2, 0)));
  CHECK(io.at(0, 1) == Symbol::poly(Poly::variable(2, 1)));
}

TEST_CASE("epsilon squared and iota squared vanish, n<=8") {
  for (int n : {2, 4, 6, 8}) {
    for (int k = 0; k + 1 < n; ++k)
      CHECK((epsilon_matrix(n, k + 1) * epsilon_matrix(n, k)).is_zero());
    for (int k = 2; k <= n; ++k)
      CHECK((iota_matrix(n, k - 1) * iota_matrix(n, k)).is_zero());
  }
}

TEST_CASE("epsilon n=6 k=3 has exactly 3 nonzero entries per column") {
  MatrixSym e = epsilon_matrix(6, 3);
  CHECK(e.cols == 20);
  for (int c = 0; c < e.cols; ++c) {
    int nz = 0;
    for (int r = 0; r < e.rows; ++r)
      if (!e.at(r, c).is_zero()) ++nz;
    CHECK(nz == 3);  // 3 indices outside each 3-subset of {1..6}
  }
}

TEST_CASE("iota is the transpose pattern of epsilon") {
  for (int n : {2, 4}) {
    for (int k = 1; k <= n; ++k) {
      MatrixSym io = iota_matrix(n, k);
      MatrixSym ep = epsilon_matrix(n, k - 1);
      REQUIRE(io.rows == ep.cols);
      REQUIRE(io.cols == ep.rows);
      for (int i = 0; i < io.rows; ++i)
        for (int j = 0; j < io.cols; ++j) CHECK(io.at(i, j) == ep.at(j, i));
    }
  }
}

TEST_CASE("clifford identity eps iota + iota eps = |xi|^2 Id") {
  for (int n : {2, 4, 6, 8}) {
    for (int k = 1; k < n; ++k) {
      MatrixSym ei = epsilon_matrix(n, k - 1) * iota_matrix(n, k);
      MatrixSym ie = iota_matrix(n, k + 1) * epsilon_matrix(n, k);
      int N = static_cast<int>(form_basis(n, k).size());
      Symbol nsq = Symbol::poly(Poly::norm_sq(n, n));
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
          Symbol want = (i == j) ? nsq : Symbol::zero(n);
          CHECK(ei.at(i, j) + ie.at(i, j) == want);
        }
    }
  }
}

TEST_CASE("leading symbol n=2 explicit matrix") {
  MatrixSym s = leading_symbol_F(2);
  Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
  CHECK(s.at(0, 0) == Symbol(x * x - y * y, 1));
  CHECK(s.at(0, 1) == Symbol(x * y * rat(2), 1));
  CHECK(s.at(1, 0) == Symbol(x * y * rat(2), 1));
  CHECK(s.at(1, 1) == Symbol(y * y - x * x, 1));
}

TEST_CASE("leading symbol: traceless, squares to identity, homogeneity 0") {
  for (int n : {2, 4, 6, 8}) {
    MatrixSym s = leading_symbol_F(n);
    CHECK(s.trace().is_zero());
    for (const auto& e : s.e)
      if (!e.is_zero()) CHECK(e.homogeneity() == 0);
    MatrixSym sq = s * s;
    MatrixSym id = identity_like(s.rows, n);
    CHECK((sq - id).is_zero());
  }
}

TEST_CASE("trace_pair values and binomial formula") {
  auto p2 = trace_pair(2);
  CHECK(p2.first == 4);
  CHECK(p2.second == -2);
  auto p4 = trace_pair(4);
  CHECK(p4.first == 8);
  CHECK(p4.second == -2);
  auto p6 = trace_pair(6);
  CHECK(p6.first == 24);
  CHECK(p6.second == -4);
  for (int n : {2, 4, 6, 8}) {
    int m = n / 2;
    auto [a, b] = trace_pair(n);
    Rational bf(binomial(n - 2, m - 2) + binomial(n - 2, m) - 2 * binomial(n - 2, m - 1));
    CHECK(b == bf);
    CHECK(a + b == Rational(binomial(n, m)));  // psi(xi,xi) = tr Id
  }
}

TEST_CASE("xi_derivative quotient rule and homogeneity bookkeeping") {
  // d/dxi1 (xi1/|xi|^2) = 1/|xi|^2 - 2 xi1^2/|xi|^4
  int n = 2;
  Symbol s(Poly::variable(n, 0), 1);
  Symbol d = xi_derivative(s, 0);
  Poly x = Poly::variable(n, 0);
  Poly nsq = Poly::norm_sq(n, n);
  Symbol want = Symbol(nsq - x * x * rat(2), 2);
  CHECK(d == want);
  CHECK(d.homogeneity() == -2);
  CHECK(xi_derivative(Symbol::constant(n, 5), 1).is_zero());
  // mixed partials commute on a randomized symbol
  Symbol r(Poly::variable(4, 0) * Poly::variable(4, 1) * Poly::variable(4, 2), 2);
  CHECK(xi_derivative(xi_derivative(r, 0), 3) == xi_derivative(xi_derivative(r, 3), 0));
  // second derivatives of entries of sigma_L(6) drop homogeneity to -2
  MatrixSym s6 = leading_symbol_F(6);
  MultiIndex g = mi_zero(6);
  g[0] = 2;
  for (const auto& e : s6.e) {
    Symbol de = xi_derivative(e, g);
    if (!de.is_zero()) CHECK(de.homogeneity() == -2);
  }
}
