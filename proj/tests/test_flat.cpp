#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>

#include "wres/flat.hpp"

using namespace wres;

TEST_CASE("n=2 direct table matches the hand computation") {
  CoefficientTable t = omega_flat_direct(2);
  CHECK(t.n == 2);
  CHECK(t.convention == Convention::D);
  CHECK(t.entries.size() == 2);
  CHECK(t.get({1, 0}, {1, 0}) == 4);
  CHECK(t.get({0, 1}, {0, 1}) == 4);
  // partial convention flips the sign at n = 2
  CoefficientTable p = t.converted(Convention::Partial);
  CHECK(p.get({1, 0}, {1, 0}) == -4);
}

TEST_CASE("two flat routes agree for n = 2, 4") {
  for (int n : {2, 4}) {
    CoefficientTable d = omega_flat_direct(n);
    CoefficientTable t = omega_flat_taylor(n);
    CHECK(d.convention == t.convention);
    CHECK(d == t);
    CHECK(d.is_symmetric());
  }
}

TEST_CASE("two flat routes agree for n = 6" * doctest::timeout(120)) {
  auto t0 = std::chrono::steady_clock::now();
  CoefficientTable d = omega_flat_direct(6);
  CoefficientTable t = omega_flat_taylor(6);
  auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
  CHECK(d == t);
  CHECK(d.is_symmetric());
  CHECK(!d.entries.empty());
  MESSAGE("n=6 both routes: " << dt.count() << " s");
}

TEST_CASE("factorized pair-trace integrals match the literal matrices") {
  // spot-check the n=6 fast path against full matrix products
  std::vector<std::pair<MultiIndex, MultiIndex>> cases = {
      {{1, 1, 0, 0, 0, 0}, {2, 0, 0, 0, 0, 0}},
      {{2, 1, 0, 0, 0, 0}, {1, 0, 1, 0, 0, 1}},
      {{3, 0, 0, 0, 0, 0}, {1, 2, 0, 0, 0, 0}},
      {{1, 1, 1, 0, 0, 0}, {0, 0, 0, 1, 1, 1}},
      {{2, 0, 2, 0, 0, 0}, {0, 2, 0, 0, 0, 0}},
  };
  for (const auto& [g, d] : cases) {
    CHECK(pair_trace_integral(6, g, d) == pair_trace_integral_literal(6, g, d));
  }
  for (int n : {2, 4}) {
    MultiIndex g = mi_unit(n, 0), d = mi_unit(n, 0);
    CHECK(pair_trace_integral(n, g, d) == pair_trace_integral_literal(n, g, d));
  }
}

TEST_CASE("n=4 flat result is a multiple of the squared laplacian pairing") {
  // after integration by parts the 4-dimensional density is proportional
  // to f Delta^2 h
  CoefficientTable t = omega_flat_direct(4).converted(Convention::Partial);
  auto op = ibp_extract(t);
  auto lap2 = laplacian_power_table(4, 2);
  REQUIRE(!op.empty());
  MultiIndex k0 = lap2.begin()->first;
  REQUIRE(op.count(k0) == 1);
  Rational ratio = op[k0] / lap2[k0];
  CHECK(ratio != 0);
  for (const auto& [k, c] : lap2) CHECK(op[k] == ratio * c);
  for (const auto& [k, c] : op) CHECK(c == ratio * lap2[k]);
}

TEST_CASE("n=6 invariant displays both expand to the computed table") {
  // the displays quote the D-convention coefficients (positive leading 12)
  CoefficientTable flat6 = omega_flat_direct(6);
  CoefficientTable sym = expand_invariant(omega6_flat_symmetric_display(), 6);
  CHECK(sym == flat6);
  CoefficientTable idx = omega6_flat_index_display(6);
  CHECK(idx == flat6);
}

TEST_CASE("json round trip is exact and byte-stable") {
  CoefficientTable t = omega_flat_direct(4);
  std::string s = table_to_json(t);
  CoefficientTable u = table_from_json(s);
  CHECK(u == t);
  CHECK(table_to_json(u) == s);
}
