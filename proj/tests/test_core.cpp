#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "wres/multiindex.hpp"
#include "wres/poly.hpp"
#include "wres/rational.hpp"

using namespace wres;

TEST_CASE("mi_factorial") {
  CHECK(mi_factorial({0, 0, 0, 0, 0, 0}) == 1);
  CHECK(mi_factorial({2, 1, 0, 0, 0, 0}) == 2);
  CHECK(mi_factorial({3, 2, 0, 0, 0, 0}) == 12);
}

TEST_CASE("binomial with out-of-range convention") {
  CHECK(binomial(6, 3) == 20);
  CHECK(binomial(4, 1) == 4);
  CHECK(binomial(0, -1) == 0);
  CHECK(binomial(4, 5) == 0);
}

TEST_CASE("rational parsing round trip") {
  CHECK(parse_rational("3/4") == rat(3, 4));
  CHECK(parse_rational("-12") == rat(-12));
  CHECK(to_string(rat(-3, 9)) == "-1/3");
  CHECK_THROWS(parse_rational("x"));
}

TEST_CASE("rational field axioms on randomized quadruples") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-30, 30), den(1, 17);
  for (int it = 0; it < 200; ++it) {
    Rational a = rat(num(rng), den(rng)), b = rat(num(rng), den(rng)),
             c = rat(num(rng), den(rng)), d = rat(num(rng), den(rng));
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    if (d != 0) CHECK(a / d * d == a);
  }
}

TEST_CASE("enumerate_splits small counts") {
  // n=2, dim=2, slots (beta>=1, delta>=1): 4 tuples with |beta|=|delta|=1
  auto s = enumerate_splits(2, 2, {1, 1});
  CHECK(s.size() == 4);
  for (const auto& t : s) {
    CHECK(mi_order(t[0]) == 1);
    CHECK(mi_order(t[1]) == 1);
  }
  // dim=1: single tuple (1),(1)
  auto s1 = enumerate_splits(2, 1, {1, 1});
  CHECK(s1.size() == 1);
}

TEST_CASE("enumerate_splits n=6 flat count matches brute force") {
  // count of (alpha, beta, delta) with |alpha|+|beta|+|delta| = 6,
  // |beta|,|delta| >= 1 in 6 variables each; brute-force triple loop
  // over orders as the oracle
  long brute = 0;
  for (int oa = 0; oa <= 6; ++oa)
    for (int ob = 1; ob <= 6 - oa; ++ob) {
      int od = 6 - oa - ob;
      if (od < 1) continue;
      brute += static_cast<long>(mi_of_order(6, oa).size()) * mi_of_order(6, ob).size() *
               mi_of_order(6, od).size();
    }
  long cnt = 0;
  for_each_split(6, 6, {0, 1, 1}, [&](const std::vector<MultiIndex>&) { ++cnt; });
  CHECK(cnt == brute);
}

TEST_CASE("enumerate_splits no duplicates, constraints hold") {
  auto s = enumerate_splits(4, 3, {0, 1, 1});
  std::set<std::vector<MultiIndex>> seen;
  for (const auto& t : s) {
    CHECK(mi_order(t[0]) + mi_order(t[1]) + mi_order(t[2]) == 4);
    CHECK(mi_order(t[1]) >= 1);
    CHECK(mi_order(t[2]) >= 1);
    CHECK(seen.insert(t).second);
  }
}

TEST_CASE("poly arithmetic and exact division") {
  Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
  Poly p = (x + y) * (x - y);
  Poly q = x * x - y * y;
  CHECK(p == q);
  Poly nsq = x * x + y * y;
  Poly prod = p * nsq;
  Poly quo(2);
  CHECK(prod.try_divide(nsq, quo));
  CHECK(quo == p);
  CHECK_FALSE(p.try_divide(nsq, quo));
  CHECK(p.derivative(0) == x * rat(2));
}
