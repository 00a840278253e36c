#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wres/tensor.hpp"
#include "wres/tensor_eval.hpp"
#include "wres/tensor_parse.hpp"
#include "wres/tensor_rewrite.hpp"

using namespace wres;
using namespace wres::tensor;

namespace {

Expr one_term(std::vector<Factor> fs, long c = 1) {
  Expr e;
  e.add_term(term_of(std::move(fs)), Lin(c));
  return e;
}

}  // namespace

TEST_CASE("canonicalize symmetries") {
  // V is symmetric
  Expr e = one_term({fac(Head::V, {1, 2}), fac(Head::F, {}, {1}),
                     fac(Head::H, {}, {2})}) -
           one_term({fac(Head::V, {2, 1}), fac(Head::F, {}, {1}),
                     fac(Head::H, {}, {2})});
  CHECK(e.is_zero());

  // W antisymmetry in the first pair
  Expr w = one_term({fac(Head::W, {1, 2, 3, 4}), fac(Head::F, {}, {1}),
                     fac(Head::H, {}, {2}), fac(Head::F0, {}, {3}),
                     fac(Head::F1, {}, {4})}) +
           one_term({fac(Head::W, {2, 1, 3, 4}), fac(Head::F, {}, {1}),
                     fac(Head::H, {}, {2}), fac(Head::F0, {}, {3}),
                     fac(Head::F1, {}, {4})});
  CHECK(w.is_zero());

  // pair symmetry W_{ijkl} = W_{klij}
  Expr wp = one_term({fac(Head::W, {1, 2, 3, 4}), fac(Head::F, {}, {1}),
                      fac(Head::H, {}, {2}), fac(Head::F0, {}, {3}),
                      fac(Head::F1, {}, {4})}) -
            one_term({fac(Head::W, {3, 4, 1, 2}), fac(Head::F, {}, {1}),
                      fac(Head::H, {}, {2}), fac(Head::F0, {}, {3}),
                      fac(Head::F1, {}, {4})});
  CHECK(wp.is_zero());

  // repeated first-pair slot kills W
  Expr wz = one_term({fac(Head::W, {7, 7, 1, 2}), fac(Head::F, {}, {1}),
                      fac(Head::H, {}, {2})});
  CHECK(wz.is_zero());

  // cross-pair trace of W vanishes
  Expr wt = one_term({fac(Head::W, {7, 1, 7, 2}), fac(Head::F, {}, {1}),
                      fac(Head::H, {}, {2})});
  CHECK(wt.is_zero());

  // first two derivative slots of a scalar commute
  Expr s = one_term({fac(Head::F, {}, {1, 2}), fac(Head::H, {}, {1, 2})}) -
           one_term({fac(Head::F, {}, {2, 1}), fac(Head::H, {}, {1, 2})});
  CHECK(s.is_zero());
}

TEST_CASE("canonicalize metric absorption and V trace") {
  // g_{ab} raises: g f_a h_b = f_m h_m
  Expr lhs = one_term({fac(Head::G, {7, 8}), fac(Head::F, {}, {7}),
                       fac(Head::H, {}, {8})});
  Expr rhs = one_term({fac(Head::F, {}, {9}), fac(Head::H, {}, {9})});
  CHECK(lhs == rhs);

  // g_{aa} is the dimension
  Expr tr = one_term({fac(Head::G, {7, 7}), fac(Head::J)});
  Expr six = one_term({fac(Head::J)}, 6);
  CHECK(tr == six);

  // V_{mm} = J
  Expr vt = one_term({fac(Head::V, {7, 7}), fac(Head::F, {}, {1}),
                      fac(Head::H, {}, {1})});
  Expr jt = one_term({fac(Head::J), fac(Head::F, {}, {1}),
                      fac(Head::H, {}, {1})});
  CHECK(vt == jt);
}

TEST_CASE("canonicalize keeps free labels") {
  Term t = term_of({fac(Head::V, {1, 2}), fac(Head::F, {}, {2, 5})});
  Rational sign = 1;
  REQUIRE(canonicalize(t, sign, Mode::Covariant));
  std::set<int> labels;
  for (const auto& f : t.fs) {
    for (int l : f.idx) labels.insert(l);
    for (int l : f.der) labels.insert(l);
  }
  CHECK(labels.count(1) == 1);  // free labels survive untouched
  CHECK(labels.count(5) == 1);
}

TEST_CASE("parse round trip") {
  const char* src =
      "96 f_{;i j} h_{;k l} W^{i l j k}"
      " - 32 f_{;i j} h_{;k} W^{i j k}_{l}^{;l}"
      " - 32 f_{;i} h_{;j k} W^{i j k}_{l}^{;l}";
  Expr e = parse_expr(src);
  CHECK(e.size() == 3);
  Expr back = parse_expr(expr_str(e));
  CHECK(back == e);
}

TEST_CASE("filtration degrees") {
  Term t = term_of({fac(Head::F, {}, {1, 2}), fac(Head::H, {}, {3}),
                    fac(Head::W, {1, 2, 3, 4}, {4})});
  auto [kR, kD] = filtration_degrees(t);
  CHECK(kR == 1);
  CHECK(kD == 4);
  CHECK(2 * kR + kD == 6);
}

TEST_CASE("jet oracle basic identities") {
  Jet j = random_jet(11);
  j.max_order = 4;
  j.curv_order = 2;

  // Rc symmetry and V trace = J (both numeric, not canonical rules here)
  Expr rc = one_term({fac(Head::Rc, {1, 2}), fac(Head::F, {}, {1}),
                      fac(Head::H, {}, {2})}) -
            one_term({fac(Head::Rc, {2, 1}), fac(Head::F, {}, {1}),
                      fac(Head::H, {}, {2})});
  // Rc is canonically symmetric already, so go through the evaluator
  Expr ja = one_term({fac(Head::V, {7, 7}), fac(Head::F0)});
  Expr jb = one_term({fac(Head::J), fac(Head::F0)});
  CHECK(evaluate(ja, j) == evaluate(jb, j));
  CHECK(rc.is_zero());

  // decomposition of R and Rc preserves jet values
  Expr r4 = one_term({fac(Head::R, {1, 2, 3, 4}), fac(Head::F, {}, {1}),
                      fac(Head::H, {}, {2}), fac(Head::F0, {}, {3}),
                      fac(Head::F1, {}, {4})});
  CHECK(evaluate(r4, j) == evaluate(riemann_decompose(r4), j));
  Expr rc2 = one_term({fac(Head::Rc, {1, 2}), fac(Head::F, {}, {1}),
                       fac(Head::H, {}, {2})});
  CHECK(evaluate(rc2, j) == evaluate(riemann_decompose(rc2), j));

  // first Bianchi for R
  Expr b1 = one_term({fac(Head::R, {1, 2, 3, 4}), fac(Head::F, {}, {1}),
                      fac(Head::H, {}, {2}), fac(Head::F0, {}, {3}),
                      fac(Head::F1, {}, {4})}) +
            one_term({fac(Head::R, {1, 3, 4, 2}), fac(Head::F, {}, {1}),
                      fac(Head::H, {}, {2}), fac(Head::F0, {}, {3}),
                      fac(Head::F1, {}, {4})}) +
            one_term({fac(Head::R, {1, 4, 2, 3}), fac(Head::F, {}, {1}),
                      fac(Head::H, {}, {2}), fac(Head::F0, {}, {3}),
                      fac(Head::F1, {}, {4})});
  CHECK(evaluate(b1, j) == 0);
}

TEST_CASE("relation rows vanish on a random jet") {
  Jet j = random_jet(23);
  j.max_order = 4;
  j.curv_order = 2;

  std::vector<Term> anchors = {
      // Ricci anchors
      term_of({fac(Head::F, {}, {101, 102, 103}), fac(Head::H, {}, {101}),
               fac(Head::F0, {}, {102}), fac(Head::F1, {}, {103})}),
      term_of({fac(Head::V, {101, 102}, {103, 104}), fac(Head::F, {}, {101}),
               fac(Head::H, {}, {102}), fac(Head::F0, {}, {103}),
               fac(Head::F1, {}, {104})}),
      // second Bianchi anchor, including a contracted one
      term_of({fac(Head::W, {101, 102, 103, 104}, {105}),
               fac(Head::F, {}, {101}), fac(Head::H, {}, {102}),
               fac(Head::F0, {}, {103}), fac(Head::F1, {}, {104}),
               fac(Head::F2, {}, {105})}),
      term_of({fac(Head::W, {101, 102, 103, 104}, {104}),
               fac(Head::F, {}, {101}), fac(Head::H, {}, {102}),
               fac(Head::F0, {}, {103})}),
      // V divergence anchor
      term_of({fac(Head::V, {101, 102}, {102}), fac(Head::F, {}, {101})}),
  };
  auto rows = relation_rows(anchors);
  CHECK(rows.size() >= 6);
  for (const auto& r : rows) CHECK(evaluate(r, j) == 0);
}

TEST_CASE("reduction certifies derived identities") {
  // outer-derivative instance of the V divergence identity
  Expr e = one_term({fac(Head::F, {}, {1}), fac(Head::H, {}, {2}),
                     fac(Head::V, {1, 101}, {101, 2})}) -
           one_term({fac(Head::F, {}, {1}), fac(Head::H, {}, {2}),
                     fac(Head::J, {}, {1, 2})});
  CHECK(is_zero_mod_relations(e));

  // first Bianchi instance for a differentiated W
  Expr b = one_term({fac(Head::W, {1, 2, 3, 4}, {5}), fac(Head::F, {}, {1}),
                     fac(Head::H, {}, {2}), fac(Head::F0, {}, {3}),
                     fac(Head::F1, {}, {4}), fac(Head::F2, {}, {5})}) +
           one_term({fac(Head::W, {1, 3, 4, 2}, {5}), fac(Head::F, {}, {1}),
                     fac(Head::H, {}, {2}), fac(Head::F0, {}, {3}),
                     fac(Head::F1, {}, {4}), fac(Head::F2, {}, {5})}) +
           one_term({fac(Head::W, {1, 4, 2, 3}, {5}), fac(Head::F, {}, {1}),
                     fac(Head::H, {}, {2}), fac(Head::F0, {}, {3}),
                     fac(Head::F1, {}, {4}), fac(Head::F2, {}, {5})});
  CHECK(is_zero_mod_relations(b));
}

TEST_CASE("reduction preserves jet values") {
  Jet j = random_jet(31);
  j.max_order = 4;
  j.curv_order = 2;
  // a third-derivative commutator expression with curvature left over
  Expr e = one_term({fac(Head::F, {}, {1, 2, 3}), fac(Head::H, {}, {1}),
                     fac(Head::F0, {}, {2}), fac(Head::F1, {}, {3})}) -
           one_term({fac(Head::F, {}, {1, 3, 2}), fac(Head::H, {}, {1}),
                     fac(Head::F0, {}, {2}), fac(Head::F1, {}, {3})});
  Expr red = reduce_by_relations(e);
  CHECK(evaluate(e, j) == evaluate(red, j));
  CHECK_FALSE(evaluate(e, j) == 0);  // the commutator itself is not zero
}

TEST_CASE("constraints and solving") {
  // (x - 3) * t1 + (x + y - 1) * t2 == 0 forces x = 3, y = -2
  Expr e;
  Lin c1 = Lin::unknown("x");
  c1 += Lin(-3);
  Lin c2 = Lin::unknown("x");
  c2 += Lin::unknown("y");
  c2 += Lin(-1);
  e.add_term(term_of({fac(Head::F, {}, {1}), fac(Head::H, {}, {1})}), c1);
  e.add_term(term_of({fac(Head::J), fac(Head::F), fac(Head::H)}), c2);
  auto cs = constraints_of(e);
  REQUIRE(cs.size() == 2);
  auto sol = solve_constraints(cs);
  CHECK(sol.at("x") == 3);
  CHECK(sol.at("y") == -2);

  // inconsistent system throws
  std::vector<Constraint> bad = {{{}, Rational(5), "t"}};
  CHECK_THROWS(solve_constraints(bad));
}
