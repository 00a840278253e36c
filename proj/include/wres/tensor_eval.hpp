#pragma once

#include <map>
#include <vector>

#include "wres/poly.hpp"
#include "wres/tensor.hpp"

// Exact numeric oracle: evaluates abstract-index expressions on random
// rational metric and function jets at the origin.  Any two expressions
// the symbolic layer claims equal must agree here.

namespace wres::tensor {

// Rank-r array of truncated Taylor polynomials in the 6 coordinates.
struct PolyTensor {
  int rank = 0;
  std::vector<Poly> e;  // kDim^rank entries, row-major

  Poly& at(const std::vector<int>& ix);
  const Poly& at(const std::vector<int>& ix) const;
};

struct Jet {
  std::vector<Poly> g;     // metric, kDim*kDim row-major, symmetric
  Poly f, h, eta;
  Poly f0, f1, f2, f3;
  // Taylor budgets: max_order bounds the derivative count on scalar
  // fields, curv_order the count on curvature fields (whose rank-4
  // chains dominate the preparation cost).  Lower them (before the
  // first field() call) to the largest counts actually evaluated;
  // exceeding a budget throws rather than returning a wrong value.
  int max_order = 6;
  int curv_order = 4;

  // Derived data, built lazily per (head, #derivatives).
  std::map<std::pair<int, int>, PolyTensor> cache;
  std::map<std::pair<int, int>, std::vector<Rational>> val0;
  std::vector<Poly> ginv;   // inverse metric series, kDim*kDim
  std::vector<Poly> gamma;  // Christoffel, kDim^3, [i][j][k] = Gamma^i_{jk}
  bool prepared = false;

  void prepare();
  // All-lower component tensor of head with nder covariant derivatives.
  const PolyTensor& field(Head head, int nder);
};

// Generic random jet (g = I + sparse perturbation vanishing at 0) and a
// conformally flat one (g = e^{2 eta} I, truncated).
Jet random_jet(unsigned seed);
Jet conformally_flat_jet(unsigned seed);

// Exact value of the scalar expression at the origin; unknown-named
// coefficients are substituted from `assign` (missing name = error).
Rational evaluate(const Expr& e, Jet& jet,
                  const std::map<std::string, Rational>& assign = {});

}  // namespace wres::tensor
