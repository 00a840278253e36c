#pragma once

#include <string>
#include <vector>

#include "wres/table.hpp"

namespace wres {

// Direct route: Lemma-2 sum over (alpha, beta, delta) with explicit
// exterior-algebra matrices.  n <= 4 computes every pair trace from the
// literal derivative matrices; n = 6 factorizes the two-variable trace
// per term (still matrix-sourced) to stay inside the time budget.
CoefficientTable omega_flat_direct(int n);

// Taylor route: builds T'_n psi from the matched two-term form of
// tr(sigma_L(xi) sigma_L(eta)), substitutes eta = xi, and expands the
// (u+v) difference polynomial.
CoefficientTable omega_flat_taylor(int n);

// Literal pair-trace integral used as a cross-check on the factorized
// path: I(gamma,delta) = int tr(del^gamma sigma * del^delta sigma).
Rational pair_trace_integral_literal(int n, const MultiIndex& gamma,
                                     const MultiIndex& delta);
Rational pair_trace_integral(int n, const MultiIndex& gamma, const MultiIndex& delta);

// Invariant-expression layer: named contraction patterns expandable to
// coordinate tables (partial convention).  Supported names:
//   inner            <df,dh>
//   lap_inner^p      Delta^p(<df,dh>)           (p = 1, 2)
//   lap_prod         Delta(Delta f * Delta h)
//   grad_lap         <grad Delta f, grad Delta h>
//   lap_hess         Delta(<hess f, hess h>)
//   hess             <hess f, hess h>
//   hess3            <D^3 f, D^3 h>  (f_;ijk h^;ijk)
//   mono:...         index-notation monomial patterns, see expand_monomial
struct InvariantTerm {
  Rational coeff;
  std::string pattern;
};
using InvariantExpression = std::vector<InvariantTerm>;

CoefficientTable expand_invariant(const InvariantExpression& e, int n);

// The two displayed forms of the flat 6-dimensional result.
InvariantExpression omega6_flat_symmetric_display();
CoefficientTable omega6_flat_index_display(int n);

// Formal integration by parts: moves all f-derivatives off f with sign
// (-1)^{|a|}; returns the operator sum_d c_d del^d acting on h.
std::map<MultiIndex, Rational> ibp_extract(const CoefficientTable& t);

// Coordinate table of Delta^p as an operator (for the Paneitz check).
std::map<MultiIndex, Rational> laplacian_power_table(int n, int p);

}  // namespace wres
