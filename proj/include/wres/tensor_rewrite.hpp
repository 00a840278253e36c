#pragma once

#include <string>
#include <vector>

#include "wres/tensor.hpp"

// Equality of tensor expressions modulo the non-monoterm identities:
// derivative commutation (Ricci), the first and second Bianchi
// identities, and the curvature decomposition.  An expression is first
// rewritten into the W/V/J/g basis, then reduced against a span of
// relation instances generated around its own terms; the reduction is
// exact Gaussian elimination over the rationals.

namespace wres::tensor {

// Eliminates R and Rc heads:
//   R_{ijkl}  = W_{ijkl} - V_{jk} g_{il} + V_{jl} g_{ik}
//                        - V_{il} g_{jk} + V_{ik} g_{jl}
//   Rc_{ij}   = 4 V_{ij} + J g_{ij}          (dimension 6)
// Derivative slots transfer wholesale (g is parallel).
Expr riemann_decompose(const Expr& e);

// Zero-valued relation instances anchored on the given canonical terms:
//   - Ricci: swapping adjacent derivative slots costs one curvature
//     correction per slot inside the swap,
//       T_{A;..uv} - T_{A;..vu} = sum_a R_{m a u v} T_{A(a->m);..}
//     (sign fixed against the jet oracle), with any outer derivative
//     slots reapplied by the Leibniz rule;
//   - first Bianchi: W_{i jkl} + W_{i klj} + W_{i ljk} = 0, also for
//     differentiated W factors;
//   - second Bianchi, in decomposed form: anchored on every W factor
//     carrying at least one derivative slot,
//       W_{de bc;a} + W_{de ca;b} + W_{de ab;c} = (V ^ g) cyclic terms.
std::vector<Expr> relation_rows(const std::vector<Term>& support);

// Reduces e against the relation span; the support set is re-expanded
// from the reduced result up to `depth` times.  The result is zero iff
// the engine can certify e == 0.
Expr reduce_by_relations(const Expr& e, int depth = 3);
bool is_zero_mod_relations(const Expr& e, int depth = 3);

// Equality as functionals: scalar densities that integrate to the same
// value against any compactly supported data.  On top of the pointwise
// relations this quotients by total divergences: for every term and
// every factor carrying a derivative, dropping the outermost slot
// leaves a vector field X whose divergence expansion is a zero row.
std::vector<Expr> divergence_rows(const std::vector<Term>& support);
Expr reduce_functional(const Expr& e, int depth = 3);
bool is_zero_functional(const Expr& e, int depth = 3);

// Conformally flat specialization: terms carrying a Weyl factor are
// dropped (W == 0 for these metrics), and on top of the generic
// relations the once-differentiated Schouten tensor is symmetric in
// all three slots (the Cotton tensor vanishes).
Expr drop_weyl(const Expr& e);
Expr reduce_conformally_flat(const Expr& e, int depth = 3);
bool is_zero_conformally_flat(const Expr& e, int depth = 3);

// Conformally flat and modulo total divergences.
Expr reduce_functional_conformally_flat(const Expr& e, int depth = 3);
bool is_zero_functional_conformally_flat(const Expr& e, int depth = 3);

// A linear equation  sum_k coeff[k] * x_k + rhs == 0  on the named
// unknowns, with the canonical term it came from for error reporting.
struct Constraint {
  std::map<std::string, Rational> coeff;
  Rational rhs;
  std::string where;
};

// Requiring e == 0 (mod relations, or as a functional): reduces, then
// reads one constraint off every surviving canonical term.
// Unsatisfiable constant terms show up as a Constraint with empty coeff
// and nonzero rhs.
std::vector<Constraint> constraints_of(const Expr& e, int depth = 3);
std::vector<Constraint> functional_constraints_of(const Expr& e,
                                                  int depth = 3);

// Exact solver for the constraint list; throws if inconsistent, leaves
// unconstrained unknowns out of the result map.
std::map<std::string, Rational> solve_constraints(
    const std::vector<Constraint>& cs);

}  // namespace wres::tensor
