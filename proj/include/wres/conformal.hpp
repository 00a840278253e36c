#pragma once

#include <vector>

#include "wres/table.hpp"
#include "wres/tensor.hpp"

// Conformally flat geometry: rewrites the flat coordinate form of the
// residue density as a covariant expression for metrics g = e^{2 eta} x
// (flat), checking on the way that every explicit eta survives only
// through curvature quantities (conformal invariance).
//
// Flat bookkeeping (Mode::FlatBookkeeping): dummy pairs are coordinate
// sums against the flat metric, each term carries a weight w for a
// factor e^{2 w eta}, and a G factor is a plain Kronecker delta.  One
// flat pair equals e^{2 eta} times a curved-metric pair, so a term
// converts to a covariant one exactly when w + #pairs == 0.

namespace wres::tensor {

// One contraction pattern of the flat bilinear form: coefficient times
// partial^{fslots} f partial^{hslots} h, labels shared across the two
// lists denoting contracted pairs.
struct FlatPattern {
  Rational coeff;
  std::vector<int> fslots;
  std::vector<int> hslots;
};

// Resolves the coordinate table into contraction patterns (per
// bidegree); throws if the table is not a combination of patterns,
// which would mean it is not O(n)-invariant.  Coefficients are in the
// partial convention regardless of the table's flag.
std::vector<FlatPattern> abstract_flat(const CoefficientTable& t);

// Flat partial derivative of a bookkeeping expression: covariant
// derivative plus Christoffel corrections of the conformal factor
// (Gamma^m_{ua} = delta^m_u eta_{;a} + delta^m_a eta_{;u}
//               - delta_{ua} eta^{;m})
// on every slot, plus 2w eta_{;u} from the weight.
Expr partial_flat(const Expr& e, int u);

// Eliminates second derivatives of eta:
//   eta_{;ij} = -V_{ij} - eta_{;i} eta_{;j}
//             + 1/2 eta_{;m} eta_{;m} g_{ij};
// factors with three or more derivatives on eta are an error (the
// growing discipline invariantizes after every single partial).
Expr invariantize(const Expr& e);

// Bookkeeping -> covariant: requires eta-free terms with w + #pairs == 0
// (throws otherwise, quoting the offending term).
Expr fb_sort_ders(Expr e);

Expr to_covariant(const Expr& e);

// The covariant residue density for conformally flat metrics, grown
// from the flat coordinate table; n in {2, 4, 6}.  The volume density
// accounts for weight -n/2.  Conformal invariance is asserted: explicit
// eta terms must cancel across the sum.
Expr grow_conformally_flat(const CoefficientTable& flat_table);

// Linearized conformal variation d/dt at t=0 of g -> e^{2 t eta} g of a
// covariant density expression (the integrand including its volume
// factor): the volume contributes +6 eta, every dummy pair -2 eta, and
//   dV_{ij} = -eta_{;ij}     dJ = -2 eta J - eta_{;mm}
//   dW_{ijkl} = 2 eta W_{ijkl}   dg_{ij} = 2 eta g_{ij}
// with derivative slots varied through the connection.
Expr conformal_variation(const Expr& e);

// Hochschild coboundary integrand of the cochain
// (f0,f1,f2) -> integral of f0 * omega(f1,f2):
//   (f0 f1) omega(f2,f3) - f0 omega(f1 f2, f3)
//   + f0 omega(f1, f2 f3) - (f3 f0) omega(f1, f2).
Expr hochschild_integrand(const Expr& omega);

}  // namespace wres::tensor
