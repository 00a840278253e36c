#pragma once

#include "wres/tensor.hpp"

// The displayed 6-dimensional expressions: the covariant form of the
// flat density, its conformally flat completion (two renderings and
// their Weyl-tensor difference), the first-order conformal variation,
// the Hochschild coboundary of the conformally flat form, the
// Weyl-term ansatz with named unknowns A, B, C, D and the two
// conformally invariant W^2 terms with parameters E, G, and the
// resulting two-parameter family.
//
// Every expression is a scalar density (the volume factor is implicit)
// bilinear in f and h, built in the covariant calculus of tensor.hpp.

namespace wres::tensor {

// The flat-coordinate density written with covariant derivatives in
// its index rendering: 12 (f_{;i} h^{;i}_{jj}^{kk} + ...) + 24 (...)
// + 6 (...) + 24 f_{;ijj} h^{;i}_{kk} + 16 f_{;ijk} h^{;ijk}.
Expr omega6_flat_part();

// Conformally flat completion: flat part + J, grad-J, and V blocks.
Expr omega6_conformally_flat();

// The same density arranged in explicitly f/h-symmetric summands.
// Equal to omega6_conformally_flat() only for conformally flat
// metrics; in general the two differ by difference_display().
Expr omega6_conformally_flat_symmetric();

// 96 f_{;ij} h_{;kl} W^{iljk} - 32 (f_{;ij} h_{;k} + f_{;i} h_{;jk})
// W^{ijk}_l^{;l}:  symmetric minus completion.
Expr difference_display();

// First-order conformal variation of omega6_conformally_flat(): four
// Weyl terms, common coefficient -32.
Expr variation6_display();

// Hochschild coboundary integrand of f0 omega6_conformally_flat():
// Weyl terms with coefficients -96, -96, 128, 128.
Expr coboundary6_display();

// A f_{;ij}h_{;kl}W^{ikjl}
// + B (f_{;ij}h_{;k} + h_{;ij}f_{;k}) W^i_l^{jk;l}
// + C f_{;i}h_{;j}W^i_k^j_l^{;kl} + D f_{;i}h_{;j}V_{kl}W^{ikjl}.
Expr weyl_ansatz(const Lin& A, const Lin& B, const Lin& C, const Lin& D);

// Conformal variation of the ansatz: structures with coefficients
// (B+2C), (3B-2A), (D-3C).
Expr weyl_ansatz_variation_display(const Lin& A, const Lin& B, const Lin& C,
                                   const Lin& D);

// Coboundary integrand of f0 times the A/B part of the ansatz:
// structures with coefficients 3B and -2A.
Expr coboundary_ansatz_display(const Lin& A, const Lin& B);

// E f_{;i}h^{;i}W_{jklm}W^{jklm} + G f_{;i}h_{;j}W^i_{klm}W^{jklm};
// each summand is conformally invariant on its own.
Expr invariant_pair(const Lin& E, const Lin& G);

// Omega_6 family: omega6_conformally_flat() + the solved Weyl terms
// (A, B, C, D) = (64, 32, -32, -96) + invariant_pair(E, G).
Expr family(const Lin& E, const Lin& G);

// f <-> h exchange, for symmetry checks.
Expr swap_fh(const Expr& e);

}  // namespace wres::tensor
