#pragma once

#include <utility>
#include <vector>

#include "wres/symbol.hpp"

namespace wres {

// Basis of Lambda^k(C^n): strictly increasing k-subsets of {0,..,n-1}
// in lexicographic order.
std::vector<std::vector<int>> form_basis(int n, int k);

// Exterior multiplication by the covector xi: Lambda^k -> Lambda^{k+1}.
// Sign convention: e^S for increasing S; inserting index i into S picks
// up (-1)^{#{s in S : s < i}}.  This makes iota the transpose pattern
// of epsilon.
MatrixSym epsilon_matrix(int n, int k);

// Contraction with xi: Lambda^k -> Lambda^{k-1}.
MatrixSym iota_matrix(int n, int k);

// sigma_L^F = |xi|^{-2} (eps iota - iota eps) on middle-degree forms.
MatrixSym leading_symbol_F(int n);

// Matches tr(sigma_L^F(xi) sigma_L^F(eta)) against the two-term basis
// {<xi,eta>^2/(|xi|^2|eta|^2), 1} and returns (a, b).  Throws if the
// symbolic trace is not in the span of the two basis functions.
std::pair<Rational, Rational> trace_pair(int n);

// Raw two-variable trace numerator: tr(sigma(xi) sigma(eta)) * |xi|^2 |eta|^2
// as a polynomial in 2n variables (xi first, eta second).
Poly trace_bisymbol_numerator(int n);

}  // namespace wres
