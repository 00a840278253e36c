#pragma once

#include <map>
#include <mutex>
#include <utility>

#include "wres/poly.hpp"
#include "wres/symbol.hpp"

namespace wres {

// Exact moments of monomials over the unit sphere S^{n-1} with the
// normalized measure (total mass 1):
//   moment(alpha) = prod_i (alpha_i - 1)!! * (n-2)!! / (n + |alpha| - 2)!!
// and 0 whenever any alpha_i is odd.
Rational moment(const MultiIndex& alpha, int n);

// Term-by-term integration of a polynomial (need not be homogeneous).
Rational integrate_poly(const Poly& p, int n);

// On |xi| = 1 the |xi|^{2m} denominator is 1.
Rational integrate_symbol(const Symbol& s, int n);

// Area of S^{n-1} (n even) as coeff * pi^k: 2 pi^{n/2} / (n/2 - 1)!.
// Used by the CLI to rescale from the normalized measure.
std::pair<Rational, int> sphere_area_pi(int n);

}  // namespace wres
