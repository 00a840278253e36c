#pragma once

#include <vector>

#include "wres/exterior.hpp"
#include "wres/multiindex.hpp"
#include "wres/symbol.hpp"

namespace wres {

// Formal jet generator D_x^a applied to a function tag.  f and h are
// never evaluated, so every result is a universal identity in them.
// The D_x = (-i)^{|a|} partial_x convention is tracked through the
// i-power of the carrying term.
struct JetMonomial {
  int tag;       // 0 = f, 1 = h
  MultiIndex a;  // |a| >= 1 wherever commutators produce it

  bool operator<(const JetMonomial& o) const {
    if (tag != o.tag) return tag < o.tag;
    return a < o.a;
  }
  bool operator==(const JetMonomial& o) const { return tag == o.tag && a == o.a; }
};

// One term: coeff * i^{ipow} * jets * matrix symbol part.
struct JetTerm {
  Rational coeff;
  int ipow = 0;  // power of the formal unit i, mod 4
  std::vector<JetMonomial> jets;
  MatrixSym sym;
};

struct JetSymbol {
  std::vector<JetTerm> terms;
};

// Order -k part of sigma([F,f]) in the flat specialization, where
// sigma^F_{-j} = 0 for j >= 1 and only |beta| = k survives:
//   sum_{|beta|=k} (1/beta!) D^beta_x(f) del^beta_xi(sigma_L^F).
JetSymbol commutator_sigma(int k, int n);

// Flat sigma_{-n}([F,f][F,h]): sum over |alpha|+|beta|+|delta| = n,
// |beta| >= 1, |delta| >= 1 of
//   (1/alpha!beta!delta!) D^beta(f) D^{alpha+delta}(h)
//     del^{alpha+beta}(sigma_L^F) del^delta(sigma_L^F),
// matrix-valued, homogeneity -n.
JetSymbol sigma_minus_n_product(int n);

// Entrywise matrix trace applied to each term's symbol part.
JetSymbol trace_density(const JetSymbol& js);

}  // namespace wres
