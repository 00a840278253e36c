#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "wres/rational.hpp"

// Abstract-index tensor calculus for scalar bilinear differential
// expressions in a fixed dimension (6 unless stated otherwise).
//
// Conventions:
//   - Every index slot is written "down"; a label occurring exactly twice
//     in a term is a dummy pair contracted with the inverse metric
//     ("raise and lower without explicit mention").  Labels occurring
//     once are free and never renamed.
//   - Derivative slots follow the semicolon convention: der = {i, j}
//     means nabla_j nabla_i T (leftmost applied first).
//   - During the flat->conformal growing procedure terms additionally
//     carry an integer weight w for a factor e^{2 w eta}, and dummy
//     pairs are contracted with the flat metric instead; to_covariant
//     converts back (see conformal.hpp).

namespace wres::tensor {

inline constexpr int kDim = 6;

// dimension used when a metric trace g_{aa} is absorbed during
// canonicalization; defaults to kDim but can be lowered for
// low-dimensional consistency checks
inline int& trace_dim() {
  static int d = kDim;
  return d;
}

enum class Head : int { F0, F1, F2, F3, F, H, Eta, G, V, J, W, R, Rc };

int head_arity(Head h);
bool head_scalar(Head h);
const char* head_name(Head h);

// Coefficient linear in the named unknowns (A, B, C, D, E, G of the
// section-6 ansatz); plain rational when u is empty.
struct Lin {
  Rational c = 0;
  std::map<std::string, Rational> u;

  Lin() = default;
  Lin(const Rational& r) : c(r) {}
  Lin(long v) : c(v) {}
  static Lin unknown(const std::string& name) {
    Lin l;
    l.u[name] = 1;
    return l;
  }

  bool is_zero() const { return c == 0 && u.empty(); }
  bool is_constant() const { return u.empty(); }
  Lin& operator+=(const Lin& o);
  Lin operator*(const Rational& s) const;
  Lin operator-() const { return *this * Rational(-1); }
  bool operator==(const Lin& o) const { return c == o.c && u == o.u; }
  std::string str() const;
};

struct Factor {
  Head head;
  std::vector<int> idx;  // base slots, arity-many
  std::vector<int> der;  // covariant-derivative slots, innermost first

  auto key() const { return std::tie(head, idx, der); }
  bool operator<(const Factor& o) const { return key() < o.key(); }
  bool operator==(const Factor& o) const { return key() == o.key(); }
};

struct Term {
  std::vector<Factor> fs;
  int weight = 0;  // power of e^{2 eta}, flat bookkeeping only

  auto key() const { return std::tie(weight, fs); }
  bool operator<(const Term& o) const { return key() < o.key(); }
  bool operator==(const Term& o) const { return key() == o.key(); }
};

// Canonicalization mode.  Covariant: dummies contract with the inverse
// metric, V with an internal pair is J.  FlatBookkeeping: dummies are
// plain coordinate sums, the V trace rule must not fire (it changes the
// e^{2 eta} weight and is applied by to_covariant instead).
enum class Mode { Covariant, FlatBookkeeping };

class Expr {
 public:
  std::map<Term, Lin> terms;
  Mode mode = Mode::Covariant;

  Expr() = default;
  explicit Expr(Mode m) : mode(m) {}

  // Canonicalizes t and merges c into the map.
  void add_term(Term t, const Lin& c);
  void add(const Expr& o);
  void sub(const Expr& o);
  Expr operator+(const Expr& o) const;
  Expr operator-(const Expr& o) const;
  Expr scaled(const Lin& s) const;
  // Term-by-term product; the right side's dummy labels are shifted to
  // fresh values, labels occurring once connect across the product.
  Expr mul(const Expr& o) const;

  bool is_zero() const { return terms.empty(); }
  size_t size() const { return terms.size(); }
  bool operator==(const Expr& o) const { return terms == o.terms; }
};

// Canonical form of a single term: absorbs metric factors, applies the
// zero rules (Weyl antisymmetry/trace, Riemann antisymmetry), the V
// internal-trace rule (Covariant mode), then minimizes the labeling over
// the monoterm symmetry groups.  Returns false if the term vanishes.
bool canonicalize(Term& t, Rational& sign, Mode mode);

// Fresh dummy label supply; canonical terms use 100, 101, ... so fresh
// labels start well above anything a builder hands in.
int fresh_label();
void reset_labels();

// Covariant derivative nabla_u by the Leibniz rule (metric factors are
// parallel and skipped); in flat bookkeeping the e^{2 w eta} factor
// contributes 2w eta_{;u} times the term.
Expr nabla(const Expr& e, int u);

// Replaces every `from`-headed factor by the Leibniz expansion of a
// product a*b carrying the same derivative slots (order-preserving
// subsequences).
Expr leibniz_substitute(const Expr& e, Head from, Head a, Head b);

// Renames heads (e.g. F -> F2, H -> F3 when building the coboundary).
Expr rename_head(const Expr& e, Head from, Head to);

// (k_R, k_nabla): every W/V/R/Rc/J factor counts once toward k_R, every
// derivative slot anywhere counts toward k_nabla.
std::pair<int, int> filtration_degrees(const Term& t);

// Plain-text rendering in the input grammar, and LaTeX in the semicolon
// notation; see tensor_parse.hpp for the grammar.
std::string term_str(const Term& t);
std::string expr_str(const Expr& e);
std::string expr_latex(const Expr& e);

// Convenience builders.
Factor fac(Head h, std::vector<int> idx = {}, std::vector<int> der = {});
Term term_of(std::vector<Factor> fs);

}  // namespace wres::tensor
