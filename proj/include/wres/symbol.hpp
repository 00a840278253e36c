#pragma once

#include <cassert>
#include <stdexcept>
#include <vector>

#include "wres/poly.hpp"

namespace wres {

// Homogeneous rational symbol P(xi)/|xi|^{2m}.  The numerator is kept
// homogeneous and the normal form cancels common |xi|^2 factors.
struct Symbol {
  Poly num;   // numerator, nvars = dim
  int pole;   // denominator exponent m in |xi|^{2m}

  Symbol() : pole(0) {}
  Symbol(Poly n, int m) : num(std::move(n)), pole(m) { normalize(); }

  static Symbol zero(int dim) { return Symbol(Poly(dim), 0); }
  static Symbol constant(int dim, const Rational& c) {
    return Symbol(Poly::constant(dim, c), 0);
  }
  static Symbol poly(Poly p) { return Symbol(std::move(p), 0); }

  int dim() const { return num.nvars(); }
  bool is_zero() const { return num.is_zero(); }
  // degree of the symbol as a homogeneous function of xi
  int homogeneity() const { return num.is_zero() ? 0 : num.degree() - 2 * pole; }

  void normalize() {
    if (num.is_zero()) {
      pole = 0;
      return;
    }
    Poly nsq = Poly::norm_sq(num.nvars(), num.nvars());
    Poly q(num.nvars());
    while (pole > 0 && num.try_divide(nsq, q)) {
      num = q;
      --pole;
    }
  }

  friend Symbol operator+(const Symbol& a, const Symbol& b) {
    assert(a.dim() == b.dim());
    int m = std::max(a.pole, b.pole);
    Poly nsq = Poly::norm_sq(a.num.nvars(), a.num.nvars());
    Poly an = a.num, bn = b.num;
    for (int i = a.pole; i < m; ++i) an *= nsq;
    for (int i = b.pole; i < m; ++i) bn *= nsq;
    return Symbol(an + bn, m);
  }
  friend Symbol operator-(const Symbol& a, const Symbol& b) { return a + (-b); }
  friend Symbol operator-(const Symbol& a) { return Symbol(-a.num, a.pole); }
  friend Symbol operator*(const Symbol& a, const Symbol& b) {
    return Symbol(a.num * b.num, a.pole + b.pole);
  }
  friend Symbol operator*(const Symbol& a, const Rational& c) {
    return Symbol(a.num * c, a.pole);
  }
  bool operator==(const Symbol& o) const {
    Symbol d = *this - o;
    return d.is_zero();
  }
};

// d/dxi_i by the quotient rule; the |xi|^{2m} family is closed and the
// homogeneity drops by exactly one.
inline Symbol xi_derivative(const Symbol& s, int i) {
  if (s.pole == 0) return Symbol(s.num.derivative(i), 0);
  Poly nsq = Poly::norm_sq(s.num.nvars(), s.num.nvars());
  Poly xi = Poly::variable(s.num.nvars(), i);
  Poly n = s.num.derivative(i) * nsq - Rational(2 * s.pole) * xi * s.num;
  return Symbol(n, s.pole + 1);
}

inline Symbol xi_derivative(const Symbol& s, const MultiIndex& a) {
  Symbol r = s;
  for (size_t v = 0; v < a.size(); ++v)
    for (int t = 0; t < a[v]; ++t) r = xi_derivative(r, static_cast<int>(v));
  return r;
}

// Square matrix of symbols acting on a form-space basis.
struct MatrixSym {
  int rows = 0, cols = 0;
  std::vector<Symbol> e;

  MatrixSym() = default;
  MatrixSym(int r, int c, int dim) : rows(r), cols(c), e(r * c, Symbol::zero(dim)) {}

  Symbol& at(int i, int j) { return e[i * cols + j]; }
  const Symbol& at(int i, int j) const { return e[i * cols + j]; }

  friend MatrixSym operator*(const MatrixSym& a, const MatrixSym& b) {
    assert(a.cols == b.rows);
    int dim = a.e.empty() ? 0 : a.e.front().dim();
    MatrixSym r(a.rows, b.cols, dim);
    for (int i = 0; i < a.rows; ++i)
      for (int k = 0; k < a.cols; ++k) {
        if (a.at(i, k).is_zero()) continue;
        for (int j = 0; j < b.cols; ++j) {
          if (b.at(k, j).is_zero()) continue;
          r.at(i, j) = r.at(i, j) + a.at(i, k) * b.at(k, j);
        }
      }
    return r;
  }
  friend MatrixSym operator-(const MatrixSym& a, const MatrixSym& b) {
    assert(a.rows == b.rows && a.cols == b.cols);
    MatrixSym r = a;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = r.e[i] - b.e[i];
    return r;
  }
  friend MatrixSym operator*(const MatrixSym& a, const Rational& c) {
    MatrixSym r = a;
    for (auto& s : r.e) s = s * c;
    return r;
  }

  bool is_zero() const {
    for (const auto& s : e)
      if (!s.is_zero()) return false;
    return true;
  }

  Symbol trace() const {
    assert(rows == cols);
    int dim = e.empty() ? 0 : e.front().dim();
    Symbol t = Symbol::zero(dim);
    for (int i = 0; i < rows; ++i) t = t + at(i, i);
    return t;
  }

  MatrixSym derivative(int var) const {
    MatrixSym r = *this;
    for (auto& s : r.e) s = xi_derivative(s, var);
    return r;
  }
};

// tr(A*B) without forming the product matrix.
inline Symbol trace_product(const MatrixSym& a, const MatrixSym& b) {
  assert(a.cols == b.rows && a.rows == b.cols);
  int dim = a.e.empty() ? 0 : a.e.front().dim();
  Symbol t = Symbol::zero(dim);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) {
      if (a.at(i, j).is_zero() || b.at(j, i).is_zero()) continue;
      t = t + a.at(i, j) * b.at(j, i);
    }
  return t;
}

}  // namespace wres
