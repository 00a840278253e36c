#pragma once

#include <cassert>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "wres/multiindex.hpp"
#include "wres/rational.hpp"

namespace wres {

// Multivariate polynomial with Rational coefficients.  Exponent vectors
// are packed 4 bits per variable into a uint64 key, which caps the
// engine at 16 variables and individual exponents at 15; the symbol
// calculus never exceeds either bound.
class Poly {
 public:
  using Key = std::uint64_t;

  Poly() : nvars_(0) {}
  explicit Poly(int nvars) : nvars_(nvars) { assert(nvars <= 16); }

  static Key pack(const MultiIndex& e) {
    Key k = 0;
    for (size_t i = 0; i < e.size(); ++i) {
      assert(e[i] >= 0 && e[i] <= 15);
      k |= static_cast<Key>(e[i]) << (4 * i);
    }
    return k;
  }
  static MultiIndex unpack(Key k, int nvars) {
    MultiIndex e(nvars);
    for (int i = 0; i < nvars; ++i) e[i] = static_cast<int>((k >> (4 * i)) & 0xF);
    return e;
  }
  static int exp_of(Key k, int var) { return static_cast<int>((k >> (4 * var)) & 0xF); }
  static int key_degree(Key k, int nvars) {
    int d = 0;
    for (int i = 0; i < nvars; ++i) d += exp_of(k, i);
    return d;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  const std::map<Key, Rational>& terms() const { return terms_; }

  static Poly constant(int nvars, const Rational& c) {
    Poly p(nvars);
    if (c != 0) p.terms_[0] = c;
    return p;
  }
  static Poly variable(int nvars, int i) {
    Poly p(nvars);
    p.terms_[Key(1) << (4 * i)] = 1;
    return p;
  }
  static Poly monomial(int nvars, const MultiIndex& e, const Rational& c) {
    Poly p(nvars);
    if (c != 0) p.terms_[pack(e)] = c;
    return p;
  }
  // |x|^2 restricted to the first `dim` variables.
  static Poly norm_sq(int nvars, int dim, int offset = 0) {
    Poly p(nvars);
    for (int i = 0; i < dim; ++i) {
      MultiIndex e(nvars, 0);
      e[offset + i] = 2;
      p.terms_[pack(e)] = 1;
    }
    return p;
  }

  void add_term(Key k, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a) {
    Poly r(a.nvars_);
    for (const auto& [k, c] : a.terms_) r.terms_[k] = -c;
    return r;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    assert(a.nvars_ == b.nvars_);
    Poly r(a.nvars_);
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) r.add_term(ka + kb, ca * cb);
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
  }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }

  bool operator==(const Poly& o) const { return terms_ == o.terms_; }

  Poly derivative(int var) const {
    Poly r(nvars_);
    for (const auto& [k, c] : terms_) {
      int e = exp_of(k, var);
      if (e == 0) continue;
      r.add_term(k - (Key(1) << (4 * var)), c * e);
    }
    return r;
  }

  // Repeated derivative by a multi-index.
  Poly derivative(const MultiIndex& a) const {
    Poly r = *this;
    for (size_t v = 0; v < a.size(); ++v)
      for (int t = 0; t < a[v]; ++t) r = r.derivative(static_cast<int>(v));
    return r;
  }

  int degree() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, key_degree(k, nvars_));
    return d;
  }

  bool is_homogeneous(int* deg_out = nullptr) const {
    int d = -2;
    for (const auto& [k, c] : terms_) {
      int kd = key_degree(k, nvars_);
      if (d == -2)
        d = kd;
      else if (kd != d)
        return false;
    }
    if (deg_out) *deg_out = (d == -2 ? 0 : d);
    return true;
  }

  Rational eval(const std::vector<Rational>& x) const {
    Rational s = 0;
    for (const auto& [k, c] : terms_) {
      Rational t = c;
      for (int v = 0; v < nvars_; ++v) {
        int e = exp_of(k, v);
        for (int i = 0; i < e; ++i) t *= x[v];
      }
      s += t;
    }
    return s;
  }

  // Exact division by d; throws unless d divides this exactly.
  Poly divide_exact(const Poly& d) const {
    Poly q(nvars_);
    Poly r = *this;
    if (d.is_zero()) throw std::invalid_argument("division by zero poly");
    Key lead = d.terms_.rbegin()->first;
    const Rational& lc = d.terms_.rbegin()->second;
    while (!r.is_zero()) {
      Key rk = r.terms_.rbegin()->first;
      // divisibility of packed exponents: per-variable comparison
      bool div = true;
      for (int v = 0; v < nvars_; ++v)
        if (exp_of(rk, v) < exp_of(lead, v)) {
          div = false;
          break;
        }
      if (!div) throw std::runtime_error("poly not divisible");
      Rational qc = r.terms_.rbegin()->second / lc;
      Key qk = rk - lead;
      q.add_term(qk, qc);
      Poly sub(nvars_);
      sub.terms_[qk] = qc;
      r -= sub * d;
    }
    return q;
  }

  // True (and sets quotient) iff d divides this exactly.
  bool try_divide(const Poly& d, Poly& quotient) const {
    Poly q(nvars_);
    Poly r = *this;
    Key lead = d.terms_.rbegin()->first;
    const Rational& lc = d.terms_.rbegin()->second;
    while (!r.is_zero()) {
      Key rk = r.terms_.rbegin()->first;
      bool div = true;
      for (int v = 0; v < nvars_; ++v)
        if (exp_of(rk, v) < exp_of(lead, v)) {
          div = false;
          break;
        }
      if (!div) return false;
      Rational qc = r.terms_.rbegin()->second / lc;
      Key qk = rk - lead;
      q.add_term(qk, qc);
      Poly sub(nvars_);
      sub.terms_[qk] = qc;
      r -= sub * d;
    }
    quotient = q;
    return true;
  }

 private:
  int nvars_;
  std::map<Key, Rational> terms_;
};

}  // namespace wres
