#include "wres/exterior.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace wres {

std::vector<std::vector<int>> form_basis(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

MatrixSym epsilon_matrix(int n, int k) {
  if (k < 0 || k >= n) throw std::out_of_range("epsilon_matrix: k out of range");
  auto dom = form_basis(n, k);
  auto ran = form_basis(n, k + 1);
  std::map<std::vector<int>, int> ran_idx;
  for (size_t i = 0; i < ran.size(); ++i) ran_idx[ran[i]] = static_cast<int>(i);

  MatrixSym m(static_cast<int>(ran.size()), static_cast<int>(dom.size()), n);
  for (size_t c = 0; c < dom.size(); ++c) {
    const auto& S = dom[c];
    for (int i = 0; i < n; ++i) {
      if (std::binary_search(S.begin(), S.end(), i)) continue;
      std::vector<int> T = S;
      T.insert(std::upper_bound(T.begin(), T.end(), i), i);
      int below = static_cast<int>(std::lower_bound(S.begin(), S.end(), i) - S.begin());
      Rational sign = (below % 2 == 0) ? 1 : -1;
      int r = ran_idx.at(T);
      m.at(r, static_cast<int>(c)) =
          m.at(r, static_cast<int>(c)) + Symbol::poly(Poly::variable(n, i) * sign);
    }
  }
  return m;
}

MatrixSym iota_matrix(int n, int k) {
  if (k <= 0 || k > n) throw std::out_of_range("iota_matrix: k out of range");
  auto dom = form_basis(n, k);
  auto ran = form_basis(n, k - 1);
  std::map<std::vector<int>, int> ran_idx;
  for (size_t i = 0; i < ran.size(); ++i) ran_idx[ran[i]] = static_cast<int>(i);

  MatrixSym m(static_cast<int>(ran.size()), static_cast<int>(dom.size()), n);
  for (size_t c = 0; c < dom.size(); ++c) {
    const auto& S = dom[c];
    for (size_t p = 0; p < S.size(); ++p) {
      std::vector<int> T = S;
      T.erase(T.begin() + p);
      Rational sign = (p % 2 == 0) ? 1 : -1;
      int r = ran_idx.at(T);
      m.at(r, static_cast<int>(c)) =
          m.at(r, static_cast<int>(c)) + Symbol::poly(Poly::variable(n, S[p]) * sign);
    }
  }
  return m;
}

MatrixSym leading_symbol_F(int n) {
  if (n % 2 != 0) throw std::invalid_argument("leading_symbol_F: n must be even");
  int k = n / 2;
  MatrixSym ei = epsilon_matrix(n, k - 1) * iota_matrix(n, k);
  MatrixSym ie = iota_matrix(n, k + 1) * epsilon_matrix(n, k);
  MatrixSym d = ei - ie;
  for (auto& s : d.e) s = Symbol(s.num, s.pole + 1);  // divide by |xi|^2
  return d;
}

Poly trace_bisymbol_numerator(int n) {
  MatrixSym s = leading_symbol_F(n);
  int N = s.rows;
  // numerators of sigma entries are quadratics over |xi|^2
  Poly acc(2 * n);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const Poly& a = s.at(i, j).num;
      const Poly& b = s.at(j, i).num;
      if (a.is_zero() || b.is_zero()) continue;
      // embed a in xi-vars, b in eta-vars, multiply
      for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) acc.add_term(ka + (kb << (4 * n)), ca * cb);
    }
  return acc;
}

std::pair<Rational, Rational> trace_pair(int n) {
  Poly num = trace_bisymbol_numerator(n);  // = tr * |xi|^2 |eta|^2
  // Solve tr = a <xi,eta>^2/(|xi|^2|eta|^2) + b from two rational
  // evaluation points, then check the exact residual.
  auto eval_at = [&](const std::vector<Rational>& xi, const std::vector<Rational>& eta,
                     Rational& lhs, Rational& basis1) {
    std::vector<Rational> x;
    x.insert(x.end(), xi.begin(), xi.end());
    x.insert(x.end(), eta.begin(), eta.end());
    Rational nx = 0, ne = 0, dot = 0;
    for (int i = 0; i < n; ++i) {
      nx += xi[i] * xi[i];
      ne += eta[i] * eta[i];
      dot += xi[i] * eta[i];
    }
    Rational denom = nx * ne;
    lhs = num.eval(x) / denom;
    basis1 = dot * dot / denom;
  };
  std::vector<Rational> xi1(n, 0), eta1(n, 0), xi2(n, 0), eta2(n, 0);
  xi1[0] = 1;
  eta1[0] = 1;  // parallel: basis1 = 1
  xi2[0] = 1;
  eta2[n > 1 ? 1 : 0] = 1;  // orthogonal when n > 1: basis1 = 0
  Rational l1, b1, l2, b2;
  eval_at(xi1, eta1, l1, b1);
  eval_at(xi2, eta2, l2, b2);
  // two equations a*b1 + b = l1, a*b2 + b = l2
  Rational det = b1 - b2;
  if (det == 0) throw std::runtime_error("trace_pair: degenerate evaluation points");
  Rational a = (l1 - l2) / det;
  Rational b = l1 - a * b1;

  // exact residual: num - a <xi,eta>^2 - b |xi|^2 |eta|^2 == 0
  Poly dot(2 * n), nx(2 * n), ne(2 * n);
  for (int i = 0; i < n; ++i) {
    MultiIndex e(2 * n, 0);
    e[i] = 1;
    e[n + i] = 1;
    dot += Poly::monomial(2 * n, e, 1);
    MultiIndex ex(2 * n, 0);
    ex[i] = 2;
    nx += Poly::monomial(2 * n, ex, 1);
    MultiIndex ee(2 * n, 0);
    ee[n + i] = 2;
    ne += Poly::monomial(2 * n, ee, 1);
  }
  Poly resid = num - a * (dot * dot) - b * (nx * ne);
  if (!resid.is_zero())
    throw std::runtime_error("trace_pair: trace not in the two-term basis span");
  return {a, b};
}

}  // namespace wres
