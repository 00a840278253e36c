#include "wres/jets.hpp"

#include <map>
#include <stdexcept>

namespace wres {

namespace {

// Memoized xi-derivatives of sigma_L^F keyed by multi-index.
class DerivCache {
 public:
  explicit DerivCache(int n) : n_(n) { cache_[Poly::pack(mi_zero(n))] = leading_symbol_F(n); }

  const MatrixSym& get(const MultiIndex& g) {
    auto key = Poly::pack(g);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    // peel one derivative off the first nonzero entry
    MultiIndex prev = g;
    int var = -1;
    for (int i = 0; i < n_; ++i)
      if (g[i] > 0) {
        var = i;
        break;
      }
    prev[var] -= 1;
    MatrixSym m = get(prev).derivative(var);
    return cache_.emplace(key, std::move(m)).first->second;
  }

 private:
  int n_;
  std::map<std::uint64_t, MatrixSym> cache_;
};

}  // namespace

JetSymbol commutator_sigma(int k, int n) {
  if (k < 1) throw std::invalid_argument("commutator_sigma: k must be >= 1");
  DerivCache dc(n);
  JetSymbol out;
  for (const auto& beta : mi_of_order(n, k)) {
    JetTerm t;
    t.coeff = Rational(1) / Rational(mi_factorial(beta));
    t.ipow = (3 * k) % 4;  // (-i)^k = i^{3k mod 4}
    t.jets = {{0, beta}};
    t.sym = dc.get(beta);
    out.terms.push_back(std::move(t));
  }
  return out;
}

JetSymbol sigma_minus_n_product(int n) {
  if (n % 2 != 0) throw std::invalid_argument("sigma_minus_n_product: n must be even");
  DerivCache dc(n);
  JetSymbol out;
  for_each_split(n, n, {0, 1, 1}, [&](const std::vector<MultiIndex>& s) {
    const MultiIndex& alpha = s[0];
    const MultiIndex& beta = s[1];
    const MultiIndex& delta = s[2];
    JetTerm t;
    t.coeff = Rational(1) / Rational(mi_factorial(alpha) * mi_factorial(beta) *
                                     mi_factorial(delta));
    t.ipow = (3 * n) % 4;  // (-i)^{|beta|+|alpha+delta|} = (-i)^n
    t.jets = {{0, beta}, {1, mi_add(alpha, delta)}};
    t.sym = dc.get(mi_add(alpha, beta)) * dc.get(delta);
    out.terms.push_back(std::move(t));
  });
  return out;
}

JetSymbol trace_density(const JetSymbol& js) {
  JetSymbol out;
  for (const auto& t : js.terms) {
    if (t.sym.rows != t.sym.cols)
      throw std::invalid_argument("trace_density: non-square matrix part");
    JetTerm nt;
    nt.coeff = t.coeff;
    nt.ipow = t.ipow;
    nt.jets = t.jets;
    nt.sym = MatrixSym(1, 1, t.sym.e.empty() ? 0 : t.sym.e.front().dim());
    nt.sym.at(0, 0) = t.sym.trace();
    out.terms.push_back(std::move(nt));
  }
  return out;
}

}  // namespace wres
