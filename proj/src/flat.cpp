#include "wres/flat.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <vector>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "wres/exterior.hpp"
#include "wres/sphere.hpp"

namespace wres {

namespace {

// Integral of A*B over the sphere without forming the product: moments
// vanish unless every exponent of ka+kb is even, i.e. unless ka and kb
// have equal parity patterns, so bucket both factors by parity first.
class SphereIntegrator {
 public:
  explicit SphereIntegrator(int n) : n_(n) {}

  Rational moment_cached(std::uint64_t key) {
    auto it = moments_.find(key);
    if (it != moments_.end()) return it->second;
    Rational m = moment(Poly::unpack(key, n_), n_);
    moments_.emplace(key, m);
    return m;
  }

  Rational integrate(const Poly& p) {
    Rational s = 0;
    for (const auto& [k, c] : p.terms()) s += c * moment_cached(k);
    return s;
  }

  Rational integrate_product(const Poly& a, const Poly& b) {
    auto bucket = [&](const Poly& p) {
      std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, Rational>>> out;
      for (const auto& [k, c] : p.terms()) out[parity(k)].emplace_back(k, c);
      return out;
    };
    auto ba = bucket(a);
    auto bb = bucket(b);
    Rational s = 0;
    for (const auto& [par, ta] : ba) {
      auto it = bb.find(par);
      if (it == bb.end()) continue;
      for (const auto& [ka, ca] : ta)
        for (const auto& [kb, cb] : it->second) s += ca * cb * moment_cached(ka + kb);
    }
    return s;
  }

 private:
  std::uint64_t parity(std::uint64_t k) const {
    std::uint64_t mask = 0;
    for (int i = 0; i < n_; ++i) mask |= (k >> (4 * i)) & (std::uint64_t(1) << (4 * i));
    return mask;
  }
  int n_;
  std::unordered_map<std::uint64_t, Rational> moments_;
};

// Simultaneous coordinate permutations leave both the trace function
// and the sphere measure invariant, so pair-trace integrals only
// depend on the multiset of columns (gamma_i, delta_i).
std::pair<std::uint64_t, std::uint64_t> orbit_key(const MultiIndex& g,
                                                 const MultiIndex& d) {
  std::vector<std::pair<int, int>> cols(g.size());
  for (size_t i = 0; i < g.size(); ++i) cols[i] = {g[i], d[i]};
  std::sort(cols.begin(), cols.end(), std::greater<>());
  MultiIndex cg(g.size()), cd(g.size());
  for (size_t i = 0; i < g.size(); ++i) {
    cg[i] = cols[i].first;
    cd[i] = cols[i].second;
  }
  return {Poly::pack(cg), Poly::pack(cd)};
}

// Per-dimension machinery for both flat routes.
class FlatCtx {
 public:
  explicit FlatCtx(int n) : n_(n), integ_(n) {
    // Psi terms: tr(sigma(xi) sigma(eta)) * |xi|^2 |eta|^2 decomposed
    // as sum c * xi^p * eta^q with p, q quadratic.
    Poly num = trace_bisymbol_numerator(n);
    std::uint64_t lowmask = (n == 16) ? ~std::uint64_t(0)
                                      : ((std::uint64_t(1) << (4 * n)) - 1);
    for (const auto& [k, c] : num.terms())
      psi_.push_back({c, k & lowmask, k >> (4 * n)});
  }

  // del^gamma (xi^p / |xi|^2), memoized.
  const Symbol& dmono(std::uint64_t gkey, std::uint64_t pkey) {
    auto key = std::make_pair(gkey, pkey);
    auto it = dmono_.find(key);
    if (it != dmono_.end()) return it->second;
    Symbol s(0 == gkey ? Symbol(Poly::monomial(n_, Poly::unpack(pkey, n_), 1), 1)
                       : Symbol::zero(n_));
    if (gkey != 0) {
      int var = -1;
      for (int i = 0; i < n_; ++i)
        if (Poly::exp_of(gkey, i) > 0) {
          var = i;
          break;
        }
      std::uint64_t prev = gkey - (std::uint64_t(1) << (4 * var));
      s = xi_derivative(dmono(prev, pkey), var);
    }
    return dmono_.emplace(key, std::move(s)).first->second;
  }

  // I(gamma, delta) = int tr(del^gamma sigma * del^delta sigma), via the
  // per-term factorization of the two-variable trace.
  Rational pair_trace(const MultiIndex& gamma, const MultiIndex& delta) {
    auto key = orbit_key(gamma, delta);
    auto it = ptrace_.find(key);
    if (it != ptrace_.end()) return it->second;
    MultiIndex cg = Poly::unpack(key.first, n_);
    MultiIndex cd = Poly::unpack(key.second, n_);
    std::uint64_t gk = Poly::pack(cg), dk = Poly::pack(cd);
    Rational s = 0;
    for (const auto& t : psi_) {
      const Symbol& A = dmono(gk, t.p);
      if (A.is_zero()) continue;
      const Symbol& B = dmono(dk, t.q);
      if (B.is_zero()) continue;
      s += t.c * integ_.integrate_product(A.num, B.num);
    }
    ptrace_.emplace(key, s);
    return s;
  }

  // Same integral but for the closed two-term form of psi; only the
  // <xi,eta>^2 part survives derivatives.
  Rational taylor_pair(const Rational& a, const MultiIndex& beta,
                       const MultiIndex& delta) {
    auto key = orbit_key(beta, delta);
    auto it = taylor_.find(key);
    if (it != taylor_.end()) return it->second;
    MultiIndex cb = Poly::unpack(key.first, n_);
    MultiIndex cd = Poly::unpack(key.second, n_);
    std::uint64_t bk = Poly::pack(cb), dk = Poly::pack(cd);
    Rational s = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = i; j < n_; ++j) {
        MultiIndex p = mi_zero(n_);
        p[i] += 1;
        p[j] += 1;
        std::uint64_t pk = Poly::pack(p);
        const Symbol& A = dmono(bk, pk);
        if (A.is_zero()) continue;
        const Symbol& B = dmono(dk, pk);
        if (B.is_zero()) continue;
        Rational w = (i == j) ? a : 2 * a;  // xi_i xi_j eta_i eta_j multiplicity
        s += w * integ_.integrate_product(A.num, B.num);
      }
    taylor_.emplace(key, s);
    return s;
  }

  SphereIntegrator& integrator() { return integ_; }

 private:
  struct PsiTerm {
    Rational c;
    std::uint64_t p, q;
  };
  int n_;
  SphereIntegrator integ_;
  std::vector<PsiTerm> psi_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, Symbol> dmono_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, Rational> ptrace_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, Rational> taylor_;
};

FlatCtx& ctx_for(int n) {
  static std::mutex m;
  static std::map<int, std::unique_ptr<FlatCtx>> ctxs;
  std::lock_guard<std::mutex> lock(m);
  auto it = ctxs.find(n);
  if (it == ctxs.end()) it = ctxs.emplace(n, std::make_unique<FlatCtx>(n)).first;
  return *it->second;
}

}  // namespace

Rational pair_trace_integral_literal(int n, const MultiIndex& gamma,
                                     const MultiIndex& delta) {
  static std::mutex m;
  static std::map<int, std::map<std::uint64_t, MatrixSym>> caches;
  std::lock_guard<std::mutex> lock(m);
  auto& cache = caches[n];
  std::function<const MatrixSym&(const MultiIndex&)> get =
      [&](const MultiIndex& g) -> const MatrixSym& {
    auto key = Poly::pack(g);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    if (mi_order(g) == 0)
      return cache.emplace(key, leading_symbol_F(n)).first->second;
    MultiIndex prev = g;
    int var = -1;
    for (int i = 0; i < n; ++i)
      if (g[i] > 0) {
        var = i;
        break;
      }
    prev[var] -= 1;
    MatrixSym mm = get(prev).derivative(var);
    return cache.emplace(key, std::move(mm)).first->second;
  };
  Symbol t = trace_product(get(gamma), get(delta));
  return integrate_symbol(t, n);
}

Rational pair_trace_integral(int n, const MultiIndex& gamma, const MultiIndex& delta) {
  return ctx_for(n).pair_trace(gamma, delta);
}

CoefficientTable omega_flat_direct(int n) {
  if (n % 2 != 0) throw std::invalid_argument("omega_flat_direct: n must be even");
  FlatCtx& ctx = ctx_for(n);
  CoefficientTable t;
  t.n = n;
  t.convention = Convention::D;
  for_each_split(n, n, {0, 1, 1}, [&](const std::vector<MultiIndex>& s) {
    const MultiIndex& alpha = s[0];
    const MultiIndex& beta = s[1];
    const MultiIndex& delta = s[2];
    Rational I = ctx.pair_trace(mi_add(alpha, beta), delta);
    if (I == 0) return;
    Rational coeff = I / Rational(mi_factorial(alpha) * mi_factorial(beta) *
                                  mi_factorial(delta));
    t.add(beta, mi_add(alpha, delta), coeff);
  });
  return t;
}

CoefficientTable omega_flat_taylor(int n) {
  if (n % 2 != 0) throw std::invalid_argument("omega_flat_taylor: n must be even");
  auto [a, b] = trace_pair(n);
  (void)b;  // the constant term never survives the derivatives
  FlatCtx& ctx = ctx_for(n);
  CoefficientTable t;
  t.n = n;
  t.convention = Convention::D;
  // sum over |beta|+|delta| = n, both >= 1; expand (u+v)^beta v^delta - v^{beta+delta}
  for_each_split(n, n, {1, 1}, [&](const std::vector<MultiIndex>& s) {
    const MultiIndex& beta = s[0];
    const MultiIndex& delta = s[1];
    Rational c = ctx.taylor_pair(a, beta, delta);
    if (c == 0) return;
    c /= Rational(mi_factorial(beta) * mi_factorial(delta));
    // coefficient of u^av^{beta-a+delta} in (u+v)^beta v^delta, a != 0
    std::function<void(int, MultiIndex&, Integer)> rec = [&](int pos, MultiIndex& acur,
                                                             Integer mult) {
      if (pos == n) {
        if (mi_order(acur) == 0) return;
        MultiIndex bpart = delta;
        for (int i = 0; i < n; ++i) bpart[i] += beta[i] - acur[i];
        t.add(acur, bpart, c * Rational(mult));
        return;
      }
      for (int e = 0; e <= beta[pos]; ++e) {
        acur[pos] = e;
        rec(pos + 1, acur, mult * binomial(beta[pos], e));
      }
      acur[pos] = 0;
    };
    MultiIndex acur = mi_zero(n);
    rec(0, acur, 1);
  });
  return t;
}

namespace {

// Display expansions carry the D flag: the covariant-notation displays
// quote the A_{a,b} of the D-convention sum verbatim, so their literal
// coordinate expansion reproduces the D table, not the (-1)^{n/2}-flipped
// partial one.
CoefficientTable table_zero(int n) {
  CoefficientTable t;
  t.n = n;
  t.convention = Convention::D;
  return t;
}

// Delta = -sum partial^2 applied to a bilinear coordinate table.
CoefficientTable apply_lap(const CoefficientTable& in) {
  CoefficientTable out = table_zero(in.n);
  for (const auto& [k, c] : in.entries)
    for (int i = 0; i < in.n; ++i) {
      MultiIndex a = k.first, b = k.second;
      a[i] += 2;
      out.add(a, k.second, -c);
      a[i] -= 1;
      MultiIndex b1 = b;
      b1[i] += 1;
      out.add(a, b1, -2 * c);
      b[i] += 2;
      out.add(k.first, b, -c);
    }
  return out;
}

CoefficientTable pattern_table(const std::string& name, int n) {
  CoefficientTable t = table_zero(n);
  if (name == "inner") {
    for (int i = 0; i < n; ++i) t.add(mi_unit(n, i), mi_unit(n, i), 1);
  } else if (name == "lap_inner" || name == "lap2_inner") {
    t = pattern_table("inner", n);
    t = apply_lap(t);
    if (name == "lap2_inner") t = apply_lap(t);
  } else if (name == "lap_prod") {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        MultiIndex a = mi_zero(n), b = mi_zero(n);
        a[i] = 2;
        b[j] = 2;
        t.add(a, b, 1);
      }
    t = apply_lap(t);
  } else if (name == "grad_lap") {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          MultiIndex a = mi_unit(n, i), b = mi_unit(n, i);
          a[j] += 2;
          b[k] += 2;
          t.add(a, b, 1);
        }
  } else if (name == "hess") {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        t.add(mi_add(mi_unit(n, i), mi_unit(n, j)), mi_add(mi_unit(n, i), mi_unit(n, j)),
              1);
  } else if (name == "lap_hess") {
    t = apply_lap(pattern_table("hess", n));
  } else if (name == "hess3") {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          MultiIndex a = mi_add(mi_add(mi_unit(n, i), mi_unit(n, j)), mi_unit(n, k));
          t.add(a, a, 1);
        }
  } else {
    throw std::invalid_argument("unknown invariant pattern: " + name);
  }
  return t;
}

}  // namespace

CoefficientTable expand_invariant(const InvariantExpression& e, int n) {
  CoefficientTable out = table_zero(n);
  for (const auto& term : e) {
    CoefficientTable p = pattern_table(term.pattern, n);
    for (const auto& [k, c] : p.entries) out.add(k.first, k.second, c * term.coeff);
  }
  return out;
}

InvariantExpression omega6_flat_symmetric_display() {
  return {{rat(12), "lap2_inner"},
          {rat(-6), "lap_prod"},
          {rat(-12), "grad_lap"},
          {rat(24), "lap_hess"},
          {rat(16), "hess3"}};
}

CoefficientTable omega6_flat_index_display(int n) {
  CoefficientTable t = table_zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        MultiIndex ei = mi_unit(n, i);
        MultiIndex i_jjkk = mi_unit(n, i);
        i_jjkk[j] += 2;
        i_jjkk[k] += 2;
        // 12 (f_i h_{ijjkk} + f_{ijjkk} h_i)
        t.add(ei, i_jjkk, 12);
        t.add(i_jjkk, ei, 12);
        MultiIndex ij = mi_add(mi_unit(n, i), mi_unit(n, j));
        MultiIndex ijkk = ij;
        ijkk[k] += 2;
        // 24 (f_{ij} h_{ijkk} + f_{ijkk} h_{ij})
        t.add(ij, ijkk, 24);
        t.add(ijkk, ij, 24);
        MultiIndex ii = mi_zero(n);
        ii[i] = 2;
        MultiIndex jjkk = mi_zero(n);
        jjkk[j] += 2;
        jjkk[k] += 2;
        // 6 (f_{ii} h_{jjkk} + f_{jjkk} h_{ii})  [written with (iijj, kk) in the paper]
        t.add(ii, jjkk, 6);
        t.add(jjkk, ii, 6);
        MultiIndex ijj = mi_unit(n, i);
        ijj[j] += 2;
        MultiIndex ikk = mi_unit(n, i);
        ikk[k] += 2;
        // 24 f_{ijj} h_{ikk}
        t.add(ijj, ikk, 24);
        MultiIndex ijk = mi_add(ij, mi_unit(n, k));
        // 16 f_{ijk} h_{ijk}
        t.add(ijk, ijk, 16);
      }
  return t;
}

std::map<MultiIndex, Rational> ibp_extract(const CoefficientTable& t) {
  std::map<MultiIndex, Rational> op;
  for (const auto& [k, c] : t.entries) {
    Rational s = (mi_order(k.first) % 2 == 0) ? c : -c;
    MultiIndex d = mi_add(k.first, k.second);
    op[d] += s;
    if (op[d] == 0) op.erase(d);
  }
  return op;
}

std::map<MultiIndex, Rational> laplacian_power_table(int n, int p) {
  std::map<MultiIndex, Rational> op;
  op[mi_zero(n)] = 1;
  for (int it = 0; it < p; ++it) {
    std::map<MultiIndex, Rational> next;
    for (const auto& [d, c] : op)
      for (int i = 0; i < n; ++i) {
        MultiIndex d2 = d;
        d2[i] += 2;
        next[d2] -= c;
        if (next[d2] == 0) next.erase(d2);
      }
    op = std::move(next);
  }
  return op;
}

}  // namespace wres
