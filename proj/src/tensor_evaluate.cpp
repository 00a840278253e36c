#include "wres/tensor_eval.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace wres::tensor {

namespace {

constexpr int N = kDim;

Poly truncated(const Poly& p, int deg) {
  Poly r(p.nvars());
  for (const auto& [k, c] : p.terms())
    if (Poly::key_degree(k, p.nvars()) <= deg) r.add_term(k, c);
  return r;
}

// Truncated product.  Dropping inputs above deg first is safe (their
// products land above deg too) and is what keeps the jet oracle fast.
Poly tmul(const Poly& a, const Poly& b, int deg) {
  return truncated(truncated(a, deg) * truncated(b, deg), deg);
}

Rational value0(const Poly& p) {
  auto it = p.terms().find(0);
  return it == p.terms().end() ? Rational(0) : it->second;
}

int flat_index(const std::vector<int>& ix) {
  int o = 0;
  for (int v : ix) o = o * N + v;
  return o;
}

}  // namespace

Poly& PolyTensor::at(const std::vector<int>& ix) { return e[flat_index(ix)]; }
const Poly& PolyTensor::at(const std::vector<int>& ix) const {
  return e[flat_index(ix)];
}

namespace {

PolyTensor make_tensor(int rank, int nvars) {
  PolyTensor t;
  t.rank = rank;
  int sz = 1;
  for (int i = 0; i < rank; ++i) sz *= N;
  t.e.assign(sz, Poly(nvars));
  return t;
}

// nabla applied to an all-lower tensor; entries truncated to deg.
PolyTensor cov_derivative(const PolyTensor& t, const std::vector<Poly>& gamma,
                          int deg) {
  PolyTensor r = make_tensor(t.rank + 1, N);
  std::vector<int> ix(t.rank + 1, 0);
  int sz = static_cast<int>(r.e.size());
  for (int off = 0; off < sz; ++off) {
    int rem = off;
    for (int s = t.rank; s >= 0; --s) {
      ix[s] = rem % N;
      rem /= N;
    }
    int u = ix[t.rank];
    std::vector<int> base(ix.begin(), ix.begin() + t.rank);
    Poly val = truncated(t.at(base).derivative(u), deg);
    for (int s = 0; s < t.rank; ++s) {
      int a = base[s];
      std::vector<int> b = base;
      for (int m = 0; m < N; ++m) {
        b[s] = m;
        const Poly& G = gamma[(m * N + u) * N + a];
        if (G.is_zero()) continue;
        val = val - tmul(G, t.at(b), deg);
      }
    }
    r.e[off] = std::move(val);
  }
  return r;
}

}  // namespace

void Jet::prepare() {
  if (prepared) return;
  prepared = true;
  int T = std::max(max_order, curv_order + 2);
  int nv = N;
  // inverse metric by Neumann series: g = I + E, E(0) = 0
  std::vector<Poly> E(N * N, Poly(nv));
  for (int i = 0; i < N * N; ++i) {
    E[i] = g[i];
    if (i % N == i / N) E[i] = E[i] - Poly::constant(nv, 1);
    if (value0(E[i]) != 0) throw std::logic_error("jet metric must be I at 0");
  }
  ginv.assign(N * N, Poly(nv));
  std::vector<Poly> pow(N * N, Poly(nv));
  for (int i = 0; i < N; ++i) pow[i * N + i] = Poly::constant(nv, 1);
  Rational s = 1;
  for (int k = 0; k <= T; ++k) {
    for (int i = 0; i < N * N; ++i) ginv[i] = ginv[i] + pow[i] * s;
    s = -s;
    if (k < T) {
      std::vector<Poly> np(N * N, Poly(nv));
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
          Poly acc(nv);
          for (int l = 0; l < N; ++l) acc = acc + tmul(pow[i * N + l], E[l * N + j], T);
          np[i * N + j] = std::move(acc);
        }
      pow = std::move(np);
    }
  }
  // Christoffel symbols
  gamma.assign(N * N * N, Poly(nv));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = j; k < N; ++k) {
        Poly acc(nv);
        for (int l = 0; l < N; ++l) {
          Poly br = g[l * N + k].derivative(j) + g[l * N + j].derivative(k) -
                    g[j * N + k].derivative(l);
          acc = acc + tmul(ginv[i * N + l], br, T - 1);
        }
        acc = acc * rat(1, 2);
        gamma[(i * N + j) * N + k] = acc;
        gamma[(i * N + k) * N + j] = std::move(acc);
      }
}

const PolyTensor& Jet::field(Head head, int nder) {
  prepare();
  auto key = std::make_pair(static_cast<int>(head), nder);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  int budget = head_scalar(head) ? max_order : curv_order;
  if (nder > budget)
    throw std::logic_error("jet Taylor budget exceeded, raise max_order or "
                           "curv_order");
  PolyTensor t;
  if (nder > 0) {
    const PolyTensor& prev = field(head, nder - 1);
    // entries of the result only need enough Taylor slack for the
    // derivatives still to come; callers at the same nder share this
    t = cov_derivative(prev, gamma, budget - nder);
  } else {
    int nv = N;
    switch (head) {
      case Head::F: t = make_tensor(0, nv); t.e[0] = f; break;
      case Head::H: t = make_tensor(0, nv); t.e[0] = h; break;
      case Head::Eta: t = make_tensor(0, nv); t.e[0] = eta; break;
      case Head::F0: t = make_tensor(0, nv); t.e[0] = f0; break;
      case Head::F1: t = make_tensor(0, nv); t.e[0] = f1; break;
      case Head::F2: t = make_tensor(0, nv); t.e[0] = f2; break;
      case Head::F3: t = make_tensor(0, nv); t.e[0] = f3; break;
      case Head::G: t = make_tensor(2, nv); t.e = g; t.rank = 2; break;
      case Head::R: {
        int T = curv_order;
        // R^i_{jkl} = d_k Gamma^i_{lj} - d_l Gamma^i_{kj}
        //            + Gamma^i_{km} Gamma^m_{lj} - Gamma^i_{lm} Gamma^m_{kj}
        PolyTensor up = make_tensor(4, nv);
        for (int i = 0; i < N; ++i)
          for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
              for (int l = 0; l < N; ++l) {
                Poly v = gamma[(i * N + l) * N + j].derivative(k) -
                         gamma[(i * N + k) * N + j].derivative(l);
                for (int m = 0; m < N; ++m)
                  v = v + tmul(gamma[(i * N + k) * N + m], gamma[(m * N + l) * N + j], T) -
                      tmul(gamma[(i * N + l) * N + m], gamma[(m * N + k) * N + j], T);
                up.at({i, j, k, l}) = truncated(v, T);
              }
        t = make_tensor(4, nv);
        for (int i = 0; i < N; ++i)
          for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
              for (int l = 0; l < N; ++l) {
                Poly v(nv);
                for (int m = 0; m < N; ++m)
                  v = v + tmul(g[i * N + m], up.at({m, j, k, l}), T);
                t.at({i, j, k, l}) = std::move(v);
              }
        break;
      }
      case Head::Rc: {
        const PolyTensor& R = field(Head::R, 0);
        t = make_tensor(2, nv);
        int T = curv_order;
        // Rc_{jl} = R^k_{jkl} = g^{km} R_{mjkl}
        for (int j = 0; j < N; ++j)
          for (int l = 0; l < N; ++l) {
            Poly v(nv);
            for (int k = 0; k < N; ++k)
              for (int m = 0; m < N; ++m)
                v = v + tmul(ginv[k * N + m], R.at({m, j, k, l}), T);
            t.at({j, l}) = std::move(v);
          }
        break;
      }
      case Head::J: {
        const PolyTensor& Rc = field(Head::Rc, 0);
        t = make_tensor(0, nv);
        int T = curv_order;
        Poly sc(nv);
        for (int j = 0; j < N; ++j)
          for (int l = 0; l < N; ++l) sc = sc + tmul(ginv[j * N + l], Rc.at({j, l}), T);
        t.e[0] = sc * rat(1, 2 * (N - 1));
        break;
      }
      case Head::V: {
        const PolyTensor& Rc = field(Head::Rc, 0);
        const Poly& Jp = field(Head::J, 0).e[0];
        t = make_tensor(2, nv);
        int T = curv_order;
        for (int i = 0; i < N; ++i)
          for (int j = 0; j < N; ++j)
            t.at({i, j}) =
                (Rc.at({i, j}) - tmul(Jp, g[i * N + j], T)) * rat(1, N - 2);
        break;
      }
      case Head::W: {
        const PolyTensor& R = field(Head::R, 0);
        const PolyTensor& V = field(Head::V, 0);
        t = make_tensor(4, nv);
        int T = curv_order;
        for (int i = 0; i < N; ++i)
          for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
              for (int l = 0; l < N; ++l)
                t.at({i, j, k, l}) = R.at({i, j, k, l}) +
                                     tmul(V.at({j, k}), g[i * N + l], T) -
                                     tmul(V.at({j, l}), g[i * N + k], T) +
                                     tmul(V.at({i, l}), g[j * N + k], T) -
                                     tmul(V.at({i, k}), g[j * N + l], T);
        break;
      }
    }
  }
  return cache.emplace(key, std::move(t)).first->second;
}

namespace {

Poly random_sparse(std::mt19937_64& rng, int terms, int mindeg, int maxdeg) {
  Poly p(N);
  std::uniform_int_distribution<int> deg(mindeg, maxdeg), var(0, N - 1),
      num(-3, 3), den(1, 3);
  for (int t = 0; t < terms; ++t) {
    int d = deg(rng);
    MultiIndex e(N, 0);
    for (int i = 0; i < d; ++i) ++e[var(rng)];
    int nu = num(rng);
    if (nu == 0) nu = 1;
    p = p + Poly::monomial(N, e, rat(nu, den(rng)));
  }
  // a full set of linear monomials, so first derivatives at the origin
  // never vanish by accident
  if (mindeg <= 1) {
    std::uniform_int_distribution<int> lin(1, 5);
    for (int v = 0; v < N; ++v) {
      MultiIndex e(N, 0);
      e[v] = 1;
      p = p + Poly::monomial(N, e, rat(lin(rng), 1 + v % 2));
    }
  }
  return p;
}

}  // namespace

Jet random_jet(unsigned seed) {
  std::mt19937_64 rng(seed);
  Jet j;
  j.g.assign(N * N, Poly(N));
  for (int i = 0; i < N; ++i)
    for (int k = i; k < N; ++k) {
      Poly p = random_sparse(rng, 3, 1, 4) * rat(1, 4);
      if (i == k) p = p + Poly::constant(N, 1);
      j.g[i * N + k] = p;
      j.g[k * N + i] = p;
    }
  j.f = random_sparse(rng, 14, 1, 7);
  j.h = random_sparse(rng, 14, 1, 7);
  j.eta = random_sparse(rng, 8, 1, 4);
  j.f0 = random_sparse(rng, 6, 0, 3);
  j.f1 = random_sparse(rng, 10, 1, 5);
  j.f2 = random_sparse(rng, 10, 1, 5);
  j.f3 = random_sparse(rng, 10, 1, 5);
  return j;
}

Jet conformally_flat_jet(unsigned seed) {
  std::mt19937_64 rng(seed + 77);
  Jet j;
  j.eta = random_sparse(rng, 6, 1, 4) * rat(1, 3);
  // e^{2 eta}, truncated
  Poly ex = Poly::constant(N, 1), pw = Poly::constant(N, 1);
  Poly twoeta = j.eta * Rational(2);
  Rational inv_fact = 1;
  for (int k = 1; k <= 7; ++k) {
    pw = truncated(pw * twoeta, 7);
    inv_fact /= Rational(k);
    ex = ex + pw * inv_fact;
  }
  j.g.assign(N * N, Poly(N));
  for (int i = 0; i < N; ++i) j.g[i * N + i] = ex;
  j.f = random_sparse(rng, 14, 1, 7);
  j.h = random_sparse(rng, 14, 1, 7);
  j.f0 = random_sparse(rng, 6, 0, 3);
  j.f1 = random_sparse(rng, 10, 1, 5);
  j.f2 = random_sparse(rng, 10, 1, 5);
  j.f3 = random_sparse(rng, 10, 1, 5);
  return j;
}

namespace {

// constant coefficients of a field's entries, cached per (head, nder)
const std::vector<Rational>& flat0(Jet& jet, Head head, int nder) {
  auto key = std::make_pair(static_cast<int>(head), nder);
  auto it = jet.val0.find(key);
  if (it != jet.val0.end()) return it->second;
  const PolyTensor& t = jet.field(head, nder);
  std::vector<Rational> v(t.e.size());
  for (size_t i = 0; i < t.e.size(); ++i) v[i] = value0(t.e[i]);
  return jet.val0.emplace(key, std::move(v)).first->second;
}

}  // namespace

Rational evaluate(const Expr& e, Jet& jet,
                  const std::map<std::string, Rational>& assign) {
  Rational total = 0;
  for (const auto& [t, lin] : e.terms) {
    Rational coeff = lin.c;
    for (const auto& [name, v] : lin.u) {
      auto it = assign.find(name);
      if (it == assign.end())
        throw std::invalid_argument("no value for unknown " + name);
      coeff += v * it->second;
    }
    if (coeff == 0) continue;

    // collect dummy labels
    std::map<int, int> occ;
    for (const auto& f : t.fs) {
      for (int l : f.idx) ++occ[l];
      for (int l : f.der) ++occ[l];
    }
    std::map<int, int> pos;
    for (const auto& [l, k] : occ) {
      if (k != 2) throw std::invalid_argument("free index in evaluated expression");
      int p = static_cast<int>(pos.size());
      pos[l] = p;
    }
    int p = static_cast<int>(pos.size());

    // per factor: value table at the origin and the dummy positions of
    // its slots; a factor is "done" once the deepest of them is assigned
    size_t nf = t.fs.size();
    std::vector<const std::vector<Rational>*> tab(nf);
    std::vector<std::vector<int>> slots(nf);
    std::vector<int> done_at(nf, -1);
    Rational base = coeff;
    for (size_t fi = 0; fi < nf; ++fi) {
      const auto& f = t.fs[fi];
      tab[fi] = &flat0(jet, f.head, static_cast<int>(f.der.size()));
      for (int l : f.idx) slots[fi].push_back(pos[l]);
      for (int l : f.der) slots[fi].push_back(pos[l]);
      for (int s : slots[fi]) done_at[fi] = std::max(done_at[fi], s);
      if (done_at[fi] < 0) base *= (*tab[fi])[0];  // rank-0, no dummies
      if (base == 0) break;
    }
    if (base == 0) continue;

    // backtracking sum over dummy assignments, pruning zero products
    std::vector<int> asg(p, 0);
    Rational sum = 0;
    auto rec = [&](auto&& self, int depth, const Rational& prod) -> void {
      if (depth == p) {
        sum += prod;
        return;
      }
      for (int v = 0; v < N; ++v) {
        asg[depth] = v;
        Rational pr = prod;
        bool zero = false;
        for (size_t fi = 0; fi < nf && !zero; ++fi) {
          if (done_at[fi] != depth) continue;
          size_t off = 0;
          for (int s : slots[fi]) off = off * N + asg[s];
          const Rational& fv = (*tab[fi])[off];
          if (fv == 0)
            zero = true;
          else
            pr *= fv;
        }
        if (!zero) self(self, depth + 1, pr);
      }
    };
    rec(rec, 0, Rational(1));
    total += base * sum;
  }
  return total;
}

}  // namespace wres::tensor
