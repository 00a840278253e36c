#include "wres/tensor_rewrite.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace wres::tensor {

namespace {

Expr single(const Factor& f, const Rational& c = 1) {
  Expr e;
  e.add_term(Term{{f}, 0}, Lin(c));
  return e;
}

Expr spectators_of(const Term& t, size_t skip) {
  Expr e;
  Term s;
  for (size_t i = 0; i < t.fs.size(); ++i)
    if (i != skip) s.fs.push_back(t.fs[i]);
  e.add_term(std::move(s), Lin(1));
  return e;
}

}  // namespace

Expr riemann_decompose(const Expr& e) {
  if (e.mode != Mode::Covariant)
    throw std::invalid_argument("riemann_decompose needs covariant mode");
  Expr r;
  bool again = false;
  for (const auto& [t, c] : e.terms) {
    size_t pos = t.fs.size();
    for (size_t i = 0; i < t.fs.size(); ++i)
      if (t.fs[i].head == Head::R || t.fs[i].head == Head::Rc) {
        pos = i;
        break;
      }
    if (pos == t.fs.size()) {
      r.add_term(t, c);
      continue;
    }
    again = true;
    const Factor& f = t.fs[pos];
    Expr rep;
    if (f.head == Head::Rc) {
      // Rc = 4 V + J g in dimension 6
      int i = f.idx[0], j = f.idx[1];
      rep.add_term(Term{{Factor{Head::V, {i, j}, f.der}}, 0}, Lin(4));
      rep.add_term(
          Term{{Factor{Head::J, {}, f.der}, Factor{Head::G, {i, j}, {}}}, 0},
          Lin(1));
    } else {
      // R_{ijkl} = W_{ijkl} - V_{jk} g_{il} + V_{jl} g_{ik}
      //                      - V_{il} g_{jk} + V_{ik} g_{jl}
      int i = f.idx[0], j = f.idx[1], k = f.idx[2], l = f.idx[3];
      rep.add_term(Term{{Factor{Head::W, {i, j, k, l}, f.der}}, 0}, Lin(1));
      auto vg = [&](int a, int b, int x, int y, long s) {
        rep.add_term(Term{{Factor{Head::V, {a, b}, f.der},
                           Factor{Head::G, {x, y}, {}}},
                          0},
                     Lin(s));
      };
      vg(j, k, i, l, -1);
      vg(j, l, i, k, 1);
      vg(i, l, j, k, -1);
      vg(i, k, j, l, 1);
    }
    r.add(rep.mul(spectators_of(t, pos)).scaled(c));
  }
  return again ? riemann_decompose(r) : r;
}

namespace {

// T_{A;..uv} - T_{A;..vu} = sum over slots inside the swap of
// R_{m slot u v} T(slot -> m); sign verified against the jet oracle.
// `cut` is the position of u in der; v sits at cut+1; slots der[cut+2..]
// are reapplied with nabla afterwards.
Expr ricci_row(const Term& t, size_t fi, size_t cut) {
  const Factor& f = t.fs[fi];
  int u = f.der[cut], v = f.der[cut + 1];
  std::vector<int> inner(f.der.begin(), f.der.begin() + cut);

  Factor s1{f.head, f.idx, inner};
  s1.der.push_back(u);
  s1.der.push_back(v);
  Factor s2{f.head, f.idx, inner};
  s2.der.push_back(v);
  s2.der.push_back(u);

  Expr e = single(s1) - single(s2);
  auto corr = [&](std::vector<int> idx, std::vector<int> der, size_t slot,
                  bool in_der) {
    int m = fresh_label();
    int lab = in_der ? der[slot] : idx[slot];
    (in_der ? der[slot] : idx[slot]) = m;
    Expr c;
    c.add_term(Term{{Factor{Head::R, {m, lab, u, v}, {}},
                     Factor{f.head, std::move(idx), std::move(der)}},
                    0},
               Lin(1));
    return c;
  };
  for (size_t s = 0; s < f.idx.size(); ++s) e.sub(corr(f.idx, inner, s, false));
  for (size_t s = 0; s < inner.size(); ++s) e.sub(corr(f.idx, inner, s, true));

  for (size_t p = cut + 2; p < f.der.size(); ++p) e = nabla(e, f.der[p]);
  return riemann_decompose(e.mul(spectators_of(t, fi)));
}

// W_{i jkl} + W_{i klj} + W_{i ljk} = 0, derivative slots unchanged.
Expr bianchi1_row(const Term& t, size_t fi) {
  const Factor& f = t.fs[fi];
  int i = f.idx[0], j = f.idx[1], k = f.idx[2], l = f.idx[3];
  Expr e = single(Factor{f.head, {i, j, k, l}, f.der}) +
           single(Factor{f.head, {i, k, l, j}, f.der}) +
           single(Factor{f.head, {i, l, j, k}, f.der});
  return riemann_decompose(e.mul(spectators_of(t, fi)));
}

// Second Bianchi, decomposed: for the cyclic trio (a, b, c),
//   sum_cyc W_{de bc;a} = sum_cyc (V ^ g)_{de bc;a},
// where (V ^ g)_{debc} = V_{eb} g_{dc} - V_{ec} g_{db}
//                      + V_{dc} g_{eb} - V_{db} g_{ec}.
Expr bianchi2_row(const Term& t, size_t fi) {
  const Factor& f = t.fs[fi];
  int d = f.idx[0], e0 = f.idx[1], b = f.idx[2], c = f.idx[3];
  int a = f.der[0];
  std::vector<int> outer(f.der.begin() + 1, f.der.end());

  Expr e;
  auto wterm = [&](int x, int y, int lead) {
    std::vector<int> der{lead};
    der.insert(der.end(), outer.begin(), outer.end());
    // outer derivatives of a product with parallel g sit on the W/V
    // factor alone, so appending them wholesale is exact
    e.add_term(Term{{Factor{Head::W, {d, e0, x, y}, der}}, 0}, Lin(1));
  };
  auto vgterms = [&](int x, int y, int lead) {
    std::vector<int> der{lead};
    der.insert(der.end(), outer.begin(), outer.end());
    auto one = [&](int p, int q, int r, int s, long sg) {
      e.add_term(Term{{Factor{Head::V, {p, q}, der},
                       Factor{Head::G, {r, s}, {}}},
                      0},
                 Lin(-sg));
    };
    one(e0, x, d, y, 1);
    one(e0, y, d, x, -1);
    one(d, y, e0, x, 1);
    one(d, x, e0, y, -1);
  };
  wterm(b, c, a);
  wterm(c, a, b);
  wterm(a, b, c);
  vgterms(b, c, a);
  vgterms(c, a, b);
  vgterms(a, b, c);
  return riemann_decompose(e.mul(spectators_of(t, fi)));
}

// V_{a m;m} = J_{;a} (twice-contracted second Bianchi); fires on V
// factors whose leading derivative label pairs with a base slot.
Expr vdiv_row(const Term& t, size_t fi) {
  const Factor& f = t.fs[fi];
  int m = f.der[0];
  int a = f.idx[0] == m ? f.idx[1] : f.idx[0];
  std::vector<int> outer(f.der.begin() + 1, f.der.end());
  int q = fresh_label();
  std::vector<int> vder{q};
  vder.insert(vder.end(), outer.begin(), outer.end());
  std::vector<int> jder{a};
  jder.insert(jder.end(), outer.begin(), outer.end());
  Expr e;
  e.add_term(Term{{Factor{Head::V, {a, q}, vder}}, 0}, Lin(1));
  e.add_term(Term{{Factor{Head::J, {}, jder}}, 0}, Lin(-1));
  return e.mul(spectators_of(t, fi));
}

// Conformally flat only: V_{i j;k ...} = V_{i k;j ...} (vanishing
// Cotton tensor; any outer derivatives apply to the zero difference).
Expr cotton_row(const Term& t, size_t fi) {
  const Factor& f = t.fs[fi];
  Factor b = f;
  std::swap(b.idx[1], b.der[0]);
  Expr e = single(f) - single(b);
  return e.mul(spectators_of(t, fi));
}

}  // namespace

std::vector<Expr> relation_rows(const std::vector<Term>& support) {
  std::vector<Expr> rows;
  auto push = [&](Expr e) {
    if (!e.is_zero()) rows.push_back(std::move(e));
  };
  for (const Term& t : support) {
    for (size_t fi = 0; fi < t.fs.size(); ++fi) {
      const Factor& f = t.fs[fi];
      for (size_t cut = 0; cut + 1 < f.der.size(); ++cut)
        push(ricci_row(t, fi, cut));
      if (f.head == Head::W || f.head == Head::R) {
        push(bianchi1_row(t, fi));
        if (!f.der.empty()) push(bianchi2_row(t, fi));
      }
      if (f.head == Head::V && !f.der.empty() &&
          (f.der[0] == f.idx[0] || f.der[0] == f.idx[1]))
        push(vdiv_row(t, fi));
    }
  }
  return rows;
}

namespace {

using Row = std::map<Term, Rational>;

Row to_row(const Expr& e) {
  Row r;
  for (const auto& [t, c] : e.terms) {
    if (!c.is_constant())
      throw std::logic_error("relation row with unknown coefficient");
    r[t] = c.c;
  }
  return r;
}

// pivot = largest term under the Term ordering; pivot rows are
// normalized to leading coefficient 1
struct TermGreater {
  bool operator()(const Term& a, const Term& b) const { return b < a; }
};

struct Eliminator {
  std::map<Term, Row, TermGreater> pivots;

  void reduce_row(Row& r) const {
    while (!r.empty()) {
      auto lead = r.rbegin()->first;
      auto it = pivots.find(lead);
      if (it == pivots.end()) return;
      Rational s = r.rbegin()->second;
      for (const auto& [t, c] : it->second) {
        auto jt = r.find(t);
        Rational nv = (jt == r.end() ? Rational(0) : jt->second) - s * c;
        if (nv == 0) {
          if (jt != r.end()) r.erase(jt);
        } else if (jt == r.end()) {
          r.emplace(t, nv);
        } else {
          jt->second = nv;
        }
      }
    }
  }

  void insert(Row r) {
    reduce_row(r);
    if (r.empty()) return;
    Rational lc = r.rbegin()->second;
    for (auto& [t, c] : r) c /= lc;
    Term lead = r.rbegin()->first;
    pivots.emplace(std::move(lead), std::move(r));
  }

  // componentwise reduction of a Lin-valued vector by the rational span
  void reduce_expr(Expr& e) const {
    while (!e.terms.empty()) {
      bool hit = false;
      for (auto it = e.terms.rbegin(); it != e.terms.rend(); ++it) {
        auto pt = pivots.find(it->first);
        if (pt == pivots.end()) continue;
        Lin s = it->second;
        for (const auto& [t, c] : pt->second) {
          auto jt = e.terms.find(t);
          Lin nv = (jt == e.terms.end() ? Lin() : jt->second);
          nv += s * (-c);
          if (nv.is_zero()) {
            if (jt != e.terms.end()) e.terms.erase(jt);
          } else if (jt == e.terms.end()) {
            e.terms.emplace(t, nv);
          } else {
            jt->second = nv;
          }
        }
        hit = true;
        break;
      }
      if (!hit) return;
    }
  }
};

}  // namespace

namespace {

Expr reduce_impl(const Expr& e, int depth, bool with_divergences,
                 bool conformally_flat) {
  Expr work = riemann_decompose(e);
  if (conformally_flat) work = drop_weyl(work);
  std::set<Term> support;
  for (const auto& [t, c] : work.terms) support.insert(t);

  Eliminator el;
  std::set<Term> generated;  // anchors already expanded into rows
  for (int iter = 0; iter <= depth && !work.is_zero(); ++iter) {
    std::vector<Term> sup;
    for (const Term& t : support)
      if (generated.insert(t).second) sup.push_back(t);
    if (sup.empty()) break;
    auto rows = relation_rows(sup);
    if (with_divergences) {
      auto dr = divergence_rows(sup);
      rows.insert(rows.end(), std::make_move_iterator(dr.begin()),
                  std::make_move_iterator(dr.end()));
    }
    if (conformally_flat) {
      for (const Term& t : sup)
        for (size_t fi = 0; fi < t.fs.size(); ++fi)
          if (t.fs[fi].head == Head::V && !t.fs[fi].der.empty()) {
            Expr r = cotton_row(t, fi);
            if (!r.is_zero()) rows.push_back(std::move(r));
          }
      for (auto& r : rows) r = drop_weyl(r);
    }
    size_t before = support.size();
    for (auto& r : rows) {
      if (r.is_zero()) continue;
      for (const auto& [t, c] : r.terms) support.insert(t);
      el.insert(to_row(r));
    }
    el.reduce_expr(work);
    if (support.size() == before) break;
  }
  return work;
}

}  // namespace

Expr drop_weyl(const Expr& e) {
  Expr out(e.mode);
  for (const auto& [t, c] : e.terms) {
    bool has_w = false;
    for (const Factor& f : t.fs)
      if (f.head == Head::W) has_w = true;
    if (!has_w) out.add_term(t, c);
  }
  return out;
}

Expr reduce_conformally_flat(const Expr& e, int depth) {
  return reduce_impl(e, depth, false, true);
}

bool is_zero_conformally_flat(const Expr& e, int depth) {
  return reduce_conformally_flat(e, depth).is_zero();
}

Expr reduce_functional_conformally_flat(const Expr& e, int depth) {
  return reduce_impl(e, depth, true, true);
}

bool is_zero_functional_conformally_flat(const Expr& e, int depth) {
  return reduce_functional_conformally_flat(e, depth).is_zero();
}

std::vector<Expr> divergence_rows(const std::vector<Term>& support) {
  std::vector<Expr> rows;
  std::set<Term> seen;
  for (const Term& t : support) {
    for (size_t fi = 0; fi < t.fs.size(); ++fi) {
      if (t.fs[fi].der.empty()) continue;
      Term x = t;
      int u = x.fs[fi].der.back();
      x.fs[fi].der.pop_back();
      if (!seen.insert(x).second) continue;
      Expr xe;
      xe.add_term(x, Lin(1));
      Expr row = riemann_decompose(nabla(xe, u));
      if (!row.is_zero()) rows.push_back(std::move(row));
    }
  }
  return rows;
}

Expr reduce_by_relations(const Expr& e, int depth) {
  return reduce_impl(e, depth, false, false);
}

Expr reduce_functional(const Expr& e, int depth) {
  return reduce_impl(e, depth, true, false);
}

bool is_zero_functional(const Expr& e, int depth) {
  return reduce_functional(e, depth).is_zero();
}

bool is_zero_mod_relations(const Expr& e, int depth) {
  return reduce_by_relations(e, depth).is_zero();
}

namespace {

std::vector<Constraint> read_constraints(const Expr& red) {
  std::vector<Constraint> cs;
  for (const auto& [t, c] : red.terms)
    cs.push_back(Constraint{c.u, c.c, term_str(t)});
  return cs;
}

}  // namespace

std::vector<Constraint> constraints_of(const Expr& e, int depth) {
  return read_constraints(reduce_by_relations(e, depth));
}

std::vector<Constraint> functional_constraints_of(const Expr& e, int depth) {
  return read_constraints(reduce_functional(e, depth));
}

std::map<std::string, Rational> solve_constraints(
    const std::vector<Constraint>& cs) {
  // echelon over the unknowns, in name order
  std::vector<std::pair<std::map<std::string, Rational>, Rational>> rows;
  for (const auto& c : cs) rows.push_back({c.coeff, c.rhs});

  std::map<std::string, std::pair<std::map<std::string, Rational>, Rational>>
      pivots;
  for (auto& [co, rhs] : rows) {
    auto reduce = [&]() {
      for (bool again = true; again;) {
        again = false;
        for (const auto& [name, pr] : pivots) {
          auto it = co.find(name);
          if (it == co.end()) continue;
          Rational s = it->second;
          co.erase(it);
          for (const auto& [n2, v2] : pr.first) {
            co[n2] -= s * v2;
            if (co[n2] == 0) co.erase(n2);
          }
          rhs -= s * pr.second;
          again = true;
          break;
        }
      }
    };
    reduce();
    if (co.empty()) {
      if (rhs != 0) throw std::runtime_error("inconsistent constraints");
      continue;
    }
    auto lead = co.begin();
    Rational lc = lead->second;
    std::string name = lead->first;
    std::map<std::string, Rational> nc;
    for (const auto& [n, v] : co)
      if (n != name) nc[n] = v / lc;
    pivots[name] = {std::move(nc), rhs / lc};
  }
  // back-substitute
  std::map<std::string, Rational> out;
  for (bool again = true; again;) {
    again = false;
    for (auto& [name, pr] : pivots) {
      if (out.count(name)) continue;
      bool ready = true;
      Rational v = -pr.second;
      for (const auto& [n2, v2] : pr.first) {
        auto it = out.find(n2);
        if (it == out.end()) {
          ready = false;
          break;
        }
        v -= v2 * it->second;
      }
      if (ready) {
        out[name] = v;
        again = true;
      }
    }
  }
  for (const auto& [name, pr] : pivots)
    if (!out.count(name))
      throw std::runtime_error("constraint on " + name +
                               " mixes undetermined unknowns");
  return out;
}

}  // namespace wres::tensor
