#include "wres/conformal.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace wres::tensor {

namespace {

Expr single_term(Term t, const Lin& c = Lin(1),
                 Mode mode = Mode::FlatBookkeeping) {
  Expr e(mode);
  e.add_term(std::move(t), c);
  return e;
}

Expr spectators_of(const Term& t, size_t skip, Mode mode) {
  Term s;
  s.weight = t.weight;
  for (size_t i = 0; i < t.fs.size(); ++i)
    if (i != skip) s.fs.push_back(t.fs[i]);
  return single_term(std::move(s), Lin(1), mode);
}

}  // namespace

std::vector<FlatPattern> abstract_flat(const CoefficientTable& table) {
  CoefficientTable t = table.converted(Convention::Partial);
  int n = t.n;

  // bucket coordinate entries by bidegree
  std::map<std::pair<int, int>,
           std::map<std::pair<MultiIndex, MultiIndex>, Rational>>
      by_deg;
  for (const auto& [k, c] : t.entries)
    by_deg[{mi_order(k.first), mi_order(k.second)}][k] = c;

  std::vector<FlatPattern> out;
  for (auto& [deg, entries] : by_deg) {
    auto [kf, kh] = deg;
    if (kf + kh != n) throw std::invalid_argument("table degree mismatch");

    // candidate patterns: x cross pairs, (kf-x)/2 and (kh-x)/2 self pairs
    std::vector<FlatPattern> pats;
    for (int x = std::min(kf, kh); x >= 0; --x) {
      if ((kf - x) % 2 || (kh - x) % 2) continue;
      FlatPattern p;
      p.coeff = 0;
      for (int i = 0; i < x; ++i) {
        p.fslots.push_back(1 + i);
        p.hslots.push_back(1 + i);
      }
      for (int i = 0; i < (kf - x) / 2; ++i) {
        p.fslots.push_back(11 + i);
        p.fslots.push_back(11 + i);
      }
      for (int i = 0; i < (kh - x) / 2; ++i) {
        p.hslots.push_back(21 + i);
        p.hslots.push_back(21 + i);
      }
      pats.push_back(std::move(p));
    }

    // expand each pattern to its coordinate table
    std::vector<std::map<std::pair<MultiIndex, MultiIndex>, Rational>> exp(
        pats.size());
    for (size_t pi = 0; pi < pats.size(); ++pi) {
      std::vector<int> labels;
      for (int l : pats[pi].fslots) labels.push_back(l);
      for (int l : pats[pi].hslots) labels.push_back(l);
      std::sort(labels.begin(), labels.end());
      labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
      int nl = static_cast<int>(labels.size());
      std::map<int, int> val;
      long combos = 1;
      for (int i = 0; i < nl; ++i) combos *= n;
      for (long c = 0; c < combos; ++c) {
        long rem = c;
        for (int i = 0; i < nl; ++i) {
          val[labels[i]] = rem % n;
          rem /= n;
        }
        MultiIndex a(n, 0), b(n, 0);
        for (int l : pats[pi].fslots) ++a[val[l]];
        for (int l : pats[pi].hslots) ++b[val[l]];
        exp[pi][{a, b}] += 1;
      }
    }

    // exact solve for the pattern coefficients over this bidegree
    std::set<std::pair<MultiIndex, MultiIndex>> keys;
    for (const auto& [k, c] : entries) keys.insert(k);
    for (const auto& ex : exp)
      for (const auto& [k, c] : ex) keys.insert(k);

    size_t np = pats.size();
    std::vector<std::vector<Rational>> rows;  // coeffs..., rhs
    for (const auto& k : keys) {
      std::vector<Rational> row(np + 1, Rational(0));
      for (size_t pi = 0; pi < np; ++pi) {
        auto it = exp[pi].find(k);
        if (it != exp[pi].end()) row[pi] = it->second;
      }
      auto it = entries.find(k);
      row[np] = it == entries.end() ? Rational(0) : it->second;
      rows.push_back(std::move(row));
    }
    std::vector<Rational> sol(np, Rational(0));
    std::vector<bool> solved(np, false);
    // simple elimination; the system is tiny and overdetermined
    size_t rank_row = 0;
    for (size_t col = 0; col < np && rank_row < rows.size(); ++col) {
      size_t pr = rank_row;
      while (pr < rows.size() && rows[pr][col] == 0) ++pr;
      if (pr == rows.size()) continue;
      std::swap(rows[rank_row], rows[pr]);
      Rational lead = rows[rank_row][col];
      for (auto& v : rows[rank_row]) v /= lead;
      for (size_t r = 0; r < rows.size(); ++r) {
        if (r == rank_row || rows[r][col] == 0) continue;
        Rational s = rows[r][col];
        for (size_t cc = 0; cc <= np; ++cc) rows[r][cc] -= s * rows[rank_row][cc];
      }
      sol[col] = 0;  // filled below from the echelon rows
      ++rank_row;
    }
    for (size_t r = 0; r < rows.size(); ++r) {
      size_t lead = np + 1;
      for (size_t cc = 0; cc < np; ++cc)
        if (rows[r][cc] != 0) {
          lead = cc;
          break;
        }
      if (lead == np + 1) {
        if (rows[r][np] != 0)
          throw std::invalid_argument(
              "coordinate table is not a combination of invariant patterns");
        continue;
      }
      sol[lead] = rows[r][np];
      solved[lead] = true;
    }
    for (size_t pi = 0; pi < np; ++pi) {
      if (sol[pi] == 0) continue;
      pats[pi].coeff = sol[pi];
      out.push_back(pats[pi]);
    }
  }
  return out;
}

Expr partial_flat(const Expr& e, int u) {
  if (e.mode != Mode::FlatBookkeeping)
    throw std::invalid_argument("partial_flat needs flat bookkeeping mode");
  Expr r(e.mode);
  for (const auto& [t, c] : e.terms) {
    for (size_t fi = 0; fi < t.fs.size(); ++fi) {
      const Factor& f = t.fs[fi];
      if (f.head == Head::G) continue;  // Kronecker delta, constant

      // covariant piece
      Term main = t;
      main.fs[fi].der.push_back(u);
      r.add_term(std::move(main), c);

      // Christoffel corrections of e^{2 eta} (flat) for every slot
      size_t nslots = f.idx.size() + f.der.size();
      for (size_t s = 0; s < nslots; ++s) {
        bool in_der = s >= f.idx.size();
        size_t si = in_der ? s - f.idx.size() : s;
        int l = in_der ? f.der[si] : f.idx[si];
        auto with_slot = [&](int nl) {
          Term nt = t;
          (in_der ? nt.fs[fi].der[si] : nt.fs[fi].idx[si]) = nl;
          return nt;
        };
        // + eta_{;l} T(slot -> u)
        Term t1 = with_slot(u);
        t1.fs.push_back(Factor{Head::Eta, {}, {l}});
        r.add_term(std::move(t1), c);
        // + eta_{;u} T
        Term t2 = t;
        t2.fs.push_back(Factor{Head::Eta, {}, {u}});
        r.add_term(std::move(t2), c);
        // - delta_{u l} eta_{;m} T(slot -> m)
        int m = fresh_label();
        Term t3 = with_slot(m);
        t3.fs.push_back(Factor{Head::Eta, {}, {m}});
        t3.fs.push_back(Factor{Head::G, {u, l}, {}});
        r.add_term(std::move(t3), -c);
      }
    }
    if (t.weight != 0) {
      Term wt = t;
      wt.fs.push_back(Factor{Head::Eta, {}, {u}});
      r.add_term(std::move(wt), c * Rational(2 * t.weight));
    }
  }
  return r;
}

Expr invariantize(const Expr& e) {
  Expr r(e.mode);
  bool again = false;
  for (const auto& [t, c] : e.terms) {
    size_t pos = t.fs.size();
    for (size_t i = 0; i < t.fs.size(); ++i)
      if (t.fs[i].head == Head::Eta && t.fs[i].der.size() >= 2) {
        if (t.fs[i].der.size() > 2)
          throw std::logic_error(
              "eta with more than two derivatives; invariantize after every "
              "partial");
        pos = i;
        break;
      }
    if (pos == t.fs.size()) {
      r.add_term(t, c);
      continue;
    }
    again = true;
    int i = t.fs[pos].der[0], j = t.fs[pos].der[1];
    Expr rep(e.mode);
    rep.add_term(Term{{Factor{Head::V, {i, j}, {}}}, 0}, Lin(-1));
    rep.add_term(
        Term{{Factor{Head::Eta, {}, {i}}, Factor{Head::Eta, {}, {j}}}, 0},
        Lin(-1));
    int m = fresh_label();
    rep.add_term(Term{{Factor{Head::Eta, {}, {m}}, Factor{Head::Eta, {}, {m}},
                       Factor{Head::G, {i, j}, {}}},
                      0},
                 Lin(rat(1, 2)));
    r.add(rep.mul(spectators_of(t, pos, e.mode)).scaled(c));
  }
  return again ? invariantize(r) : r;
}

namespace {

// Ricci commutation in flat bookkeeping.  With the metric e^{2 eta} delta
// the Weyl part of its curvature vanishes, so for a factor T with der
// slots ...uv (u applied before v)
//   T_{;..uv..} = T_{;..vu..} + outer-ders( sum_slots  Rhat_{m a u v} B(a->m) )
// where B is the factor truncated below the swap, a runs over B's slots
// and Rhat contracts to the weight-neutral combination
//   Rhat_{m a u v} = -V_{au} G_{mv} + V_{av} G_{mu} - V_{mv} G_{au}
//                    + V_{mu} G_{av}.
Expr fb_swap_ders(const Term& t, const Lin& c, size_t fi, size_t p) {
  Expr out(Mode::FlatBookkeeping);
  Term sw = t;
  std::swap(sw.fs[fi].der[p], sw.fs[fi].der[p + 1]);
  out.add_term(std::move(sw), c);

  const Factor& f = t.fs[fi];
  int u = f.der[p], v = f.der[p + 1];
  Factor base{f.head, f.idx,
              std::vector<int>(f.der.begin(), f.der.begin() + p)};
  Expr corr(Mode::FlatBookkeeping);
  size_t nslots = base.idx.size() + base.der.size();
  for (size_t s = 0; s < nslots; ++s) {
    bool in_der = s >= base.idx.size();
    size_t si = in_der ? s - base.idx.size() : s;
    int a = in_der ? base.der[si] : base.idx[si];
    auto with_slot = [&](int nl) {
      Factor nb = base;
      (in_der ? nb.der[si] : nb.idx[si]) = nl;
      return nb;
    };
    corr.add_term(Term{{with_slot(v), Factor{Head::V, {a, u}, {}}}, 0},
                  Lin(-1));
    corr.add_term(Term{{with_slot(u), Factor{Head::V, {a, v}, {}}}, 0},
                  Lin(1));
    int m = fresh_label();
    corr.add_term(Term{{with_slot(m), Factor{Head::V, {m, v}, {}},
                        Factor{Head::G, {a, u}, {}}},
                       0},
                  Lin(-1));
    m = fresh_label();
    corr.add_term(Term{{with_slot(m), Factor{Head::V, {m, u}, {}},
                        Factor{Head::G, {a, v}, {}}},
                       0},
                  Lin(1));
  }
  for (size_t q = p + 2; q < f.der.size(); ++q) corr = nabla(corr, f.der[q]);

  Term spec = t;
  spec.fs.erase(spec.fs.begin() + fi);
  Expr spece(Mode::FlatBookkeeping);
  spece.add_term(std::move(spec), c);
  out.add(corr.mul(spece));
  return out;
}

}  // namespace

namespace {

// Structural order on der labels: free labels first by value, dummies by
// the location of their other occurrence.  Canonical dummy values follow
// first appearance, so the raw values cannot distinguish between, say, a
// dummy contracted into h and one contracted into eta; the partner
// location can.
std::array<long, 4> der_label_key(const Term& t, size_t fi, size_t p) {
  int l = t.fs[fi].der[p];
  for (size_t fj = 0; fj < t.fs.size(); ++fj) {
    const Factor& f = t.fs[fj];
    for (size_t s = 0; s < f.idx.size(); ++s)
      if (f.idx[s] == l) return {1, (long)fj, 0, (long)s};
    for (size_t s = 0; s < f.der.size(); ++s)
      if (f.der[s] == l && !(fj == fi && s == p))
        return {1, (long)fj, 1, (long)s};
  }
  return {0, l, 0, 0};
}

}  // namespace

// Rewrites every factor's der string into a canonical order so that equal
// terms written with different derivative orders cancel literally.
Expr fb_sort_ders(Expr e) {
  for (int round = 0; round < 4000; ++round) {
    bool found = false;
    for (const auto& [t, c] : e.terms) {
      for (size_t fi = 0; fi < t.fs.size() && !found; ++fi)
        for (size_t p = 0; p + 1 < t.fs[fi].der.size(); ++p)
          if (t.fs[fi].der[p] != t.fs[fi].der[p + 1] &&
              der_label_key(t, fi, p) > der_label_key(t, fi, p + 1)) {
            Term key = t;
            Lin cc = c;
            e.terms.erase(key);
            try {
              e.add(fb_swap_ders(key, cc, fi, p));
            } catch (const std::exception& ex) {
              throw std::logic_error(std::string(ex.what()) + " while swapping ders " +
                                     std::to_string(p) + "," + std::to_string(p + 1) +
                                     " of factor " + std::to_string(fi) + " in " +
                                     term_str(key));
            }
            found = true;
            break;
          }
      if (found) break;
    }
    if (!found) return e;
  }
  throw std::logic_error("derivative sorting did not converge");
}

Expr to_covariant(const Expr& e) {
  if (e.mode != Mode::FlatBookkeeping)
    throw std::invalid_argument("to_covariant needs flat bookkeeping input");
  Expr r(Mode::Covariant);
  for (const auto& [t, c] : e.terms) {
    for (const auto& f : t.fs)
      if (f.head == Head::Eta)
        throw std::logic_error("eta terms did not cancel: " + term_str(t));
    std::map<int, int> occ;
    for (const auto& f : t.fs) {
      for (int l : f.idx) ++occ[l];
      for (int l : f.der) ++occ[l];
    }
    int pairs = 0;
    for (const auto& [l, k] : occ)
      if (k == 2) ++pairs;
    if (t.weight + pairs != 0)
      throw std::logic_error("conformal weight mismatch on " + term_str(t));
    Term ct = t;
    ct.weight = 0;
    r.add_term(std::move(ct), c);
  }
  return r;
}

Expr grow_conformally_flat(const CoefficientTable& flat_table) {
  auto pats = abstract_flat(flat_table);
  int n = flat_table.n;
  int saved_dim = trace_dim();
  trace_dim() = n;
  Expr total(Mode::FlatBookkeeping);
  for (const auto& p : pats) {
    Expr ef = single_term(Term{{Factor{Head::F, {}, {}}}, 0});
    for (int l : p.fslots) ef = invariantize(partial_flat(ef, l));
    Expr eh = single_term(Term{{Factor{Head::H, {}, {}}}, 0});
    for (int l : p.hslots) eh = invariantize(partial_flat(eh, l));
    // the volume density carries the e^{2eta} power; it sits outside the
    // coordinate derivatives, so it is attached after differentiation
    Expr vol = single_term(Term{{}, -n / 2});
    total.add(ef.mul(eh).mul(vol).scaled(Lin(p.coeff)));
  }
  try {
    Expr out = to_covariant(fb_sort_ders(std::move(total)));
    trace_dim() = saved_dim;
    return out;
  } catch (...) {
    trace_dim() = saved_dim;
    throw;
  }
}

namespace {

// d/dt of a single factor; covariant mode, eta-linear
Expr var_factor(const Factor& f) {
  Expr zero(Mode::Covariant);
  if (f.der.empty()) {
    switch (f.head) {
      case Head::F:
      case Head::H:
      case Head::F0:
      case Head::F1:
      case Head::F2:
      case Head::F3:
        return zero;
      case Head::G: {
        Expr r(Mode::Covariant);
        r.add_term(Term{{Factor{Head::Eta, {}, {}}, f}, 0}, Lin(2));
        return r;
      }
      case Head::W: {
        Expr r(Mode::Covariant);
        r.add_term(Term{{Factor{Head::Eta, {}, {}}, f}, 0}, Lin(2));
        return r;
      }
      case Head::V: {
        Expr r(Mode::Covariant);
        r.add_term(Term{{Factor{Head::Eta, {}, {f.idx[0], f.idx[1]}}}, 0},
                   Lin(-1));
        return r;
      }
      case Head::J: {
        Expr r(Mode::Covariant);
        r.add_term(Term{{Factor{Head::Eta, {}, {}}, Factor{Head::J, {}, {}}}, 0},
                   Lin(-2));
        int m = fresh_label();
        r.add_term(Term{{Factor{Head::Eta, {}, {m, m}}}, 0}, Lin(-1));
        return r;
      }
      default:
        throw std::invalid_argument(
            "conformal variation of R/Rc/eta factors is not defined; "
            "decompose first");
    }
  }
  int u = f.der.back();
  Factor inner{f.head, f.idx, {f.der.begin(), f.der.end() - 1}};
  Expr r = nabla(var_factor(inner), u);
  size_t nslots = inner.idx.size() + inner.der.size();
  for (size_t s = 0; s < nslots; ++s) {
    bool in_der = s >= inner.idx.size();
    size_t si = in_der ? s - inner.idx.size() : s;
    int l = in_der ? inner.der[si] : inner.idx[si];
    auto with_slot = [&](int nl) {
      Factor nf = inner;
      (in_der ? nf.der[si] : nf.idx[si]) = nl;
      return nf;
    };
    // - eta_{;l} S(slot -> u)
    r.add_term(Term{{Factor{Head::Eta, {}, {l}}, with_slot(u)}, 0}, Lin(-1));
    // - eta_{;u} S
    r.add_term(Term{{Factor{Head::Eta, {}, {u}}, inner}, 0}, Lin(-1));
    // + g_{u l} eta_{;m} S(slot -> m)
    int m = fresh_label();
    r.add_term(Term{{Factor{Head::G, {u, l}, {}}, Factor{Head::Eta, {}, {m}},
                     with_slot(m)},
                    0},
               Lin(1));
  }
  return r;
}

}  // namespace

Expr conformal_variation(const Expr& e) {
  if (e.mode != Mode::Covariant)
    throw std::invalid_argument("conformal_variation needs covariant mode");
  Expr r(Mode::Covariant);
  for (const auto& [t, c] : e.terms) {
    if (t.weight != 0)
      throw std::invalid_argument("variation of a weighted term");
    std::map<int, int> occ;
    for (const auto& f : t.fs) {
      for (int l : f.idx) ++occ[l];
      for (int l : f.der) ++occ[l];
    }
    int pairs = 0;
    for (const auto& [l, k] : occ)
      if (k == 2) ++pairs;

    // volume +6, each inverse-metric pair -2
    Term scale = t;
    scale.fs.push_back(Factor{Head::Eta, {}, {}});
    r.add_term(std::move(scale), c * Rational(6 - 2 * pairs));

    for (size_t fi = 0; fi < t.fs.size(); ++fi)
      r.add(var_factor(t.fs[fi]).mul(spectators_of(t, fi, e.mode)).scaled(c));
  }
  return r;
}

Expr hochschild_integrand(const Expr& omega) {
  auto times = [](const Expr& e, std::vector<Head> hs) {
    Term t;
    for (Head h : hs) t.fs.push_back(Factor{h, {}, {}});
    Expr m(e.mode);
    m.add_term(std::move(t), Lin(1));
    return e.mul(m);
  };
  Expr a = times(rename_head(rename_head(omega, Head::F, Head::F2), Head::H,
                             Head::F3),
                 {Head::F0, Head::F1});
  Expr b = times(leibniz_substitute(rename_head(omega, Head::H, Head::F3),
                                    Head::F, Head::F1, Head::F2),
                 {Head::F0});
  Expr c = times(leibniz_substitute(rename_head(omega, Head::F, Head::F1),
                                    Head::H, Head::F2, Head::F3),
                 {Head::F0});
  Expr d = times(rename_head(rename_head(omega, Head::F, Head::F1), Head::H,
                             Head::F2),
                 {Head::F3, Head::F0});
  return a - b + c - d;
}

}  // namespace wres::tensor
