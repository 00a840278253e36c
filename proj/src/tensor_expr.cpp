#include "wres/tensor.hpp"

#include <atomic>
#include <stdexcept>

namespace wres::tensor {

int head_arity(Head h) {
  switch (h) {
    case Head::G:
    case Head::V:
    case Head::Rc:
      return 2;
    case Head::W:
    case Head::R:
      return 4;
    default:
      return 0;
  }
}

bool head_scalar(Head h) { return head_arity(h) == 0; }

const char* head_name(Head h) {
  switch (h) {
    case Head::F0: return "f0";
    case Head::F1: return "f1";
    case Head::F2: return "f2";
    case Head::F3: return "f3";
    case Head::F: return "f";
    case Head::H: return "h";
    case Head::Eta: return "eta";
    case Head::G: return "g";
    case Head::V: return "V";
    case Head::J: return "J";
    case Head::W: return "W";
    case Head::R: return "R";
    case Head::Rc: return "Rc";
  }
  return "?";
}

Lin& Lin::operator+=(const Lin& o) {
  c += o.c;
  for (const auto& [k, v] : o.u) {
    u[k] += v;
    if (u[k] == 0) u.erase(k);
  }
  return *this;
}

Lin Lin::operator*(const Rational& s) const {
  Lin r;
  if (s == 0) return r;
  r.c = c * s;
  for (const auto& [k, v] : u) r.u[k] = v * s;
  return r;
}

std::string Lin::str() const {
  std::string s = to_string(c);
  for (const auto& [k, v] : u) s += " + " + to_string(v) + "*" + k;
  return s;
}

static std::atomic<int> g_label{1000};
int fresh_label() { return g_label++; }
void reset_labels() { g_label = 1000; }

Factor fac(Head h, std::vector<int> idx, std::vector<int> der) {
  if (static_cast<int>(idx.size()) != head_arity(h))
    throw std::invalid_argument("factor arity mismatch for head " +
                                std::string(head_name(h)));
  return Factor{h, std::move(idx), std::move(der)};
}

Term term_of(std::vector<Factor> fs) { return Term{std::move(fs), 0}; }

void Expr::add_term(Term t, const Lin& c) {
  if (c.is_zero()) return;
  Rational sign = 1;
  if (!canonicalize(t, sign, mode)) return;
  auto it = terms.find(t);
  if (it == terms.end()) {
    terms.emplace(std::move(t), c * sign);
  } else {
    it->second += c * sign;
    if (it->second.is_zero()) terms.erase(it);
  }
}

void Expr::add(const Expr& o) {
  for (const auto& [t, c] : o.terms) add_term(t, c);
}

void Expr::sub(const Expr& o) {
  for (const auto& [t, c] : o.terms) add_term(t, -c);
}

Expr Expr::operator+(const Expr& o) const {
  Expr r = *this;
  r.add(o);
  return r;
}

Expr Expr::operator-(const Expr& o) const {
  Expr r = *this;
  r.sub(o);
  return r;
}

Expr Expr::scaled(const Lin& s) const {
  Expr r(mode);
  if (s.is_zero()) return r;
  for (const auto& [t, c] : terms) {
    Lin p;
    if (s.is_constant()) {
      p = c * s.c;
    } else if (c.is_constant()) {
      p = s * c.c;
    } else {
      throw std::invalid_argument("product of two non-constant coefficients");
    }
    r.add_term(t, p);
  }
  return r;
}

namespace {

// Relabels the dummy labels (>= 100, occurring twice) of t to fresh
// values so a product cannot collide.
Term shift_dummies(const Term& t) {
  std::map<int, int> count;
  for (const auto& f : t.fs) {
    for (int l : f.idx) ++count[l];
    for (int l : f.der) ++count[l];
  }
  std::map<int, int> ren;
  for (const auto& [l, k] : count)
    if (l >= 100 && k == 2) ren[l] = fresh_label();
  Term r = t;
  for (auto& f : r.fs) {
    for (int& l : f.idx)
      if (auto it = ren.find(l); it != ren.end()) l = it->second;
    for (int& l : f.der)
      if (auto it = ren.find(l); it != ren.end()) l = it->second;
  }
  return r;
}

}  // namespace

Expr Expr::mul(const Expr& o) const {
  Expr r(mode);
  for (const auto& [ta, ca] : terms)
    for (const auto& [tb, cb] : o.terms) {
      Term tbs = shift_dummies(tb);
      // shift both sides: a dummy pair on either side may otherwise collide
      // with a label paired across the product
      Term p = shift_dummies(ta);
      p.weight += tbs.weight;
      p.fs.insert(p.fs.end(), tbs.fs.begin(), tbs.fs.end());
      Lin c;
      if (ca.is_constant()) {
        c = cb * ca.c;
      } else if (cb.is_constant()) {
        c = ca * cb.c;
      } else {
        throw std::invalid_argument("product of two non-constant coefficients");
      }
      r.add_term(std::move(p), c);
    }
  return r;
}

Expr nabla(const Expr& e, int u) {
  Expr r(e.mode);
  for (const auto& [t0, c] : e.terms) {
    // if u already occurs as a contracted pair, that pair is an unrelated
    // dummy whose canonical label collides with u; relabel it first
    Term t = t0;
    int occ = 0;
    for (const auto& f : t.fs) {
      for (int l : f.idx) occ += l == u;
      for (int l : f.der) occ += l == u;
    }
    if (occ >= 2) {
      int nl = fresh_label();
      for (auto& f : t.fs) {
        for (int& l : f.idx)
          if (l == u) l = nl;
        for (int& l : f.der)
          if (l == u) l = nl;
      }
    }
    for (size_t i = 0; i < t.fs.size(); ++i) {
      if (t.fs[i].head == Head::G) continue;  // constant Kronecker array
      Term d = t;
      d.fs[i].der.push_back(u);
      r.add_term(std::move(d), c);
    }
    if (t.weight != 0) {
      Term d = t;
      d.fs.push_back(Factor{Head::Eta, {}, {u}});
      r.add_term(std::move(d), c * Rational(2 * t.weight));
    }
  }
  return r;
}

Expr leibniz_substitute(const Expr& e, Head from, Head a, Head b) {
  Expr r(e.mode);
  for (const auto& [t, c] : e.terms) {
    // expand the first occurrence, recurse if more remain
    size_t pos = t.fs.size();
    for (size_t i = 0; i < t.fs.size(); ++i)
      if (t.fs[i].head == from) {
        pos = i;
        break;
      }
    if (pos == t.fs.size()) {
      r.add_term(t, c);
      continue;
    }
    const auto& der = t.fs[pos].der;
    int k = static_cast<int>(der.size());
    Expr sub(e.mode);
    for (int mask = 0; mask < (1 << k); ++mask) {
      Term nt = t;
      std::vector<int> da, db;
      for (int j = 0; j < k; ++j) (mask >> j & 1 ? da : db).push_back(der[j]);
      nt.fs[pos] = Factor{a, {}, da};
      nt.fs.push_back(Factor{b, {}, db});
      sub.add_term(std::move(nt), c);
    }
    r.add(leibniz_substitute(sub, from, a, b));
  }
  return r;
}

Expr rename_head(const Expr& e, Head from, Head to) {
  Expr r(e.mode);
  for (const auto& [t, c] : e.terms) {
    Term nt = t;
    for (auto& f : nt.fs)
      if (f.head == from) f.head = to;
    r.add_term(std::move(nt), c);
  }
  return r;
}

std::pair<int, int> filtration_degrees(const Term& t) {
  int kR = 0, kD = 0;
  for (const auto& f : t.fs) {
    switch (f.head) {
      case Head::W:
      case Head::V:
      case Head::R:
      case Head::Rc:
      case Head::J:
        ++kR;
        break;
      default:
        break;
    }
    kD += static_cast<int>(f.der.size());
  }
  return {kR, kD};
}

}  // namespace wres::tensor
