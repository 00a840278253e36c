#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "wres/tensor.hpp"

namespace wres::tensor {

namespace {

std::map<int, int> label_counts(const Term& t) {
  std::map<int, int> c;
  for (const auto& f : t.fs) {
    for (int l : f.idx) ++c[l];
    for (int l : f.der) ++c[l];
  }
  return c;
}

// Replaces one occurrence of label `from` (anywhere except factor skip)
// with `to`; returns true on success.
bool replace_one(Term& t, size_t skip, int from, int to) {
  for (size_t i = 0; i < t.fs.size(); ++i) {
    if (i == skip) continue;
    for (int& l : t.fs[i].idx)
      if (l == from) {
        l = to;
        return true;
      }
    for (int& l : t.fs[i].der)
      if (l == from) {
        l = to;
        return true;
      }
  }
  return false;
}

// Contracts away metric factors that carry a dummy label.
bool absorb_metrics(Term& t, Rational& sign) {
  bool again = true;
  while (again) {
    again = false;
    auto counts = label_counts(t);
    for (size_t i = 0; i < t.fs.size(); ++i) {
      Factor& f = t.fs[i];
      if (f.head != Head::G) continue;
      if (!f.der.empty()) throw std::logic_error("metric factor with derivatives");
      int a = f.idx[0], b = f.idx[1];
      if (a == b) {
        sign *= Rational(trace_dim());
        t.fs.erase(t.fs.begin() + i);
        again = true;
        break;
      }
      if (counts[a] == 2) {
        if (!replace_one(t, i, a, b)) throw std::logic_error("dangling dummy");
        t.fs.erase(t.fs.begin() + i);
        again = true;
        break;
      }
      if (counts[b] == 2) {
        if (!replace_one(t, i, b, a)) throw std::logic_error("dangling dummy");
        t.fs.erase(t.fs.begin() + i);
        again = true;
        break;
      }
    }
  }
  return true;
}

struct Variant {
  Factor f;
  int sign;
};

// Monoterm symmetry orbit of a single factor.
std::vector<Variant> variants(const Factor& f, Mode mode) {
  std::vector<Variant> out;
  if (f.head == Head::V && mode == Mode::FlatBookkeeping &&
      f.der.size() == 1) {
    // the Cotton tensor of a conformally flat metric vanishes, so the
    // once-differentiated Schouten tensor is symmetric in all three slots
    int l[3] = {f.idx[0], f.idx[1], f.der[0]};
    static const int p3[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                 {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& p : p3) {
      Factor v = f;
      v.idx[0] = l[p[0]];
      v.idx[1] = l[p[1]];
      v.der[0] = l[p[2]];
      out.push_back({std::move(v), 1});
    }
    return out;
  }
  if (f.head == Head::W || f.head == Head::R) {
    static const int perms[8][4] = {{0, 1, 2, 3}, {1, 0, 2, 3}, {0, 1, 3, 2},
                                    {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 0, 1},
                                    {2, 3, 1, 0}, {3, 2, 1, 0}};
    static const int signs[8] = {1, -1, -1, 1, 1, -1, -1, 1};
    for (int p = 0; p < 8; ++p) {
      Factor v = f;
      for (int s = 0; s < 4; ++s) v.idx[s] = f.idx[perms[p][s]];
      out.push_back({std::move(v), signs[p]});
    }
  } else if (f.head == Head::V || f.head == Head::Rc || f.head == Head::G) {
    out.push_back({f, 1});
    Factor v = f;
    std::swap(v.idx[0], v.idx[1]);
    out.push_back({std::move(v), 1});
  } else if (head_scalar(f.head) && f.der.size() >= 2) {
    // only the two innermost derivatives of a scalar commute freely
    out.push_back({f, 1});
    Factor v = f;
    std::swap(v.der[0], v.der[1]);
    out.push_back({std::move(v), 1});
  } else {
    out.push_back({f, 1});
  }
  return out;
}

struct ClassKey {
  Head head;
  size_t nder;
  bool operator<(const ClassKey& o) const {
    return std::tie(head, nder) < std::tie(o.head, o.nder);
  }
  bool operator==(const ClassKey& o) const {
    return head == o.head && nder == o.nder;
  }
};

void encode_factor(const Factor& f, const std::map<int, int>& counts,
                   std::map<int, int>& dummy_id, std::vector<int>& enc) {
  enc.push_back(static_cast<int>(f.head));
  auto push_label = [&](int l) {
    if (counts.at(l) == 1) {
      enc.push_back(500000 + l);
      return;
    }
    auto it = dummy_id.find(l);
    if (it == dummy_id.end())
      it = dummy_id.emplace(l, static_cast<int>(dummy_id.size())).first;
    enc.push_back(it->second);
  };
  for (int l : f.idx) push_label(l);
  enc.push_back(-1);
  for (int l : f.der) push_label(l);
  enc.push_back(-2);
}

}  // namespace

bool canonicalize(Term& t, Rational& sign, Mode mode) {
  for (const auto& [l, k] : label_counts(t))
    if (k > 2) throw std::logic_error("label occurs more than twice");

  absorb_metrics(t, sign);

  // zero and trace rules
  for (size_t i = 0; i < t.fs.size(); ++i) {
    Factor& f = t.fs[i];
    if (f.head == Head::W || f.head == Head::R) {
      if (f.idx[0] == f.idx[1] || f.idx[2] == f.idx[3]) return false;
    }
    if (f.head == Head::W) {
      // internal cross-pair trace vanishes
      for (int a : {0, 1})
        for (int b : {2, 3})
          if (f.idx[a] == f.idx[b]) return false;
    }
    if (f.head == Head::V && mode == Mode::Covariant && f.idx[0] == f.idx[1]) {
      f = Factor{Head::J, {}, f.der};
    }
  }

  // group factors into permutable classes
  std::vector<size_t> order(t.fs.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return ClassKey{t.fs[a].head, t.fs[a].der.size()} <
           ClassKey{t.fs[b].head, t.fs[b].der.size()};
  });

  std::vector<std::vector<size_t>> classes;
  for (size_t i = 0; i < order.size(); ++i) {
    if (i == 0 || !(ClassKey{t.fs[order[i]].head, t.fs[order[i]].der.size()} ==
                    ClassKey{t.fs[order[i - 1]].head, t.fs[order[i - 1]].der.size()}))
      classes.emplace_back();
    classes.back().push_back(order[i]);
  }

  std::vector<std::vector<Variant>> vars(t.fs.size());
  for (size_t i = 0; i < t.fs.size(); ++i) vars[i] = variants(t.fs[i], mode);

  auto counts = label_counts(t);

  std::vector<int> best;
  int best_sign = 1;
  std::vector<const Factor*> chosen(t.fs.size(), nullptr);

  // enumerate: per class all permutations, per factor all variants
  struct Walker {
    const std::vector<std::vector<size_t>>& classes;
    const std::vector<std::vector<Variant>>& vars;
    const std::map<int, int>& counts;
    std::vector<const Factor*>& chosen;
    std::vector<int>& best;
    int& best_sign;
    size_t nf;

    void finish(int sgn) {
      std::vector<int> enc;
      enc.reserve(nf * 10);
      std::map<int, int> dummy_id;
      for (size_t i = 0; i < nf; ++i) encode_factor(*chosen[i], counts, dummy_id, enc);
      if (best.empty() || enc < best) {
        best = std::move(enc);
        best_sign = sgn;
      }
    }

    void walk_variants(size_t pos, int sgn) {
      if (pos == nf) {
        finish(sgn);
        return;
      }
      // chosen[pos] set by permutation walk to a slot index; here we
      // iterate variants of the factor index stored temporarily
      for (const auto& v : *varlist[pos]) {
        chosen[pos] = &v.f;
        walk_variants(pos + 1, sgn * v.sign);
      }
    }

    std::vector<const std::vector<Variant>*> varlist;

    void walk_class(size_t ci, std::vector<bool> used, size_t k) {
      if (k == classes[ci].size()) {
        if (ci + 1 == classes.size()) {
          walk_variants(0, 1);
        } else {
          walk_class(ci + 1, std::vector<bool>(classes[ci + 1].size(), false), 0);
        }
        return;
      }
      for (size_t m = 0; m < classes[ci].size(); ++m) {
        if (used[m]) continue;
        used[m] = true;
        varlist.push_back(&vars[classes[ci][m]]);
        walk_class(ci, used, k + 1);
        varlist.pop_back();
        used[m] = false;
      }
    }

    void run() {
      if (classes.empty()) {
        finish(1);
        return;
      }
      walk_class(0, std::vector<bool>(classes[0].size(), false), 0);
    }
  };

  Walker w{classes, vars, counts, chosen, best, best_sign, t.fs.size(), {}};
  w.run();

  // rebuild the term from the winning encoding
  std::vector<Factor> fs;
  size_t p = 0;
  while (p < best.size()) {
    Factor f;
    f.head = static_cast<Head>(best[p++]);
    while (best[p] != -1) f.idx.push_back(best[p++]);
    ++p;
    while (best[p] != -2) f.der.push_back(best[p++]);
    ++p;
    fs.push_back(std::move(f));
  }
  // dummy ids map to 100, 101, ... skipping any free label already in
  // that range, so a later product cannot make a label occur three times
  std::set<int> free_labels;
  for (const auto& f : fs) {
    for (int l : f.idx)
      if (l >= 500000) free_labels.insert(l - 500000);
    for (int l : f.der)
      if (l >= 500000) free_labels.insert(l - 500000);
  }
  std::map<int, int> dummy_label;
  int next = 100;
  auto assign = [&](int id) {
    auto it = dummy_label.find(id);
    if (it != dummy_label.end()) return it->second;
    while (free_labels.count(next)) ++next;
    return dummy_label[id] = next++;
  };
  for (auto& f : fs) {
    for (int& l : f.idx) l = l >= 500000 ? l - 500000 : assign(l);
    for (int& l : f.der) l = l >= 500000 ? l - 500000 : assign(l);
  }
  t.fs = std::move(fs);
  sign *= best_sign;
  return true;
}

}  // namespace wres::tensor
