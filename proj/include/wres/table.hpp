#pragma once

#include <map>
#include <string>
#include <utility>

#include "wres/multiindex.hpp"
#include "wres/rational.hpp"

namespace wres {

// Coordinate form of Omega_n flat: map (a on f, b on h) -> coefficient.
// The convention flag records whether entries multiply D_x^a f D_x^b h
// or partial_x^a f partial_x^b h; the two differ by (-1)^{n/2}.
enum class Convention { D, Partial };

struct CoefficientTable {
  int n = 0;
  Convention convention = Convention::D;
  std::map<std::pair<MultiIndex, MultiIndex>, Rational> entries;

  void add(const MultiIndex& a, const MultiIndex& b, const Rational& c) {
    if (c == 0) return;
    auto key = std::make_pair(a, b);
    auto it = entries.find(key);
    if (it == entries.end()) {
      entries.emplace(key, c);
    } else {
      it->second += c;
      if (it->second == 0) entries.erase(it);
    }
  }

  Rational get(const MultiIndex& a, const MultiIndex& b) const {
    auto it = entries.find(std::make_pair(a, b));
    return it == entries.end() ? Rational(0) : it->second;
  }

  bool is_symmetric() const {
    for (const auto& [k, c] : entries)
      if (get(k.second, k.first) != c) return false;
    return true;
  }

  CoefficientTable converted(Convention target) const {
    if (target == convention) return *this;
    CoefficientTable t = *this;
    t.convention = target;
    if (n % 2 == 0 && (n / 2) % 2 != 0)
      for (auto& [k, c] : t.entries) c = -c;
    return t;
  }

  bool operator==(const CoefficientTable& o) const {
    return n == o.n && convention == o.convention && entries == o.entries;
  }

  CoefficientTable operator-(const CoefficientTable& o) const {
    CoefficientTable t = *this;
    for (const auto& [k, c] : o.entries) t.add(k.first, k.second, -c);
    return t;
  }
  CoefficientTable operator*(const Rational& s) const {
    CoefficientTable t;
    t.n = n;
    t.convention = convention;
    for (const auto& [k, c] : entries) t.add(k.first, k.second, c * s);
    return t;
  }
};

// JSON schema:
//   { "n": int, "convention": "partial"|"D",
//     "entries": [ {"a": [..], "b": [..], "c": "p/q"} ] }
// with lexicographic key ordering for byte-reproducible output.
std::string table_to_json(const CoefficientTable& t);
CoefficientTable table_from_json(const std::string& json);

}  // namespace wres
