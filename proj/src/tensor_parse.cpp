#include "wres/tensor_parse.hpp"

#include <cctype>
#include <cstring>
#include <map>
#include <sstream>
#include <stdexcept>

namespace wres::tensor {

namespace {

const std::pair<const char*, Head> kHeads[] = {
    {"f0", Head::F0}, {"f1", Head::F1}, {"f2", Head::F2}, {"f3", Head::F3},
    {"eta", Head::Eta}, {"Rc", Head::Rc}, {"f", Head::F}, {"h", Head::H},
    {"g", Head::G}, {"V", Head::V}, {"J", Head::J}, {"W", Head::W},
    {"R", Head::R}};

struct Parser {
  const std::string& s;
  size_t p = 0;

  void skip() {
    while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
  }
  bool eof() {
    skip();
    return p >= s.size();
  }
  char peek() {
    skip();
    return p < s.size() ? s[p] : '\0';
  }

  Rational rational() {
    skip();
    size_t q = p;
    if (p < s.size() && (s[p] == '-' || s[p] == '+')) ++p;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
    if (p < s.size() && s[p] == '/') {
      ++p;
      while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
    }
    return parse_rational(s.substr(q, p - q));
  }

  bool head(Head& h) {
    skip();
    for (const auto& [name, hd] : kHeads) {
      size_t n = std::strlen(name);
      if (s.compare(p, n, name) == 0) {
        // a head must not swallow the first letter of a longer name
        h = hd;
        p += n;
        return true;
      }
    }
    return false;
  }

  Factor factor(std::map<char, int>& letters) {
    Head h;
    if (!head(h)) throw std::invalid_argument("expected tensor head at: " + s.substr(p));
    Factor f;
    f.head = h;
    bool in_der = false;
    while (peek() == '_' || peek() == '^') {
      ++p;
      skip();
      if (peek() != '{') throw std::invalid_argument("expected { in index group");
      ++p;
      skip();
      if (peek() == ';') {
        in_der = true;
        ++p;
      }
      while (peek() != '}') {
        char c = peek();
        if (!std::islower(static_cast<unsigned char>(c)))
          throw std::invalid_argument("bad index label in: " + s);
        ++p;
        auto it = letters.find(c);
        if (it == letters.end())
          it = letters.emplace(c, 100 + static_cast<int>(letters.size())).first;
        (in_der ? f.der : f.idx).push_back(it->second);
      }
      ++p;  // '}'
    }
    if (static_cast<int>(f.idx.size()) != head_arity(h))
      throw std::invalid_argument(std::string("arity mismatch for ") + head_name(h));
    return f;
  }
};

char dummy_letter(int i) {
  static const char* pool = "ijklmpqrstuvwxyz";
  return pool[i % 16];
}

std::string factor_str(const Factor& f, const std::map<int, char>& names) {
  std::string out = head_name(f.head);
  auto letters = [&](const std::vector<int>& ls) {
    std::string g;
    for (size_t i = 0; i < ls.size(); ++i) {
      if (i) g += ' ';
      g += names.at(ls[i]);
    }
    return g;
  };
  if (!f.idx.empty()) out += "_{" + letters(f.idx) + "}";
  if (!f.der.empty()) out += "_{;" + letters(f.der) + "}";
  return out;
}

std::map<int, char> name_labels(const Term& t) {
  std::map<int, char> names;
  int next = 0;
  for (const auto& f : t.fs) {
    for (int l : f.idx)
      if (!names.count(l)) names[l] = l < 100 ? static_cast<char>('a' + l) : dummy_letter(next++);
    for (int l : f.der)
      if (!names.count(l)) names[l] = l < 100 ? static_cast<char>('a' + l) : dummy_letter(next++);
  }
  return names;
}

}  // namespace

Expr parse_expr(const std::string& text) {
  Expr e;
  Parser ps{text};
  while (!ps.eof()) {
    Rational sign = 1;
    char c = ps.peek();
    if (c == '+') {
      ++ps.p;
    } else if (c == '-') {
      sign = -1;
      ++ps.p;
    }
    Rational coeff = 1;
    c = ps.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) coeff = ps.rational();
    std::map<char, int> letters;
    Term t;
    while (!ps.eof() && ps.peek() != '+' && ps.peek() != '-')
      t.fs.push_back(ps.factor(letters));
    if (t.fs.empty()) throw std::invalid_argument("empty term in: " + text);
    // letters used once are free: move them below 100 keyed by letter
    std::map<int, int> occ;
    for (const auto& f : t.fs) {
      for (int l : f.idx) ++occ[l];
      for (int l : f.der) ++occ[l];
    }
    for (const auto& [ch, l] : letters)
      if (occ[l] == 1)
        for (auto& f : t.fs) {
          for (int& x : f.idx)
            if (x == l) x = ch - 'a';
          for (int& x : f.der)
            if (x == l) x = ch - 'a';
        }
    e.add_term(std::move(t), Lin(sign * coeff));
  }
  return e;
}

std::string term_str(const Term& t) {
  auto names = name_labels(t);
  std::string out;
  for (size_t i = 0; i < t.fs.size(); ++i) {
    if (i) out += ' ';
    out += factor_str(t.fs[i], names);
  }
  if (t.weight != 0) out += " e2eta^" + std::to_string(t.weight);
  return out;
}

std::string expr_str(const Expr& e) {
  if (e.terms.empty()) return "0";
  std::string out;
  for (const auto& [t, c] : e.terms) {
    // constant coefficients print in the input grammar so expr_str
    // output parses back; unknown-bearing ones keep the parenthesized
    // display form
    std::string cs;
    bool neg = false;
    if (c.is_constant()) {
      Rational a = c.c;
      if (a < 0) {
        neg = true;
        a = -a;
      }
      if (a != 1) cs = to_string(a);
    } else {
      cs = "(" + c.str() + ")";
    }
    if (out.empty()) {
      if (neg) out += "- ";
    } else {
      out += neg ? "\n- " : "\n+ ";
    }
    out += cs;
    if (!cs.empty()) out += ' ';
    out += term_str(t);
  }
  return out;
}

std::string expr_latex(const Expr& e) {
  if (e.terms.empty()) return "0";
  std::string out;
  for (const auto& [t, c] : e.terms) {
    if (!out.empty()) out += " + ";
    out += "(" + c.str() + ")\\,";
    auto names = name_labels(t);
    for (const auto& f : t.fs) {
      std::string head = f.head == Head::Eta ? "\\eta" : head_name(f.head);
      out += head;
      std::string idx, der;
      for (int l : f.idx) idx += names.at(l);
      for (int l : f.der) der += names.at(l);
      if (!idx.empty() || !der.empty()) {
        out += "_{" + idx;
        if (!der.empty()) out += ";" + der;
        out += "}";
      }
      out += " ";
    }
  }
  return out;
}

}  // namespace wres::tensor
