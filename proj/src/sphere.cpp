#include "wres/sphere.hpp"

namespace wres {

namespace {
std::map<std::pair<int, std::uint64_t>, Rational> g_cache;
std::mutex g_mutex;
}  // namespace

Rational moment(const MultiIndex& alpha, int n) {
  for (int e : alpha)
    if (e % 2 != 0) return 0;
  auto key = std::make_pair(n, Poly::pack(alpha));
  {
    std::lock_guard<std::mutex> lock(g_mutex);
    auto it = g_cache.find(key);
    if (it != g_cache.end()) return it->second;
  }
  Integer num = double_factorial(n - 2);
  for (int e : alpha) num *= double_factorial(e - 1);
  Integer den = double_factorial(n + mi_order(alpha) - 2);
  Rational r(num, den);
  r.canonicalize();
  std::lock_guard<std::mutex> lock(g_mutex);
  g_cache.emplace(key, r);
  return r;
}

Rational integrate_poly(const Poly& p, int n) {
  Rational s = 0;
  for (const auto& [k, c] : p.terms()) s += c * moment(Poly::unpack(k, n), n);
  return s;
}

Rational integrate_symbol(const Symbol& s, int n) { return integrate_poly(s.num, n); }

std::pair<Rational, int> sphere_area_pi(int n) {
  // n even: |S^{n-1}| = 2 pi^{n/2} / (n/2 - 1)!
  int m = n / 2;
  Rational c(2, 1);
  c /= Rational(factorial(m - 1));
  return {c, m};
}

}  // namespace wres
