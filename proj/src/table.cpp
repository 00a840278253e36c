#include "wres/table.hpp"

#include <nlohmann/json.hpp>

namespace wres {

std::string table_to_json(const CoefficientTable& t) {
  nlohmann::ordered_json j;
  j["n"] = t.n;
  j["convention"] = (t.convention == Convention::D) ? "D" : "partial";
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& [k, c] : t.entries) {
    nlohmann::ordered_json e;
    e["a"] = k.first;
    e["b"] = k.second;
    e["c"] = to_string(c);
    j["entries"].push_back(e);
  }
  return j.dump(2);
}

CoefficientTable table_from_json(const std::string& json) {
  auto j = nlohmann::json::parse(json);
  CoefficientTable t;
  t.n = j.at("n").get<int>();
  t.convention =
      (j.at("convention").get<std::string>() == "D") ? Convention::D : Convention::Partial;
  for (const auto& e : j.at("entries")) {
    MultiIndex a = e.at("a").get<MultiIndex>();
    MultiIndex b = e.at("b").get<MultiIndex>();
    t.add(a, b, parse_rational(e.at("c").get<std::string>()));
  }
  return t;
}

}  // namespace wres
