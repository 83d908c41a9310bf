#ifndef DT4_VERTEX_GEOMETRY_HPP
#define DT4_VERTEX_GEOMETRY_HPP

#include <gmpxx.h>

#include <regex>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "dt4/algebra/linear_form.hpp"
#include "dt4/errors.hpp"
#include "dt4/vertex/chart.hpp"

namespace dt4 {

/// Toric CY fourfold given by its torus-fixed charts.
struct ToricGeometry {
  std::string name;
  std::vector<Chart> charts;

  std::string describe() const {
    std::string s = "toric:" + name;
    for (const auto& c : charts) s += "|" + c.describe();
    return s;
  }
};

/// The quotient stack [C^4 / Z_r] with Z_r acting by (z, z^{-1}, 1, 1).
struct OrbifoldGeometry {
  int r = 1;

  std::string describe() const { return "orbifold:r=" + std::to_string(r); }
};

using Geometry = std::variant<ToricGeometry, OrbifoldGeometry>;

inline std::string describe(const Geometry& g) {
  return std::visit([](const auto& x) { return x.describe(); }, g);
}

inline ToricGeometry c4_geometry(std::array<int, 4> l_character = {0, 0, 0, 0}) {
  return {"c4", {Chart::standard(l_character)}};
}

/// A_{r-1} x C^2: chart a = 0..r-1 has weights
/// ((a+1-r) s1 + (a+1) s2, (r-a) s1 - a s2, s3, s4).
inline ToricGeometry a_series_geometry(int r) {
  if (r < 1) throw ConfigError("A-series geometry needs r >= 1");
  ToricGeometry g;
  g.name = "a" + std::to_string(r - 1) + "xc2";
  for (int a = 0; a < r; ++a) {
    LinearForm u(a + 1 - r, a + 1, 0, 0);
    LinearForm v(r - a, -a, 0, 0);
    g.charts.emplace_back(std::array<LinearForm, 4>{u, v, LinearForm::s3(), LinearForm::s4()});
  }
  return g;
}

/// Resolves "c4", "a{k}xc2" or "orbifold-zr" (the latter two taking r from the name or `r`).
inline Geometry geometry_from_name(const std::string& name, int r = 0) {
  if (name == "c4") return c4_geometry();
  static const std::regex a_series(R"(a(\d+)xc2)");
  std::smatch m;
  if (std::regex_match(name, m, a_series)) return a_series_geometry(std::stoi(m[1]) + 1);
  if (name == "a{r-1}xc2" || name == "a-series") {
    if (r < 1) throw ConfigError("geometry " + name + " needs r >= 1");
    return a_series_geometry(r);
  }
  if (name == "orbifold-zr" || name == "orbifold") {
    if (r < 1) throw ConfigError("orbifold geometry needs r >= 1");
    return OrbifoldGeometry{r};
  }
  throw ConfigError("unknown geometry '" + name + "'");
}

namespace detail {

inline mpq_class json_rational(const nlohmann::json& v) {
  try {
    if (v.is_number_integer()) return mpq_class(v.get<long>());
    if (v.is_string()) {
      mpq_class q(v.get<std::string>());
      if (q.get_den() != 0) {
        q.canonicalize();
        return q;
      }
    }
  } catch (const std::invalid_argument&) {
  }
  throw ConfigError("chart weight coefficient must be an integer or a rational string: " + v.dump());
}

}  // namespace detail

/// Custom toric geometry:
/// {"name": "...", "charts": [{"weights": [[c_s1, c_s2, c_s3(, c_m)], x4], "l_character": [a1, a2, a3, a4]}]}.
inline ToricGeometry geometry_from_json(const nlohmann::json& j) {
  ToricGeometry g;
  if (!j.is_object()) throw ConfigError("custom geometry must be a JSON object");
  g.name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "custom";
  if (!j.contains("charts") || !j["charts"].is_array() || j["charts"].empty()) {
    throw ConfigError("custom geometry needs a nonempty 'charts' array");
  }
  for (const auto& cj : j["charts"]) {
    if (!cj.is_object() || !cj.contains("weights")) throw ConfigError("each chart needs a 'weights' entry");
    const auto& ws = cj["weights"];
    if (!ws.is_array() || ws.size() != 4) throw ConfigError("each chart needs four weight vectors");
    std::array<LinearForm, 4> w;
    for (int i = 0; i < 4; ++i) {
      const auto& c = ws[i];
      if (!c.is_array() || (c.size() != 3 && c.size() != 4)) {
        throw ConfigError("weight vectors have 3 or 4 coefficients over (s1, s2, s3[, m])");
      }
      w[i] = LinearForm(detail::json_rational(c[0]), detail::json_rational(c[1]), detail::json_rational(c[2]),
                        c.size() == 4 ? detail::json_rational(c[3]) : mpq_class(0));
    }
    std::array<int, 4> l{0, 0, 0, 0};
    if (cj.contains("l_character")) {
      const auto& lj = cj["l_character"];
      if (!lj.is_array() || lj.size() != 4) throw ConfigError("l_character needs four integers");
      for (int i = 0; i < 4; ++i) {
        if (!lj[i].is_number_integer()) throw ConfigError("l_character needs four integers");
        l[i] = lj[i].get<int>();
      }
    }
    g.charts.emplace_back(w, l);
  }
  return g;
}

}  // namespace dt4

#endif  // DT4_VERTEX_GEOMETRY_HPP
