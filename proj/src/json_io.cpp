#include "dzeta/json_io.hpp"

namespace dzeta {

json to_json(const FqElem& x) { return json(x.coeffs()); }

FqElem fq_from_json(const FieldTower& K, const json& j) {
  if (!j.is_array() || j.size() != K.degree())
    throw ConfigError("field element needs " + std::to_string(K.degree()) + " coordinates");
  std::vector<std::uint32_t> c;
  for (const auto& v : j) {
    const auto x = v.get<std::int64_t>();
    if (x < 0 || x >= static_cast<std::int64_t>(K.p())) throw ConfigError("coordinate outside [0, p)");
    c.push_back(static_cast<std::uint32_t>(x));
  }
  return K.from_coeffs(c);
}

json to_json(const FieldTower& K) {
  return {{"p", K.p()}, {"m", K.m()}, {"M", K.M()}, {"modulus", K.modulus()}};
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const FieldTower& K, const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw ConfigError("matrix must be an array of rows");
  Matrix m(K, j.size(), j[0].size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (j[r].size() != m.cols()) throw ConfigError("ragged matrix");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = fq_from_json(K, j[r][c]);
  }
  return m;
}

json to_json(const MatPoly& a) {
  json out = json::array();
  for (const auto& m : a) out.push_back(to_json(m));
  return out;
}

json to_json(const OrePoly& f) {
  json out = json::array();
  for (const auto& c : f.coeffs()) out.push_back(to_json(c));
  return out;
}

json to_json(const DivisorSpec& div) {
  json pts = json::array();
  for (const auto& pt : div.points()) pts.push_back({{"alpha", pt.alpha}, {"r", pt.r}});
  return pts;
}

json to_json(const DrinfeldModule& dm) {
  json a = json::array();
  for (const auto& x : dm.a()) a.push_back(to_json(x));
  return {{"n", dm.rank()}, {"theta", to_json(dm.theta())}, {"a", a}};
}

json to_json(const TorsionData& td) {
  json out = json::array();
  for (const auto& point : td.jets) {
    json levels = json::array();
    for (const auto& level : point) {
      json gens = json::array();
      for (const auto& x : level) gens.push_back(to_json(x));
      levels.push_back(std::move(gens));
    }
    out.push_back(std::move(levels));
  }
  return out;
}

json to_json(const LevelData& L) {
  return {{"delta", to_json(L.delta)}, {"delta_inf", to_json(L.delta_inf)}, {"divisor", to_json(L.div)}};
}

LevelData level_from_json(const FieldTower& K, const json& j) {
  try {
    std::vector<DivisorPoint> pts;
    for (const auto& p : j.at("divisor")) pts.push_back({p.at("alpha").get<std::uint64_t>(), p.at("r").get<std::uint32_t>()});
    LevelData L;
    L.div = DivisorSpec(std::move(pts));
    for (const auto& m : j.at("delta")) L.delta.push_back(matrix_from_json(K, m));
    L.delta_inf = matrix_from_json(K, j.at("delta_inf"));
    check_level_data(L);
    return L;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad level data: ") + e.what());
  }
}

json to_json(const GroupElement& g) {
  json d = json::array();
  for (const auto& jet : g.g_D) d.push_back(to_json(jet));
  return {{"g_inf", to_json(g.g_inf)}, {"g_D", d}};
}

json to_json(const TransferResult& t) {
  json out = {{"a_poly", to_json(t.a_poly)}, {"residual", to_json(t.residual)}, {"member", t.member}};
  if (t.normalized) out["normalized"] = to_json(*t.normalized);
  return out;
}

json to_json(const CompanionPair& cp) { return {{"A", to_json(cp.A)}, {"B", to_json(cp.B)}}; }

json to_json(const Census& c, const GroupEnumerator& G, bool all) {
  json out = json::array();
  for (const auto& e : c.entries) {
    if (!all && !e.member) continue;
    json row = {{"g", to_json(G.element(e.g))}, {"index", e.g}, {"i", e.i}, {"member", e.member}};
    row["residual"] = e.residual ? to_json(*e.residual) : json(nullptr);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace dzeta
