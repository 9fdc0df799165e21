// dzeta: command-line front end for the level-data / zeta-correspondence library.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dzeta/config.hpp"
#include "dzeta/json_io.hpp"
#include "dzeta/zeta.hpp"

using namespace dzeta;

namespace {

struct Options {
  std::string config;
  std::optional<std::uint64_t> q;
  std::optional<std::size_t> rank;
  std::optional<std::string> divisor, theta, coeffs, M;
  std::optional<std::uint64_t> seed, cap, i_max;
  bool json = false, table = false;
};

SessionConfig make_config(const Options& o, SessionConfig base) {
  if (!o.config.empty()) base = SessionConfig::load(o.config);
  if (o.q) {
    base.set_q(*o.q);
    if (!o.M && o.config.empty()) base.M.reset();
  }
  if (o.rank) {
    if (*o.rank == 0) throw ConfigError("rank must be at least 1");
    base.params.n = *o.rank;
  }
  if (o.divisor) base.divisor = *o.divisor;
  if (o.theta) base.params.theta = *o.theta;
  if (o.seed) base.params.seed = *o.seed;
  if (o.cap) base.cap = *o.cap;
  if (o.i_max) base.i_max = *o.i_max;
  if (o.M) {
    if (*o.M == "auto") {
      base.M.reset();
    } else {
      try {
        base.M = static_cast<std::uint32_t>(std::stoul(*o.M));
      } catch (const std::exception&) {
        throw ConfigError("--M expects a positive integer or auto");
      }
    }
  }
  if (o.coeffs) {
    // "1,1;0,0,1" -> q_1 = 1 + t, q_2 = t^2
    base.params.coeff_polys.clear();
    std::stringstream polys(*o.coeffs);
    std::string poly;
    while (std::getline(polys, poly, ';')) {
      std::vector<std::uint64_t> c;
      std::stringstream items(poly);
      std::string item;
      while (std::getline(items, item, ',')) {
        try {
          c.push_back(std::stoull(item));
        } catch (const std::exception&) {
          throw ConfigError("bad --coeffs entry '" + item + "'");
        }
      }
      base.params.coeff_polys.push_back(c);
    }
  }
  DivisorSpec::parse(base.divisor);
  return base;
}

std::string show(const FqElem& x) {
  if (auto k = x.tower().fq_index(x)) return std::to_string(*k);
  std::string s = "[";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? " " : "") + std::to_string(x.coeff(i));
  return s + "]";
}

std::string show(const Matrix& m) {
  std::string s = "(";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    s += r ? "; " : "";
    for (std::size_t c = 0; c < m.cols(); ++c) s += (c ? " " : "") + show(m(r, c));
  }
  return s + ")";
}

std::string show(const GroupElement& g) {
  std::string s = "inf " + show(g.g_inf);
  for (std::size_t i = 0; i < g.g_D.size(); ++i) {
    s += " | x" + std::to_string(i) + " ";
    for (std::size_t h = 0; h < g.g_D[i].size(); ++h) s += (h ? " + u*" : "") + show(g.g_D[i][h]);
  }
  return s;
}

void emit(const json& j, const SessionConfig& cfg) {
  const std::string text = j.dump(2);
  if (cfg.output.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(cfg.output);
    if (!out) throw ConfigError("cannot write '" + cfg.output + "'");
    out << text << "\n";
  }
}

json header(const Session& s) {
  return {{"config", s.config.to_json()}, {"tower", to_json(*s.tower)}, {"module", to_json(s.module)}};
}

/// "h_{t+1},0", "F,1", "Id,0", "c_{2},0", "g#17,1"
std::pair<GroupElement, std::uint64_t> parse_transform(const Session& s, const std::string& text) {
  const std::size_t comma = text.rfind(',');
  if (comma == std::string::npos) throw ConfigError("transform must look like 'g,i'");
  const std::string g = text.substr(0, comma), i = text.substr(comma + 1);
  std::uint64_t power = 0;
  try {
    std::size_t used = 0;
    power = std::stoull(i, &used);
    if (used != i.size()) throw std::invalid_argument(i);
  } catch (const std::exception&) {
    throw ConfigError("bad Frobenius power '" + i + "'");
  }
  const FieldTower& K = *s.tower;
  const std::size_t n = s.module.rank();
  auto braced = [&](const std::string& prefix) -> std::optional<std::string> {
    if (g.rfind(prefix + "{", 0) == 0 && g.back() == '}') return g.substr(prefix.size() + 1, g.size() - prefix.size() - 2);
    return std::nullopt;
  };
  if (g == "F" || g == "Id") return {GroupElement::identity(K, n, s.divisor), power};
  if (auto body = braced("h_")) return {GroupElement::central(parse_fq_poly(K, *body), n, s.divisor), power};
  if (auto body = braced("c_")) {
    const Poly c = parse_fq_poly(K, *body);
    if (c.degree() != 0) throw ConfigError("scalar transform needs a nonzero constant");
    return {GroupElement::scalar(c.coeff(0), n, s.divisor), power};
  }
  if (g.rfind("g#", 0) == 0) {
    const GroupEnumerator G(K, n, s.divisor);
    std::uint64_t idx = 0;
    try {
      idx = std::stoull(g.substr(2));
    } catch (const std::exception&) {
      throw ConfigError("bad group index '" + g + "'");
    }
    if (idx >= G.size()) throw ConfigError("group index out of range");
    return {G.element(idx), power};
  }
  throw ConfigError("unknown group element '" + g + "'");
}

// ---------------------------------------------------------------------------

int cmd_torsion(const Options& o) {
  const Session s = open_session(make_config(o, {}));
  const TorsionData td = torsion_basis(s.module, s.divisor);
  if (o.table) {
    std::cout << s.tower->describe() << "\n";
    for (std::size_t i = 0; i < td.jets.size(); ++i)
      for (std::size_t h = 0; h < td.jets[i].size(); ++h)
        for (std::size_t j = 0; j < td.jets[i][h].size(); ++j)
          std::cout << "point " << s.divisor.points()[i].alpha << " jet " << h << " gen " << j << ": "
                    << show(td.jets[i][h][j]) << "\n";
    return 0;
  }
  json j = header(s);
  j["divisor"] = to_json(s.divisor);
  j["torsion"] = to_json(td);
  emit(j, s.config);
  return 0;
}

int cmd_level(const Options& o) {
  const Session s = open_session(make_config(o, {}));
  const LevelData x = build_level_data(s.module, s.divisor);
  if (o.table) {
    for (std::size_t k = 0; k < x.delta.size(); ++k) std::cout << "Delta_" << k << " = " << show(x.delta[k]) << "\n";
    std::cout << "Delta_inf = " << show(x.delta_inf) << "\n";
    return 0;
  }
  json j = header(s);
  j["level"] = to_json(x);
  emit(j, s.config);
  return 0;
}

int cmd_tau(const Options& o) {
  const Session s = open_session(make_config(o, {}));
  const CompanionPair cp = tau_n_matrix(s.module);
  if (o.table) {
    std::cout << "A = " << show(cp.A) << "\nB = " << show(cp.B) << "\n";
    return 0;
  }
  json j = header(s);
  j["companion"] = to_json(companion_matrix(s.module));
  j["tau"] = to_json(cp);
  emit(j, s.config);
  return 0;
}

int cmd_nu(const Options& o) {
  const Session s = open_session(make_config(o, {}));
  const NuSolution sol = solve_nu(tau_n_matrix(s.module), s.module.rank());
  if (o.table) {
    std::cout << "F_q-dimension " << sol.fq_basis.size() << ", F_{q^n}-dimension " << sol.fqn_basis.size() << "\n";
    std::cout << "nu = " << show(sol.nu) << "\n";
    return 0;
  }
  auto rows = [](const std::vector<std::vector<FqElem>>& v) {
    json out = json::array();
    for (const auto& r : v) {
      json row = json::array();
      for (const auto& x : r) row.push_back(to_json(x));
      out.push_back(row);
    }
    return out;
  };
  json j = header(s);
  j["fq_basis"] = rows(sol.fq_basis);
  j["fqn_basis"] = rows(sol.fqn_basis);
  j["nu"] = to_json(sol.nu);
  emit(j, s.config);
  return 0;
}

int check_expect(const std::optional<std::string>& expect, bool verdict) {
  if (!expect) return 0;
  if (*expect != "true" && *expect != "false") throw ConfigError("--expect takes true or false");
  return (*expect == "true") == verdict ? 0 : 1;
}

int cmd_zeta(const Options& o, const std::string& transform, const std::optional<std::string>& expect) {
  const Session s = open_session(make_config(o, {}));
  const LevelData x = build_level_data(s.module, s.divisor);
  const auto [g, i] = parse_transform(s, transform);
  const LevelData src = act_group(g, act_frobenius(x, i));
  const TransferResult t = transfer(src, x);
  if (o.table) {
    std::cout << "transform " << transform << ": member=" << (t.member ? "true" : "false") << "\n";
    for (std::size_t k = 0; k < t.a_poly.size(); ++k) std::cout << "A_" << k << " = " << show(t.a_poly[k]) << "\n";
    std::cout << "residual = " << show(t.residual) << "\n";
  } else {
    json j = header(s);
    j["transform"] = transform;
    j["g"] = to_json(g);
    j["i"] = i;
    j["certificate"] = to_json(t);
    j["member"] = t.member;
    emit(j, s.config);
  }
  return check_expect(expect, t.member);
}

int cmd_theta(const Options& o, const std::optional<std::string>& transform) {
  const Session s = open_session(make_config(o, {}));
  const LevelData x = build_level_data(s.module, s.divisor);
  json j = header(s);
  bool ok = true;
  if (!transform) {
    const bool v = theta_member_rank1(x);
    j["theta_member"] = v;
    if (o.table) std::cout << "theta_member=" << (v ? "true" : "false") << "\n";
  } else {
    const auto [g, i] = parse_transform(s, *transform);
    const LevelData src = act_group(g, act_frobenius(x, i));
    const bool th = theta_member_rank1(rank1_quotient(src, x));
    const bool z = zeta_member(src, x);
    ok = th == z;
    j["transform"] = *transform;
    j["theta_member"] = th;
    j["zeta_member"] = z;
    if (o.table)
      std::cout << "theta(quotient)=" << (th ? "true" : "false") << " zeta(pair)=" << (z ? "true" : "false") << " "
                << (ok ? "agree" : "DISAGREE") << "\n";
  }
  if (!o.table) emit(j, s.config);
  return ok ? 0 : 1;
}

int cmd_scan(const Options& o, bool all, bool reference) {
  const Session s = open_session(make_config(o, {}));
  const LevelData x = build_level_data(s.module, s.divisor);
  ScanOptions so;
  so.cap = s.config.cap;
  so.i_max = s.config.i_max;
  so.keep_residuals = all && !o.table;
  const Census c = reference ? scan_graphs_reference(x, so) : scan_graphs(x, so);
  const GroupEnumerator G(*s.tower, s.module.rank(), s.divisor);
  if (o.table) {
    std::cout << "group size (mod scalars) " << G.size() << ", pairs " << c.entries.size() << ", members "
              << c.members().size() << "\n";
    for (const auto& e : c.entries)
      if (all || e.member)
        std::cout << "F^" << e.i << "  g#" << e.g << "  " << show(G.element(e.g)) << "  "
                  << (e.member ? "member" : "-") << "\n";
    return 0;
  }
  json j = header(s);
  j["group_size"] = G.size();
  j["census"] = to_json(c, G, all);
  emit(j, s.config);
  return 0;
}

// ---------------------------------------------------------------------------
// Built-in examples

SessionConfig example_config(int k, const Options& o) {
  SessionConfig c;
  switch (k) {
    case 1:
      c = SessionConfig::from_json({{"q", 3}, {"rank", 1}, {"divisor", "0,1"}, {"M", 4}});
      break;
    case 2:
      c = SessionConfig::from_json({{"q", 5}, {"rank", 1}, {"divisor", "0,1,2"}, {"M", 8}});
      break;
    case 3:
      c = SessionConfig::from_json({{"q", 3}, {"rank", 2}, {"divisor", "0"}, {"coeffs", {{1, 1}}}, {"M", 12}});
      break;
    case 4:
      c = SessionConfig::from_json(
          {{"q", 3}, {"rank", 2}, {"divisor", "0,1"}, {"coeffs", {{1, 1}}}, {"M", 12}, {"cap", 100000}});
      break;
    default:
      throw ConfigError("examples are numbered 1 to 4");
  }
  Options only_q;
  only_q.q = o.q;
  only_q.seed = o.seed;
  only_q.cap = o.cap;
  only_q.theta = o.theta;
  return make_config(only_q, c);
}

struct Report {
  json claims = json::array();
  bool ok = true;
  bool table;
  void claim(const std::string& what, bool pass, const std::string& detail = "") {
    ok = ok && pass;
    claims.push_back({{"claim", what}, {"pass", pass}, {"detail", detail}});
    if (table) std::cout << (pass ? "PASS " : "FAIL ") << what << (detail.empty() ? "" : "  [" + detail + "]") << "\n";
  }
};

std::set<std::pair<std::uint64_t, std::uint64_t>> members(const Census& c) {
  std::set<std::pair<std::uint64_t, std::uint64_t>> out;
  for (const auto& e : c.entries)
    if (e.member) out.insert({e.g, e.i});
  return out;
}

/// (h_s, n*i) for s monic, a unit mod p(t), of degree d-1-i.
std::set<std::pair<std::uint64_t, std::uint64_t>> expected_census(const Session& s, const GroupEnumerator& G) {
  const FieldTower& K = *s.tower;
  const std::size_t n = s.module.rank(), d = s.divisor.degree();
  std::set<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t deg = d - 1 - i;
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < deg; ++k) total *= K.q();
    for (std::uint64_t code = 0; code < total; ++code) {
      std::vector<FqElem> c;
      std::uint64_t r = code;
      for (std::size_t k = 0; k < deg; ++k, r /= K.q()) c.push_back(K.fq(r % K.q()));
      c.push_back(K.one());
      const Poly sp(K, c);
      bool unit = true;
      for (std::size_t pt = 0; pt < s.divisor.size(); ++pt) unit = unit && !sp(s.divisor.alpha(K, pt)).is_zero();
      if (!unit) continue;
      out.insert({*G.find(GroupElement::central(sp, n, s.divisor)), n * i});
    }
  }
  return out;
}

std::string describe_census(const std::set<std::pair<std::uint64_t, std::uint64_t>>& m, const GroupEnumerator& G) {
  std::string out;
  for (const auto& [g, i] : m) out += (out.empty() ? "" : "; ") + ("F^" + std::to_string(i) + " " + show(G.element(g)));
  return out;
}

int cmd_example(int k, const Options& o) {
  const Session s = open_session(example_config(k, o));
  const FieldTower& K = *s.tower;
  Report rep{json::array(), true, !o.json};
  if (rep.table) std::cout << "Example " << k << ": " << K.describe() << ", divisor " << s.divisor.to_string() << "\n";
  const LevelData x = build_level_data(s.module, s.divisor);
  const GroupEnumerator G(K, s.module.rank(), s.divisor);
  ScanOptions so;
  so.cap = s.config.cap;
  auto census_claims = [&] {
    const auto got = members(scan_graphs(x, so));
    const auto want = expected_census(s, G);
    rep.claim("census equals the monic homothety graphs plus Frobenius", got == want, describe_census(got, G));
    return got;
  };

  if (k == 1) {
    const TorsionData td = torsion_basis(s.module, s.divisor);
    const FqElem u = td.jets[0][0][0], v = td.jets[1][0][0];
    rep.claim("u^(q-1) - v^(q-1) + 1 = 0", (K.pow(u, K.q() - 1) - K.pow(v, K.q() - 1) + K.one()).is_zero());
    rep.claim("nu = 1", x.delta_inf.is_identity());
    const auto got = census_claims();
    std::size_t at0 = 0;
    for (const auto& m : got) at0 += m.second == 0;
    rep.claim("q - 2 homothety graphs at F^0", at0 == K.q() - 2, std::to_string(at0));
  } else if (k == 2) {
    const auto pf = partial_fractions(K, s.divisor);
    bool units = true;
    for (const auto& m : pf) units = units && m.degree() == 0 && K.fq_index(m.coeff(0)) && !m.coeff(0).is_zero();
    rep.claim("partial fraction coefficients m_i lie in F_q^x", units);
    census_claims();
  } else if (k == 3) {
    const CompanionPair cp = tau_n_matrix(s.module);
    const FqElem a1 = s.module.a(1);
    rep.claim("A = (1 -a_1^q; 0 1)", cp.A(0, 0).is_one() && cp.A(1, 1).is_one() && cp.A(1, 0).is_zero() &&
                                        cp.A(0, 1) == -K.frobenius(a1, 1),
              "untwisted form (1 -a_1; 0 1) " + std::string(cp.A(0, 1) == -a1 ? "agrees" : "differs by a Frobenius twist"));
    bool rel = true;
    for (std::size_t r = 0; r < 2; ++r) {
      const FqElem n1 = x.delta_inf(r, 0), n2 = x.delta_inf(r, 1);
      rel = rel && K.frobenius(n1, 2) == n1 && (K.frobenius(n2, 2) - n2 + K.frobenius(a1, 1) * n1).is_zero();
    }
    rep.claim("nu^(q^2) = nu A row relations", rel);
    rep.claim("diagonal pair is a member", zeta_member(x, x));
    const auto got = members(scan_graphs(x, so));
    const std::set<std::pair<std::uint64_t, std::uint64_t>> want{
        {*G.find(GroupElement::identity(K, 2, s.divisor)), 0}};
    rep.claim("only the diagonal survives modulo scalars", got == want, describe_census(got, G));
  } else {
    const auto got = census_claims();
    bool none_at_1 = true;
    for (const auto& m : got) none_at_1 = none_at_1 && m.second != 1;
    rep.claim("no graph of g.F", none_at_1);
    rep.claim("F^2 graph is a member", got.count({*G.find(GroupElement::identity(K, 2, s.divisor)), 2}) == 1);
  }
  if (!rep.table) {
    json j = header(s);
    j["example"] = k;
    j["claims"] = rep.claims;
    j["pass"] = rep.ok;
    emit(j, s.config);
  }
  return rep.ok ? 0 : 1;
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--config", o.config, "JSON config file");
  app->add_option("--q", o.q, "field size q (prime power)");
  app->add_option("--rank", o.rank, "rank n");
  app->add_option("--divisor", o.divisor, "divisor, e.g. 0:1,1:1");
  app->add_option("--theta", o.theta, "theta spec: auto, degree:k, fq:k, random:k, or [coords]");
  app->add_option("--coeffs", o.coeffs, "q_k coefficient lists, e.g. 1,1;0,0,1");
  app->add_option("--M", o.M, "ambient degree over F_q, or auto");
  app->add_option("--seed", o.seed, "seed for random theta");
  app->add_option("--cap", o.cap, "largest group size for scans");
  auto* j = app->add_flag("--json", o.json, "JSON output");
  auto* t = app->add_flag("--table", o.table, "table output");
  j->excludes(t);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Drinfeld-module level data and zeta-correspondence checks"};
  app.require_subcommand(1);
  Options o;
  std::string transform;
  std::optional<std::string> expect, theta_transform;
  bool all = false, reference = false;
  int example = 0;

  auto* torsion = app.add_subcommand("torsion", "torsion jet bases");
  auto* level = app.add_subcommand("level", "level data (Delta(t), Delta_inf)");
  auto* tau = app.add_subcommand("tau-matrix", "companion product A t + B");
  auto* nu = app.add_subcommand("nu-solve", "infinity-level solutions");
  auto* zeta = app.add_subcommand("zeta-check", "membership of (g F^i x, x)");
  auto* theta = app.add_subcommand("theta-check", "rank-1 theta criterion");
  auto* scan = app.add_subcommand("scan", "census of graphs g F^i");
  auto* ex = app.add_subcommand("example", "reproduce Examples 1-4");
  for (auto* sub : {torsion, level, tau, nu, zeta, theta, scan, ex}) add_common(sub, o);
  zeta->add_option("--transform", transform, "g,i with g one of Id, F, h_{s(t)}, c_{a}, g#index")->required();
  zeta->add_option("--expect", expect, "true or false; mismatch exits 1");
  theta->add_option("--transform", theta_transform, "compare with zeta membership of this pair");
  scan->add_option("--i-max", o.i_max, "largest Frobenius power");
  scan->add_flag("--all", all, "report non-members too");
  scan->add_flag("--reference", reference, "use the serial reference scan");
  ex->add_option("k", example, "example number")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*torsion) return cmd_torsion(o);
    if (*level) return cmd_level(o);
    if (*tau) return cmd_tau(o);
    if (*nu) return cmd_nu(o);
    if (*zeta) return cmd_zeta(o, transform, expect);
    if (*theta) return cmd_theta(o, theta_transform);
    if (*scan) {
      if (!o.json) o.table = true;
      return cmd_scan(o, all, reference);
    }
    if (*ex) return cmd_example(example, o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
