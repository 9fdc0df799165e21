#include "dzeta/config.hpp"

#include <fstream>
#include <set>

namespace dzeta {

void SessionConfig::set_q(std::uint64_t q) {
  for (std::uint32_t p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    std::uint64_t r = q;
    std::uint32_t m = 0;
    while (r % p == 0) {
      r /= p;
      ++m;
    }
    if (r != 1) break;
    params.p = p;
    params.m = m;
    return;
  }
  throw ConfigError("q = " + std::to_string(q) + " is not a prime power");
}

SessionConfig SessionConfig::from_json(const json& j) {
  static const std::set<std::string> known = {"p", "m", "q", "M", "rank", "divisor", "theta", "seed",
                                              "coeffs", "cap", "i_max", "max_degree", "output", "comment"};
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw ConfigError("unknown config key '" + it.key() + "'");
  SessionConfig c;
  try {
    if (j.contains("q")) c.set_q(j["q"].get<std::uint64_t>());
    if (j.contains("p")) c.params.p = j["p"].get<std::uint32_t>();
    if (j.contains("m")) c.params.m = j["m"].get<std::uint32_t>();
    if (j.contains("M")) {
      if (j["M"].is_string()) {
        if (j["M"].get<std::string>() != "auto") throw ConfigError("M must be a positive integer or \"auto\"");
      } else {
        c.M = j["M"].get<std::uint32_t>();
        if (*c.M == 0) throw ConfigError("M must be positive");
      }
    }
    if (j.contains("rank")) {
      const auto n = j["rank"].get<std::int64_t>();
      if (n < 1) throw ConfigError("rank must be at least 1");
      c.params.n = static_cast<std::size_t>(n);
    }
    if (j.contains("divisor")) c.divisor = j["divisor"].get<std::string>();
    if (j.contains("theta")) c.params.theta = j["theta"].is_array() ? j["theta"].dump() : j["theta"].get<std::string>();
    if (j.contains("seed")) c.params.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("coeffs")) c.params.coeff_polys = j["coeffs"].get<std::vector<std::vector<std::uint64_t>>>();
    if (j.contains("cap")) c.cap = j["cap"].get<std::uint64_t>();
    if (j.contains("i_max")) c.i_max = j["i_max"].get<std::uint64_t>();
    if (j.contains("max_degree")) c.max_degree = j["max_degree"].get<std::size_t>();
    if (j.contains("output")) c.output = j["output"].get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  DivisorSpec::parse(c.divisor);
  return c;
}

SessionConfig SessionConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  try {
    return from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
}

json SessionConfig::to_json() const {
  json j = {{"p", params.p},         {"m", params.m},      {"rank", params.n},
            {"divisor", divisor},    {"theta", params.theta}, {"seed", params.seed},
            {"coeffs", params.coeff_polys}, {"cap", cap},   {"max_degree", max_degree}};
  j["M"] = M ? json(*M) : json("auto");
  if (i_max) j["i_max"] = *i_max;
  return j;
}

Session open_session(const SessionConfig& cfg) {
  if (cfg.params.n == 0) throw ConfigError("rank must be at least 1");
  const DivisorSpec div = DivisorSpec::parse(cfg.divisor);
  div.check_against(cfg.params.q());
  std::shared_ptr<const FieldTower> K;
  if (cfg.M) {
    K = FieldTower::create(cfg.params.p, cfg.params.m, *cfg.M);
  } else {
    K = sufficient_extension(cfg.params, div, cfg.max_degree).tower;
  }
  SessionConfig resolved = cfg;
  resolved.M = K->M();
  DrinfeldModule dm = instantiate(cfg.params, *K);
  return Session{resolved, K, std::move(dm), div};
}

}  // namespace dzeta
