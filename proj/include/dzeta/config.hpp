#pragma once

// Session configuration: one JSON document whose keys mirror the CLI flags.

#include <memory>
#include <optional>
#include <string>

#include "dzeta/drinfeld.hpp"
#include "dzeta/json_io.hpp"

namespace dzeta {

struct SessionConfig {
  ModuleParams params;
  std::optional<std::uint32_t> M;  // nullopt = search
  std::string divisor = "0:1";
  std::uint64_t cap = 1'000'000;
  std::optional<std::uint64_t> i_max;
  std::size_t max_degree = kMaxDegree;
  std::string output;

  /// Throws ConfigError on unknown keys or bad values.
  static SessionConfig from_json(const json& j);
  static SessionConfig load(const std::string& path);
  json to_json() const;
  /// q given as a prime power; sets p and m.
  void set_q(std::uint64_t q);
};

struct Session {
  SessionConfig config;
  std::shared_ptr<const FieldTower> tower;
  DrinfeldModule module;
  DivisorSpec divisor;
};

/// Builds the tower (searching M when unset) and instantiates the module.
Session open_session(const SessionConfig& cfg);

}  // namespace dzeta
