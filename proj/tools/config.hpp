#pragma once

// Run configuration: everything that determines a build/verify/render run.

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace fanforge_cli {

struct Config {
  int depth = 2;    // K
  int jumps = 16;   // N
  std::string state = "state.json";
  std::string report;       // verify writes the JSON report here when set
  std::string out_dir = ".";
  std::string checks;       // empty: the full suite
  std::string figure = "tiling";
  int stage_first = 0;
  int stage_last = -1;      // -1: up to K
  int cantor_depth = 5;
  bool midpoints = false;
  std::size_t earring_copy = 0;
  int grid_depth = -1;      // -1: K+2
  int fibers = 3;
  std::vector<std::string> epsilons;  // "p/q"
};

inline nlohmann::json to_json(const Config& c) {
  return nlohmann::json{{"depth", c.depth},
                        {"jumps", c.jumps},
                        {"state", c.state},
                        {"report", c.report},
                        {"out_dir", c.out_dir},
                        {"checks", c.checks},
                        {"figure", c.figure},
                        {"stage_first", c.stage_first},
                        {"stage_last", c.stage_last},
                        {"cantor_depth", c.cantor_depth},
                        {"midpoints", c.midpoints},
                        {"earring_copy", c.earring_copy},
                        {"grid_depth", c.grid_depth},
                        {"fibers", c.fibers},
                        {"epsilons", c.epsilons}};
}

// Missing keys keep their defaults; unknown keys are rejected.
inline Config config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::runtime_error("config: expected a JSON object");
  Config c;
  const nlohmann::json defaults = to_json(c);
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!defaults.contains(it.key())) {
      throw std::runtime_error("config: unknown key '" + it.key() + "'");
    }
  }
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("depth", c.depth);
  get("jumps", c.jumps);
  get("state", c.state);
  get("report", c.report);
  get("out_dir", c.out_dir);
  get("checks", c.checks);
  get("figure", c.figure);
  get("stage_first", c.stage_first);
  get("stage_last", c.stage_last);
  get("cantor_depth", c.cantor_depth);
  get("midpoints", c.midpoints);
  get("earring_copy", c.earring_copy);
  get("grid_depth", c.grid_depth);
  get("fibers", c.fibers);
  get("epsilons", c.epsilons);
  return c;
}

}  // namespace fanforge_cli
