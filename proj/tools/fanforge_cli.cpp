// fanforge: build, verify, render, trace and report on finite constructions.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "config.hpp"
#include "fanforge.h"
#include "json.hpp"

using fanforge_cli::Config;

namespace {

// Exit codes: 0 success, 1 verification failure, 2 usage or runtime error.
constexpr int kExitFailedChecks = 1;
constexpr int kExitError = 2;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(ff_status s) {
  if (s != FF_OK) throw CliError(ff_last_error());
}

std::string take(char* text) {
  std::string s(text ? text : "");
  ff_string_free(text);
  return s;
}

struct StateDeleter {
  void operator()(ff_state* s) const { ff_state_free(s); }
};
using StatePtr = std::unique_ptr<ff_state, StateDeleter>;

struct ReportDeleter {
  void operator()(ff_report* r) const { ff_report_free(r); }
};

StatePtr load(const std::string& path) {
  ff_state* s = nullptr;
  check(ff_state_load(path.c_str(), &s));
  return StatePtr(s);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CliError("cannot write " + path);
  out << text;
}

std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  return dir.back() == '/' ? dir + name : dir + "/" + name;
}

int cmd_build(const Config& c) {
  ff_state* raw = nullptr;
  const ff_status s = ff_build(c.depth, c.jumps, &raw);
  if (s == FF_ERR_TRUNCATION_TOO_COARSE) {
    throw CliError(std::string(ff_last_error()) + "\nhint: rebuild with a larger --jumps, e.g. --jumps " +
                   std::to_string(2 * c.jumps));
  }
  check(s);
  StatePtr state(raw);
  check(ff_state_save(state.get(), c.state.c_str()));
  size_t copies = 0;
  check(ff_state_copy_count(state.get(), &copies));
  std::cout << "stages: " << c.depth + 1 << ", copies: " << copies << "\n";
  for (int n = 0; n <= c.depth; ++n) {
    size_t rects = 0;
    check(ff_stage_rect_count(state.get(), n, &rects));
    std::cout << "  stage " << n << ": " << rects << " rects\n";
  }
  std::cout << "wrote " << c.state << "\n";
  return 0;
}

int cmd_verify(const Config& c, bool json_stdout) {
  StatePtr state = load(c.state);
  std::vector<double> eps;
  for (const std::string& e : c.epsilons) {
    double v = 0;
    check(ff_rational_to_double(e.c_str(), &v));
    eps.push_back(v);
  }
  ff_report* raw = nullptr;
  check(ff_verify(state.get(), c.checks.c_str(), c.grid_depth, c.fibers, eps.data(), eps.size(),
                  &raw));
  std::unique_ptr<ff_report, ReportDeleter> report(raw);
  char* text = nullptr;
  if (json_stdout) {
    check(ff_report_json(report.get(), &text));
  } else {
    check(ff_report_text(report.get(), &text));
  }
  std::cout << take(text);
  if (!c.report.empty()) {
    char* doc = nullptr;
    check(ff_report_json(report.get(), &doc));
    write_text(c.report, take(doc));
  }
  size_t failed = 0;
  check(ff_report_counts(report.get(), nullptr, &failed, nullptr));
  return failed == 0 ? 0 : kExitFailedChecks;
}

int cmd_render(const Config& c, const std::string& out_file) {
  StatePtr state = load(c.state);
  const nlohmann::json options{{"stage_first", c.stage_first},
                               {"stage_last", c.stage_last},
                               {"cantor_depth", c.cantor_depth},
                               {"draw_midpoints", c.midpoints},
                               {"earring_copy", c.earring_copy}};
  char* svg = nullptr;
  check(ff_render(state.get(), c.figure.c_str(), options.dump().c_str(), &svg));
  std::string path = out_file;
  if (path.empty()) {
    char* name = nullptr;
    check(ff_figure_file_name(state.get(), c.figure.c_str(), &name));
    path = join_path(c.out_dir, take(name));
  }
  write_text(path, take(svg));
  std::cout << "wrote " << path << "\n";
  return 0;
}

int cmd_trace(const Config& c, const std::string& at, const std::string& lo,
              const std::string& hi, bool json_stdout) {
  StatePtr state = load(c.state);
  char* out = nullptr;
  check(ff_trace(state.get(), at.c_str(), lo.empty() ? nullptr : lo.c_str(),
                 hi.empty() ? nullptr : hi.c_str(), &out));
  const std::string doc = take(out);
  if (json_stdout) {
    std::cout << doc;
    return 0;
  }
  const nlohmann::json j = nlohmann::json::parse(doc);
  std::cout << "trace at c=" << j["c"].get<std::string>() << " over [" << j["lo"].get<std::string>()
            << ", " << j["hi"].get<std::string>() << "]: " << j["heights"].size() << " heights\n";
  for (std::size_t i = 0; i < j["heights"].size(); ++i) {
    const auto& h = j["heights"][i];
    std::cout << "  " << h["height"].get<std::string>() << "  copy " << h["copy"].get<std::size_t>();
    if (i > 0) std::cout << "  gap " << j["gaps"][i - 1].get<std::string>();
    std::cout << "\n";
  }
  return 0;
}

int cmd_report(const Config& c, const std::string& out_file, int claim_n, int loop) {
  StatePtr state = load(c.state);
  char* out = nullptr;
  check(ff_decomposition(state.get(), c.earring_copy, &out));
  nlohmann::json doc = nlohmann::json::parse(take(out));
  if (claim_n >= 0) {
    char* claim = nullptr;
    check(ff_claim5(state.get(), c.earring_copy, claim_n, loop, &claim));
    doc["claim5"] = nlohmann::json::parse(take(claim));
  }
  const std::string text = doc.dump(1) + "\n";
  if (out_file.empty()) {
    std::cout << text;
  } else {
    write_text(out_file, text);
    std::cout << "wrote " << out_file << "\n";
  }
  return 0;
}

Config load_config(const std::string& path) {
  if (path.empty()) return Config{};
  std::ifstream in(path);
  if (!in) throw CliError("cannot open config " + path);
  try {
    return fanforge_cli::config_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw CliError(std::string("config ") + path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite constructions of the dispersion-point fan: build, verify, render, trace."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ff_version()));

  std::string config_path;
  app.add_option("--config", config_path, "JSON config; flags override its values");

  // Flag storage; applied over the config only when given.
  Config f;
  std::string out_file, trace_c, trace_lo, trace_hi;
  bool json_stdout = false;
  int claim_n = -1, claim_loop = 0;
  std::vector<std::function<void(Config&)>> apply;

  auto opt = [&](CLI::App* sub, const std::string& name, auto& field, const std::string& help,
                 auto member) {
    CLI::Option* o = sub->add_option(name, field, help);
    apply.push_back([o, &field, member](Config& c) {
      if (o->count() > 0) c.*member = field;
    });
    return o;
  };

  CLI::App* build = app.add_subcommand("build", "build stages 0..K and write the state file");
  opt(build, "--depth", f.depth, "K, the last stage", &Config::depth)->check(CLI::NonNegativeNumber);
  opt(build, "--jumps", f.jumps, "N, the number of jumps kept", &Config::jumps)->check(CLI::PositiveNumber);
  opt(build, "--out", f.state, "state file to write", &Config::state);

  CLI::App* verify = app.add_subcommand("verify", "run checks; exit 1 if any fails");
  opt(verify, "--state", f.state, "state file", &Config::state);
  opt(verify, "--checks", f.checks, "comma list, each name or name:n", &Config::checks);
  opt(verify, "--grid-depth", f.grid_depth, "sampling grid depth (-1: K+2)", &Config::grid_depth);
  opt(verify, "--fibers", f.fibers, "P-samples per fiber", &Config::fibers);
  opt(verify, "--epsilon", f.epsilons, "extra epsilon (p/q), repeatable", &Config::epsilons);
  opt(verify, "--out", f.report, "write the JSON report here", &Config::report);
  verify->add_flag("--json", json_stdout, "print the JSON report instead of text");

  CLI::App* render = app.add_subcommand("render", "write an SVG figure");
  opt(render, "--state", f.state, "state file", &Config::state);
  opt(render, "--figure", f.figure, "tiling, fan or earring", &Config::figure);
  opt(render, "--out-dir", f.out_dir, "directory for figure-<kind>-K<k>-N<n>.svg", &Config::out_dir);
  render->add_option("--out", out_file, "explicit output file");
  opt(render, "--stage-first", f.stage_first, "first stage drawn", &Config::stage_first);
  opt(render, "--stage-last", f.stage_last, "last stage drawn (-1: K)", &Config::stage_last);
  opt(render, "--cantor-depth", f.cantor_depth, "drawing depth for plateau pieces", &Config::cantor_depth);
  opt(render, "--copy", f.earring_copy, "copy whose earring is drawn", &Config::earring_copy);
  CLI::Option* mid = render->add_flag("--midpoints", f.midpoints, "mark the midpoint images");
  apply.push_back([mid, &f](Config& c) {
    if (mid->count() > 0) c.midpoints = f.midpoints;
  });

  CLI::App* trace = app.add_subcommand("trace", "vertical trace of the copies at one c");
  opt(trace, "--state", f.state, "state file", &Config::state);
  trace->add_option("--c", trace_c, "column c in C, as p/q")->required();
  trace->add_option("--lo", trace_lo, "lower height (default -K)");
  trace->add_option("--hi", trace_hi, "upper height (default K+1)");
  trace->add_flag("--json", json_stdout, "print JSON");

  CLI::App* report = app.add_subcommand("report", "decomposition summary and one earring");
  opt(report, "--state", f.state, "state file", &Config::state);
  opt(report, "--copy", f.earring_copy, "copy whose earring is reported", &Config::earring_copy);
  report->add_option("--out", out_file, "write JSON here instead of stdout");
  report->add_option("--claim5", claim_n, "also report the regions around one loop at this n");
  report->add_option("--loop", claim_loop, "loop index for --claim5");

  CLI::App* config = app.add_subcommand("config", "print the effective configuration as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    Config c = load_config(config_path);
    for (auto& a : apply) a(c);
    if (*build) return cmd_build(c);
    if (*verify) return cmd_verify(c, json_stdout);
    if (*render) return cmd_render(c, out_file);
    if (*trace) return cmd_trace(c, trace_c, trace_lo, trace_hi, json_stdout);
    if (*report) return cmd_report(c, out_file, claim_n, claim_loop);
    if (*config) {
      std::cout << fanforge_cli::to_json(c).dump(1) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
