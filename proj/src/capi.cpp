#include "fanforge.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "fanforge/decomp.hpp"
#include "fanforge/errors.hpp"
#include "fanforge/render.hpp"
#include "fanforge/serialize.hpp"
#include "fanforge/verify.hpp"

using namespace fanforge;
using nlohmann::json;

struct ff_state {
  ConstructionState state;
};

struct ff_report {
  VerificationReport report;
  int depth;
  int truncation;
};

namespace {

thread_local std::string last_error;

ff_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return FF_ERR_INVALID_ARGUMENT;
    case ErrorCode::kOutOfRange: return FF_ERR_OUT_OF_RANGE;
    case ErrorCode::kNotInCantor: return FF_ERR_NOT_IN_CANTOR;
    case ErrorCode::kAtJumpLocation: return FF_ERR_AT_JUMP_LOCATION;
    case ErrorCode::kIndexOutOfRange: return FF_ERR_INDEX_OUT_OF_RANGE;
    case ErrorCode::kTruncationTooCoarse: return FF_ERR_TRUNCATION_TOO_COARSE;
    case ErrorCode::kStageOrderViolation: return FF_ERR_STAGE_ORDER_VIOLATION;
    case ErrorCode::kJumpHit: return FF_ERR_JUMP_HIT;
    case ErrorCode::kNotSpanning: return FF_ERR_NOT_SPANNING;
    case ErrorCode::kNotOrdered: return FF_ERR_NOT_ORDERED;
    case ErrorCode::kDepthInsufficient: return FF_ERR_DEPTH_INSUFFICIENT;
    case ErrorCode::kUnknownCopy: return FF_ERR_UNKNOWN_COPY;
    case ErrorCode::kSchema: return FF_ERR_SCHEMA;
    case ErrorCode::kIo: return FF_ERR_IO;
  }
  return FF_ERR_INTERNAL;
}

template <class Body>
ff_status guarded(Body&& body) {
  try {
    body();
    last_error.clear();
    return FF_OK;
  } catch (const Error& e) {
    last_error = std::string(error_code_name(e.code())) + ": " + e.what();
    return to_status(e.code());
  } catch (const json::exception& e) {
    last_error = std::string("InvalidArgument: ") + e.what();
    return FF_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    last_error = std::string("Internal: ") + e.what();
    return FF_ERR_INTERNAL;
  } catch (...) {
    last_error = "Internal: unknown exception";
    return FF_ERR_INTERNAL;
  }
}

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p == nullptr) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
}

RenderOptions render_options(const char* figure, const char* options_json) {
  RenderOptions o;
  o.kind = parse_figure(figure);
  if (options_json == nullptr || *options_json == '\0') return o;
  const json j = json::parse(options_json);
  if (!j.is_object()) throw Error(ErrorCode::kInvalidArgument, "render options must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k == "width") o.width = it->get<double>();
    else if (k == "height") o.height = it->get<double>();
    else if (k == "margin") o.margin = it->get<double>();
    else if (k == "stage_first") o.stage_first = it->get<int>();
    else if (k == "stage_last") o.stage_last = it->get<int>();
    else if (k == "r_min") o.r_min = it->get<double>();
    else if (k == "r_max") o.r_max = it->get<double>();
    else if (k == "copy_stroke") o.copy_stroke = it->get<double>();
    else if (k == "rect_stroke") o.rect_stroke = it->get<double>();
    else if (k == "draw_midpoints") o.draw_midpoints = it->get<bool>();
    else if (k == "draw_rects") o.draw_rects = it->get<bool>();
    else if (k == "draw_copies") o.draw_copies = it->get<bool>();
    else if (k == "cantor_depth") o.cantor_depth = it->get<int>();
    else if (k == "earring_copy") o.earring_copy = it->get<std::size_t>();
    else throw Error(ErrorCode::kInvalidArgument, "unknown render option '" + k + "'");
  }
  if (!(o.width > 0 && o.height > 0 && o.margin >= 0 && 2 * o.margin < std::min(o.width, o.height))) {
    throw Error(ErrorCode::kInvalidArgument, "bad render viewport");
  }
  return o;
}

}  // namespace

extern "C" {

const char* ff_version(void) { return "1.0.0"; }

const char* ff_status_name(ff_status status) {
  switch (status) {
    case FF_OK: return "OK";
    case FF_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case FF_ERR_OUT_OF_RANGE: return "OutOfRange";
    case FF_ERR_NOT_IN_CANTOR: return "NotInCantor";
    case FF_ERR_AT_JUMP_LOCATION: return "AtJumpLocation";
    case FF_ERR_INDEX_OUT_OF_RANGE: return "IndexOutOfRange";
    case FF_ERR_TRUNCATION_TOO_COARSE: return "TruncationTooCoarse";
    case FF_ERR_STAGE_ORDER_VIOLATION: return "StageOrderViolation";
    case FF_ERR_JUMP_HIT: return "JumpHit";
    case FF_ERR_NOT_SPANNING: return "NotSpanning";
    case FF_ERR_NOT_ORDERED: return "NotOrdered";
    case FF_ERR_DEPTH_INSUFFICIENT: return "DepthInsufficient";
    case FF_ERR_UNKNOWN_COPY: return "UnknownCopy";
    case FF_ERR_SCHEMA: return "SchemaError";
    case FF_ERR_IO: return "IoError";
    case FF_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* ff_last_error(void) { return last_error.c_str(); }

void ff_string_free(char* text) { std::free(text); }

ff_status ff_rational_to_double(const char* text, double* out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = parse_rational(text).get_d();
  });
}

ff_status ff_build(int depth, int truncation, ff_state** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    if (depth < 0) throw Error(ErrorCode::kInvalidArgument, "depth must be >= 0");
    if (truncation < 1) throw Error(ErrorCode::kInvalidArgument, "jumps must be >= 1");
    *out = new ff_state{build(depth, truncation)};
  });
}

ff_status ff_state_load(const char* path, ff_state** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    *out = new ff_state{load_state(path)};
  });
}

ff_status ff_state_parse(const char* json_text, ff_state** out) {
  return guarded([&] {
    require(json_text, "json_text");
    require(out, "out");
    *out = nullptr;
    *out = new ff_state{state_parse(json_text)};
  });
}

ff_status ff_state_save(const ff_state* state, const char* path) {
  return guarded([&] {
    require(state, "state");
    require(path, "path");
    save_state(state->state, path);
  });
}

ff_status ff_state_json(const ff_state* state, char** out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    *out = copy_out(state_dump(state->state));
  });
}

void ff_state_free(ff_state* state) { delete state; }

ff_status ff_state_depth(const ff_state* state, int* out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    *out = state->state.depth();
  });
}

ff_status ff_state_truncation(const ff_state* state, int* out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    *out = state->state.truncation();
  });
}

ff_status ff_state_copy_count(const ff_state* state, size_t* out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    *out = state->state.copy_count();
  });
}

ff_status ff_stage_rect_count(const ff_state* state, int stage, size_t* out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    if (stage < 0 || stage > state->state.depth()) {
      throw Error(ErrorCode::kOutOfRange, "no stage " + std::to_string(stage));
    }
    *out = state->state.stages()[static_cast<std::size_t>(stage)].rects.size();
  });
}

ff_status ff_verify(const ff_state* state, const char* checks, int grid_depth, int fiber_count,
                    const double* epsilons, size_t epsilon_count, ff_report** out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    *out = nullptr;
    if (epsilon_count > 0) require(epsilons, "epsilons");
    if (fiber_count < 0) throw Error(ErrorCode::kInvalidArgument, "fiber count must be >= 0");
    SuiteOptions options;
    if (checks != nullptr) options.checks = parse_check_list(checks);
    options.grid_depth = grid_depth;
    options.fiber_count = fiber_count;
    options.epsilons.assign(epsilons, epsilons + epsilon_count);
    *out = new ff_report{run_suite(state->state, options), state->state.depth(),
                         state->state.truncation()};
  });
}

ff_status ff_report_json(const ff_report* report, char** out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    *out = copy_out(report->report.to_json(report->depth, report->truncation).dump(1) + "\n");
  });
}

ff_status ff_report_text(const ff_report* report, char** out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    *out = copy_out(report->report.to_text());
  });
}

ff_status ff_report_counts(const ff_report* report, size_t* passed, size_t* failed,
                           size_t* skipped) {
  return guarded([&] {
    require(report, "report");
    if (passed) *passed = report->report.count(CheckStatus::kPass);
    if (failed) *failed = report->report.count(CheckStatus::kFail);
    if (skipped) *skipped = report->report.count(CheckStatus::kSkipped);
  });
}

void ff_report_free(ff_report* report) { delete report; }

ff_status ff_trace(const ff_state* state, const char* c, const char* lo, const char* hi,
                   char** out) {
  return guarded([&] {
    require(state, "state");
    require(c, "c");
    require(out, "out");
    const ConstructionState& s = state->state;
    const Rational cq = parse_rational(c);
    const Rational lq = lo ? parse_rational(lo) : Rational(-std::max(s.depth(), 0));
    const Rational hq = hi ? parse_rational(hi) : Rational(std::max(s.depth(), 0) + 1);
    if (lq > hq) throw Error(ErrorCode::kInvalidArgument, "lo exceeds hi");
    const std::vector<TraceHit> hits = vertical_trace(s, cq, lq, hq);
    json heights = json::array();
    json gaps = json::array();
    for (std::size_t i = 0; i < hits.size(); ++i) {
      heights.push_back({{"height", to_string(hits[i].height)}, {"copy", hits[i].copy}});
      if (i > 0) gaps.push_back(to_string(hits[i].height - hits[i - 1].height));
    }
    const json doc{{"c", to_string(cq)},
                   {"lo", to_string(lq)},
                   {"hi", to_string(hq)},
                   {"heights", heights},
                   {"gaps", gaps}};
    *out = copy_out(doc.dump(1) + "\n");
  });
}

ff_status ff_render(const ff_state* state, const char* figure, const char* options_json,
                    char** svg_out) {
  return guarded([&] {
    require(state, "state");
    require(figure, "figure");
    require(svg_out, "svg_out");
    *svg_out = copy_out(render_figure(state->state, render_options(figure, options_json)));
  });
}

ff_status ff_figure_file_name(const ff_state* state, const char* figure, char** out) {
  return guarded([&] {
    require(state, "state");
    require(figure, "figure");
    require(out, "out");
    *out = copy_out(
        figure_file_name(parse_figure(figure), state->state.depth(), state->state.truncation()));
  });
}

ff_status ff_decomposition(const ff_state* state, size_t copy, char** out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    const SpaceModel model(state->state);
    const Earring e = collapse_E(model, copy);
    const EarringVerdict v = earring_check(e);
    json doc = suslinian_report(model).to_json();
    doc["earring"] = earring_json(e);
    doc["earring_check"] = {{"ok", v.ok}, {"reason", v.reason}, {"metrics", v.metrics}};
    *out = copy_out(doc.dump(1) + "\n");
  });
}

ff_status ff_claim5(const ff_state* state, size_t owner, int n, int loop, char** out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    const SpaceModel model(state->state);
    const Claim5Result r = claim5_regions(model, owner, n, loop);
    const json doc{{"owner", r.owner},
                   {"loop", r.loop},
                   {"n", r.n},
                   {"stage", r.stage},
                   {"column", r.column.to_string()},
                   {"above", r.above},
                   {"below", r.below},
                   {"boundary_ok", r.boundary_ok},
                   {"cells_checked", r.cells_checked},
                   {"failure", r.failure},
                   {"upper_boundary_points", r.upper.boundary.size()},
                   {"lower_boundary_points", r.lower.boundary.size()},
                   {"column_distance", to_string(r.column_distance)}};
    *out = copy_out(doc.dump(1) + "\n");
  });
}

}  // extern "C"
