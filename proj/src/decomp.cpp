#include "fanforge/decomp.hpp"

#include <algorithm>
#include <cmath>

#include "fanforge/errors.hpp"

namespace fanforge {

Earring collapse_E(const SpaceModel& model, CopyId copy) {
  const PlacedCopy& placed = model.state().copy(copy);
  Earring e;
  e.owner = copy;
  e.loops.reserve(placed.jumps().size());
  for (const ImageJump& j : placed.jumps()) {
    Loop loop{j.index, j.c, j.low, j.high, j.high - j.low, 0.0};
    const PlanePoint a = fan_point(Point{j.c, j.low});
    const PlanePoint b = fan_point(Point{j.c, j.high});
    loop.fan_diameter = std::hypot(a.x - b.x, a.y - b.y);
    e.loops.push_back(std::move(loop));
  }
  std::sort(e.loops.begin(), e.loops.end(),
            [](const Loop& a, const Loop& b) { return a.jump < b.jump; });
  return e;
}

Earring collapse_E(const Earring& earring) { return earring; }

EarringVerdict earring_check(const Earring& earring) {
  EarringVerdict v;
  v.ok = true;
  v.ratios_half = true;
  auto fail = [&](std::string why) {
    if (v.ok) v.reason = std::move(why);
    v.ok = false;
  };
  if (earring.base_points != 1) fail("expected exactly one base point");
  std::vector<Rational> columns;
  for (std::size_t k = 0; k < earring.loops.size(); ++k) {
    const Loop& l = earring.loops[k];
    if (!(l.low < l.high)) fail("loop " + std::to_string(l.jump) + " is degenerate");
    columns.push_back(l.c);
    if (k == 0) continue;
    const Loop& prev = earring.loops[k - 1];
    if (l.jump <= prev.jump) fail("loops share jump index " + std::to_string(l.jump));
    if (!(l.height < prev.height)) {
      fail("loop heights do not strictly decrease at index " + std::to_string(l.jump));
    }
    if (l.height * 2 != prev.height) v.ratios_half = false;
  }
  std::sort(columns.begin(), columns.end());
  if (std::adjacent_find(columns.begin(), columns.end()) != columns.end()) {
    fail("two loops meet away from the base point");
  }
  v.metrics["loops"] = earring.loops.size();
  v.metrics["ratios_half"] = v.ratios_half;
  if (!earring.loops.empty()) {
    v.metrics["first_height"] = to_string(earring.loops.front().height);
    v.metrics["last_height"] = to_string(earring.loops.back().height);
  }
  return v;
}

Claim5Result claim5_regions(const SpaceModel& model, CopyId owner, int n, int loop) {
  const ConstructionState& state = model.state();
  const PlacedCopy& dm = state.copy(owner);
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "n must be non-negative");
  if (loop < 0 || loop >= state.truncation()) {
    throw Error(ErrorCode::kIndexOutOfRange, "loop index out of range");
  }
  Claim5Result r;
  r.owner = owner;
  r.loop = loop;
  r.k = dm.stage();
  r.n = n;
  r.stage = r.k + 1 + n;
  if (r.stage > state.depth()) {
    throw Error(ErrorCode::kDepthInsufficient,
                "loop regions at n=" + std::to_string(n) + " needs stage " + std::to_string(r.stage) +
                    " but K=" + std::to_string(state.depth()));
  }
  const ImageJump* jump = nullptr;
  for (const ImageJump& j : dm.jumps()) {
    if (j.index == loop) jump = &j;
  }
  r.loop_c = jump->c;
  r.loop_top = jump->high;
  r.loop_bottom = jump->low;
  r.column = locate(r.loop_c, r.stage);

  const TilingStage& stage = state.stages()[static_cast<std::size_t>(r.stage)];
  const PlacedCopy* above = nullptr;
  const PlacedCopy* below = nullptr;
  for (CopyId id : stage.copies) {
    const PlacedCopy& c = state.copy(id);
    if (c.rect().address != r.column) continue;
    if (c.rect().bottom >= r.loop_top && (above == nullptr || c.rect().bottom < above->rect().bottom)) {
      above = &c;
    }
    if (c.rect().top <= r.loop_bottom && (below == nullptr || c.rect().top > below->rect().top)) {
      below = &c;
    }
  }
  if (above == nullptr || below == nullptr) {
    throw Error(ErrorCode::kDepthInsufficient, "no stage-" + std::to_string(r.stage) +
                                                   " rect on both sides of the loop");
  }
  r.above = above->id();
  r.below = below->id();
  r.upper = region_between(model, owner, r.above, r.column);
  r.lower = region_between(model, r.below, owner, r.column);

  // slots: 0 = D^1, 1 = D_m, 2 = D^0
  const CellDecomposition cells(r.column, {below, &dm, above});
  r.boundary_ok = true;
  cells.sweep([&](std::size_t, const Cell& cell, std::span<const CellCrossing> sorted,
                  std::span<const std::size_t>) {
    ++r.cells_checked;
    const Crossing* x[3] = {nullptr, nullptr, nullptr};
    for (const CellCrossing& s : sorted) x[s.slot] = &s.crossing;
    const bool ok = x[0]->hi < x[1]->lo && x[1]->hi < x[2]->lo;
    if (!ok && r.boundary_ok) {
      r.boundary_ok = false;
      r.failure = "ordering D1 < Dm < D0 fails in cell starting at " + to_string(cell.left);
    }
  });
  r.column_distance = above->crossing_at(r.loop_c).lo - r.loop_top;
  return r;
}

nlohmann::json DecompositionSummary::to_json() const {
  return nlohmann::json{{"earrings", earrings},
                        {"loops_per_earring", loops_per_earring},
                        {"base_points", base_points},
                        {"q_points", q_points},
                        {"countable_representatives", countable},
                        {"punctiform", punctiform}};
}

DecompositionSummary suslinian_report(const SpaceModel& model) {
  const ConstructionState& state = model.state();
  DecompositionSummary s;
  s.earrings = state.copy_count();
  s.loops_per_earring.assign(s.earrings, static_cast<std::size_t>(state.truncation()));
  s.base_points = s.earrings;
  s.q_points = model.q_points().size();
  s.countable = s.base_points + s.q_points;
  s.punctiform =
      "complement of the countable part; represented symbolically, finitely many "
      "representatives stored";
  return s;
}

nlohmann::json earring_json(const Earring& earring) {
  nlohmann::json loops = nlohmann::json::array();
  for (const Loop& l : earring.loops) {
    loops.push_back({{"m", l.jump},
                     {"c", to_string(l.c)},
                     {"low", to_string(l.low)},
                     {"high", to_string(l.high)},
                     {"height", to_string(l.height)},
                     {"fan_diameter", l.fan_diameter}});
  }
  return nlohmann::json{{"owner", earring.owner},
                        {"base_points", earring.base_points},
                        {"loops", loops}};
}

}  // namespace fanforge
