#include "fanforge/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "fanforge/decomp.hpp"
#include "fanforge/errors.hpp"
#include "fanforge/parallel.hpp"

namespace fanforge {

using nlohmann::json;

const char* check_status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kSkipped: return "skipped";
  }
  return "?";
}

bool VerificationReport::all_passed() const { return count(CheckStatus::kFail) == 0; }

std::size_t VerificationReport::count(CheckStatus s) const {
  return static_cast<std::size_t>(std::count_if(
      checks.begin(), checks.end(), [&](const CheckRecord& c) { return c.status == s; }));
}

void VerificationReport::merge(VerificationReport other) {
  for (CheckRecord& c : other.checks) checks.push_back(std::move(c));
}

const CheckRecord* VerificationReport::find(const std::string& name,
                                            const std::string& scope) const {
  for (const CheckRecord& c : checks) {
    if (c.name == name && (scope.empty() || c.scope == scope)) return &c;
  }
  return nullptr;
}

json VerificationReport::to_json(int depth, int truncation) const {
  json list = json::array();
  for (const CheckRecord& c : checks) {
    list.push_back({{"name", c.name},
                    {"scope", c.scope},
                    {"status", check_status_name(c.status)},
                    {"witness", c.witness},
                    {"metrics", c.metrics}});
  }
  return json{{"schema", "fanforge-report-v1"},
              {"parameters", {{"K", depth}, {"N", truncation}}},
              {"checks", list},
              {"summary",
               {{"passed", count(CheckStatus::kPass)},
                {"failed", count(CheckStatus::kFail)},
                {"skipped", count(CheckStatus::kSkipped)},
                {"all_passed", all_passed()}}}};
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  for (const CheckRecord& c : checks) {
    std::string status = check_status_name(c.status);
    std::transform(status.begin(), status.end(), status.begin(), ::toupper);
    out << status << "  " << c.name;
    if (!c.scope.empty()) out << " [" << c.scope << "]";
    for (auto it = c.metrics.begin(); it != c.metrics.end(); ++it) {
      if (it->is_structured()) continue;
      out << "  " << it.key() << "=" << (it->is_string() ? it->get<std::string>() : it->dump());
    }
    out << "\n";
    if (c.status != CheckStatus::kPass && !c.witness.is_null()) {
      out << "      witness: " << c.witness.dump() << "\n";
    }
  }
  out << "passed " << count(CheckStatus::kPass) << ", failed " << count(CheckStatus::kFail)
      << ", skipped " << count(CheckStatus::kSkipped) << "\n";
  return out.str();
}

namespace {

std::string addr(const Address& a) { return a.empty() ? std::string("<>") : a.to_string(); }

json rect_json(const Rect& r) {
  return json{{"sigma", r.address.to_string()}, {"a", to_string(r.bottom)}, {"b", to_string(r.top)}};
}

json cell_json(const Cell& c) {
  return json{{"left", to_string(c.left)},
              {"right", to_string(c.right)},
              {"left_closed", c.left_closed},
              {"right_closed", c.right_closed}};
}

CheckRecord skipped(const std::string& name, int n, int depth) {
  CheckRecord r;
  r.name = name;
  r.scope = "n=" + std::to_string(n);
  r.status = CheckStatus::kSkipped;
  r.witness = json{{"reason", "n=" + std::to_string(n) + " exceeds K=" + std::to_string(depth)}};
  return r;
}

}  // namespace

VerificationReport check_conditions_i_ii(const ConstructionState& state) {
  VerificationReport report;
  for (const TilingStage& s : state.stages()) {
    CheckRecord rec;
    rec.name = "conditions_i_ii";
    rec.scope = "stage " + std::to_string(s.n);
    const Rational bound(1, s.n + 1);
    Rational max_height = 0;
    for (std::size_t i = 0; i < s.rects.size(); ++i) {
      const Rect& r = s.rects[i];
      const Rational h = r.height();
      if (h > max_height) max_height = h;
      std::string why;
      if (r.address.length() != s.n) why = "address length differs from stage";
      else if (!(h > 0)) why = "non-positive height";
      else if (h > bound) why = "height exceeds 1/(n+1)";
      if (!why.empty() && rec.status == CheckStatus::kPass) {
        rec.status = CheckStatus::kFail;
        rec.witness = json{{"stage", s.n}, {"index", i}, {"reason", why}, {"rect", rect_json(r)}};
      }
    }
    rec.metrics = json{{"rects", s.rects.size()},
                       {"max_height", to_string(max_height)},
                       {"bound", to_string(bound)}};
    report.checks.push_back(std::move(rec));
  }
  return report;
}

VerificationReport check_partial_tiling(const ConstructionState& state) {
  VerificationReport report;
  for (const TilingStage& s : state.stages()) {
    CheckRecord rec;
    rec.name = "partial_tiling";
    rec.scope = "stage " + std::to_string(s.n);
    std::vector<std::size_t> order(s.rects.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (s.rects[a].address != s.rects[b].address) return s.rects[a].address < s.rects[b].address;
      return s.rects[a].bottom < s.rects[b].bottom;
    });
    std::size_t touching = 0;
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
      const Rect& a = s.rects[order[k]];
      const Rect& b = s.rects[order[k + 1]];
      if (a.address != b.address) continue;
      if (a.top == b.bottom) ++touching;
      if (a.top > b.bottom && rec.status == CheckStatus::kPass) {
        rec.status = CheckStatus::kFail;
        rec.witness = json{{"first", order[k]}, {"second", order[k + 1]},
                           {"rect_first", rect_json(a)}, {"rect_second", rect_json(b)}};
      }
    }
    rec.metrics = json{{"rects", s.rects.size()}, {"shared_slices", touching}};
    report.checks.push_back(std::move(rec));
  }
  return report;
}

VerificationReport check_disjointness(const ConstructionState& state) {
  struct Local {
    std::size_t pairs = 0;
    std::size_t swept = 0;
    std::size_t corner_touches = 0;
    std::optional<IntersectionWitness> hit;
  };
  std::vector<Local> locals(state.copy_count());
  parallel_for(state.copy_count(), [&](std::size_t i) {
    const PlacedCopy& x = state.copy(i);
    const Address& column = x.rect().address;
    Local& out = locals[i];
    const Rational x_lo = x.min_over(column);
    const Rational x_hi = x.max_over(column);
    for (const PlacedCopy* y : state.spanning(column)) {
      if (y->id() == x.id()) continue;
      if (y->rect().address == column && y->id() > x.id()) continue;
      ++out.pairs;
      const Rational y_lo = y->min_over(column);
      const Rational y_hi = y->max_over(column);
      if (x_hi < y_lo || y_hi < x_lo) continue;
      ++out.swept;
      if (x_hi == y_lo || y_hi == x_lo) ++out.corner_touches;
      if (!out.hit) out.hit = CellDecomposition(column, {y, &x}).first_intersection();
    }
  });
  CheckRecord rec;
  rec.name = "disjointness";
  rec.scope = "all copies";
  std::size_t pairs = 0, swept = 0, touches = 0, hits = 0;
  for (const Local& l : locals) {
    pairs += l.pairs;
    swept += l.swept;
    touches += l.corner_touches;
    if (l.hit) {
      ++hits;
      if (rec.status == CheckStatus::kPass) {
        rec.status = CheckStatus::kFail;
        rec.witness = json{{"first", l.hit->first},
                           {"second", l.hit->second},
                           {"cell", cell_json(l.hit->cell)},
                           {"r_lo", to_string(l.hit->overlap.lo)},
                           {"r_hi", to_string(l.hit->overlap.hi)}};
      }
    }
  }
  rec.metrics = json{{"copies", state.copy_count()},
                     {"candidate_pairs", pairs},
                     {"swept_pairs", swept},
                     {"touching_ranges", touches},
                     {"intersecting_copies", hits}};
  VerificationReport report;
  report.checks.push_back(std::move(rec));
  return report;
}

VerificationReport check_coverage(const ConstructionState& state, int n) {
  VerificationReport report;
  if (n > state.depth() || n < 0) {
    report.checks.push_back(skipped("coverage", n, state.depth()));
    return report;
  }
  const std::vector<Address> columns = Address::all_of_length(n);
  struct Column {
    Rational gap;
    Rational allowed;
    std::size_t copies = 0;
    bool outside = false;
  };
  std::vector<Column> results(columns.size());
  const Rational lo(-n);
  const Rational hi(n + 1);
  parallel_for(columns.size(), [&](std::size_t i) {
    const Address& sigma = columns[i];
    const BasicInterval span = basic_interval(sigma);
    std::vector<std::pair<Rational, Rational>> pieces;
    const auto copies = state.spanning(sigma, n);
    for (const PlacedCopy* c : copies) {
      const std::size_t begin = c->jumps_before(span.left);
      const std::size_t end = c->jumps_before(span.right);
      for (std::size_t k = begin; k <= end; ++k) {
        pieces.emplace_back(c->plateau_values()[k], c->plateau_values()[k]);
      }
      for (std::size_t k = begin; k < end; ++k) pieces.emplace_back(c->jumps()[k].low, c->jumps()[k].high);
    }
    std::sort(pieces.begin(), pieces.end());
    Column& out = results[i];
    out.copies = copies.size();
    out.allowed = Rational(static_cast<long>(copies.size())) * inv_pow2(state.truncation());
    Rational covered = 0;
    Rational reach = lo;
    for (const auto& [a, b] : pieces) {
      if (a < lo || b > hi) out.outside = true;
      const Rational s = std::max<Rational>(a, reach);
      const Rational e = std::min<Rational>(b, hi);
      if (e > s) {
        covered += e - s;
        reach = e;
      }
    }
    out.gap = (hi - lo) - covered;
  });

  CheckRecord rec;
  rec.name = "coverage";
  rec.scope = "n=" + std::to_string(n);
  std::size_t worst = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const Column& c = results[i];
    if (c.gap * results[worst].allowed > results[worst].gap * c.allowed) worst = i;
    if ((c.gap > c.allowed || c.outside || c.copies == 0) && rec.status == CheckStatus::kPass) {
      rec.status = CheckStatus::kFail;
      rec.witness = json{{"column", addr(columns[i])},
                         {"gap", to_string(c.gap)},
                         {"allowed", to_string(c.allowed)},
                         {"contributing_copies", c.copies},
                         {"outside_range", c.outside}};
    }
  }
  Rational max_gap = 0;
  for (const Column& c : results) max_gap = std::max<Rational>(max_gap, c.gap);
  rec.metrics = json{{"columns", columns.size()},
                     {"max_gap", to_string(max_gap)},
                     {"worst_column", addr(columns[worst])},
                     {"worst_gap", to_string(results[worst].gap)},
                     {"worst_allowed", to_string(results[worst].allowed)}};
  report.checks.push_back(std::move(rec));
  return report;
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// One maximal vertical gap persisting unchanged over a run of cells.
struct GapSpan {
  std::size_t lower = kNone;  // slot below, kNone at the floor -n
  std::size_t upper = kNone;  // slot above, kNone at the ceiling n+1
  Rational lo;
  Rational hi;
  Rational cl;  // inf of c over the run
  Rational cr;  // sup of c over the run
  std::size_t first_cell = 0;
};

// Visits every gap of every cell of one column, merged across cells where
// the bounding crossings do not change.
template <class OnGap>
void sweep_gaps(const CellDecomposition& cells, const Rational& floor_level,
                const Rational& ceiling_level, OnGap&& on_gap) {
  const std::size_t count = cells.copies().size();
  std::vector<GapSpan> open(count + 1);
  Rational previous_right;
  auto start = [&](std::size_t g, std::span<const CellCrossing> sorted, const Cell& cell,
                   std::size_t index) {
    GapSpan& s = open[g];
    s.lower = g == 0 ? kNone : sorted[g - 1].slot;
    s.upper = g == count ? kNone : sorted[g].slot;
    s.lo = g == 0 ? floor_level : sorted[g - 1].crossing.hi;
    s.hi = g == count ? ceiling_level : sorted[g].crossing.lo;
    s.cl = cell.left;
    s.first_cell = index;
  };
  std::vector<std::size_t> touched;
  cells.sweep([&](std::size_t index, const Cell& cell, std::span<const CellCrossing> sorted,
                  std::span<const std::size_t> changed) {
    if (index == 0) {
      for (std::size_t g = 0; g <= count; ++g) start(g, sorted, cell, index);
      previous_right = cell.right;
      return;
    }
    touched.clear();
    for (std::size_t p : changed) {
      touched.push_back(p);
      touched.push_back(p + 1);
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (std::size_t g : touched) {
      open[g].cr = previous_right;
      on_gap(open[g]);
      start(g, sorted, cell, index);
    }
    previous_right = cell.right;
  });
  for (GapSpan& s : open) {
    s.cr = previous_right;
    on_gap(s);
  }
}

// Stage-n rects of one column sorted by bottom.
std::vector<Rect> column_rects(const ConstructionState& state, const Address& sigma, int n) {
  std::vector<Rect> out;
  for (const PlacedCopy* c : state.spanning(sigma, n)) {
    if (c->stage() == n && c->rect().address == sigma) out.push_back(c->rect());
  }
  std::sort(out.begin(), out.end(), [](const Rect& a, const Rect& b) { return a.bottom < b.bottom; });
  return out;
}

bool rect_contains(const std::vector<Rect>& rects, const Rational& u, const Rational& v) {
  auto it = std::upper_bound(rects.begin(), rects.end(), u,
                             [](const Rational& x, const Rect& r) { return x < r.bottom; });
  if (it == rects.begin()) return false;
  --it;
  return it->bottom <= u && v <= it->top;
}

// [lo, hi] inside R_T union one stage-n rect of the column.
bool covered_by_pair(const Rect& t, const std::vector<Rect>& stage_rects, const Rational& lo,
                     const Rational& hi) {
  if (stage_rects.empty()) return false;
  if (t.bottom <= lo && hi <= t.top) return true;
  if (t.bottom <= lo && lo <= t.top) return rect_contains(stage_rects, t.top, hi);
  if (t.bottom <= hi && hi <= t.top) return rect_contains(stage_rects, lo, t.bottom);
  return rect_contains(stage_rects, lo, hi);
}

// Upper bound on max over the gap of the distance to copy T's image, in the
// L1 metric. Heights between T's min and max over the column are attained
// by T somewhere in the column; outside that range the nearest corner is used.
Rational distance_bound(const Rational& x_t, const Rational& y_t, const GapSpan& g,
                        const BasicInterval& column) {
  const Rational to_left = g.cr - column.left;
  const Rational to_right = column.right - g.cl;
  Rational bound = 0;
  if (g.lo < x_t) bound = std::max<Rational>(bound, (x_t - g.lo) + to_left);
  if (g.lo <= y_t && x_t <= g.hi) bound = std::max<Rational>(bound, std::max<Rational>(to_left, to_right));
  if (g.hi > y_t) bound = std::max<Rational>(bound, (g.hi - y_t) + to_right);
  return bound;
}

}  // namespace

VerificationReport check_condition_v(const ConstructionState& state, int n) {
  VerificationReport report;
  if (n > state.depth() || n < 0) {
    report.checks.push_back(skipped("condition_v", n, state.depth()));
    return report;
  }
  const std::vector<Address> columns = Address::all_of_length(n);
  const Rational limit = Rational(1, n + 1) + inv_pow3(n);
  const Rational floor_level(-n);
  const Rational ceiling_level(n + 1);
  struct Column {
    std::size_t gaps = 0;
    std::size_t fallbacks = 0;
    std::size_t degenerate = 0;
    std::size_t cells = 0;
    Rational worst_bound;
    bool unordered = false;
    std::optional<json> failure;
  };
  std::vector<Column> results(columns.size());
  parallel_for(columns.size(), [&](std::size_t i) {
    const Address& sigma = columns[i];
    const auto copies = state.spanning(sigma, n);
    const CellDecomposition cells(sigma, copies);
    const std::vector<Rect> stage_rects = column_rects(state, sigma, n);
    const BasicInterval& span = cells.interval();
    const auto& ranges = cells.ranges();
    Column& out = results[i];
    out.cells = cells.cell_count();
    out.unordered = !cells.ordered();

    auto certify = [&](std::size_t slot, const GapSpan& g, Rational& best) {
      if (!covered_by_pair(copies[slot]->rect(), stage_rects, g.lo, g.hi)) return false;
      const Rational b = distance_bound(ranges[slot].lo, ranges[slot].hi, g, span);
      if (b < limit) {
        best = b;
        return true;
      }
      return false;
    };
    sweep_gaps(cells, floor_level, ceiling_level, [&](const GapSpan& g) {
      if (!(g.lo < g.hi)) {
        ++out.degenerate;
        return;
      }
      ++out.gaps;
      Rational best;
      bool ok = false;
      for (std::size_t slot : {g.lower, g.upper}) {
        if (slot != kNone && certify(slot, g, best)) {
          ok = true;
          break;
        }
      }
      if (!ok) {
        ++out.fallbacks;
        for (std::size_t slot = 0; slot < copies.size() && !ok; ++slot) ok = certify(slot, g, best);
      }
      if (ok) {
        if (best > out.worst_bound) out.worst_bound = best;
      } else if (!out.failure) {
        out.failure = json{{"column", addr(sigma)},
                           {"cell_from", to_string(cells.cell(g.first_cell).left)},
                           {"c_inf", to_string(g.cl)},
                           {"c_sup", to_string(g.cr)},
                           {"gap_lo", to_string(g.lo)},
                           {"gap_hi", to_string(g.hi)},
                           {"lower_copy", g.lower == kNone ? json() : json(copies[g.lower]->id())},
                           {"upper_copy", g.upper == kNone ? json() : json(copies[g.upper]->id())}};
      }
    });
  });

  CheckRecord rec;
  rec.name = "condition_v";
  rec.scope = "n=" + std::to_string(n);
  std::size_t gaps = 0, fallbacks = 0, degenerate = 0, cells = 0, unordered = 0;
  Rational worst = 0;
  for (const Column& c : results) {
    gaps += c.gaps;
    fallbacks += c.fallbacks;
    degenerate += c.degenerate;
    cells += c.cells;
    unordered += c.unordered ? 1 : 0;
    worst = std::max<Rational>(worst, c.worst_bound);
    if (c.failure && rec.status == CheckStatus::kPass) {
      rec.status = CheckStatus::kFail;
      rec.witness = *c.failure;
    }
  }
  rec.metrics = json{{"columns", columns.size()},
                     {"cells", cells},
                     {"gap_runs", gaps},
                     {"fallback_searches", fallbacks},
                     {"degenerate_gaps", degenerate},
                     {"unordered_columns", unordered},
                     {"worst_distance_bound", to_string(worst)},
                     {"worst_distance_bound_approx", worst.get_d()},
                     {"limit", to_string(limit)}};
  report.checks.push_back(std::move(rec));
  return report;
}

GapMetrics max_vertical_gap(const ConstructionState& state, int n) {
  if (n < 0 || n > state.depth()) {
    throw Error(ErrorCode::kOutOfRange, "max_vertical_gap: n outside 0..K");
  }
  const std::vector<Address> columns = Address::all_of_length(n);
  const Rational floor_level(-n);
  const Rational ceiling_level(n + 1);
  std::vector<GapMetrics> results(columns.size());
  parallel_for(columns.size(), [&](std::size_t i) {
    const CellDecomposition cells(columns[i], state.spanning(columns[i], n));
    GapMetrics& best = results[i];
    best.n = n;
    best.max_gap = -1;
    best.column = columns[i];
    sweep_gaps(cells, floor_level, ceiling_level, [&](const GapSpan& g) {
      const Rational len = g.hi - g.lo;
      if (len > best.max_gap) {
        best.max_gap = len;
        best.gap_lo = g.lo;
        best.gap_hi = g.hi;
        best.cell = Cell{g.cl, g.cr, true, true};
      }
    });
  });
  GapMetrics out = results.front();
  for (const GapMetrics& g : results) {
    if (g.max_gap > out.max_gap) out = g;
  }
  return out;
}

VerificationReport check_max_vertical_gap(const ConstructionState& state, int n) {
  VerificationReport report;
  if (n > state.depth() || n < 0) {
    report.checks.push_back(skipped("max_vertical_gap", n, state.depth()));
    return report;
  }
  const GapMetrics g = max_vertical_gap(state, n);
  CheckRecord rec;
  rec.name = "max_vertical_gap";
  rec.scope = "n=" + std::to_string(n);
  rec.metrics = json{{"max_gap", to_string(g.max_gap)},
                     {"max_gap_approx", g.max_gap.get_d()},
                     {"column", addr(g.column)},
                     {"c_inf", to_string(g.cell.left)},
                     {"c_sup", to_string(g.cell.right)},
                     {"gap_lo", to_string(g.gap_lo)},
                     {"gap_hi", to_string(g.gap_hi)}};
  if (n >= 3) {
    const GapMetrics prev = max_vertical_gap(state, n - 1);
    rec.metrics["non_increasing_from_previous"] = g.max_gap <= prev.max_gap;
  }
  report.checks.push_back(std::move(rec));
  return report;
}

VerificationReport check_fiber_isolation(const SpaceModel& model) {
  const ConstructionState& state = model.state();
  std::vector<std::optional<json>> failures(state.copy_count());
  parallel_for(state.copy_count(), [&](std::size_t id) {
    const PlacedCopy& owner = state.copy(id);
    for (const ImageJump& j : owner.jumps()) {
      const Point& q = model.q_point(id, j.index).point;
      std::string why;
      if (q.c != j.c || !(j.low < q.r && q.r < j.high)) why = "midpoint not inside its segment";
      for (const TraceSegment& s : crossings(state, j.c)) {
        if (!why.empty()) break;
        if (s.copy == id) {
          if (s.crossing.lo != j.low || s.crossing.hi != j.high) why = "owner crossing mismatch";
          continue;
        }
        if (s.crossing.overlaps(Crossing{j.low, j.high})) {
          why = "copy " + std::to_string(s.copy) + " meets the segment";
        }
      }
      if (!why.empty()) {
        failures[id] = json{{"copy", id}, {"jump", j.index}, {"c", to_string(j.c)},
                            {"r", to_string(q.r)}, {"reason", why}};
        return;
      }
    }
  });
  CheckRecord rec;
  rec.name = "fiber_isolation";
  rec.scope = "all q-points";
  for (const auto& f : failures) {
    if (f) {
      rec.status = CheckStatus::kFail;
      rec.witness = *f;
      break;
    }
  }
  rec.metrics = json{{"q_points", model.q_points().size()}};
  VerificationReport report;
  report.checks.push_back(std::move(rec));
  return report;
}

double fan_diameter(const PlacedCopy& copy) {
  std::vector<PlanePoint> pts;
  const auto& values = copy.plateau_values();
  const BasicInterval span = basic_interval(copy.rect().address);
  pts.push_back(fan_point(Point{span.left, values.front()}));
  pts.push_back(fan_point(Point{span.right, values.back()}));
  for (const ImageJump& j : copy.jumps()) {
    pts.push_back(fan_point(Point{j.c, j.low}));
    pts.push_back(fan_point(Point{j.c, j.high}));
  }
  double best = 0;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      best = std::max(best, std::hypot(pts[a].x - pts[b].x, pts[a].y - pts[b].y));
    }
  }
  return best;
}

VerificationReport check_null_sequence(const ConstructionState& state) {
  VerificationReport report;
  CheckRecord rec;
  rec.name = "null_sequence";
  rec.scope = "stages 0.." + std::to_string(state.depth());
  if (state.depth() < 1) {
    rec.status = CheckStatus::kSkipped;
    rec.witness = json{{"reason", "needs K >= 1"}};
    report.checks.push_back(std::move(rec));
    return report;
  }
  std::vector<double> diam(state.copy_count());
  parallel_for(state.copy_count(), [&](std::size_t i) { diam[i] = fan_diameter(state.copy(i)); });
  json profile = json::array();
  std::vector<double> max_by_stage;
  for (const TilingStage& s : state.stages()) {
    double mx = 0, sum = 0;
    Rational width = inv_pow3(s.n);
    Rational max_height = 0;
    for (CopyId id : s.copies) {
      mx = std::max(mx, diam[id]);
      sum += diam[id];
      max_height = std::max<Rational>(max_height, state.copy(id).rect().height());
    }
    max_by_stage.push_back(mx);
    profile.push_back({{"stage", s.n},
                       {"copies", s.copies.size()},
                       {"max_fan_diameter", mx},
                       {"mean_fan_diameter", s.copies.empty() ? 0.0 : sum / s.copies.size()},
                       {"column_width", to_string(width)},
                       {"max_rect_height", to_string(max_height)}});
  }
  const double first = max_by_stage[1];
  const double last = max_by_stage.back();
  if (!(last < first)) {
    rec.status = CheckStatus::kFail;
    rec.witness = json{{"stage_1_max", first}, {"stage_K_max", last}};
  }
  rec.metrics = json{{"stage_1_max", first}, {"stage_K_max", last}, {"profile", profile}};
  report.checks.push_back(std::move(rec));
  return report;
}

VerificationReport check_earrings(const SpaceModel& model) {
  const ConstructionState& state = model.state();
  CheckRecord rec;
  rec.name = "earrings";
  rec.scope = "all copies";
  std::size_t halving = 0;
  for (std::size_t id = 0; id < state.copy_count(); ++id) {
    const EarringVerdict v = earring_check(collapse_E(model, id));
    if (v.ratios_half) ++halving;
    if ((!v.ok || !v.ratios_half) && rec.status == CheckStatus::kPass) {
      rec.status = CheckStatus::kFail;
      rec.witness = json{{"copy", id}, {"reason", v.ok ? "height ratio differs from 1/2" : v.reason}};
    }
  }
  rec.metrics = json{{"earrings", state.copy_count()},
                     {"loops_each", state.truncation()},
                     {"ratio_half_earrings", halving}};
  VerificationReport report;
  report.checks.push_back(std::move(rec));
  return report;
}

namespace {

inline double dist(const PlanePoint& a, const PlanePoint& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  std::size_t sets;
  explicit DisjointSets(std::size_t n) : parent(n), sets(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    --sets;
  }
};

}  // namespace

std::size_t epsilon_components(const std::vector<PlanePoint>& points, double eps) {
  if (points.empty()) return 0;
  double min_x = points[0].x, max_x = points[0].x, min_y = points[0].y, max_y = points[0].y;
  for (const PlanePoint& p : points) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double extent = std::max({max_x - min_x, max_y - min_y, 1e-300});
  const double cell = std::max(eps, extent * 1e-6);
  auto key_of = [&](long long gx, long long gy) { return gx * 4000003LL + gy; };
  std::unordered_map<long long, std::vector<std::size_t>> grid;
  std::vector<std::pair<long long, long long>> where(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto gx = static_cast<long long>(std::floor((points[i].x - min_x) / cell));
    const auto gy = static_cast<long long>(std::floor((points[i].y - min_y) / cell));
    where[i] = {gx, gy};
    grid[key_of(gx, gy)].push_back(i);
  }
  DisjointSets sets(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (long long dx = -1; dx <= 1; ++dx) {
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = grid.find(key_of(where[i].first + dx, where[i].second + dy));
        if (it == grid.end()) continue;
        for (std::size_t j : it->second) {
          if (j <= i || sets.find(i) == sets.find(j)) continue;
          if (dist(points[i], points[j]) <= eps) sets.unite(i, j);
        }
      }
    }
  }
  return sets.sets;
}

double max_mst_edge(const std::vector<PlanePoint>& points) {
  const std::size_t n = points.size();
  if (n < 2) return 0;
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<char> in_tree(n, 0);
  std::size_t current = 0;
  in_tree[0] = 1;
  double longest = 0;
  for (std::size_t added = 1; added < n; ++added) {
    std::size_t next = kNone;
    double next_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (in_tree[j]) continue;
      const double d = dist(points[current], points[j]);
      if (d < best[j]) best[j] = d;
      if (best[j] < next_d) {
        next_d = best[j];
        next = j;
      }
    }
    in_tree[next] = 1;
    longest = std::max(longest, next_d);
    current = next;
  }
  return longest;
}

ConnectivityMetrics connectivity_profile(const PointCloud& cloud) {
  ConnectivityMetrics m;
  m.points = cloud.points.size();
  m.epsilon_star = max_mst_edge(cloud.points);
  m.components_at_star = epsilon_components(cloud.points, m.epsilon_star);
  m.components_at_half = epsilon_components(cloud.points, m.epsilon_star / 2);
  return m;
}

VerificationReport check_epsilon_connectivity(const SpaceModel& model, int grid_depth,
                                              int fiber_count,
                                              const std::vector<double>& epsilons) {
  const PointCloud cloud = sample_points(model, grid_depth, fiber_count);
  const ConnectivityMetrics m = connectivity_profile(cloud);
  CheckRecord rec;
  rec.name = "epsilon_connectivity";
  rec.scope = "grid_depth=" + std::to_string(grid_depth) + " fibers=" + std::to_string(fiber_count);
  json extra = json::array();
  for (double e : epsilons) {
    extra.push_back({{"epsilon", e}, {"components", epsilon_components(cloud.points, e)}});
  }
  rec.metrics = json{{"points", m.points},
                     {"epsilon_star", m.epsilon_star},
                     {"components_at_star", m.components_at_star},
                     {"components_at_half", m.components_at_half},
                     {"requested", extra}};
  if (m.points > 1 && (m.components_at_star != 1 || m.components_at_half < 2)) {
    rec.status = CheckStatus::kFail;
    rec.witness = json{{"components_at_star", m.components_at_star},
                       {"components_at_half", m.components_at_half}};
  }
  VerificationReport report;
  report.checks.push_back(std::move(rec));
  return report;
}

std::vector<CheckSelection> parse_check_list(const std::string& text) {
  std::vector<CheckSelection> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    CheckSelection sel;
    const auto colon = item.find(':');
    sel.name = item.substr(0, colon);
    if (colon != std::string::npos) {
      const std::string num = item.substr(colon + 1);
      char* end = nullptr;
      const long v = std::strtol(num.c_str(), &end, 10);
      if (num.empty() || *end != '\0' || v < 0) {
        throw Error(ErrorCode::kInvalidArgument, "bad stage in check '" + item + "'");
      }
      sel.n = static_cast<int>(v);
    }
    const auto& known = known_checks();
    if (std::find(known.begin(), known.end(), sel.name) == known.end()) {
      throw Error(ErrorCode::kInvalidArgument, "unknown check '" + sel.name + "'");
    }
    out.push_back(sel);
  }
  return out;
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = {
      "conditions_i_ii", "partial_tiling",   "disjointness",    "coverage",
      "condition_v",     "max_vertical_gap", "fiber_isolation", "null_sequence",
      "earrings",        "epsilon_connectivity"};
  return names;
}

VerificationReport run_suite(const ConstructionState& state, const SuiteOptions& options) {
  std::vector<CheckSelection> checks = options.checks;
  if (checks.empty()) {
    for (const std::string& name : known_checks()) checks.push_back(CheckSelection{name, {}});
  }
  const SpaceModel model(state);
  VerificationReport report;
  auto per_stage = [&](const CheckSelection& sel, auto&& fn) {
    if (sel.n) {
      report.merge(fn(*sel.n));
    } else {
      for (int n = 0; n <= state.depth(); ++n) report.merge(fn(n));
    }
  };
  for (const CheckSelection& sel : checks) {
    if (sel.name == "conditions_i_ii") report.merge(check_conditions_i_ii(state));
    else if (sel.name == "partial_tiling") report.merge(check_partial_tiling(state));
    else if (sel.name == "disjointness") report.merge(check_disjointness(state));
    else if (sel.name == "coverage") per_stage(sel, [&](int n) { return check_coverage(state, n); });
    else if (sel.name == "condition_v") per_stage(sel, [&](int n) { return check_condition_v(state, n); });
    else if (sel.name == "max_vertical_gap") per_stage(sel, [&](int n) { return check_max_vertical_gap(state, n); });
    else if (sel.name == "fiber_isolation") report.merge(check_fiber_isolation(model));
    else if (sel.name == "null_sequence") report.merge(check_null_sequence(state));
    else if (sel.name == "earrings") report.merge(check_earrings(model));
    else if (sel.name == "epsilon_connectivity") {
      const int depth = options.grid_depth < 0 ? state.depth() + 2 : options.grid_depth;
      report.merge(check_epsilon_connectivity(model, depth, options.fiber_count, options.epsilons));
    }
  }
  return report;
}

}  // namespace fanforge
