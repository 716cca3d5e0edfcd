#include "fanforge/tiling.hpp"

#include <algorithm>

#include "fanforge/errors.hpp"
#include "fanforge/parallel.hpp"

namespace fanforge {

ConstructionState::ConstructionState(int truncation) : base_(truncation) {}

const PlacedCopy& ConstructionState::copy(CopyId id) const {
  if (id >= copies_.size()) {
    throw Error(ErrorCode::kUnknownCopy, "no copy with id " + std::to_string(id));
  }
  return copies_[id];
}

std::vector<const PlacedCopy*> ConstructionState::spanning(const Address& column,
                                                           int max_stage) const {
  std::vector<const PlacedCopy*> out;
  const int top = max_stage < 0 ? depth() : std::min(max_stage, depth());
  for (int len = 0; len <= std::min(column.length(), top); ++len) {
    auto it = by_address_.find(column.prefix(len));
    if (it == by_address_.end()) continue;
    for (CopyId id : it->second) {
      if (copies_[id].stage() <= top) out.push_back(&copies_[id]);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const PlacedCopy* a, const PlacedCopy* b) { return a->id() < b->id(); });
  return out;
}

void ConstructionState::append(TilingStage stage) {
  if (stage.n != depth() + 1) {
    throw Error(ErrorCode::kStageOrderViolation,
                "stage " + std::to_string(stage.n) + " appended after stage " +
                    std::to_string(depth()));
  }
  stage.copies.clear();
  for (std::size_t i = 0; i < stage.rects.size(); ++i) {
    const CopyId id = copies_.size();
    copies_.emplace_back(id, stage.n, static_cast<int>(i), stage.rects[i], base_);
    by_address_[stage.rects[i].address].push_back(id);
    stage.copies.push_back(id);
  }
  stages_.push_back(std::move(stage));
}

TilingStage stage_zero(int truncation) {
  (void)truncation;
  TilingStage s;
  s.n = 0;
  s.rects.push_back(Rect{Address(), Rational(0), Rational(1)});
  return s;
}

TilingStage stage_one(int truncation) {
  const Rational third(1, 3);
  const Rational two_thirds(2, 3);
  const Rational f_left = f_value(third, truncation);
  const Rational f_right = f_value(two_thirds, truncation);
  const Rational mid_left = (f_left + 1) / 2;
  const Rational mid_right = f_right / 2;
  const Address zero = Address::parse("0");
  const Address one = Address::parse("1");

  TilingStage s;
  s.n = 1;
  s.rects.push_back(Rect{zero, mid_left, Rational(1)});
  s.rects.push_back(Rect{zero, f_left, mid_left});
  s.rects.push_back(Rect{one, mid_right, f_right});
  s.rects.push_back(Rect{one, Rational(0), mid_right});
  const Rational offsets[] = {Rational(-1), Rational(-1, 2), Rational(1), Rational(3, 2)};
  for (const Address& sigma : {zero, one}) {
    for (const Rational& a : offsets) s.rects.push_back(Rect{sigma, a, a + Rational(1, 2)});
  }
  return s;
}

namespace {

struct ColumnResult {
  std::vector<Rect> rects;
  int flat_lifts = 0;
};

std::string column_context(const Address& sigma, int n, int truncation) {
  return "column " + (sigma.empty() ? std::string("<>") : sigma.to_string()) + " at stage " +
         std::to_string(n) + " (N=" + std::to_string(truncation) + "; try a larger N, e.g. " +
         std::to_string(2 * truncation) + ")";
}

void tile_strip(const Address& sigma, const Rational& bottom, const Rational& top, int n,
                std::vector<Rect>& out) {
  const Rational length = top - bottom;
  const mpz_class pieces = ceil(length * (n + 1));
  const unsigned long count = pieces.get_ui();
  const Rational step = length / Rational(pieces);
  for (unsigned long k = 0; k < count; ++k) {
    const Rational a = bottom + step * Rational(static_cast<long>(k));
    const Rational b = k + 1 == count ? top : a + step;
    out.push_back(Rect{sigma, a, b});
  }
}

ColumnResult tile_column(const ConstructionState& state, const Address& sigma, int n) {
  const int truncation = state.truncation();
  const BasicInterval column = basic_interval(sigma);
  std::vector<const PlacedCopy*> inherited = state.spanning(sigma, n - 1);

  struct Inherited {
    const PlacedCopy* copy;
    Rational x;
    Rational y;
  };
  std::vector<Inherited> traces;
  traces.reserve(inherited.size());
  for (const PlacedCopy* c : inherited) {
    // endpoints of C are never scaled jump locations
    traces.push_back(Inherited{c, *c->value_at(column.left), *c->value_at(column.right)});
  }
  std::sort(traces.begin(), traces.end(),
            [](const Inherited& a, const Inherited& b) { return a.x < b.x; });

  const Rational floor_level(-n);
  const Rational ceiling_level(n + 1);
  if (traces.empty()) {
    throw Error(ErrorCode::kTruncationTooCoarse, "no inherited copy spans " +
                                                     column_context(sigma, n, truncation));
  }
  if (traces.front().x < Rational(-n + 1) || traces.back().y > Rational(n)) {
    throw std::logic_error("inherited trace outside [-n+1, n] in " +
                           column_context(sigma, n, truncation));
  }
  for (std::size_t j = 0; j + 1 < traces.size(); ++j) {
    if (traces[j].y >= traces[j + 1].x) {
      throw Error(ErrorCode::kTruncationTooCoarse,
                  "traces of copies " + std::to_string(traces[j].copy->id()) + " and " +
                      std::to_string(traces[j + 1].copy->id()) + " do not interleave in " +
                      column_context(sigma, n, truncation));
    }
  }

  ColumnResult result;
  tile_strip(sigma, floor_level, traces.front().x, n, result.rects);
  for (std::size_t j = 0; j < traces.size(); ++j) {
    const Inherited& below = traces[j];
    const Rational upper = j + 1 < traces.size() ? traces[j + 1].x : ceiling_level;
    // Start strictly above the copy's maximum over the column, but below its
    // rect top (the image stays 2^-N (b-a) under it), so the copies never
    // touch and every subcolumn still interleaves strictly.
    Rational eps = std::min<Rational>(below.copy->rect().height(), upper - below.y);
    eps = std::min<Rational>(eps, Rational(1, n + 1));
    const Rational start = below.y + eps * inv_pow2(truncation + 2);
    if (below.x == below.y) ++result.flat_lifts;
    tile_strip(sigma, start, upper, n, result.rects);
  }
  return result;
}

}  // namespace

TilingStage stage_n(const ConstructionState& state, int n) {
  if (n < 2 || state.depth() != n - 1) {
    throw Error(ErrorCode::kStageOrderViolation,
                "stage_n(" + std::to_string(n) + ") needs stages 0.." + std::to_string(n - 1) +
                    ", have 0.." + std::to_string(state.depth()));
  }
  if (n > Address::kMaxLength) {
    throw Error(ErrorCode::kInvalidArgument, "stage index too large");
  }
  const std::vector<Address> columns = Address::all_of_length(n);
  std::vector<ColumnResult> results(columns.size());
  parallel_for(columns.size(),
               [&](std::size_t i) { results[i] = tile_column(state, columns[i], n); });

  TilingStage s;
  s.n = n;
  for (ColumnResult& r : results) {
    s.flat_lifts += r.flat_lifts;
    for (Rect& rect : r.rects) s.rects.push_back(std::move(rect));
  }
  return s;
}

ConstructionState build(int depth, int truncation) {
  if (depth < 0) throw Error(ErrorCode::kInvalidArgument, "depth K must be non-negative");
  if (truncation < 1) throw Error(ErrorCode::kInvalidArgument, "truncation N must be at least 1");
  if (depth >= 1 && truncation < 2) {
    throw Error(ErrorCode::kTruncationTooCoarse,
                "stage 1 needs N >= 2 for strict interleaving (got N=" +
                    std::to_string(truncation) + ")");
  }
  ConstructionState state(truncation);
  state.append(stage_zero(truncation));
  if (depth >= 1) state.append(stage_one(truncation));
  for (int n = 2; n <= depth; ++n) state.append(stage_n(state, n));
  return state;
}

std::vector<TraceSegment> crossings(const ConstructionState& state, const Rational& c,
                                    int max_stage) {
  if (c < 0 || c > 1 || !cantor_member(c)) {
    throw Error(ErrorCode::kNotInCantor, to_string(c) + " is not in C");
  }
  const int top = max_stage < 0 ? state.depth() : std::min(max_stage, state.depth());
  std::vector<TraceSegment> out;
  if (top < 0) return out;
  for (const PlacedCopy* copy : state.spanning(locate(c, top), top)) {
    out.push_back(TraceSegment{copy->crossing_at(c), copy->id()});
  }
  std::sort(out.begin(), out.end(), [](const TraceSegment& a, const TraceSegment& b) {
    if (a.crossing.lo != b.crossing.lo) return a.crossing.lo < b.crossing.lo;
    return a.copy < b.copy;
  });
  return out;
}

std::vector<TraceHit> vertical_trace(const ConstructionState& state, const Rational& c,
                                     const Rational& lo, const Rational& hi, int max_stage) {
  std::vector<TraceHit> out;
  for (const TraceSegment& s : crossings(state, c, max_stage)) {
    if (s.crossing.is_segment()) {
      throw Error(ErrorCode::kJumpHit, to_string(c) + " is a scaled jump location of copy " +
                                           std::to_string(s.copy));
    }
    if (s.crossing.lo >= lo && s.crossing.lo <= hi) out.push_back(TraceHit{s.crossing.lo, s.copy});
  }
  return out;
}

std::optional<IntersectionWitness> copies_intersect(const PlacedCopy& a, const PlacedCopy& b) {
  const Address& sa = a.rect().address;
  const Address& sb = b.rect().address;
  if (!sa.is_prefix_of(sb) && !sb.is_prefix_of(sa)) return std::nullopt;
  const Address& column = sa.length() >= sb.length() ? sa : sb;
  if (a.max_over(column) < b.min_over(column) || b.max_over(column) < a.min_over(column)) {
    return std::nullopt;
  }
  return CellDecomposition(column, {&a, &b}).first_intersection();
}

}  // namespace fanforge
