#include "fanforge/spaceset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include "json.hpp"

#include "fanforge/errors.hpp"

namespace fanforge {

const char* membership_name(Membership m) {
  switch (m) {
    case Membership::kP: return "P";
    case Membership::kQ: return "Q";
    case Membership::kOutside: return "outside";
  }
  return "?";
}

const char* region_kind_name(RegionKind k) {
  switch (k) {
    case RegionKind::kBetweenCopies: return "betweenCopies";
    case RegionKind::kBelowCopies: return "belowCopies";
    case RegionKind::kAboveCopies: return "aboveCopies";
  }
  return "?";
}

const char* sample_tag_name(SampleTag t) {
  switch (t) {
    case SampleTag::kVertex: return "vertex";
    case SampleTag::kQ: return "q";
    case SampleTag::kP: return "p-sample";
  }
  return "?";
}

SpaceModel::SpaceModel(const ConstructionState& state) : state_(&state) {
  const MidpointSet m = midpoints(state.truncation());
  q_.reserve(state.copy_count() * m.points.size());
  for (const PlacedCopy& copy : state.copies()) {
    for (std::size_t n = 0; n < m.points.size(); ++n) {
      q_.push_back(QPoint{copy.map().apply(m.points[n]), copy.id(), static_cast<int>(n)});
    }
  }
}

const QPoint& SpaceModel::q_point(CopyId copy, int jump) const {
  const int n = state_->truncation();
  if (copy >= state_->copy_count() || jump < 0 || jump >= n) {
    throw Error(ErrorCode::kUnknownCopy, "no midpoint " + std::to_string(jump) + " on copy " +
                                             std::to_string(copy));
  }
  return q_[copy * static_cast<std::size_t>(n) + static_cast<std::size_t>(jump)];
}

namespace {

const ImageJump* jump_at(const PlacedCopy& copy, const Rational& c) {
  const std::size_t pos = copy.jumps_before(c);
  if (pos < copy.jumps().size() && copy.jumps()[pos].c == c) return &copy.jumps()[pos];
  return nullptr;
}

void require_cantor(const Rational& c) {
  if (c < 0 || c > 1 || !cantor_member(c)) {
    throw Error(ErrorCode::kNotInCantor, to_string(c) + " is not in C");
  }
}

}  // namespace

Membership SpaceModel::classify(const Point& p) const {
  require_cantor(p.c);
  for (const TraceSegment& s : crossings(*state_, p.c)) {
    if (p.r < s.crossing.lo || p.r > s.crossing.hi) continue;
    if (s.crossing.is_segment()) {
      const ImageJump* j = jump_at(state_->copy(s.copy), p.c);
      if (j != nullptr && j->midpoint == p.r) return Membership::kQ;
    }
    return Membership::kOutside;
  }
  return Membership::kP;
}

SpaceModel assemble(const ConstructionState& state) { return SpaceModel(state); }

PlanePoint xi_map(double c, double r) { return PlanePoint{c, std::atan(r) / M_PI + 0.5}; }

Point nabla_map(const Point& p) {
  return Point{(p.r * (2 * p.c - 1) + 1) / 2, p.r};
}

PlanePoint nabla_map(const PlanePoint& p) {
  return PlanePoint{(p.y * (2 * p.x - 1) + 1) / 2, p.y};
}

PlanePoint fan_point(const Point& p) { return nabla_map(xi_map(p.c.get_d(), p.r.get_d())); }

bool Region::contains(const SpaceModel& model, const Point& p) const {
  if (p.c < 0 || p.c > 1 || !cantor_member(p.c)) return false;
  std::size_t which = columns.size();
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (basic_interval(columns[k]).contains(p.c)) {
      which = k;
      break;
    }
  }
  if (which == columns.size()) return false;
  const ConstructionState& state = model.state();
  switch (kind) {
    case RegionKind::kBetweenCopies: {
      const Crossing lo = state.copy(copies[0]).crossing_at(p.c);
      const Crossing hi = state.copy(copies[1]).crossing_at(p.c);
      if (!(lo.hi < p.r && p.r < hi.lo)) return false;
      break;
    }
    case RegionKind::kBelowCopies:
      if (!(p.r < state.copy(copies[which]).crossing_at(p.c).lo)) return false;
      break;
    case RegionKind::kAboveCopies:
      if (!(p.r > state.copy(copies[which]).crossing_at(p.c).hi)) return false;
      break;
  }
  return model.classify(p) != Membership::kOutside;
}

Region region_between(const SpaceModel& model, CopyId lower, CopyId upper,
                      const Address& column) {
  const ConstructionState& state = model.state();
  const PlacedCopy& a = state.copy(lower);
  const PlacedCopy& b = state.copy(upper);
  if (!a.spans(column) || !b.spans(column)) {
    throw Error(ErrorCode::kNotSpanning, "copies " + std::to_string(lower) + ", " +
                                             std::to_string(upper) + " do not both span " +
                                             column.to_string());
  }
  const CellDecomposition cells(column, {&a, &b});
  bool ordered = true;
  std::string where;
  cells.sweep([&](std::size_t, const Cell& cell, std::span<const CellCrossing> sorted,
                  std::span<const std::size_t>) {
    if (!ordered) return;
    const Crossing* ca = nullptr;
    const Crossing* cb = nullptr;
    for (const CellCrossing& x : sorted) (x.slot == 0 ? ca : cb) = &x.crossing;
    if (!(ca->hi < cb->lo)) {
      ordered = false;
      where = to_string(cell.left);
    }
  });
  if (!ordered) {
    throw Error(ErrorCode::kNotOrdered, "copy " + std::to_string(lower) +
                                            " is not strictly below copy " +
                                            std::to_string(upper) + " near c=" + where);
  }
  Region r;
  r.kind = RegionKind::kBetweenCopies;
  r.copies = {lower, upper};
  r.columns = {column};
  const BasicInterval span = basic_interval(column);
  for (CopyId id : {lower, upper}) {
    for (int m = 0; m < state.truncation(); ++m) {
      const QPoint& q = model.q_point(id, m);
      if (span.contains(q.point.c)) r.boundary.push_back(q);
    }
  }
  return r;
}

Rational tan_lower_bound(const Rational& eps) {
  if (eps <= 0 || eps >= 1) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must lie in (0, 1)");
  }
  if (eps == Rational(1, 2)) return Rational(0);
  const double t = std::tan(M_PI * (eps.get_d() - 0.5));
  const double low = t - 1e-9 * (1.0 + std::fabs(t));
  const mpz_class scaled(std::floor(std::ldexp(low, 20)));
  return Rational(scaled, pow2(20));
}

namespace {

void cover_below(const ConstructionState& state, const Address& sigma, const Rational& r,
                 Region& out) {
  const PlacedCopy* best = nullptr;
  Rational best_top;
  for (const PlacedCopy* c : state.spanning(sigma, sigma.length())) {
    if (c->rect().address != sigma) continue;
    const Rational top = c->max_over(sigma);
    if (top < r && (best == nullptr || top > best_top)) {
      best = c;
      best_top = top;
    }
  }
  if (best != nullptr) {
    out.copies.push_back(best->id());
    out.columns.push_back(sigma);
    return;
  }
  if (sigma.length() >= state.depth()) {
    throw Error(ErrorCode::kDepthInsufficient,
                "no copy over " + (sigma.empty() ? std::string("<>") : sigma.to_string()) +
                    " lies below " + to_string(r) + "; increase K");
  }
  cover_below(state, sigma.child(0), r, out);
  cover_below(state, sigma.child(1), r, out);
}

}  // namespace

Region vertex_neighborhood(const SpaceModel& model, const Rational& eps) {
  Region out;
  out.kind = RegionKind::kBelowCopies;
  out.level = tan_lower_bound(eps);
  cover_below(model.state(), Address(), out.level, out);
  for (CopyId id : out.copies) {
    for (int m = 0; m < model.state().truncation(); ++m) out.boundary.push_back(model.q_point(id, m));
  }
  return out;
}

std::vector<Point> fiber_samples(const SpaceModel& model, const Rational& c, int fiber_count) {
  const ConstructionState& state = model.state();
  const Rational lo(-state.depth());
  const Rational hi(state.depth() + 1);
  std::vector<Rational> levels{lo};
  for (const TraceHit& h : vertical_trace(state, c, lo, hi)) levels.push_back(h.height);
  levels.push_back(hi);

  struct Piece {
    Rational lo;
    Rational hi;
  };
  std::vector<Piece> pieces;
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    if (levels[k] < levels[k + 1]) pieces.push_back(Piece{levels[k], levels[k + 1]});
  }
  std::vector<Point> out;
  for (int i = 0; i < fiber_count && !pieces.empty(); ++i) {
    std::size_t pick = 0;
    for (std::size_t k = 1; k < pieces.size(); ++k) {
      if (pieces[k].hi - pieces[k].lo > pieces[pick].hi - pieces[pick].lo) pick = k;
    }
    const Piece p = pieces[pick];
    const Rational mid = (p.lo + p.hi) / 2;
    out.push_back(Point{c, mid});
    pieces[pick] = Piece{p.lo, mid};
    pieces.insert(pieces.begin() + static_cast<std::ptrdiff_t>(pick) + 1, Piece{mid, p.hi});
  }
  std::sort(out.begin(), out.end(), [](const Point& a, const Point& b) { return a.r < b.r; });
  return out;
}

PointCloud sample_points(const SpaceModel& model, int grid_depth, int fiber_count) {
  const ConstructionState& state = model.state();
  if (grid_depth < state.depth()) {
    throw Error(ErrorCode::kInvalidArgument, "grid depth must be at least K");
  }
  if (fiber_count < 0) throw Error(ErrorCode::kInvalidArgument, "fiber count must be >= 0");
  PointCloud cloud;
  cloud.points.push_back(PlanePoint{0.5, 0.0});
  cloud.tags.push_back(SampleTag::kVertex);
  for (const QPoint& q : model.q_points()) {
    cloud.points.push_back(fan_point(q.point));
    cloud.tags.push_back(SampleTag::kQ);
  }
  if (fiber_count == 0) return cloud;
  for (const Address& sigma : Address::all_of_length(grid_depth)) {
    for (const Rational& c : {endpoint_zero(sigma), endpoint_one(sigma)}) {
      for (const Point& p : fiber_samples(model, c, fiber_count)) {
        cloud.points.push_back(fan_point(p));
        cloud.tags.push_back(SampleTag::kP);
      }
    }
  }
  return cloud;
}

std::string cloud_csv(const PointCloud& cloud) {
  std::string out = "x,y,tag\n";
  char buf[96];
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%s\n", cloud.points[i].x, cloud.points[i].y,
                  sample_tag_name(cloud.tags[i]));
    out += buf;
  }
  return out;
}

std::string cloud_json(const PointCloud& cloud) {
  nlohmann::json points = nlohmann::json::array();
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    points.push_back({{"x", cloud.points[i].x},
                      {"y", cloud.points[i].y},
                      {"tag", sample_tag_name(cloud.tags[i])}});
  }
  return nlohmann::json{{"points", points}}.dump(2);
}

std::vector<Rational> f_set(const SpaceModel& model, const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw Error(ErrorCode::kInvalidArgument, "band needs lo < hi");
  std::map<Rational, std::vector<std::pair<Rational, Rational>>> by_c;
  for (const PlacedCopy& copy : model.state().copies()) {
    for (const ImageJump& j : copy.jumps()) {
      if (j.high < lo || j.low > hi) continue;
      by_c[j.c].emplace_back(j.low, j.high);
    }
  }
  std::vector<Rational> out;
  for (auto& [c, segs] : by_c) {
    std::sort(segs.begin(), segs.end());
    Rational reach = lo;
    bool covered = false;
    for (const auto& [a, b] : segs) {
      if (a > reach) break;
      if (b > reach) reach = b;
      if (reach >= hi) {
        covered = true;
        break;
      }
    }
    if (covered) out.push_back(c);
  }
  return out;
}

}  // namespace fanforge
