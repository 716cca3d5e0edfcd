#include "fanforge/debski.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "fanforge/errors.hpp"

namespace fanforge {

std::vector<Rational> jump_points(int n) {
  std::vector<Rational> accepted;
  if (n <= 0) return accepted;
  std::set<Rational> seen;
  for (int length = 0; static_cast<int>(accepted.size()) < n; ++length) {
    const Rational quarter = inv_pow3(length) / 4;
    for (const Address& sigma : Address::all_of_length(length)) {
      Rational proposal = endpoint_zero(sigma) + quarter;
      if (!seen.insert(proposal).second) continue;
      accepted.push_back(std::move(proposal));
      if (static_cast<int>(accepted.size()) == n) break;
    }
  }
  return accepted;
}

JumpTable::JumpTable(int truncation) : truncation_(truncation) {
  if (truncation < 1) {
    throw Error(ErrorCode::kInvalidArgument, "truncation N must be at least 1");
  }
  const std::vector<Rational> d = jump_points(truncation);
  std::vector<int> order(d.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });

  sorted_position_.assign(d.size(), 0);
  Rational running = 0;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const int n = order[pos];
    Rational height = inv_pow2(n + 1);
    Jump j{n, d[n], running, running + height};
    running = j.high;
    sorted_position_[n] = static_cast<int>(pos);
    jumps_.push_back(std::move(j));
  }
}

const Jump& JumpTable::by_index(int n) const {
  if (n < 0 || n >= truncation_) {
    throw Error(ErrorCode::kIndexOutOfRange, "jump index out of range");
  }
  return jumps_[sorted_position_[n]];
}

DebskiSet::DebskiSet(int truncation) : table_(truncation) {
  const auto& j = table_.jumps();
  plateaus_.reserve(j.size() + 1);
  plateaus_.push_back(Plateau{Rational(0), j.front().location, true, false, Rational(0)});
  for (std::size_t k = 1; k < j.size(); ++k) {
    plateaus_.push_back(Plateau{j[k - 1].location, j[k].location, false, false, j[k].low});
  }
  plateaus_.push_back(Plateau{j.back().location, Rational(1), false, true, j.back().high});
}

std::optional<std::size_t> DebskiSet::jump_at(const Rational& c) const {
  const auto& j = jumps();
  auto it = std::lower_bound(j.begin(), j.end(), c,
                             [](const Jump& a, const Rational& x) { return a.location < x; });
  if (it != j.end() && it->location == c) return static_cast<std::size_t>(it - j.begin());
  return std::nullopt;
}

std::optional<Rational> DebskiSet::value_at(const Rational& c) const {
  const auto& j = jumps();
  auto it = std::lower_bound(j.begin(), j.end(), c,
                             [](const Jump& a, const Rational& x) { return a.location < x; });
  if (it != j.end() && it->location == c) return std::nullopt;
  return plateaus_[static_cast<std::size_t>(it - j.begin())].value;
}

std::vector<std::pair<Rational, Rational>> DebskiSet::projection_gaps() const {
  std::vector<std::pair<Rational, Rational>> covered;
  for (const auto& p : plateaus_) covered.emplace_back(p.value, p.value);
  for (const auto& jmp : jumps()) covered.emplace_back(jmp.low, jmp.high);
  std::sort(covered.begin(), covered.end());
  std::vector<std::pair<Rational, Rational>> gaps;
  Rational reach = 0;
  bool started = false;
  for (const auto& [lo, hi] : covered) {
    if (!started) {
      if (lo > 0) gaps.emplace_back(Rational(0), lo);
      reach = hi;
      started = true;
      continue;
    }
    if (lo > reach) gaps.emplace_back(reach, lo);
    if (hi > reach) reach = hi;
  }
  if (reach < 1) gaps.emplace_back(reach, Rational(1));
  return gaps;
}

Rational f_value(const Rational& c, int truncation) {
  if (c < 0 || c > 1 || !cantor_member(c)) {
    throw Error(ErrorCode::kNotInCantor, "f_value: " + to_string(c) + " is not in C");
  }
  const std::vector<Rational> d = jump_points(truncation);
  Rational sum = 0;
  for (int n = 0; n < truncation; ++n) {
    if (d[n] == c) {
      throw Error(ErrorCode::kAtJumpLocation,
                  "f_value: " + to_string(c) + " is jump location d_" + std::to_string(n));
    }
    if (d[n] < c) sum += inv_pow2(n + 1);
  }
  return sum;
}

std::pair<Rational, Rational> jump_interval(int n, int truncation) {
  if (n < 0 || n >= truncation) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "jump_interval: n=" + std::to_string(n) + " not below N=" + std::to_string(truncation));
  }
  const std::vector<Rational> d = jump_points(truncation);
  Rational low = 0;
  for (int m = 0; m < truncation; ++m) {
    if (d[m] < d[n]) low += inv_pow2(m + 1);
  }
  Rational high = low + inv_pow2(n + 1);
  return {low, high};
}

DebskiSet build_D(int truncation) { return DebskiSet(truncation); }

Side classify_point(const DebskiSet& d, const Point& p) {
  if (p.c < 0 || p.c > 1 || !cantor_member(p.c)) {
    throw Error(ErrorCode::kNotInCantor, "classify_point: first coordinate not in C");
  }
  if (auto pos = d.jump_at(p.c)) {
    const Jump& j = d.jumps()[*pos];
    if (p.r < j.low) return Side::kBelow;
    if (p.r > j.high) return Side::kAbove;
    return Side::kOn;
  }
  const Rational v = *d.value_at(p.c);
  if (p.r < v) return Side::kBelow;
  if (p.r > v) return Side::kAbove;
  return Side::kOn;
}

MidpointSet midpoints(int truncation) {
  const JumpTable table(truncation);
  MidpointSet m;
  m.points.reserve(static_cast<std::size_t>(truncation));
  for (int n = 0; n < truncation; ++n) {
    const Jump& j = table.by_index(n);
    m.points.push_back(Point{j.location, j.low + inv_pow2(n + 2)});
  }
  return m;
}

GraphClosure graph_closure_E(int truncation) {
  const DebskiSet d(truncation);
  GraphClosure e;
  e.plateaus = d.plateaus();
  for (const Jump& j : d.jumps()) {
    e.bottoms.push_back(Point{j.location, j.low});
    e.tops.push_back(Point{j.location, j.high});
  }
  return e;
}

bool GraphClosure::contains(const Point& p) const {
  for (std::size_t k = 0; k < bottoms.size(); ++k) {
    if (bottoms[k].c == p.c) return p.r == bottoms[k].r || p.r == tops[k].r;
  }
  if (p.c < 0 || p.c > 1 || !cantor_member(p.c)) return false;
  for (const Plateau& pl : plateaus) {
    const bool after_left = pl.left_closed ? p.c >= pl.left : p.c > pl.left;
    const bool before_right = pl.right_closed ? p.c <= pl.right : p.c < pl.right;
    if (after_left && before_right) return p.r == pl.value;
  }
  return false;
}

}  // namespace fanforge
