#pragma once

// The truncated monotone pure-jump function on C and its graph with vertical
// jump segments.

#include <memory>
#include <optional>
#include <vector>

#include "fanforge/exact.hpp"

namespace fanforge {

/// A point of C x R with exact coordinates.
struct Point {
  Rational c;
  Rational r;

  friend bool operator==(const Point&, const Point&) = default;
};

struct Jump {
  int index = 0;      // n: the jump has height 2^-(n+1)
  Rational location;  // d_n
  Rational low;       // r_n, the left limit
  Rational high;      // s_n, the right limit
};

/// Jumps d_0 .. d_{N-1} sorted by location.
class JumpTable {
 public:
  explicit JumpTable(int truncation);

  int truncation() const noexcept { return truncation_; }
  const std::vector<Jump>& jumps() const noexcept { return jumps_; }
  /// Jump with sequence index n (not sorted position).
  const Jump& by_index(int n) const;

 private:
  int truncation_;
  std::vector<Jump> jumps_;
  std::vector<int> sorted_position_;
};

/// Constant piece of f_N on C strictly between two consecutive jump
/// locations. The first piece is closed at 0 and the last closed at 1.
struct Plateau {
  Rational left;
  Rational right;
  bool left_closed = false;
  bool right_closed = false;
  Rational value;
};

enum class Side { kBelow, kOn, kAbove };

/// D_N: the graph of f_N over C plus the jump segments {d_n} x [r_n, s_n].
class DebskiSet {
 public:
  explicit DebskiSet(int truncation);

  int truncation() const noexcept { return table_.truncation(); }
  const JumpTable& jump_table() const noexcept { return table_; }
  const std::vector<Jump>& jumps() const noexcept { return table_.jumps(); }
  const std::vector<Plateau>& plateaus() const noexcept { return plateaus_; }

  /// f_N(c) by binary search; std::nullopt when c is a jump location.
  std::optional<Rational> value_at(const Rational& c) const;

  /// Sorted position of the jump located at c, if any.
  std::optional<std::size_t> jump_at(const Rational& c) const;

  /// Uncovered parts of [0,1] under the vertical projection, as closed-open
  /// pairs (lo, hi]. Total length is exactly 2^-N.
  std::vector<std::pair<Rational, Rational>> projection_gaps() const;

 private:
  JumpTable table_;
  std::vector<Plateau> plateaus_;
};

/// First N members of the canonical dense sequence of non-endpoints:
/// 0(sigma) + 3^-|sigma| / 4 over sigma in length-lex order, duplicates
/// skipped, in acceptance order.
std::vector<Rational> jump_points(int n);

/// sum_{n<N, d_n<c} 2^-(n+1). Throws kAtJumpLocation at any d_n and
/// kNotInCantor off C.
Rational f_value(const Rational& c, int truncation);

/// (r_n, s_n). Throws kIndexOutOfRange unless 0 <= n < N.
std::pair<Rational, Rational> jump_interval(int n, int truncation);

DebskiSet build_D(int truncation);

/// Position of p relative to D; throws kNotInCantor if p.c is not in C.
Side classify_point(const DebskiSet& d, const Point& p);

struct MidpointSet {
  std::vector<Point> points;  // indexed by jump sequence number n
};

MidpointSet midpoints(int truncation);

/// E = graph(f_N) together with the jump tops; the closure of the graph.
struct GraphClosure {
  std::vector<Plateau> plateaus;
  std::vector<Point> bottoms;  // <d_n, r_n>
  std::vector<Point> tops;     // <d_n, s_n>

  bool contains(const Point& p) const;
};

GraphClosure graph_closure_E(int truncation);

}  // namespace fanforge
