#pragma once

// Rectangles B(sigma) x [a,b] and the affine copies of D_N placed in them.

#include <cstddef>
#include <optional>
#include <vector>

#include "fanforge/debski.hpp"
#include "fanforge/exact.hpp"

namespace fanforge {

using CopyId = std::size_t;

struct Rect {
  Address address;
  Rational bottom;
  Rational top;

  Rational height() const { return top - bottom; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// <c, r> -> <0(sigma) + c / 3^n, a + r (b - a)>, n = |sigma|.
class AffineMap {
 public:
  AffineMap(Address address, Rational bottom, Rational top);

  const Address& address() const noexcept { return address_; }
  const Rational& offset() const noexcept { return offset_; }
  const Rational& scale() const noexcept { return scale_; }
  const Rational& bottom() const noexcept { return bottom_; }
  const Rational& height() const noexcept { return height_; }

  Rational map_c(const Rational& c) const { return offset_ + c * scale_; }
  Rational map_r(const Rational& r) const { return bottom_ + r * height_; }
  Rational unmap_c(const Rational& c) const { return (c - offset_) / scale_; }
  Rational unmap_r(const Rational& r) const { return (r - bottom_) / height_; }

  Point apply(const Point& p) const { return Point{map_c(p.c), map_r(p.r)}; }
  Point invert(const Point& p) const { return Point{unmap_c(p.c), unmap_r(p.r)}; }

 private:
  Address address_;
  Rational offset_;
  Rational scale_;
  Rational bottom_;
  Rational height_;
};

/// Where a vertical line meets one copy: a single height, or a whole jump
/// segment when the line passes through a scaled jump location.
struct Crossing {
  Rational lo;
  Rational hi;

  bool is_segment() const { return lo != hi; }
  bool overlaps(const Crossing& o) const { return lo <= o.hi && o.lo <= hi; }
};

struct ImageJump {
  int index = 0;  // local jump sequence number m
  Rational c;
  Rational low;
  Rational high;
  Rational midpoint;
};

/// One affine image T[D_N], carried through the map exactly.
class PlacedCopy {
 public:
  PlacedCopy(CopyId id, int stage, int index, Rect rect, const DebskiSet& base);

  CopyId id() const noexcept { return id_; }
  int stage() const noexcept { return stage_; }
  int index() const noexcept { return index_; }
  const Rect& rect() const noexcept { return rect_; }
  const AffineMap& map() const noexcept { return map_; }

  /// Image jumps sorted by c.
  const std::vector<ImageJump>& jumps() const noexcept { return jumps_; }
  /// Value on plateau k, k = 0..N (plateau k lies between sorted jumps k-1, k).
  const std::vector<Rational>& plateau_values() const noexcept { return plateau_values_; }

  bool spans(const Address& column) const noexcept {
    return rect_.address.is_prefix_of(column);
  }

  /// Number of image jumps strictly left of c.
  std::size_t jumps_before(const Rational& c) const;

  /// Crossing of the vertical line at c, for c inside the rect's column and
  /// in C. Callers guarantee membership.
  Crossing crossing_at(const Rational& c) const;

  /// Single height at c; std::nullopt when c is a scaled jump location.
  std::optional<Rational> value_at(const Rational& c) const;

  /// Lowest and highest points of the image over B(column).
  Rational min_over(const Address& column) const;
  Rational max_over(const Address& column) const;

 private:
  CopyId id_;
  int stage_;
  int index_;
  Rect rect_;
  AffineMap map_;
  std::vector<ImageJump> jumps_;
  std::vector<Rational> plateau_values_;
};

}  // namespace fanforge
