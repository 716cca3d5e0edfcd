#include "fanforge/copy.hpp"

#include <algorithm>

#include "fanforge/errors.hpp"

namespace fanforge {

AffineMap::AffineMap(Address address, Rational bottom, Rational top)
    : address_(address),
      offset_(endpoint_zero(address)),
      scale_(inv_pow3(address.length())),
      bottom_(std::move(bottom)),
      height_(top - bottom_) {
  if (height_ <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "affine map needs bottom < top");
  }
}

PlacedCopy::PlacedCopy(CopyId id, int stage, int index, Rect rect, const DebskiSet& base)
    : id_(id),
      stage_(stage),
      index_(index),
      rect_(std::move(rect)),
      map_(rect_.address, rect_.bottom, rect_.top) {
  const auto& src = base.jumps();
  jumps_.reserve(src.size());
  for (const Jump& j : src) {
    const Rational mid = j.low + inv_pow2(j.index + 2);
    jumps_.push_back(ImageJump{j.index, map_.map_c(j.location), map_.map_r(j.low),
                               map_.map_r(j.high), map_.map_r(mid)});
  }
  plateau_values_.reserve(base.plateaus().size());
  for (const Plateau& p : base.plateaus()) plateau_values_.push_back(map_.map_r(p.value));
}

std::size_t PlacedCopy::jumps_before(const Rational& c) const {
  auto it = std::lower_bound(jumps_.begin(), jumps_.end(), c,
                             [](const ImageJump& j, const Rational& x) { return j.c < x; });
  return static_cast<std::size_t>(it - jumps_.begin());
}

Crossing PlacedCopy::crossing_at(const Rational& c) const {
  const std::size_t pos = jumps_before(c);
  if (pos < jumps_.size() && jumps_[pos].c == c) {
    return Crossing{jumps_[pos].low, jumps_[pos].high};
  }
  return Crossing{plateau_values_[pos], plateau_values_[pos]};
}

std::optional<Rational> PlacedCopy::value_at(const Rational& c) const {
  const std::size_t pos = jumps_before(c);
  if (pos < jumps_.size() && jumps_[pos].c == c) return std::nullopt;
  return plateau_values_[pos];
}

Rational PlacedCopy::min_over(const Address& column) const {
  return plateau_values_[jumps_before(endpoint_zero(column))];
}

Rational PlacedCopy::max_over(const Address& column) const {
  return plateau_values_[jumps_before(endpoint_one(column))];
}

}  // namespace fanforge
