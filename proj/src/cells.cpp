#include "fanforge/cells.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "fanforge/errors.hpp"

namespace fanforge {

CellDecomposition::CellDecomposition(Address column, std::vector<const PlacedCopy*> copies)
    : column_(column), interval_(basic_interval(column)), copies_(std::move(copies)) {
  const std::size_t count = copies_.size();
  first_plateau_.resize(count);
  ranges_.resize(count);

  struct Raw {
    const Rational* c;
    std::size_t slot;
    std::size_t jump;
  };
  std::vector<Raw> raw;
  for (std::size_t s = 0; s < count; ++s) {
    const PlacedCopy& copy = *copies_[s];
    if (!copy.spans(column_)) {
      throw Error(ErrorCode::kNotSpanning, "cell decomposition: copy " + std::to_string(copy.id()) +
                                               " does not span column " + column_.to_string());
    }
    const std::size_t begin = copy.jumps_before(interval_.left);
    const std::size_t end = copy.jumps_before(interval_.right);
    first_plateau_[s] = begin;
    ranges_[s] = Crossing{copy.plateau_values()[begin], copy.plateau_values()[end]};
    for (std::size_t j = begin; j < end; ++j) raw.push_back(Raw{&copy.jumps()[j].c, s, j});
  }
  std::sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) {
    if (*a.c != *b.c) return *a.c < *b.c;
    return a.slot < b.slot;
  });
  for (const Raw& r : raw) {
    if (breakpoints_.empty() || breakpoints_.back() != *r.c) {
      breakpoints_.push_back(*r.c);
      events_.emplace_back();
    }
    events_.back().push_back(BreakEvent{r.slot, r.jump});
  }

  order_.resize(count);
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
    if (ranges_[a].lo != ranges_[b].lo) return ranges_[a].lo < ranges_[b].lo;
    return ranges_[a].hi < ranges_[b].hi;
  });
  for (std::size_t k = 0; k + 1 < count; ++k) {
    if (ranges_[order_[k]].hi > ranges_[order_[k + 1]].lo) {
      ordered_ = false;
      break;
    }
  }
}

Cell CellDecomposition::cell(std::size_t i) const {
  if (i >= cell_count()) throw Error(ErrorCode::kIndexOutOfRange, "cell index out of range");
  if (i % 2 == 1) {
    const Rational& b = breakpoints_[i / 2];
    return Cell{b, b, true, true};
  }
  const std::size_t k = i / 2;
  const std::size_t nb = breakpoints_.size();
  Cell c;
  c.left = k == 0 ? interval_.left : breakpoints_[k - 1];
  c.right = k == nb ? interval_.right : breakpoints_[k];
  c.left_closed = k == 0;
  c.right_closed = k == nb;
  return c;
}

std::size_t CellDecomposition::cell_of(const Rational& c) const {
  if (!interval_.contains(c)) {
    throw Error(ErrorCode::kOutOfRange, "cell_of: " + to_string(c) + " outside column");
  }
  auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), c);
  const auto pos = static_cast<std::size_t>(it - breakpoints_.begin());
  if (it != breakpoints_.end() && *it == c) return 2 * pos + 1;
  return 2 * pos;
}

std::vector<CellCrossing> CellDecomposition::pattern(std::size_t i) const {
  const Cell c = cell(i);
  std::vector<CellCrossing> out;
  out.reserve(copies_.size());
  for (std::size_t s = 0; s < copies_.size(); ++s) {
    const PlacedCopy& copy = *copies_[s];
    if (c.is_point()) {
      out.push_back(CellCrossing{s, copy.crossing_at(c.left)});
    } else {
      // no jump of any copy lies strictly inside the cell
      const Rational& v = copy.plateau_values()[copy.jumps_before(c.right)];
      out.push_back(CellCrossing{s, Crossing{v, v}});
    }
  }
  std::sort(out.begin(), out.end(), [](const CellCrossing& a, const CellCrossing& b) {
    if (a.crossing.lo != b.crossing.lo) return a.crossing.lo < b.crossing.lo;
    if (a.crossing.hi != b.crossing.hi) return a.crossing.hi < b.crossing.hi;
    return a.slot < b.slot;
  });
  return out;
}

std::optional<IntersectionWitness> CellDecomposition::first_intersection() const {
  std::optional<IntersectionWitness> found;
  bool done = false;
  sweep([&](std::size_t, const Cell& cell, std::span<const CellCrossing> sorted,
            std::span<const std::size_t>) {
    if (done || sorted.size() < 2) return;
    std::size_t top = 0;
    for (std::size_t k = 1; k < sorted.size(); ++k) {
      if (sorted[k].crossing.lo <= sorted[top].crossing.hi) {
        const Crossing& a = sorted[top].crossing;
        const Crossing& b = sorted[k].crossing;
        CopyId x = copies_[sorted[top].slot]->id();
        CopyId y = copies_[sorted[k].slot]->id();
        if (x > y) std::swap(x, y);
        found = IntersectionWitness{x, y, cell,
                                    Crossing{std::max(a.lo, b.lo), std::min(a.hi, b.hi)}};
        done = true;
        return;
      }
      if (sorted[k].crossing.hi > sorted[top].crossing.hi) top = k;
    }
  });
  return found;
}

}  // namespace fanforge
