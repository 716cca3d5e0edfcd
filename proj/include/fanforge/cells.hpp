#pragma once

// Exhaustive decomposition of one column B(sigma) into intervals on which
// every copy's vertical crossing is constant.
//
// Truncated copies are step functions plus finitely many vertical segments,
// so the breakpoints are exactly the scaled jump locations inside the
// column. Cells alternate: a half-open or open interval carrying constant
// heights, then a single breakpoint where some copies cross as segments.

#include <optional>
#include <span>
#include <vector>

#include "fanforge/copy.hpp"

namespace fanforge {

struct Cell {
  Rational left;
  Rational right;
  bool left_closed = false;
  bool right_closed = false;

  bool is_point() const { return left == right; }
  bool contains(const Rational& c) const {
    return (left_closed ? c >= left : c > left) && (right_closed ? c <= right : c < right);
  }
};

struct CellCrossing {
  std::size_t slot = 0;  // index into CellDecomposition::copies()
  Crossing crossing;
};

struct IntersectionWitness {
  CopyId first = 0;
  CopyId second = 0;
  Cell cell;
  Crossing overlap;
};

class CellDecomposition {
 public:
  /// Every copy must span the column.
  CellDecomposition(Address column, std::vector<const PlacedCopy*> copies);

  const Address& column() const noexcept { return column_; }
  const BasicInterval& interval() const noexcept { return interval_; }
  const std::vector<const PlacedCopy*>& copies() const noexcept { return copies_; }
  const std::vector<Rational>& breakpoints() const noexcept { return breakpoints_; }

  std::size_t cell_count() const noexcept { return 2 * breakpoints_.size() + 1; }
  Cell cell(std::size_t i) const;
  /// Cell containing c; c must lie in the column.
  std::size_t cell_of(const Rational& c) const;

  /// Crossing pattern of one cell, sorted by height. Computed directly from
  /// the copies rather than by sweeping.
  std::vector<CellCrossing> pattern(std::size_t i) const;

  /// Per-slot [min, max] height over the column.
  const std::vector<Crossing>& ranges() const noexcept { return ranges_; }
  /// True when the slot ranges, sorted by min, satisfy max_k <= min_{k+1};
  /// then the vertical order of copies is the same in every cell.
  bool ordered() const noexcept { return ordered_; }

  /// Visits cells left to right:
  ///   visit(cell_index, cell, sorted_crossings, changed_positions)
  /// where changed_positions index into sorted_crossings and list every
  /// entry that differs from the previous cell (all of them for cell 0 and
  /// whenever the column is not ordered).
  template <class Visitor>
  void sweep(Visitor&& visit) const;

  /// First overlap between two copies' crossings in any cell.
  std::optional<IntersectionWitness> first_intersection() const;

 private:
  struct BreakEvent {
    std::size_t slot;
    std::size_t jump;  // index into the copy's jumps()
  };

  Address column_;
  BasicInterval interval_;
  std::vector<const PlacedCopy*> copies_;
  std::vector<Rational> breakpoints_;
  std::vector<std::vector<BreakEvent>> events_;  // per breakpoint
  std::vector<std::size_t> first_plateau_;       // per slot, plateau index at 0(sigma)
  std::vector<Crossing> ranges_;
  std::vector<std::size_t> order_;  // slots sorted by range
  bool ordered_ = true;
};

template <class Visitor>
void CellDecomposition::sweep(Visitor&& visit) const {
  const std::size_t count = copies_.size();
  std::vector<std::size_t> position(count);
  std::vector<CellCrossing> current(count);
  for (std::size_t p = 0; p < count; ++p) {
    const std::size_t slot = order_[p];
    position[slot] = p;
    const Rational& v = copies_[slot]->plateau_values()[first_plateau_[slot]];
    current[p] = CellCrossing{slot, Crossing{v, v}};
  }
  std::vector<std::size_t> everything(count);
  for (std::size_t p = 0; p < count; ++p) everything[p] = p;

  std::vector<CellCrossing> sorted;
  auto emit = [&](std::size_t index, std::span<const std::size_t> changed) {
    const Cell c = cell(index);
    if (ordered_) {
      visit(index, c, std::span<const CellCrossing>(current), changed);
      return;
    }
    sorted = current;
    std::sort(sorted.begin(), sorted.end(), [](const CellCrossing& a, const CellCrossing& b) {
      if (a.crossing.lo != b.crossing.lo) return a.crossing.lo < b.crossing.lo;
      return a.crossing.hi < b.crossing.hi;
    });
    visit(index, c, std::span<const CellCrossing>(sorted), std::span<const std::size_t>(everything));
  };

  emit(0, everything);
  std::vector<std::size_t> changed;
  for (std::size_t b = 0; b < breakpoints_.size(); ++b) {
    changed.clear();
    for (const BreakEvent& e : events_[b]) {
      const ImageJump& j = copies_[e.slot]->jumps()[e.jump];
      const std::size_t p = position[e.slot];
      current[p].crossing = Crossing{j.low, j.high};
      changed.push_back(p);
    }
    std::sort(changed.begin(), changed.end());
    emit(2 * b + 1, changed);
    for (const BreakEvent& e : events_[b]) {
      const ImageJump& j = copies_[e.slot]->jumps()[e.jump];
      const std::size_t p = position[e.slot];
      current[p].crossing = Crossing{j.high, j.high};
    }
    emit(2 * b + 2, changed);
  }
}

}  // namespace fanforge
