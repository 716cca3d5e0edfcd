#pragma once

// Stages R_0 .. R_K of the recursive partial tiling and their placed copies.

#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "fanforge/cells.hpp"
#include "fanforge/copy.hpp"

namespace fanforge {

struct TilingStage {
  int n = 0;
  std::vector<Rect> rects;
  std::vector<CopyId> copies;  // filled by ConstructionState::append, parallel to rects
  // Strips whose inherited lower copy is flat over the column. Diagnostic.
  int flat_lifts = 0;
};

class ConstructionState {
 public:
  explicit ConstructionState(int truncation);

  int truncation() const noexcept { return base_.truncation(); }
  /// Highest built stage; -1 when empty.
  int depth() const noexcept { return static_cast<int>(stages_.size()) - 1; }
  const DebskiSet& base() const noexcept { return base_; }
  const std::vector<TilingStage>& stages() const noexcept { return stages_; }

  std::size_t copy_count() const noexcept { return copies_.size(); }
  /// Throws kUnknownCopy.
  const PlacedCopy& copy(CopyId id) const;
  const std::deque<PlacedCopy>& copies() const noexcept { return copies_; }

  /// Copies whose rect column contains B(column), from stages <= max_stage
  /// (all stages when max_stage < 0), ordered by id.
  std::vector<const PlacedCopy*> spanning(const Address& column, int max_stage = -1) const;

  /// Places a copy in every rect. stage.n must equal depth() + 1.
  void append(TilingStage stage);

 private:
  DebskiSet base_;
  std::vector<TilingStage> stages_;
  std::deque<PlacedCopy> copies_;
  std::map<Address, std::vector<CopyId>> by_address_;
};

TilingStage stage_zero(int truncation);
TilingStage stage_one(int truncation);

/// Tiles every column sigma of length n around the inherited copies.
/// Throws kStageOrderViolation unless state.depth() == n - 1 and n >= 2,
/// kTruncationTooCoarse when the inherited traces do not interleave.
TilingStage stage_n(const ConstructionState& state, int n);

ConstructionState build(int depth, int truncation);

struct TraceHit {
  Rational height;
  CopyId copy = 0;
};

/// Heights where {c} x [lo, hi] meets the placed copies, ascending.
/// Throws kNotInCantor, or kJumpHit when c is a scaled jump location of a
/// spanning copy.
std::vector<TraceHit> vertical_trace(const ConstructionState& state, const Rational& c,
                                     const Rational& lo, const Rational& hi,
                                     int max_stage = -1);

struct TraceSegment {
  Crossing crossing;
  CopyId copy = 0;
};

/// Like vertical_trace but allows jump locations, reporting whole segments.
std::vector<TraceSegment> crossings(const ConstructionState& state, const Rational& c,
                                    int max_stage = -1);

/// Exact intersection test for two placed copies.
std::optional<IntersectionWitness> copies_intersect(const PlacedCopy& a, const PlacedCopy& b);

}  // namespace fanforge
