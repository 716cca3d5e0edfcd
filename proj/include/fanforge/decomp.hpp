#pragma once

// Collapsing each copy's graph closure to a point: Hawaiian earrings, the
// shrinking regions around one loop, and the countable/punctiform split.

#include <string>
#include <vector>

#include "json.hpp"

#include "fanforge/spaceset.hpp"

namespace fanforge {

struct Loop {
  int jump = 0;  // local jump sequence number m
  Rational c;
  Rational low;
  Rational high;
  Rational height;  // (b - a) 2^-(m+1), before Xi
  double fan_diameter = 0;
};

struct Earring {
  CopyId owner = 0;
  std::size_t base_points = 1;  // the collapsed class of the copy's E-part
  std::vector<Loop> loops;      // by jump index
};

/// Throws kUnknownCopy.
Earring collapse_E(const SpaceModel& model, CopyId copy);
/// Collapsing collapsed data changes nothing.
Earring collapse_E(const Earring& earring);

struct EarringVerdict {
  bool ok = false;
  std::string reason;
  bool ratios_half = false;  // consecutive pre-Xi heights halve exactly
  nlohmann::json metrics = nlohmann::json::object();
};

EarringVerdict earring_check(const Earring& earring);

struct Claim5Result {
  CopyId owner = 0;
  int loop = 0;
  int k = 0;      // stage of the owner's rect
  int n = 0;
  int stage = 0;  // k + 1 + n
  Address column;
  CopyId above = 0;  // D^0: lowest stage rect above the loop
  CopyId below = 0;  // D^1: highest stage rect below the loop
  Rational loop_c;
  Rational loop_top;
  Rational loop_bottom;
  Region upper;  // U: between the owner and D^0
  Region lower;  // V: between D^1 and the owner
  bool boundary_ok = false;
  std::size_t cells_checked = 0;
  std::string failure;
  Rational column_distance;  // D^0 height at the loop column minus the loop top
};

/// Throws kDepthInsufficient when k + 1 + n > K or no rect lies above or
/// below the loop in its column.
Claim5Result claim5_regions(const SpaceModel& model, CopyId owner, int n, int loop);

struct DecompositionSummary {
  std::size_t earrings = 0;
  std::vector<std::size_t> loops_per_earring;
  std::size_t base_points = 0;
  std::size_t q_points = 0;
  std::size_t countable = 0;
  std::string punctiform;

  nlohmann::json to_json() const;
};

DecompositionSummary suslinian_report(const SpaceModel& model);

nlohmann::json earring_json(const Earring& earring);

}  // namespace fanforge
