#pragma once

// Exact checks of conditions (i)-(v) and the finite analogues of the
// connectivity and null-sequence statements.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fanforge/spaceset.hpp"

namespace fanforge {

enum class CheckStatus { kPass, kFail, kSkipped };

const char* check_status_name(CheckStatus s);

struct CheckRecord {
  std::string name;
  std::string scope;
  CheckStatus status = CheckStatus::kPass;
  nlohmann::json witness;  // null unless failed (or skipped: the reason)
  nlohmann::json metrics = nlohmann::json::object();
};

struct VerificationReport {
  std::vector<CheckRecord> checks;

  bool all_passed() const;
  std::size_t count(CheckStatus s) const;
  void merge(VerificationReport other);
  const CheckRecord* find(const std::string& name, const std::string& scope = "") const;

  /// "fanforge-report-v1".
  nlohmann::json to_json(int depth, int truncation) const;
  std::string to_text() const;
};

VerificationReport check_conditions_i_ii(const ConstructionState& state);
VerificationReport check_partial_tiling(const ConstructionState& state);
VerificationReport check_disjointness(const ConstructionState& state);
VerificationReport check_coverage(const ConstructionState& state, int n);
VerificationReport check_condition_v(const ConstructionState& state, int n);

struct GapMetrics {
  int n = 0;
  Rational max_gap;
  Address column;
  Cell cell;
  Rational gap_lo;
  Rational gap_hi;
};

/// Longest vertical gap inside [-n, n+1] over every cell of every column of
/// length n, counting stages <= n. Throws kOutOfRange when n > K.
GapMetrics max_vertical_gap(const ConstructionState& state, int n);
VerificationReport check_max_vertical_gap(const ConstructionState& state, int n);

VerificationReport check_fiber_isolation(const SpaceModel& model);
VerificationReport check_null_sequence(const ConstructionState& state);
VerificationReport check_earrings(const SpaceModel& model);

/// Number of eps-chain components (Euclidean metric).
std::size_t epsilon_components(const std::vector<PlanePoint>& points, double eps);
/// Longest edge of a Euclidean minimum spanning tree; 0 for fewer than 2 points.
double max_mst_edge(const std::vector<PlanePoint>& points);

struct ConnectivityMetrics {
  double epsilon_star = 0;
  std::size_t components_at_star = 0;
  std::size_t components_at_half = 0;
  std::size_t points = 0;
};

ConnectivityMetrics connectivity_profile(const PointCloud& cloud);
VerificationReport check_epsilon_connectivity(const SpaceModel& model, int grid_depth,
                                              int fiber_count,
                                              const std::vector<double>& epsilons);

/// Fan-coordinate copy diameters: the max pairwise distance of the mapped
/// jump endpoints and corner points.
double fan_diameter(const PlacedCopy& copy);

struct CheckSelection {
  std::string name;
  std::optional<int> n;  // per-stage checks; all stages when empty
};

/// Parses "name" or "name:n", comma separated.
std::vector<CheckSelection> parse_check_list(const std::string& text);

struct SuiteOptions {
  std::vector<CheckSelection> checks;  // empty: the default suite
  int grid_depth = -1;                 // sampling checks: K+2 when negative
  int fiber_count = 3;
  std::vector<double> epsilons;
};

/// Names understood by run_suite.
const std::vector<std::string>& known_checks();

VerificationReport run_suite(const ConstructionState& state, const SuiteOptions& options);

}  // namespace fanforge
