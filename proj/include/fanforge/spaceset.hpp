#pragma once

// Y = P u Q over the placed copies, the maps Xi and nabla, basis regions
// and point sampling of the fan.

#include <optional>
#include <string>
#include <vector>

#include "fanforge/tiling.hpp"

namespace fanforge {

struct PlanePoint {
  double x = 0;
  double y = 0;
};

struct QPoint {
  Point point;
  CopyId copy = 0;
  int jump = 0;  // local jump sequence number m
};

enum class Membership { kP, kQ, kOutside };

const char* membership_name(Membership m);

class SpaceModel {
 public:
  /// The state must outlive the model.
  explicit SpaceModel(const ConstructionState& state);

  const ConstructionState& state() const noexcept { return *state_; }
  /// Midpoint images, copy-major then by jump index.
  const std::vector<QPoint>& q_points() const noexcept { return q_; }
  const QPoint& q_point(CopyId copy, int jump) const;

  /// P: on C x R but on no copy; Q: a midpoint image; otherwise outside Y
  /// (the point lies on a copy). Throws kNotInCantor.
  Membership classify(const Point& p) const;

 private:
  const ConstructionState* state_;
  std::vector<QPoint> q_;
};

SpaceModel assemble(const ConstructionState& state);

/// <c, r> -> <c, arctan(r)/pi + 1/2>, in floating point.
PlanePoint xi_map(double c, double r);
/// <c, y> -> <(y(2c-1)+1)/2, y>.
Point nabla_map(const Point& p);
PlanePoint nabla_map(const PlanePoint& p);
/// nabla after Xi, from an exact point of C x R.
PlanePoint fan_point(const Point& p);

enum class RegionKind { kBetweenCopies, kBelowCopies, kAboveCopies };

const char* region_kind_name(RegionKind k);

struct Region {
  RegionKind kind = RegionKind::kBetweenCopies;
  std::vector<CopyId> copies;    // supporting copies (lower first for between)
  std::vector<Address> columns;  // C-part of the region, pairwise disjoint
  std::vector<QPoint> boundary;
  Rational level;  // r-bound used by vertex neighborhoods

  /// Exact membership of a point of Y in the region.
  bool contains(const SpaceModel& model, const Point& p) const;
};

/// Y-points strictly between two copies over B(column). Throws kNotSpanning,
/// or kNotOrdered unless lower lies strictly below upper in every cell.
Region region_between(const SpaceModel& model, CopyId lower, CopyId upper,
                      const Address& column);

/// Exact rational r with r <= tan(pi (eps - 1/2)).
Rational tan_lower_bound(const Rational& eps);

/// Finite cover of C by rect columns whose copies lie below tan(pi(eps-1/2)).
/// Throws kDepthInsufficient when the built stages do not reach low enough.
Region vertex_neighborhood(const SpaceModel& model, const Rational& eps);

enum class SampleTag { kVertex, kQ, kP };

const char* sample_tag_name(SampleTag t);

struct PointCloud {
  std::vector<PlanePoint> points;
  std::vector<SampleTag> tags;
};

/// Vertex, all qPoints and fiber_count P-points on the trace of every Cantor
/// endpoint at grid_depth, all in fan coordinates. Fiber points subdivide the
/// trace gaps inside [-K, K+1]: each one halves the currently longest piece.
PointCloud sample_points(const SpaceModel& model, int grid_depth, int fiber_count);

/// The exact P-points sample_points places on one fiber.
std::vector<Point> fiber_samples(const SpaceModel& model, const Rational& c, int fiber_count);

std::string cloud_csv(const PointCloud& cloud);
std::string cloud_json(const PointCloud& cloud);

/// Columns c where the band {c} x [lo, hi] holds no Y-point except midpoints:
/// this happens exactly when jump segments at c cover the band.
std::vector<Rational> f_set(const SpaceModel& model, const Rational& lo, const Rational& hi);

}  // namespace fanforge
