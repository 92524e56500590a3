#pragma once

#include <optional>
#include <vector>

#include "suctionbench/geometry.hpp"
#include "suctionbench/spatial_index.hpp"

namespace suctionbench {

/// A suction pose: contact point plus unit direction pointing from the point
/// away from the object surface.
struct SuctionPose {
  Vec3 point = Vec3::Zero();
  Vec3 direction = Vec3::UnitZ();

  bool is_valid(double tol = 1e-9) const {
    return point.allFinite() && std::abs(direction.norm() - 1.0) <= tol;
  }
};

/// Suction cup contact ring discretized as a regular polygon joined by
/// perimeter springs. Rest length of every spring is 2 r sin(pi/n).
struct CupModel {
  double radius = 0.010;   // meters
  int ring_vertices = 8;

  double rest_length() const;
  void validate() const;  // throws on r <= 0 or n < 4
};

struct SealParams {
  double plane_fit_decay = 5.0e5;     // 1/m^2; 0.5 per mm^2
  double neighborhood_factor = 1.25;  // plane-fit ball radius, in cup radii
  double standoff_factor = 2.0;       // ring start height above contact, in cup radii
  double max_cast_factor = 4.0;       // cast farther than this (in cup radii) counts as a miss
  bool binary_deform_mode = false;    // legacy pass/fail on the max spring ratio
  double binary_ratio_threshold = 0.10;

  void validate() const;
};

/// Ring vertices cast onto the mesh along -direction.
struct ProjectionResult {
  std::vector<Vec3> ring_hits;           // valid where hit[i]
  std::vector<bool> hit;
  std::vector<double> deformed_lengths;  // entry i: |hit[i+1] - hit[i]|, NaN unless both hit

  bool all_hit() const;
  int miss_count() const;
};

struct PlaneFit {
  double score = 0.0;          // e^(-c * mean squared residual)
  double mean_sq_error = 0.0;  // m^2
  bool degenerate = false;     // < 3 points or collinear; score forced to 0
};

struct SealScore {
  double seal = 0.0;
  double deform = 0.0;
  double fit = 0.0;
  bool any_miss = false;
  bool degenerate_fit = false;
};

/// Deterministic right-handed frame with z = u; columns (e1, e2, u).
/// The ring phase lives in e1/e2: co-rotate the frame (via ring_reference)
/// to transform a cup placement rigidly.
Mat3 ring_frame(const Vec3& u);

/// Places the contact ring on the plane through p + h*u (h = standoff) and
/// casts every vertex along -u. Misses are recorded, not errors.
/// ring_reference, when given, seeds e1 with its component orthogonal to u.
ProjectionResult project_cup(const MeshBvh& index, const SuctionPose& pose, const CupModel& cup,
                             const SealParams& params,
                             const std::optional<Vec3>& ring_reference = std::nullopt);

/// min(1, |deformed - rest| / rest); throws on rest <= 0.
double change_ratio(double rest, double deformed);

/// 1 - max(ratios); throws on an empty list.
double deformation_score(const std::vector<double>& ratios);

/// Least-squares plane over the points; score = e^(-decay * mean sq error).
PlaneFit plane_fit_score(const std::vector<Vec3>& points, double decay);

/// Full seal evaluation: 0 on any ring miss, otherwise deform * fit. The
/// plane-fit neighborhood is every surface-cloud point within
/// neighborhood_factor * cup radius of the contact point.
SealScore seal_score(const MeshBvh& mesh_index, const KdTree& surface_index,
                     const SuctionPose& pose, const CupModel& cup, const SealParams& params,
                     const std::optional<Vec3>& ring_reference = std::nullopt);

}  // namespace suctionbench
