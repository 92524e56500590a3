#pragma once

#include <Eigen/Core>

#include "suctionbench/geometry.hpp"
#include "suctionbench/seal.hpp"

namespace suctionbench {

struct WrenchParams {
  double cup_radius = 0.010;        // meters, shared with the cup model
  double material_constant = 31.8;  // N; elastic limit of the cup lip
  double mass = 1.0;                // kg, identical for every object
  double gravity_accel = 9.8;       // m/s^2
  Vec3 gravity_direction = -Vec3::UnitZ();  // unit, world frame

  double torque_threshold() const { return M_PI * cup_radius * material_constant; }
  void validate() const;
};

struct WrenchResult {
  double tau_x = 0.0;       // N*m, components in the plane orthogonal to the
  double tau_y = 0.0;       // suction direction (ring frame of the pose)
  double tangential = 0.0;  // sqrt(tau_x^2 + tau_y^2); basis independent
  double score = 0.0;       // 1 - min(1, tangential / threshold)
};

/// Uniform-density centroid by signed-tetrahedron integration.
/// Throws Error for a non-watertight or degenerate-volume mesh.
Vec3 center_of_mass(const TriangleMesh& mesh);

/// Gravity torque about the suction point, expressed in the pose's ring
/// frame: tau = (com - p) x (m g ghat), components along e1/e2.
Eigen::Vector2d gravity_torque(const SuctionPose& pose, const Vec3& com,
                               const WrenchParams& params);

WrenchResult wrench_score(const SuctionPose& pose, const Vec3& com, const WrenchParams& params);

}  // namespace suctionbench
