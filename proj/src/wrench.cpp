#include "suctionbench/wrench.hpp"

#include <cmath>
#include <stdexcept>

#include "suctionbench/errors.hpp"

namespace suctionbench {

void WrenchParams::validate() const {
  if (!(cup_radius > 0.0) || !(material_constant > 0.0) || !(mass > 0.0) ||
      !(gravity_accel > 0.0)) {
    throw std::invalid_argument("wrench parameters must be positive");
  }
  if (std::abs(gravity_direction.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("gravity direction must be unit length");
  }
}

Vec3 center_of_mass(const TriangleMesh& mesh) {
  if (!mesh.is_watertight()) {
    throw Error(
        "center of mass requires a watertight mesh; repair the mesh or fall "
        "back to a surface-sampled centroid");
  }
  double volume = 0.0;
  Vec3 moment = Vec3::Zero();
  for (const auto& f : mesh.faces) {
    const Vec3& a = mesh.vertices[static_cast<std::size_t>(f[0])];
    const Vec3& b = mesh.vertices[static_cast<std::size_t>(f[1])];
    const Vec3& c = mesh.vertices[static_cast<std::size_t>(f[2])];
    const double det = a.dot(b.cross(c));  // 6x signed tetra volume w.r.t. origin
    volume += det;
    moment += det * (a + b + c);  // tetra centroid is (a+b+c+0)/4
  }
  volume /= 6.0;
  moment /= 24.0;
  if (std::abs(volume) < 1e-15) throw Error("mesh encloses no volume");
  return moment / volume;
}

Eigen::Vector2d gravity_torque(const SuctionPose& pose, const Vec3& com,
                               const WrenchParams& params) {
  params.validate();
  if (!pose.is_valid()) throw std::invalid_argument("suction pose direction must be unit length");
  const Vec3 force = params.mass * params.gravity_accel * params.gravity_direction;
  const Vec3 torque = (com - pose.point).cross(force);
  const Mat3 frame = ring_frame(pose.direction);
  return {torque.dot(frame.col(0)), torque.dot(frame.col(1))};
}

WrenchResult wrench_score(const SuctionPose& pose, const Vec3& com, const WrenchParams& params) {
  const Eigen::Vector2d tau = gravity_torque(pose, com, params);
  WrenchResult out;
  out.tau_x = tau.x();
  out.tau_y = tau.y();
  out.tangential = std::hypot(tau.x(), tau.y());
  out.score = 1.0 - std::min(1.0, out.tangential / params.torque_threshold());
  return out;
}

}  // namespace suctionbench
