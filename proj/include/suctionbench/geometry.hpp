#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <utility>
#include <vector>

namespace suctionbench {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Rigid transform: maps x to rotation * x + translation.
struct RigidTransform {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  static RigidTransform identity() { return {}; }

  // 12 numbers, row-major 3x4 [R | t].
  static RigidTransform from_rows(const std::array<double, 12>& rows);
  std::array<double, 12> to_rows() const;

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
  Vec3 rotate(const Vec3& v) const { return rotation * v; }

  // det(R) = +1 and R*R^T = I within tol.
  bool is_valid(double tol = 1e-9) const;
};

// a ∘ b: apply b first, then a.
RigidTransform compose(const RigidTransform& a, const RigidTransform& b);
RigidTransform invert(const RigidTransform& t);
std::vector<Vec3> transform_points(const RigidTransform& t, const std::vector<Vec3>& pts);

/// Triangle mesh in meters. Faces index into vertices; vertex normals are
/// area-weighted averages of incident face normals.
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;
  std::vector<Vec3> vertex_normals;

  void compute_vertex_normals();
  Vec3 face_normal(int face) const;
  double face_area(int face) const;
  double surface_area() const;
  std::pair<Vec3, Vec3> bounds() const;

  // Every directed edge appears exactly once and is matched by its reverse.
  bool is_watertight() const;

  // Throws Error on out-of-range indices or non-finite vertices.
  void validate() const;
};

TriangleMesh transformed(const TriangleMesh& mesh, const RigidTransform& t);

/// Point cloud with optional per-point normals and object labels.
/// A zero normal marks a point whose normal estimate was degenerate.
struct PointCloud {
  std::vector<Vec3> points;
  std::vector<Vec3> normals;
  std::vector<int> object_ids;

  bool has_normals() const { return !normals.empty(); }
  bool has_valid_normal(std::size_t i) const {
    return has_normals() && normals[i].squaredNorm() > 0.25;
  }
  std::size_t size() const { return points.size(); }
};

}  // namespace suctionbench
