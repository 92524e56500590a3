#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "suctionbench/geometry.hpp"

namespace suctionbench {

/// kd-tree over 3D points. Query results refer to the construction-order
/// point indices and match exhaustive search exactly (ties broken by index).
class KdTree {
 public:
  KdTree() = default;
  explicit KdTree(std::vector<Vec3> points);

  // Index of the closest point, or -1 for an empty tree.
  int nearest(const Vec3& query, double* distance = nullptr) const;

  // Indices of all points with |p - query| <= radius, ascending by index.
  std::vector<int> radius(const Vec3& query, double r) const;

  // k closest indices, ascending by (distance, index).
  std::vector<int> knn(const Vec3& query, int k) const;

  const std::vector<Vec3>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

 private:
  struct Node {
    int axis = -1;        // -1 marks a leaf
    double split = 0.0;
    int left = -1;
    int right = -1;
    int begin = 0;        // leaf range into order_
    int end = 0;
  };

  int build(int begin, int end);
  void search_nearest(int node, const Vec3& q, double& best_d2, int& best_idx) const;
  void search_radius(int node, const Vec3& q, double r2, std::vector<int>& out) const;
  void search_knn(int node, const Vec3& q, int k,
                  std::vector<std::pair<double, int>>& heap) const;

  std::vector<Vec3> points_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

/// One ray-triangle intersection.
struct RayHit {
  double t = 0.0;
  Vec3 point = Vec3::Zero();
  int face = -1;
};

/// Bounding-volume hierarchy over mesh triangles for ray queries.
/// Intersections are double-sided; the nearest hit with t > 0 wins.
class MeshBvh {
 public:
  MeshBvh() = default;
  explicit MeshBvh(const TriangleMesh& mesh);

  std::optional<RayHit> raycast(const Vec3& origin, const Vec3& direction,
                                double max_t = std::numeric_limits<double>::infinity()) const;

  // All hits with t > t_min, sorted by t, duplicates within 1e-9 merged
  // (shared-edge hits would otherwise count twice).
  std::vector<double> all_hits(const Vec3& origin, const Vec3& direction,
                               double t_min = 1e-9) const;

  std::size_t triangle_count() const { return tri_a_.size(); }

 private:
  struct Node {
    Vec3 lo = Vec3::Zero();
    Vec3 hi = Vec3::Zero();
    int left = -1;
    int right = -1;
    int begin = 0;
    int end = 0;  // leaf iff left < 0
  };

  int build(int begin, int end);
  void cast(int node, const Vec3& o, const Vec3& d, const Vec3& inv_d, double max_t,
            RayHit& best, bool& found) const;
  void cast_all(int node, const Vec3& o, const Vec3& d, const Vec3& inv_d, double t_min,
                std::vector<double>& ts) const;

  std::vector<Vec3> tri_a_, tri_b_, tri_c_;
  std::vector<int> order_;
  std::vector<Vec3> centroids_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

/// Parity test along a fixed direction; requires a watertight mesh.
bool point_inside_mesh(const MeshBvh& bvh, const Vec3& point);

}  // namespace suctionbench
