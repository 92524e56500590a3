#include "suctionbench/spatial_index.hpp"

#include <algorithm>
#include <cmath>

namespace suctionbench {

namespace {
constexpr int kLeafSize = 8;
}

KdTree::KdTree(std::vector<Vec3> points) : points_(std::move(points)) {
  order_.resize(points_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = static_cast<int>(i);
  if (!points_.empty()) root_ = build(0, static_cast<int>(points_.size()));
}

int KdTree::build(int begin, int end) {
  Node node;
  node.begin = begin;
  node.end = end;
  if (end - begin <= kLeafSize) {
    nodes_.push_back(node);
    return static_cast<int>(nodes_.size()) - 1;
  }

  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::max());
  Vec3 hi = Vec3::Constant(std::numeric_limits<double>::lowest());
  for (int i = begin; i < end; ++i) {
    const Vec3& p = points_[static_cast<std::size_t>(order_[static_cast<std::size_t>(i)])];
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  int axis = 0;
  (hi - lo).maxCoeff(&axis);

  const int mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](int a, int b) {
                     const double pa = points_[static_cast<std::size_t>(a)][axis];
                     const double pb = points_[static_cast<std::size_t>(b)][axis];
                     return pa < pb || (pa == pb && a < b);
                   });

  node.axis = axis;
  node.split = points_[static_cast<std::size_t>(order_[static_cast<std::size_t>(mid)])][axis];
  const int self = static_cast<int>(nodes_.size());
  nodes_.push_back(node);
  const int left = build(begin, mid);
  const int right = build(mid, end);
  nodes_[static_cast<std::size_t>(self)].left = left;
  nodes_[static_cast<std::size_t>(self)].right = right;
  return self;
}

void KdTree::search_nearest(int node_idx, const Vec3& q, double& best_d2, int& best_idx) const {
  const Node& node = nodes_[static_cast<std::size_t>(node_idx)];
  if (node.axis < 0) {
    for (int i = node.begin; i < node.end; ++i) {
      const int idx = order_[static_cast<std::size_t>(i)];
      const double d2 = (points_[static_cast<std::size_t>(idx)] - q).squaredNorm();
      if (d2 < best_d2 || (d2 == best_d2 && idx < best_idx)) {
        best_d2 = d2;
        best_idx = idx;
      }
    }
    return;
  }
  const double delta = q[node.axis] - node.split;
  const int near = delta < 0.0 ? node.left : node.right;
  const int far = delta < 0.0 ? node.right : node.left;
  search_nearest(near, q, best_d2, best_idx);
  if (delta * delta <= best_d2) search_nearest(far, q, best_d2, best_idx);
}

int KdTree::nearest(const Vec3& query, double* distance) const {
  if (points_.empty()) return -1;
  double best_d2 = std::numeric_limits<double>::max();
  int best_idx = -1;
  search_nearest(root_, query, best_d2, best_idx);
  if (distance) *distance = std::sqrt(best_d2);
  return best_idx;
}

void KdTree::search_radius(int node_idx, const Vec3& q, double r2, std::vector<int>& out) const {
  const Node& node = nodes_[static_cast<std::size_t>(node_idx)];
  if (node.axis < 0) {
    for (int i = node.begin; i < node.end; ++i) {
      const int idx = order_[static_cast<std::size_t>(i)];
      if ((points_[static_cast<std::size_t>(idx)] - q).squaredNorm() <= r2) out.push_back(idx);
    }
    return;
  }
  const double delta = q[node.axis] - node.split;
  if (delta < 0.0) {
    search_radius(node.left, q, r2, out);
    if (delta * delta <= r2) search_radius(node.right, q, r2, out);
  } else {
    search_radius(node.right, q, r2, out);
    if (delta * delta <= r2) search_radius(node.left, q, r2, out);
  }
}

std::vector<int> KdTree::radius(const Vec3& query, double r) const {
  std::vector<int> out;
  if (points_.empty() || r < 0.0) return out;
  search_radius(root_, query, r * r, out);
  std::sort(out.begin(), out.end());
  return out;
}

void KdTree::search_knn(int node_idx, const Vec3& q, int k,
                        std::vector<std::pair<double, int>>& heap) const {
  const Node& node = nodes_[static_cast<std::size_t>(node_idx)];
  if (node.axis < 0) {
    for (int i = node.begin; i < node.end; ++i) {
      const int idx = order_[static_cast<std::size_t>(i)];
      const double d2 = (points_[static_cast<std::size_t>(idx)] - q).squaredNorm();
      const std::pair<double, int> entry{d2, idx};
      if (static_cast<int>(heap.size()) < k) {
        heap.push_back(entry);
        std::push_heap(heap.begin(), heap.end());
      } else if (entry < heap.front()) {
        std::pop_heap(heap.begin(), heap.end());
        heap.back() = entry;
        std::push_heap(heap.begin(), heap.end());
      }
    }
    return;
  }
  const double delta = q[node.axis] - node.split;
  const int near = delta < 0.0 ? node.left : node.right;
  const int far = delta < 0.0 ? node.right : node.left;
  search_knn(near, q, k, heap);
  if (static_cast<int>(heap.size()) < k || delta * delta <= heap.front().first) {
    search_knn(far, q, k, heap);
  }
}

std::vector<int> KdTree::knn(const Vec3& query, int k) const {
  std::vector<int> out;
  if (points_.empty() || k <= 0) return out;
  std::vector<std::pair<double, int>> heap;
  heap.reserve(static_cast<std::size_t>(k));
  search_knn(root_, query, k, heap);
  std::sort(heap.begin(), heap.end());
  out.reserve(heap.size());
  for (const auto& [d2, idx] : heap) out.push_back(idx);
  return out;
}

MeshBvh::MeshBvh(const TriangleMesh& mesh) {
  const std::size_t n = mesh.faces.size();
  tri_a_.reserve(n);
  tri_b_.reserve(n);
  tri_c_.reserve(n);
  centroids_.reserve(n);
  for (const auto& f : mesh.faces) {
    const Vec3& a = mesh.vertices[static_cast<std::size_t>(f[0])];
    const Vec3& b = mesh.vertices[static_cast<std::size_t>(f[1])];
    const Vec3& c = mesh.vertices[static_cast<std::size_t>(f[2])];
    tri_a_.push_back(a);
    tri_b_.push_back(b);
    tri_c_.push_back(c);
    centroids_.push_back((a + b + c) / 3.0);
  }
  order_.resize(n);
  for (std::size_t i = 0; i < n; ++i) order_[i] = static_cast<int>(i);
  if (n > 0) root_ = build(0, static_cast<int>(n));
  centroids_.clear();
  centroids_.shrink_to_fit();
}

int MeshBvh::build(int begin, int end) {
  Node node;
  node.begin = begin;
  node.end = end;
  node.lo = Vec3::Constant(std::numeric_limits<double>::max());
  node.hi = Vec3::Constant(std::numeric_limits<double>::lowest());
  for (int i = begin; i < end; ++i) {
    const std::size_t t = static_cast<std::size_t>(order_[static_cast<std::size_t>(i)]);
    node.lo = node.lo.cwiseMin(tri_a_[t]).cwiseMin(tri_b_[t]).cwiseMin(tri_c_[t]);
    node.hi = node.hi.cwiseMax(tri_a_[t]).cwiseMax(tri_b_[t]).cwiseMax(tri_c_[t]);
  }
  if (end - begin <= 4) {
    nodes_.push_back(node);
    return static_cast<int>(nodes_.size()) - 1;
  }

  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::max());
  Vec3 hi = Vec3::Constant(std::numeric_limits<double>::lowest());
  for (int i = begin; i < end; ++i) {
    const Vec3& c = centroids_[static_cast<std::size_t>(order_[static_cast<std::size_t>(i)])];
    lo = lo.cwiseMin(c);
    hi = hi.cwiseMax(c);
  }
  int axis = 0;
  (hi - lo).maxCoeff(&axis);
  const int mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](int a, int b) {
                     const double ca = centroids_[static_cast<std::size_t>(a)][axis];
                     const double cb = centroids_[static_cast<std::size_t>(b)][axis];
                     return ca < cb || (ca == cb && a < b);
                   });

  const int self = static_cast<int>(nodes_.size());
  nodes_.push_back(node);
  const int left = build(begin, mid);
  const int right = build(mid, end);
  nodes_[static_cast<std::size_t>(self)].left = left;
  nodes_[static_cast<std::size_t>(self)].right = right;
  return self;
}

namespace {

bool aabb_hit(const Vec3& lo, const Vec3& hi, const Vec3& o, const Vec3& inv_d, double max_t) {
  double t0 = 0.0;
  double t1 = max_t;
  for (int k = 0; k < 3; ++k) {
    const double a = (lo[k] - o[k]) * inv_d[k];
    const double b = (hi[k] - o[k]) * inv_d[k];
    t0 = std::max(t0, std::min(a, b));
    t1 = std::min(t1, std::max(a, b));
  }
  return t0 <= t1;
}

// Moller-Trumbore, double-sided.
bool triangle_hit(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& o, const Vec3& d,
                  double& t_out) {
  const Vec3 e1 = b - a;
  const Vec3 e2 = c - a;
  const Vec3 pvec = d.cross(e2);
  const double det = e1.dot(pvec);
  if (std::abs(det) < 1e-14) return false;
  const double inv_det = 1.0 / det;
  const Vec3 tvec = o - a;
  const double u = tvec.dot(pvec) * inv_det;
  if (u < -1e-12 || u > 1.0 + 1e-12) return false;
  const Vec3 qvec = tvec.cross(e1);
  const double v = d.dot(qvec) * inv_det;
  if (v < -1e-12 || u + v > 1.0 + 1e-12) return false;
  t_out = e2.dot(qvec) * inv_det;
  return true;
}

}  // namespace

void MeshBvh::cast(int node_idx, const Vec3& o, const Vec3& d, const Vec3& inv_d, double max_t,
                   RayHit& best, bool& found) const {
  const Node& node = nodes_[static_cast<std::size_t>(node_idx)];
  const double limit = found ? best.t : max_t;
  if (!aabb_hit(node.lo, node.hi, o, inv_d, limit)) return;
  if (node.left < 0) {
    for (int i = node.begin; i < node.end; ++i) {
      const int tri = order_[static_cast<std::size_t>(i)];
      const std::size_t t = static_cast<std::size_t>(tri);
      double hit_t = 0.0;
      if (triangle_hit(tri_a_[t], tri_b_[t], tri_c_[t], o, d, hit_t) && hit_t > 1e-12 &&
          hit_t <= max_t) {
        if (!found || hit_t < best.t || (hit_t == best.t && tri < best.face)) {
          best.t = hit_t;
          best.face = tri;
          best.point = o + hit_t * d;
          found = true;
        }
      }
    }
    return;
  }
  cast(node.left, o, d, inv_d, max_t, best, found);
  cast(node.right, o, d, inv_d, max_t, best, found);
}

std::optional<RayHit> MeshBvh::raycast(const Vec3& origin, const Vec3& direction,
                                       double max_t) const {
  if (root_ < 0) return std::nullopt;
  const Vec3 inv_d(1.0 / direction.x(), 1.0 / direction.y(), 1.0 / direction.z());
  RayHit best;
  bool found = false;
  cast(root_, origin, direction, inv_d, max_t, best, found);
  if (!found) return std::nullopt;
  return best;
}

void MeshBvh::cast_all(int node_idx, const Vec3& o, const Vec3& d, const Vec3& inv_d,
                       double t_min, std::vector<double>& ts) const {
  const Node& node = nodes_[static_cast<std::size_t>(node_idx)];
  if (!aabb_hit(node.lo, node.hi, o, inv_d, std::numeric_limits<double>::max())) return;
  if (node.left < 0) {
    for (int i = node.begin; i < node.end; ++i) {
      const std::size_t t = static_cast<std::size_t>(order_[static_cast<std::size_t>(i)]);
      double hit_t = 0.0;
      if (triangle_hit(tri_a_[t], tri_b_[t], tri_c_[t], o, d, hit_t) && hit_t > t_min) {
        ts.push_back(hit_t);
      }
    }
    return;
  }
  cast_all(node.left, o, d, inv_d, t_min, ts);
  cast_all(node.right, o, d, inv_d, t_min, ts);
}

std::vector<double> MeshBvh::all_hits(const Vec3& origin, const Vec3& direction,
                                      double t_min) const {
  std::vector<double> ts;
  if (root_ < 0) return ts;
  const Vec3 inv_d(1.0 / direction.x(), 1.0 / direction.y(), 1.0 / direction.z());
  cast_all(root_, origin, direction, inv_d, t_min, ts);
  std::sort(ts.begin(), ts.end());
  std::vector<double> merged;
  for (double t : ts) {
    if (merged.empty() || t - merged.back() > 1e-9) merged.push_back(t);
  }
  return merged;
}

bool point_inside_mesh(const MeshBvh& bvh, const Vec3& point) {
  // Fixed direction chosen away from common axis-aligned geometry.
  static const Vec3 dir = Vec3(0.5377397, 0.8323097, 0.1345629).normalized();
  return bvh.all_hits(point, dir).size() % 2 == 1;
}

}  // namespace suctionbench
