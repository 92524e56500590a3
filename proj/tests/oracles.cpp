#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace oracles {

std::optional<double> ray_triangle(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& origin,
                                   const Vec3& dir) {
  const Vec3 n = (b - a).cross(c - a);
  const double denom = n.dot(dir);
  if (std::abs(denom) < 1e-14) return std::nullopt;
  const double t = n.dot(a - origin) / denom;
  if (t <= 1e-12) return std::nullopt;
  const Vec3 p = origin + t * dir;

  // Barycentric inside test via dot products.
  const Vec3 v0 = b - a;
  const Vec3 v1 = c - a;
  const Vec3 v2 = p - a;
  const double d00 = v0.dot(v0);
  const double d01 = v0.dot(v1);
  const double d11 = v1.dot(v1);
  const double d20 = v2.dot(v0);
  const double d21 = v2.dot(v1);
  const double det = d00 * d11 - d01 * d01;
  if (std::abs(det) < 1e-30) return std::nullopt;
  const double beta = (d11 * d20 - d01 * d21) / det;
  const double gamma = (d00 * d21 - d01 * d20) / det;
  if (beta < -1e-12 || gamma < -1e-12 || beta + gamma > 1.0 + 1e-12) return std::nullopt;
  return t;
}

std::optional<std::pair<double, int>> raycast_exhaustive(const TriangleMesh& mesh,
                                                         const Vec3& origin, const Vec3& dir,
                                                         double max_t) {
  double best = max_t;
  int face = -1;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const auto& tri = mesh.faces[f];
    const auto t = ray_triangle(mesh.vertices[static_cast<std::size_t>(tri[0])],
                                mesh.vertices[static_cast<std::size_t>(tri[1])],
                                mesh.vertices[static_cast<std::size_t>(tri[2])], origin, dir);
    if (t && *t <= best) {
      if (*t < best || static_cast<int>(f) < face) face = static_cast<int>(f);
      best = *t;
    }
  }
  if (face < 0) return std::nullopt;
  return std::make_pair(best, face);
}

int nearest_exhaustive(const std::vector<Vec3>& points, const Vec3& query, double* distance) {
  int best = -1;
  double best_d2 = std::numeric_limits<double>::max();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d2 = (points[i] - query).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = static_cast<int>(i);
    }
  }
  if (distance) *distance = std::sqrt(best_d2);
  return best;
}

std::vector<int> radius_exhaustive(const std::vector<Vec3>& points, const Vec3& query, double r) {
  std::vector<int> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if ((points[i] - query).norm() <= r) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> knn_exhaustive(const std::vector<Vec3>& points, const Vec3& query, int k) {
  std::vector<std::pair<double, int>> all;
  all.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    all.emplace_back((points[i] - query).squaredNorm(), static_cast<int>(i));
  }
  std::sort(all.begin(), all.end());
  std::vector<int> out;
  for (int i = 0; i < k && i < static_cast<int>(all.size()); ++i) {
    out.push_back(all[static_cast<std::size_t>(i)].second);
  }
  return out;
}

bool collision_exhaustive(const std::vector<Vec3>& points, const suctionbench::SuctionPose& pose,
                          const suctionbench::CollisionParams& params) {
  const Vec3& u = pose.direction;
  const Vec3 base = pose.point + params.start_offset * u;
  for (const auto& q : points) {
    if ((q - pose.point).norm() <= params.exclusion_radius) continue;
    const Vec3 w = q - base;
    const double axial = w.dot(u);
    if (axial < 0.0 || axial > params.height) continue;
    if ((w - axial * u).norm() <= params.radius) return true;
  }
  return false;
}

double precision_at_k_direct(const std::vector<double>& scores, int k, double threshold) {
  int positives = 0;
  for (int i = 0; i < k && i < static_cast<int>(scores.size()); ++i) {
    if (scores[static_cast<std::size_t>(i)] > threshold) ++positives;
  }
  return static_cast<double>(positives) / static_cast<double>(k);
}

double ap_s_direct(const std::vector<double>& scores, int top_k, double threshold) {
  double sum = 0.0;
  for (int k = 1; k <= top_k; ++k) sum += precision_at_k_direct(scores, k, threshold);
  return sum / top_k;
}

namespace {

double mse_for_normal(const std::vector<Vec3>& points, const Vec3& n) {
  double mean = 0.0;
  for (const auto& p : points) mean += n.dot(p);
  mean /= static_cast<double>(points.size());
  double mse = 0.0;
  for (const auto& p : points) {
    const double d = n.dot(p) - mean;
    mse += d * d;
  }
  return mse / static_cast<double>(points.size());
}

}  // namespace

double plane_mse_grid_search(const std::vector<Vec3>& points) {
  const double deg = M_PI / 180.0;
  auto probe = [&](double theta, double phi) {
    const Vec3 n(std::sin(theta * deg) * std::cos(phi * deg),
                 std::sin(theta * deg) * std::sin(phi * deg), std::cos(theta * deg));
    return mse_for_normal(points, n);
  };

  double best = std::numeric_limits<double>::max();
  double best_theta = 0.0;
  double best_phi = 0.0;
  auto scan = [&](double theta_lo, double theta_hi, double phi_lo, double phi_hi, double step) {
    for (double theta = theta_lo; theta <= theta_hi; theta += step) {
      for (double phi = phi_lo; phi <= phi_hi; phi += step) {
        const double mse = probe(theta, phi);
        if (mse < best) {
          best = mse;
          best_theta = theta;
          best_phi = phi;
        }
      }
    }
  };

  scan(0.0, 90.0, 0.0, 360.0, 1.0);
  scan(best_theta - 1.5, best_theta + 1.5, best_phi - 1.5, best_phi + 1.5, 0.05);
  scan(best_theta - 0.1, best_theta + 0.1, best_phi - 0.1, best_phi + 0.1, 0.004);
  return best;
}

int rect_occupied_cells(const Vec3& corner, const Vec3& edge_u, const Vec3& edge_v,
                        const Vec3& anchor, double voxel, double step) {
  std::set<std::array<long, 3>> cells;
  const int nu = static_cast<int>(std::ceil(edge_u.norm() / step));
  const int nv = static_cast<int>(std::ceil(edge_v.norm() / step));
  for (int i = 0; i <= nu; ++i) {
    for (int j = 0; j <= nv; ++j) {
      const Vec3 p = corner + edge_u * (static_cast<double>(i) / nu) +
                     edge_v * (static_cast<double>(j) / nv);
      cells.insert({static_cast<long>(std::floor((p.x() - anchor.x()) / voxel)),
                    static_cast<long>(std::floor((p.y() - anchor.y()) / voxel)),
                    static_cast<long>(std::floor((p.z() - anchor.z()) / voxel))});
    }
  }
  return static_cast<int>(cells.size());
}

}  // namespace oracles
