#include "suctionbench/sampling.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace suctionbench {

std::vector<SurfaceSample> dense_surface_samples(const TriangleMesh& mesh, double spacing) {
  if (!(spacing > 0.0)) throw std::invalid_argument("sample spacing must be positive");
  std::vector<SurfaceSample> samples;
  const bool has_normals = mesh.vertex_normals.size() == mesh.vertices.size();

  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const auto& tri = mesh.faces[f];
    const Vec3& a = mesh.vertices[static_cast<std::size_t>(tri[0])];
    const Vec3& b = mesh.vertices[static_cast<std::size_t>(tri[1])];
    const Vec3& c = mesh.vertices[static_cast<std::size_t>(tri[2])];
    const double max_edge =
        std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()});
    const int m = std::max(1, static_cast<int>(std::ceil(max_edge / spacing)));
    const Vec3 fallback = mesh.face_normal(static_cast<int>(f));
    for (int i = 0; i <= m; ++i) {
      for (int j = 0; j <= m - i; ++j) {
        const double u = static_cast<double>(i) / m;
        const double v = static_cast<double>(j) / m;
        const double w = 1.0 - u - v;
        SurfaceSample s;
        s.point = w * a + u * b + v * c;
        if (has_normals) {
          s.normal = w * mesh.vertex_normals[static_cast<std::size_t>(tri[0])] +
                     u * mesh.vertex_normals[static_cast<std::size_t>(tri[1])] +
                     v * mesh.vertex_normals[static_cast<std::size_t>(tri[2])];
          const double len = s.normal.norm();
          s.normal = len > 1e-12 ? Vec3(s.normal / len) : fallback;
        } else {
          s.normal = fallback;
        }
        samples.push_back(s);
      }
    }
  }
  return samples;
}

PointCloud surface_sample_cloud(const TriangleMesh& mesh, double spacing) {
  PointCloud cloud;
  const auto samples = dense_surface_samples(mesh, spacing);
  cloud.points.reserve(samples.size());
  cloud.normals.reserve(samples.size());
  for (const auto& s : samples) {
    cloud.points.push_back(s.point);
    cloud.normals.push_back(s.normal);
  }
  return cloud;
}

namespace {

bool lex_less(const Vec3& a, const Vec3& b) {
  if (a.x() != b.x()) return a.x() < b.x();
  if (a.y() != b.y()) return a.y() < b.y();
  return a.z() < b.z();
}

// Ordering that is independent of sample generation order: distance to the
// voxel center, then point, then normal.
bool sample_preferred(const SurfaceSample& a, double da, const SurfaceSample& b, double db) {
  if (da != db) return da < db;
  if (a.point != b.point) return lex_less(a.point, b.point);
  return lex_less(a.normal, b.normal);
}

}  // namespace

std::vector<SurfaceSample> voxel_sample_surface(const TriangleMesh& mesh, double voxel) {
  if (!(voxel > 0.0)) throw std::invalid_argument("voxel size must be positive");
  std::vector<SurfaceSample> out;
  if (mesh.vertices.empty() || mesh.faces.empty()) return out;

  const auto [lo, hi] = mesh.bounds();
  (void)hi;
  const auto samples = dense_surface_samples(mesh, voxel / 2.0);

  struct Best {
    SurfaceSample sample;
    double dist2 = 0.0;
  };
  std::unordered_map<std::int64_t, Best> cells;
  cells.reserve(samples.size() / 4 + 1);

  auto cell_index = [&](const Vec3& p, int axis) {
    return static_cast<std::int64_t>(std::floor((p[axis] - lo[axis]) / voxel));
  };
  auto cell_key = [](std::int64_t ix, std::int64_t iy, std::int64_t iz) {
    return (ix << 42) | (iy << 21) | iz;  // non-negative, < 2^21 per axis
  };

  for (const auto& s : samples) {
    const std::int64_t ix = cell_index(s.point, 0);
    const std::int64_t iy = cell_index(s.point, 1);
    const std::int64_t iz = cell_index(s.point, 2);
    const Vec3 center = lo + voxel * Vec3(ix + 0.5, iy + 0.5, iz + 0.5);
    const double d2 = (s.point - center).squaredNorm();
    const std::int64_t key = cell_key(ix, iy, iz);
    auto it = cells.find(key);
    if (it == cells.end()) {
      cells.emplace(key, Best{s, d2});
    } else if (sample_preferred(s, d2, it->second.sample, it->second.dist2)) {
      it->second = Best{s, d2};
    }
  }

  std::vector<std::pair<std::int64_t, SurfaceSample>> ordered;
  ordered.reserve(cells.size());
  for (const auto& [key, best] : cells) ordered.emplace_back(key, best.sample);
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  out.reserve(ordered.size());
  for (auto& [key, sample] : ordered) out.push_back(sample);
  return out;
}

Vec3 plane_normal(const std::vector<Vec3>& points) {
  if (points.size() < 3) return Vec3::Zero();
  Vec3 centroid = Vec3::Zero();
  for (const auto& p : points) centroid += p;
  centroid /= static_cast<double>(points.size());

  Mat3 cov = Mat3::Zero();
  for (const auto& p : points) {
    const Vec3 d = p - centroid;
    cov += d * d.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Mat3> solver(cov);
  const Vec3 evals = solver.eigenvalues();  // ascending
  // Collinear or coincident points: the two smallest spreads vanish.
  if (evals[2] <= 0.0 || evals[1] <= 1e-12 * evals[2]) return Vec3::Zero();
  return solver.eigenvectors().col(0).normalized();
}

PointCloud estimate_normals(const PointCloud& cloud, int neighbor_count, const Vec3& view_point) {
  if (neighbor_count < 3) throw std::invalid_argument("neighbor count must be at least 3");
  if (cloud.points.size() < static_cast<std::size_t>(neighbor_count)) {
    throw std::invalid_argument("cloud smaller than requested neighborhood");
  }
  PointCloud out = cloud;
  out.normals.assign(cloud.points.size(), Vec3::Zero());

  KdTree tree(cloud.points);
  std::vector<Vec3> neighborhood;
  neighborhood.reserve(static_cast<std::size_t>(neighbor_count));
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    neighborhood.clear();
    for (int idx : tree.knn(cloud.points[i], neighbor_count)) {
      neighborhood.push_back(cloud.points[static_cast<std::size_t>(idx)]);
    }
    Vec3 n = plane_normal(neighborhood);
    if (n.isZero()) continue;
    if (n.dot(view_point - cloud.points[i]) < 0.0) n = -n;
    out.normals[i] = n;
  }
  return out;
}

std::vector<Vec3> organized_normals(const DepthImage& depth, const CameraIntrinsics& intr,
                                    int window_radius) {
  std::vector<Vec3> normals(depth.data.size(), Vec3::Zero());
  std::vector<Vec3> window;
  window.reserve(static_cast<std::size_t>((2 * window_radius + 1) * (2 * window_radius + 1)));
  for (int v = 0; v < depth.height; ++v) {
    for (int u = 0; u < depth.width; ++u) {
      if (!(depth.at(u, v) > 0.0f)) continue;
      window.clear();
      for (int dv = -window_radius; dv <= window_radius; ++dv) {
        for (int du = -window_radius; du <= window_radius; ++du) {
          const int uu = u + du;
          const int vv = v + dv;
          if (!depth.in_bounds(uu, vv)) continue;
          const double d = depth.at(uu, vv);
          if (d > 0.0) window.push_back(backproject_pixel(intr, uu, vv, d));
        }
      }
      Vec3 n = plane_normal(window);
      if (n.isZero()) continue;
      const Vec3 p = backproject(depth, intr, u, v);
      if (n.dot(-p) < 0.0) n = -n;  // camera sits at the origin
      normals[static_cast<std::size_t>(v) * static_cast<std::size_t>(depth.width) +
              static_cast<std::size_t>(u)] = n;
    }
  }
  return normals;
}

}  // namespace suctionbench
