#include "suctionbench/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "suctionbench/errors.hpp"
#include "suctionbench/sampling.hpp"

namespace suctionbench {

Heatmap Heatmap::zeros(int width, int height) {
  Heatmap map;
  map.width = width;
  map.height = height;
  map.data.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0.0f);
  return map;
}

void Heatmap::clamp() {
  for (auto& v : data) v = std::min(1.0f, std::max(0.0f, v));
}

void SamplerConfig::validate() const {
  if (grid_cell < 1 || top_n < 1) throw std::invalid_argument("sampler sizes must be positive");
}

Heatmap normal_std_heatmap(const DepthImage& depth, const CameraIntrinsics& intr,
                           const PixelBox& bbox, int patch_radius, int normal_window) {
  intr.validate();
  if (bbox.empty()) throw Error("empty bounding box");
  if (bbox.u0 < 0 || bbox.v0 < 0 || bbox.u1 > depth.width || bbox.v1 > depth.height) {
    throw Error("bounding box outside the image");
  }
  if (patch_radius < 1) throw std::invalid_argument("patch radius must be positive");

  const std::vector<Vec3> normals = organized_normals(depth, intr, normal_window);
  auto normal_at = [&](int u, int v) -> const Vec3& {
    return normals[static_cast<std::size_t>(v) * static_cast<std::size_t>(depth.width) +
                   static_cast<std::size_t>(u)];
  };

  bool any_valid_in_box = false;
  for (int v = bbox.v0; v < bbox.v1 && !any_valid_in_box; ++v) {
    for (int u = bbox.u0; u < bbox.u1; ++u) {
      if (depth.at(u, v) > 0.0f) {
        any_valid_in_box = true;
        break;
      }
    }
  }
  if (!any_valid_in_box) throw Error("no valid depth inside the bounding box");

  // sigma per pixel: pooled standard deviation of the three normal
  // components over the patch (variances averaged across nx, ny, nz).
  std::vector<float> sigma(depth.data.size(), -1.0f);  // -1 marks "no estimate"
  double sigma_max = 0.0;
  for (int v = 0; v < depth.height; ++v) {
    for (int u = 0; u < depth.width; ++u) {
      if (!(depth.at(u, v) > 0.0f)) continue;
      Vec3 sum = Vec3::Zero();
      Vec3 sum_sq = Vec3::Zero();
      int count = 0;
      for (int dv = -patch_radius; dv <= patch_radius; ++dv) {
        for (int du = -patch_radius; du <= patch_radius; ++du) {
          const int uu = u + du;
          const int vv = v + dv;
          if (!depth.in_bounds(uu, vv)) continue;
          const Vec3& n = normal_at(uu, vv);
          if (n.isZero()) continue;
          sum += n;
          sum_sq += n.cwiseProduct(n);
          ++count;
        }
      }
      if (count < 2) continue;
      double var = 0.0;
      for (int k = 0; k < 3; ++k) {
        const double mean = sum[k] / count;
        var += std::max(0.0, sum_sq[k] / count - mean * mean);
      }
      const double s = std::sqrt(var / 3.0);
      sigma[static_cast<std::size_t>(v) * static_cast<std::size_t>(depth.width) +
            static_cast<std::size_t>(u)] = static_cast<float>(s);
      sigma_max = std::max(sigma_max, s);
    }
  }

  Heatmap map = Heatmap::zeros(depth.width, depth.height);
  for (int v = bbox.v0; v < bbox.v1; ++v) {
    for (int u = bbox.u0; u < bbox.u1; ++u) {
      const float s = sigma[static_cast<std::size_t>(v) * static_cast<std::size_t>(depth.width) +
                            static_cast<std::size_t>(u)];
      if (s < 0.0f) continue;
      const double normalized = sigma_max > 0.0 ? s / sigma_max : 0.0;
      map.at(u, v) = static_cast<float>(1.0 - normalized);
    }
  }
  map.clamp();
  return map;
}

Heatmap combine_heatmaps(const Heatmap& seal, const Heatmap& center) {
  if (seal.width != center.width || seal.height != center.height) {
    throw Error("heatmap dimensions differ");
  }
  Heatmap out = Heatmap::zeros(seal.width, seal.height);
  for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] = seal.data[i] * center.data[i];
  return out;
}

std::vector<std::pair<std::array<int, 2>, double>> grid_sample(const Heatmap& map,
                                                               const SamplerConfig& config) {
  config.validate();
  std::vector<std::pair<std::array<int, 2>, double>> cells;
  for (int v0 = 0; v0 < map.height; v0 += config.grid_cell) {
    for (int u0 = 0; u0 < map.width; u0 += config.grid_cell) {
      double best = 0.0;
      int best_u = -1;
      int best_v = -1;
      for (int v = v0; v < std::min(v0 + config.grid_cell, map.height); ++v) {
        for (int u = u0; u < std::min(u0 + config.grid_cell, map.width); ++u) {
          const double score = map.at(u, v);
          if (score > best) {  // ties keep the lowest row-major pixel
            best = score;
            best_u = u;
            best_v = v;
          }
        }
      }
      if (best_u >= 0) cells.push_back({{best_u, best_v}, best});
    }
  }
  std::stable_sort(cells.begin(), cells.end(), [&](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    const long ra = static_cast<long>(a.first[1]) * map.width + a.first[0];
    const long rb = static_cast<long>(b.first[1]) * map.width + b.first[0];
    return ra < rb;
  });
  if (cells.size() > static_cast<std::size_t>(config.top_n)) {
    cells.resize(static_cast<std::size_t>(config.top_n));
  }
  return cells;
}

PixelSuctionResult pixels_to_suctions(
    const std::vector<std::pair<std::array<int, 2>, double>>& pixels, const DepthImage& depth,
    const CameraIntrinsics& intr, const PointCloud& scene_cloud, const KdTree& cloud_index,
    int neighbor_count) {
  PixelSuctionResult out;
  std::vector<Vec3> neighborhood;
  neighborhood.reserve(static_cast<std::size_t>(neighbor_count));
  for (const auto& [pixel, score] : pixels) {
    const int u = pixel[0];
    const int v = pixel[1];
    if (!depth.in_bounds(u, v) || !(depth.at(u, v) > 0.0f)) {
      ++out.skipped_invalid_depth;
      continue;
    }
    const Vec3 point = backproject(depth, intr, u, v);

    neighborhood.clear();
    for (int idx : cloud_index.knn(point, neighbor_count)) {
      neighborhood.push_back(scene_cloud.points[static_cast<std::size_t>(idx)]);
    }
    Vec3 n = plane_normal(neighborhood);
    if (n.isZero()) {
      ++out.skipped_invalid_depth;
      continue;
    }
    if (n.dot(-point) < 0.0) n = -n;  // point out of the surface, toward the camera
    out.predictions.push_back({{point, n}, score});
  }
  return out;
}

namespace {

void splat_max(Heatmap& map, double cu, double cv, double amplitude, double sigma_px) {
  const int u0 = static_cast<int>(std::lround(cu));
  const int v0 = static_cast<int>(std::lround(cv));
  if (sigma_px <= 0.0) {
    if (u0 >= 0 && u0 < map.width && v0 >= 0 && v0 < map.height) {
      map.at(u0, v0) = std::max(map.at(u0, v0), static_cast<float>(amplitude));
    }
    return;
  }
  const int radius = static_cast<int>(std::ceil(3.0 * sigma_px));
  for (int v = v0 - radius; v <= v0 + radius; ++v) {
    for (int u = u0 - radius; u <= u0 + radius; ++u) {
      if (u < 0 || u >= map.width || v < 0 || v >= map.height) continue;
      const double d2 = (u - cu) * (u - cu) + (v - cv) * (v - cv);
      const double value = amplitude * std::exp(-d2 / (2.0 * sigma_px * sigma_px));
      map.at(u, v) = std::max(map.at(u, v), static_cast<float>(value));
    }
  }
}

}  // namespace

std::pair<Heatmap, Heatmap> render_label_heatmaps(const SceneAnnotation& annotation,
                                                  const SceneGeometry& geometry,
                                                  const CameraIntrinsics& intr,
                                                  const RigidTransform& camera_pose,
                                                  double sigma_px) {
  intr.validate();
  if (annotation.records.empty()) throw Error("annotation holds no records");
  const RigidTransform world_to_cam = invert(camera_pose);

  Heatmap seal = Heatmap::zeros(intr.width, intr.height);
  Heatmap center = Heatmap::zeros(intr.width, intr.height);

  for (const auto& record : annotation.records) {
    const Vec3 p_cam = world_to_cam.apply(record.point);
    if (p_cam.z() <= 0.0) continue;
    const Eigen::Vector2d px = project(intr, p_cam);
    splat_max(seal, px.x(), px.y(), record.s_seal, sigma_px);
  }
  for (int i = 0; i < geometry.instance_count(); ++i) {
    const Vec3 com_cam = world_to_cam.apply(geometry.instance_com_world(i));
    if (com_cam.z() <= 0.0) continue;
    const Eigen::Vector2d px = project(intr, com_cam);
    splat_max(center, px.x(), px.y(), 1.0, sigma_px);
  }
  seal.clamp();
  center.clamp();
  return {std::move(seal), std::move(center)};
}

}  // namespace suctionbench
