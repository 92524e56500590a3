#pragma once

#include <array>
#include <utility>
#include <vector>

#include "suctionbench/camera.hpp"
#include "suctionbench/evaluator.hpp"
#include "suctionbench/geometry.hpp"
#include "suctionbench/scene.hpp"

namespace suctionbench {

/// Per-pixel score map in [0, 1] tied to a camera's image plane.
struct Heatmap {
  int width = 0;
  int height = 0;
  std::vector<float> data;

  static Heatmap zeros(int width, int height);

  float at(int u, int v) const { return data[static_cast<std::size_t>(v) * static_cast<std::size_t>(width) + static_cast<std::size_t>(u)]; }
  float& at(int u, int v) { return data[static_cast<std::size_t>(v) * static_cast<std::size_t>(width) + static_cast<std::size_t>(u)]; }
  void clamp();  // clip all values into [0, 1]
};

struct SamplerConfig {
  int grid_cell = 16;  // pixels
  int top_n = 1024;

  void validate() const;
};

/// Half-open pixel rectangle [u0, u1) x [v0, v1).
struct PixelBox {
  int u0 = 0;
  int v0 = 0;
  int u1 = 0;
  int v1 = 0;

  bool empty() const { return u1 <= u0 || v1 <= v0; }
  bool contains(int u, int v) const { return u >= u0 && u < u1 && v >= v0 && v < v1; }
};

/// Heuristic affordance map: per-pixel surface normals from the depth image,
/// sigma = pooled standard deviation of normal components over a local
/// patch, normalized by the image max; score = 1 - sigma inside the box and
/// 0 outside. Invalid-depth pixels stay 0 and are excluded from sigma.
Heatmap normal_std_heatmap(const DepthImage& depth, const CameraIntrinsics& intr,
                           const PixelBox& bbox, int patch_radius = 5, int normal_window = 2);

/// Elementwise product; throws on mismatched dimensions.
Heatmap combine_heatmaps(const Heatmap& seal, const Heatmap& center);

/// Argmax pixel of every grid cell with a positive maximum, ranked by score
/// (ties by row-major pixel index), truncated to top_n.
std::vector<std::pair<std::array<int, 2>, double>> grid_sample(const Heatmap& map,
                                                               const SamplerConfig& config);

struct PixelSuctionResult {
  std::vector<Prediction> predictions;  // camera frame
  int skipped_invalid_depth = 0;
};

/// Back-projects sampled pixels and takes the local surface normal (oriented
/// toward the camera) as the suction direction; heatmap score becomes the
/// confidence. Pixels without depth or with a degenerate normal are skipped.
PixelSuctionResult pixels_to_suctions(
    const std::vector<std::pair<std::array<int, 2>, double>>& pixels, const DepthImage& depth,
    const CameraIntrinsics& intr, const PointCloud& scene_cloud, const KdTree& cloud_index,
    int neighbor_count = 30);

/// Rasterizes scene annotations into training-label heatmaps: a seal map
/// splatting a Gaussian of amplitude = record score at each projected
/// candidate, and a center map splatting amplitude-1 Gaussians at projected
/// instance centers of mass. Splats combine per pixel by maximum; points
/// behind the camera are skipped.
std::pair<Heatmap, Heatmap> render_label_heatmaps(const SceneAnnotation& annotation,
                                                  const SceneGeometry& geometry,
                                                  const CameraIntrinsics& intr,
                                                  const RigidTransform& camera_pose,
                                                  double sigma_px);

}  // namespace suctionbench
