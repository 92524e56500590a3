#pragma once

#include <Eigen/Core>
#include <vector>

#include "suctionbench/geometry.hpp"

namespace suctionbench {

/// Pinhole model. Pixel u runs along image columns (x), v along rows (y);
/// the camera looks down +z in its own frame.
struct CameraIntrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 0;
  int height = 0;

  void validate() const;  // throws Error on violated invariants
};

/// Depth grid in meters, row-major; 0 encodes an invalid measurement.
struct DepthImage {
  int width = 0;
  int height = 0;
  std::vector<float> data;

  static DepthImage zeros(int width, int height);

  float at(int u, int v) const { return data[static_cast<std::size_t>(v) * static_cast<std::size_t>(width) + static_cast<std::size_t>(u)]; }
  float& at(int u, int v) { return data[static_cast<std::size_t>(v) * static_cast<std::size_t>(width) + static_cast<std::size_t>(u)]; }
  bool in_bounds(int u, int v) const { return u >= 0 && u < width && v >= 0 && v < height; }
};

/// Camera-frame point for a pixel with known depth (z-depth, meters).
Vec3 backproject_pixel(const CameraIntrinsics& intr, double u, double v, double depth);

/// Reads depth(u, v); throws InvalidDepthError when the pixel holds no depth.
Vec3 backproject(const DepthImage& depth, const CameraIntrinsics& intr, int u, int v);

/// Projects a camera-frame point (z > 0) to continuous pixel coordinates.
Eigen::Vector2d project(const CameraIntrinsics& intr, const Vec3& point);

/// All valid pixels back-projected into a camera-frame cloud.
PointCloud backproject_cloud(const DepthImage& depth, const CameraIntrinsics& intr);

}  // namespace suctionbench
