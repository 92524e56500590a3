#include "suctionbench/camera.hpp"

#include <cmath>
#include <string>

#include "suctionbench/errors.hpp"

namespace suctionbench {

void CameraIntrinsics::validate() const {
  if (!(fx > 0.0) || !(fy > 0.0)) throw Error("intrinsics: fx and fy must be positive");
  if (width <= 0 || height <= 0) throw Error("intrinsics: image dimensions must be positive");
  if (cx < 0.0 || cx >= width || cy < 0.0 || cy >= height) {
    throw Error("intrinsics: principal point outside the image");
  }
}

DepthImage DepthImage::zeros(int width, int height) {
  DepthImage img;
  img.width = width;
  img.height = height;
  img.data.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0.0f);
  return img;
}

Vec3 backproject_pixel(const CameraIntrinsics& intr, double u, double v, double depth) {
  return {(u - intr.cx) * depth / intr.fx, (v - intr.cy) * depth / intr.fy, depth};
}

Vec3 backproject(const DepthImage& depth, const CameraIntrinsics& intr, int u, int v) {
  const double d = depth.at(u, v);
  if (!(d > 0.0)) {
    throw InvalidDepthError("no valid depth at pixel (" + std::to_string(u) + ", " +
                            std::to_string(v) + ")");
  }
  return backproject_pixel(intr, u, v, d);
}

Eigen::Vector2d project(const CameraIntrinsics& intr, const Vec3& point) {
  return {intr.fx * point.x() / point.z() + intr.cx, intr.fy * point.y() / point.z() + intr.cy};
}

PointCloud backproject_cloud(const DepthImage& depth, const CameraIntrinsics& intr) {
  PointCloud cloud;
  cloud.points.reserve(depth.data.size());
  for (int v = 0; v < depth.height; ++v) {
    for (int u = 0; u < depth.width; ++u) {
      const double d = depth.at(u, v);
      if (d > 0.0) cloud.points.push_back(backproject_pixel(intr, u, v, d));
    }
  }
  return cloud;
}

}  // namespace suctionbench
