#pragma once

#include <vector>

#include "suctionbench/camera.hpp"
#include "suctionbench/geometry.hpp"
#include "suctionbench/spatial_index.hpp"

namespace suctionbench {

struct SurfaceSample {
  Vec3 point = Vec3::Zero();
  Vec3 normal = Vec3::Zero();
};

/// Deterministic barycentric-grid samples covering every triangle, spacing
/// bounded by `spacing`. Closed triangles: vertices and edges are included.
/// Normals interpolate the mesh's area-weighted vertex normals.
std::vector<SurfaceSample> dense_surface_samples(const TriangleMesh& mesh, double spacing);

PointCloud surface_sample_cloud(const TriangleMesh& mesh, double spacing);

/// One candidate per occupied surface voxel: the sample nearest the voxel
/// center, grid anchored at the mesh bounding-box minimum. Output is sorted
/// by voxel index and is invariant to face/vertex reordering.
std::vector<SurfaceSample> voxel_sample_surface(const TriangleMesh& mesh, double voxel);

/// Per-point normals from a plane fit over the k nearest neighbors, oriented
/// toward view_point. Degenerate neighborhoods leave a zero normal.
/// Requires cloud.size() >= neighbor_count.
PointCloud estimate_normals(const PointCloud& cloud, int neighbor_count, const Vec3& view_point);

/// Least-squares plane normal of a point set; zero when degenerate.
Vec3 plane_normal(const std::vector<Vec3>& points);

/// Per-pixel normals for an organized depth image from a local window plane
/// fit, oriented toward the camera. Zero normal where depth is invalid or
/// the window is degenerate. Row-major, parallel to the depth grid.
std::vector<Vec3> organized_normals(const DepthImage& depth, const CameraIntrinsics& intr,
                                    int window_radius);

}  // namespace suctionbench
