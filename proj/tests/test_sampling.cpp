#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "suctionbench/primitives.hpp"
#include "suctionbench/sampling.hpp"

using namespace suctionbench;

TEST_CASE("voxel sampling matches the occupancy oracle on a plate") {
  // 100 x 100 x 10 mm plate, 5 mm voxels: the top-face layer must hold
  // 21 x 21 = 441 candidates (edge samples land in the boundary cells).
  const TriangleMesh plate = make_cuboid(0.1, 0.1, 0.01, 0.01);
  const double voxel = 0.005;
  const auto candidates = voxel_sample_surface(plate, voxel);

  const auto [lo, hi] = plate.bounds();
  (void)hi;
  int top_layer = 0;
  for (const auto& c : candidates) {
    const int iz = static_cast<int>(std::floor((c.point.z() - lo.z()) / voxel));
    if (iz == 2) ++top_layer;
  }

  const int oracle = oracles::rect_occupied_cells(Vec3(-0.05, -0.05, 0.005), Vec3(0.1, 0, 0),
                                                  Vec3(0, 0.1, 0), lo, voxel, 0.002);
  CHECK(oracle == 441);
  CHECK(top_layer == oracle);
}

TEST_CASE("voxel sampling edge cases") {
  const TriangleMesh box = make_cuboid(0.1, 0.1, 0.1);

  // voxel larger than the bounding box: one candidate
  CHECK(voxel_sample_surface(box, 0.5).size() == 1);

  // determinism
  const auto a = voxel_sample_surface(box, 0.004);
  const auto b = voxel_sample_surface(box, 0.004);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].point == b[i].point);
    CHECK(a[i].normal == b[i].normal);
  }

  // empty mesh
  CHECK(voxel_sample_surface(TriangleMesh{}, 0.005).empty());

  CHECK_THROWS_AS(voxel_sample_surface(box, 0.0), std::invalid_argument);
}

TEST_CASE("voxel sampling count is invariant under vertex reordering") {
  const TriangleMesh box = make_cuboid(0.08, 0.1, 0.06, 0.02);
  const auto base = voxel_sample_surface(box, 0.005);

  // reverse the vertex array and remap faces
  TriangleMesh shuffled;
  const int n = static_cast<int>(box.vertices.size());
  shuffled.vertices.assign(box.vertices.rbegin(), box.vertices.rend());
  for (auto f : box.faces) {
    shuffled.faces.push_back({n - 1 - f[0], n - 1 - f[1], n - 1 - f[2]});
  }
  shuffled.compute_vertex_normals();
  std::reverse(shuffled.faces.begin(), shuffled.faces.end());

  const auto reordered = voxel_sample_surface(shuffled, 0.005);
  CHECK(reordered.size() == base.size());
}

TEST_CASE("normal estimation on planes and spheres") {
  // exact plane, view above
  PointCloud plane;
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      plane.points.emplace_back(i * 0.01, j * 0.01, 0.0);
    }
  }
  const PointCloud with_normals = estimate_normals(plane, 12, Vec3(0.1, 0.1, 1.0));
  for (std::size_t i = 0; i < with_normals.size(); ++i) {
    REQUIRE(with_normals.has_valid_normal(i));
    CHECK((with_normals.normals[i] - Vec3(0, 0, 1)).norm() < 1e-9);
  }

  // flipping the view point flips every normal
  const PointCloud flipped = estimate_normals(plane, 12, Vec3(0.1, 0.1, -1.0));
  for (std::size_t i = 0; i < flipped.size(); ++i) {
    CHECK((flipped.normals[i] - Vec3(0, 0, -1)).norm() < 1e-9);
  }

  // sphere surface: normals within 5 degrees of radial for >= 99% of points
  std::mt19937 rng(5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  PointCloud sphere;
  const double radius = 0.1;
  for (int i = 0; i < 4000; ++i) {
    Vec3 d(gauss(rng), gauss(rng), gauss(rng));
    while (d.norm() < 1e-6) d = Vec3(gauss(rng), gauss(rng), gauss(rng));
    sphere.points.push_back(d.normalized() * radius);
  }
  const PointCloud est = estimate_normals(sphere, 30, Vec3::Zero());  // orient inward
  int good = 0;
  for (std::size_t i = 0; i < est.size(); ++i) {
    if (!est.has_valid_normal(i)) continue;
    const Vec3 inward = -est.points[i].normalized();
    if (std::acos(std::clamp(est.normals[i].dot(inward), -1.0, 1.0)) < 5.0 * M_PI / 180.0) {
      ++good;
    }
  }
  CHECK(good >= static_cast<int>(0.99 * static_cast<double>(est.size())));
}

TEST_CASE("degenerate neighborhoods flag invalid normals") {
  PointCloud line;
  for (int i = 0; i < 12; ++i) line.points.emplace_back(i * 0.01, 0.0, 0.0);
  const PointCloud est = estimate_normals(line, 6, Vec3(0, 0, 1));
  for (std::size_t i = 0; i < est.size(); ++i) {
    CHECK_FALSE(est.has_valid_normal(i));
  }

  CHECK_THROWS_AS(estimate_normals(line, 100, Vec3::Zero()), std::invalid_argument);
}

TEST_CASE("plane normal helper") {
  std::vector<Vec3> pts = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
  CHECK(std::abs(plane_normal(pts).z()) == doctest::Approx(1.0));
  CHECK(plane_normal({{0, 0, 0}, {1, 0, 0}}).isZero());
  CHECK(plane_normal({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}}).isZero());
}
