#include "suctionbench/primitives.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>

namespace suctionbench {

namespace {

struct LatticeBuilder {
  // Welds vertices shared between box faces via their integer lattice coords.
  TriangleMesh mesh;
  std::map<std::array<int, 3>, int> index;

  int vertex(const std::array<int, 3>& key, const Vec3& pos) {
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    const int id = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(pos);
    index.emplace(key, id);
    return id;
  }
};

int axis_divisions(double extent, double max_edge) {
  if (max_edge <= 0.0) return 1;
  return std::max(1, static_cast<int>(std::ceil(extent / max_edge)));
}

}  // namespace

TriangleMesh make_cuboid(double size_x, double size_y, double size_z, double max_edge) {
  if (!(size_x > 0.0 && size_y > 0.0 && size_z > 0.0)) {
    throw std::invalid_argument("cuboid dimensions must be positive");
  }
  const Vec3 half(size_x / 2.0, size_y / 2.0, size_z / 2.0);
  const std::array<int, 3> n = {axis_divisions(size_x, max_edge),
                                axis_divisions(size_y, max_edge),
                                axis_divisions(size_z, max_edge)};

  LatticeBuilder b;
  auto lattice_pos = [&](int i, int j, int k) {
    return Vec3(-half.x() + size_x * i / n[0], -half.y() + size_y * j / n[1],
                -half.z() + size_z * k / n[2]);
  };

  // face: fixed axis, fixed side (0 = min, 1 = max); (a1, a2) span the face.
  auto emit_face = [&](int axis, int side) {
    const int a1 = (axis + 1) % 3;
    const int a2 = (axis + 2) % 3;
    const int fixed = side == 0 ? 0 : n[axis];
    for (int i = 0; i < n[a1]; ++i) {
      for (int j = 0; j < n[a2]; ++j) {
        auto corner = [&](int di, int dj) {
          std::array<int, 3> key{};
          key[static_cast<std::size_t>(axis)] = fixed;
          key[static_cast<std::size_t>(a1)] = i + di;
          key[static_cast<std::size_t>(a2)] = j + dj;
          return b.vertex(key, lattice_pos(key[0], key[1], key[2]));
        };
        const int v00 = corner(0, 0);
        const int v10 = corner(1, 0);
        const int v01 = corner(0, 1);
        const int v11 = corner(1, 1);
        if (side == 1) {
          // outward normal along +axis: (a1, a2, axis) is a right-handed triple
          b.mesh.faces.push_back({v00, v10, v11});
          b.mesh.faces.push_back({v00, v11, v01});
        } else {
          b.mesh.faces.push_back({v00, v11, v10});
          b.mesh.faces.push_back({v00, v01, v11});
        }
      }
    }
  };

  for (int axis = 0; axis < 3; ++axis) {
    emit_face(axis, 0);
    emit_face(axis, 1);
  }
  b.mesh.compute_vertex_normals();
  return b.mesh;
}

TriangleMesh make_sphere(double radius, int subdivisions) {
  if (!(radius > 0.0)) throw std::invalid_argument("sphere radius must be positive");
  if (subdivisions < 0 || subdivisions > 8) {
    throw std::invalid_argument("sphere subdivisions must be in [0, 8]");
  }

  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> verts = {
      {-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1},
  };
  for (auto& v : verts) v.normalize();
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
  };

  for (int level = 0; level < subdivisions; ++level) {
    std::map<std::pair<int, int>, int> midpoints;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoints.find(key);
      if (it != midpoints.end()) return it->second;
      const int id = static_cast<int>(verts.size());
      verts.push_back(((verts[static_cast<std::size_t>(a)] + verts[static_cast<std::size_t>(b)]) / 2.0).normalized());
      midpoints.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const int ab = midpoint(f[0], f[1]);
      const int bc = midpoint(f[1], f[2]);
      const int ca = midpoint(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }

  TriangleMesh mesh;
  mesh.vertices.reserve(verts.size());
  for (const auto& v : verts) mesh.vertices.push_back(v * radius);
  mesh.faces = std::move(faces);
  mesh.compute_vertex_normals();
  return mesh;
}

TriangleMesh make_cylinder(double radius, double height, int segments, int z_divisions) {
  if (!(radius > 0.0 && height > 0.0)) {
    throw std::invalid_argument("cylinder dimensions must be positive");
  }
  if (segments < 3) throw std::invalid_argument("cylinder needs at least 3 segments");
  if (z_divisions < 1) throw std::invalid_argument("cylinder z divisions must be >= 1");

  TriangleMesh mesh;
  const double half = height / 2.0;
  // rings bottom to top, then the two cap centers
  for (int ring = 0; ring <= z_divisions; ++ring) {
    const double z = -half + height * ring / z_divisions;
    for (int s = 0; s < segments; ++s) {
      const double a = 2.0 * M_PI * s / segments;
      mesh.vertices.emplace_back(radius * std::cos(a), radius * std::sin(a), z);
    }
  }
  const int bottom_center = static_cast<int>(mesh.vertices.size());
  mesh.vertices.emplace_back(0.0, 0.0, -half);
  const int top_center = static_cast<int>(mesh.vertices.size());
  mesh.vertices.emplace_back(0.0, 0.0, half);

  auto ring_vertex = [&](int ring, int s) { return ring * segments + (s % segments); };
  for (int ring = 0; ring < z_divisions; ++ring) {
    for (int s = 0; s < segments; ++s) {
      const int v00 = ring_vertex(ring, s);
      const int v10 = ring_vertex(ring, s + 1);
      const int v01 = ring_vertex(ring + 1, s);
      const int v11 = ring_vertex(ring + 1, s + 1);
      mesh.faces.push_back({v00, v10, v11});
      mesh.faces.push_back({v00, v11, v01});
    }
  }
  for (int s = 0; s < segments; ++s) {
    mesh.faces.push_back({bottom_center, ring_vertex(0, s + 1), ring_vertex(0, s)});
    mesh.faces.push_back({top_center, ring_vertex(z_divisions, s), ring_vertex(z_divisions, s + 1)});
  }
  mesh.compute_vertex_normals();
  return mesh;
}

TriangleMesh make_bumpy_plate(double size_x, double size_y, double size_z, double amplitude,
                              double wavelength, double max_edge) {
  if (amplitude < 0.0) throw std::invalid_argument("bump amplitude must be non-negative");
  if (!(wavelength > 0.0)) throw std::invalid_argument("bump wavelength must be positive");
  TriangleMesh mesh = make_cuboid(size_x, size_y, size_z, max_edge);
  const double top = size_z / 2.0;
  for (auto& v : mesh.vertices) {
    if (v.z() == top) {
      v.z() += amplitude * std::sin(2.0 * M_PI * v.x() / wavelength) *
               std::sin(2.0 * M_PI * v.y() / wavelength);
    }
  }
  mesh.compute_vertex_normals();
  return mesh;
}

TriangleMesh make_primitive(const std::string& kind, const std::vector<double>& dims) {
  auto need = [&](std::size_t n) {
    if (dims.size() < n) {
      throw std::invalid_argument("primitive '" + kind + "' needs " + std::to_string(n) +
                                  " dimensions");
    }
  };
  if (kind == "cuboid") {
    need(3);
    return make_cuboid(dims[0], dims[1], dims[2], dims.size() > 3 ? dims[3] : 0.0);
  }
  if (kind == "sphere") {
    need(1);
    return make_sphere(dims[0], dims.size() > 1 ? static_cast<int>(dims[1]) : 3);
  }
  if (kind == "cylinder") {
    need(2);
    return make_cylinder(dims[0], dims[1], dims.size() > 2 ? static_cast<int>(dims[2]) : 48,
                         dims.size() > 3 ? static_cast<int>(dims[3]) : 1);
  }
  if (kind == "bumpy-plate") {
    need(6);
    return make_bumpy_plate(dims[0], dims[1], dims[2], dims[3], dims[4], dims[5]);
  }
  throw std::invalid_argument("unknown primitive kind: " + kind);
}

}  // namespace suctionbench
