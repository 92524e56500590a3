#include "suctionbench/geometry.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "suctionbench/errors.hpp"

namespace suctionbench {

RigidTransform RigidTransform::from_rows(const std::array<double, 12>& rows) {
  RigidTransform t;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      t.rotation(r, c) = rows[static_cast<std::size_t>(r * 4 + c)];
    }
    t.translation[r] = rows[static_cast<std::size_t>(r * 4 + 3)];
  }
  return t;
}

std::array<double, 12> RigidTransform::to_rows() const {
  std::array<double, 12> rows{};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      rows[static_cast<std::size_t>(r * 4 + c)] = rotation(r, c);
    }
    rows[static_cast<std::size_t>(r * 4 + 3)] = translation[r];
  }
  return rows;
}

bool RigidTransform::is_valid(double tol) const {
  if (!rotation.allFinite() || !translation.allFinite()) return false;
  if (std::abs(rotation.determinant() - 1.0) > tol) return false;
  return (rotation * rotation.transpose() - Mat3::Identity()).cwiseAbs().maxCoeff() <= tol;
}

RigidTransform compose(const RigidTransform& a, const RigidTransform& b) {
  RigidTransform out;
  out.rotation = a.rotation * b.rotation;
  out.translation = a.rotation * b.translation + a.translation;
  return out;
}

RigidTransform invert(const RigidTransform& t) {
  RigidTransform out;
  out.rotation = t.rotation.transpose();
  out.translation = -(out.rotation * t.translation);
  return out;
}

std::vector<Vec3> transform_points(const RigidTransform& t, const std::vector<Vec3>& pts) {
  std::vector<Vec3> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(t.apply(p));
  return out;
}

void TriangleMesh::compute_vertex_normals() {
  vertex_normals.assign(vertices.size(), Vec3::Zero());
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& tri = faces[f];
    const Vec3 e1 = vertices[static_cast<std::size_t>(tri[1])] - vertices[static_cast<std::size_t>(tri[0])];
    const Vec3 e2 = vertices[static_cast<std::size_t>(tri[2])] - vertices[static_cast<std::size_t>(tri[0])];
    const Vec3 weighted = 0.5 * e1.cross(e2);  // area-weighted face normal
    for (int k = 0; k < 3; ++k) {
      vertex_normals[static_cast<std::size_t>(tri[static_cast<std::size_t>(k)])] += weighted;
    }
  }
  for (auto& n : vertex_normals) {
    const double len = n.norm();
    if (len > 0.0) n /= len;
  }
}

Vec3 TriangleMesh::face_normal(int face) const {
  const auto& tri = faces[static_cast<std::size_t>(face)];
  const Vec3 e1 = vertices[static_cast<std::size_t>(tri[1])] - vertices[static_cast<std::size_t>(tri[0])];
  const Vec3 e2 = vertices[static_cast<std::size_t>(tri[2])] - vertices[static_cast<std::size_t>(tri[0])];
  Vec3 n = e1.cross(e2);
  const double len = n.norm();
  return len > 0.0 ? Vec3(n / len) : Vec3::Zero();
}

double TriangleMesh::face_area(int face) const {
  const auto& tri = faces[static_cast<std::size_t>(face)];
  const Vec3 e1 = vertices[static_cast<std::size_t>(tri[1])] - vertices[static_cast<std::size_t>(tri[0])];
  const Vec3 e2 = vertices[static_cast<std::size_t>(tri[2])] - vertices[static_cast<std::size_t>(tri[0])];
  return 0.5 * e1.cross(e2).norm();
}

double TriangleMesh::surface_area() const {
  double a = 0.0;
  for (std::size_t f = 0; f < faces.size(); ++f) a += face_area(static_cast<int>(f));
  return a;
}

std::pair<Vec3, Vec3> TriangleMesh::bounds() const {
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::max());
  Vec3 hi = Vec3::Constant(std::numeric_limits<double>::lowest());
  for (const auto& v : vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return {lo, hi};
}

bool TriangleMesh::is_watertight() const {
  if (faces.empty()) return false;
  std::map<std::pair<int, int>, int> directed;
  for (const auto& tri : faces) {
    for (int k = 0; k < 3; ++k) {
      const int a = tri[static_cast<std::size_t>(k)];
      const int b = tri[static_cast<std::size_t>((k + 1) % 3)];
      if (a == b) return false;
      if (++directed[{a, b}] > 1) return false;  // duplicated directed edge
    }
  }
  for (const auto& [edge, count] : directed) {
    auto rev = directed.find({edge.second, edge.first});
    if (rev == directed.end() || rev->second != count) return false;
  }
  return true;
}

void TriangleMesh::validate() const {
  const int n = static_cast<int>(vertices.size());
  for (const auto& v : vertices) {
    if (!v.allFinite()) throw Error("mesh has non-finite vertex coordinates");
  }
  for (std::size_t f = 0; f < faces.size(); ++f) {
    for (int idx : faces[f]) {
      if (idx < 0 || idx >= n) {
        throw Error("face " + std::to_string(f) + " references vertex " + std::to_string(idx) +
                    " of " + std::to_string(n));
      }
    }
  }
}

TriangleMesh transformed(const TriangleMesh& mesh, const RigidTransform& t) {
  TriangleMesh out;
  out.vertices = transform_points(t, mesh.vertices);
  out.faces = mesh.faces;
  out.vertex_normals.reserve(mesh.vertex_normals.size());
  for (const auto& n : mesh.vertex_normals) out.vertex_normals.push_back(t.rotate(n));
  return out;
}

}  // namespace suctionbench
