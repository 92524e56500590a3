#include "suctionbench/mesh_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "suctionbench/errors.hpp"

namespace suctionbench {

namespace {

// "3", "3/1" and "3/1/2" all name vertex 3.
int parse_face_index(const std::string& token, const std::string& path, int line) {
  std::size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(token, &pos);
  } catch (const std::exception&) {
    throw ParseError(path, line, "bad face index '" + token + "'");
  }
  if (pos != token.size() && token[pos] != '/') {
    throw ParseError(path, line, "bad face index '" + token + "'");
  }
  return value;
}

}  // namespace

TriangleMesh load_mesh(const std::string& path, double scale) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mesh file: " + path);

  TriangleMesh mesh;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      double x, y, z;
      if (!(ss >> x >> y >> z)) throw ParseError(path, line_no, "malformed vertex line");
      mesh.vertices.emplace_back(x * scale, y * scale, z * scale);
    } else if (tag == "f") {
      std::vector<std::string> tokens;
      std::string tok;
      while (ss >> tok) tokens.push_back(tok);
      if (tokens.size() != 3) {
        throw ParseError(path, line_no,
                         "face has " + std::to_string(tokens.size()) +
                             " vertices; only triangles are accepted");
      }
      std::array<int, 3> tri{};
      for (int k = 0; k < 3; ++k) {
        int idx = parse_face_index(tokens[static_cast<std::size_t>(k)], path, line_no);
        if (idx < 0) idx = static_cast<int>(mesh.vertices.size()) + idx + 1;  // OBJ relative index
        if (idx < 1 || idx > static_cast<int>(mesh.vertices.size())) {
          throw ParseError(path, line_no,
                           "face index " + std::to_string(idx) + " out of range (" +
                               std::to_string(mesh.vertices.size()) + " vertices)");
        }
        tri[static_cast<std::size_t>(k)] = idx - 1;
      }
      mesh.faces.push_back(tri);
    }
    // Other tags (vn, vt, o, g, s, usemtl, mtllib) are ignored.
  }
  mesh.validate();
  mesh.compute_vertex_normals();
  return mesh;
}

void save_mesh(const std::string& path, const TriangleMesh& mesh) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write mesh file: " + path);
  char buf[128];
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof(buf), "v %.9g %.9g %.9g\n", v.x(), v.y(), v.z());
    out << buf;
  }
  for (const auto& f : mesh.faces) {
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  }
  if (!out) throw IoError("failed writing mesh file: " + path);
}

}  // namespace suctionbench
