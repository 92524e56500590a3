#pragma once

#include "suctionbench/geometry.hpp"

namespace suctionbench {

/// Watertight axis-aligned box centered at the origin. max_edge <= 0 keeps
/// the plain 8-vertex / 12-triangle box; otherwise faces subdivide into a
/// grid with edges no longer than max_edge.
TriangleMesh make_cuboid(double size_x, double size_y, double size_z, double max_edge = 0.0);

/// Icosphere; subdivisions = 0 is the icosahedron (level 3: 642 vertices,
/// 1280 faces).
TriangleMesh make_sphere(double radius, int subdivisions = 3);

/// Z-axis cylinder centered at the origin with fan-capped ends.
TriangleMesh make_cylinder(double radius, double height, int segments = 48, int z_divisions = 1);

/// Cuboid whose top surface gets a sinusoidal height field:
/// z += amplitude * sin(2*pi*x/wavelength) * sin(2*pi*y/wavelength).
/// Amplitude 0 reproduces make_cuboid exactly.
TriangleMesh make_bumpy_plate(double size_x, double size_y, double size_z, double amplitude,
                              double wavelength, double max_edge);

/// Named constructor used by configuration files; kind is one of
/// "cuboid" (needs 3 sizes), "sphere" (radius [, subdivisions]),
/// "cylinder" (radius, height), "bumpy-plate" (sizes + amplitude,
/// wavelength, max edge).
TriangleMesh make_primitive(const std::string& kind, const std::vector<double>& dims);

}  // namespace suctionbench
