#include "suctionbench/config.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "suctionbench/errors.hpp"

namespace suctionbench {

using nlohmann::json;

void ToolkitConfig::validate() const {
  cup.validate();
  seal.validate();
  wrench.validate();
  collision.validate();
  eval.validate();
  sampler.validate();
  if (!(voxel_size > 0.0) || !(surface_spacing > 0.0)) {
    throw std::invalid_argument("sampling lengths must be positive");
  }
  if (normal_neighbors < 3) throw std::invalid_argument("normal neighbors must be >= 3");
  if (normal_window_px < 1 || std_patch_radius_px < 1) {
    throw std::invalid_argument("pixel windows must be positive");
  }
  if (label_sigma_px < 0.0) throw std::invalid_argument("label sigma must be non-negative");
  if (wrench.cup_radius != cup.radius) {
    throw std::invalid_argument("wrench cup radius must match the cup model");
  }
}

ToolkitConfig default_config() { return {}; }

namespace {

constexpr double kMm = 1e-3;

json config_json(const ToolkitConfig& c) {
  json j;
  j["cup"] = {{"radius_mm", c.cup.radius / kMm}, {"ring_vertices", c.cup.ring_vertices}};
  j["seal"] = {{"plane_fit_decay_per_mm2", c.seal.plane_fit_decay * kMm * kMm},
               {"neighborhood_factor", c.seal.neighborhood_factor},
               {"standoff_factor", c.seal.standoff_factor},
               {"max_cast_factor", c.seal.max_cast_factor},
               {"binary_deform_mode", c.seal.binary_deform_mode},
               {"binary_ratio_threshold", c.seal.binary_ratio_threshold}};
  j["wrench"] = {{"material_constant_n", c.wrench.material_constant},
                 {"mass_kg", c.wrench.mass},
                 {"gravity_accel", c.wrench.gravity_accel}};
  j["collision"] = {{"radius_mm", c.collision.radius / kMm},
                    {"height_mm", c.collision.height / kMm},
                    {"start_offset_mm", c.collision.start_offset / kMm},
                    {"exclusion_radius_mm", c.collision.exclusion_radius / kMm}};
  j["eval"] = {{"thresholds", c.eval.thresholds},
               {"top_k", c.eval.top_k},
               {"per_object_cap", c.eval.per_object_cap},
               {"nms_radius_mm", c.eval.nms_radius / kMm},
               {"association_max_dist_mm", c.eval.association_max_dist / kMm}};
  j["sampling"] = {{"voxel_mm", c.voxel_size / kMm},
                   {"surface_spacing_mm", c.surface_spacing / kMm},
                   {"normal_neighbors", c.normal_neighbors}};
  j["baseline"] = {{"grid_cell_px", c.sampler.grid_cell},
                   {"top_n", c.sampler.top_n},
                   {"normal_window_px", c.normal_window_px},
                   {"std_patch_radius_px", c.std_patch_radius_px},
                   {"label_sigma_px", c.label_sigma_px}};
  j["mesh_registry"] = json::object();
  for (const auto& [id, path] : c.mesh_registry) j["mesh_registry"][id] = path;
  j["output_dir"] = c.output_dir;
  return j;
}

template <typename T>
void maybe(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void maybe_mm(const json& j, const char* key, double& out_meters) {
  if (j.contains(key)) out_meters = j.at(key).get<double>() * kMm;
}

}  // namespace

std::string config_to_json(const ToolkitConfig& config) {
  return config_json(config).dump(2) + "\n";
}

void save_config(const std::string& path, const ToolkitConfig& config) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write config: " + path);
  out << config_to_json(config);
  if (!out) throw IoError("failed writing config: " + path);
}

ToolkitConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path, 0, std::string("invalid JSON: ") + e.what());
  }

  ToolkitConfig c;
  try {
    if (j.contains("cup")) {
      maybe_mm(j["cup"], "radius_mm", c.cup.radius);
      maybe(j["cup"], "ring_vertices", c.cup.ring_vertices);
    }
    if (j.contains("seal")) {
      const auto& s = j["seal"];
      if (s.contains("plane_fit_decay_per_mm2")) {
        c.seal.plane_fit_decay = s.at("plane_fit_decay_per_mm2").get<double>() / (kMm * kMm);
      }
      maybe(s, "neighborhood_factor", c.seal.neighborhood_factor);
      maybe(s, "standoff_factor", c.seal.standoff_factor);
      maybe(s, "max_cast_factor", c.seal.max_cast_factor);
      maybe(s, "binary_deform_mode", c.seal.binary_deform_mode);
      maybe(s, "binary_ratio_threshold", c.seal.binary_ratio_threshold);
    }
    if (j.contains("wrench")) {
      maybe(j["wrench"], "material_constant_n", c.wrench.material_constant);
      maybe(j["wrench"], "mass_kg", c.wrench.mass);
      maybe(j["wrench"], "gravity_accel", c.wrench.gravity_accel);
    }
    if (j.contains("collision")) {
      maybe_mm(j["collision"], "radius_mm", c.collision.radius);
      maybe_mm(j["collision"], "height_mm", c.collision.height);
      maybe_mm(j["collision"], "start_offset_mm", c.collision.start_offset);
      maybe_mm(j["collision"], "exclusion_radius_mm", c.collision.exclusion_radius);
    }
    if (j.contains("eval")) {
      maybe(j["eval"], "thresholds", c.eval.thresholds);
      maybe(j["eval"], "top_k", c.eval.top_k);
      maybe(j["eval"], "per_object_cap", c.eval.per_object_cap);
      maybe_mm(j["eval"], "nms_radius_mm", c.eval.nms_radius);
      maybe_mm(j["eval"], "association_max_dist_mm", c.eval.association_max_dist);
    }
    if (j.contains("sampling")) {
      maybe_mm(j["sampling"], "voxel_mm", c.voxel_size);
      maybe_mm(j["sampling"], "surface_spacing_mm", c.surface_spacing);
      maybe(j["sampling"], "normal_neighbors", c.normal_neighbors);
    }
    if (j.contains("baseline")) {
      maybe(j["baseline"], "grid_cell_px", c.sampler.grid_cell);
      maybe(j["baseline"], "top_n", c.sampler.top_n);
      maybe(j["baseline"], "normal_window_px", c.normal_window_px);
      maybe(j["baseline"], "std_patch_radius_px", c.std_patch_radius_px);
      maybe(j["baseline"], "label_sigma_px", c.label_sigma_px);
    }
    if (j.contains("mesh_registry")) {
      for (const auto& [id, mesh_path] : j["mesh_registry"].items()) {
        c.mesh_registry[id] = mesh_path.get<std::string>();
      }
    }
    maybe(j, "output_dir", c.output_dir);
  } catch (const json::exception& e) {
    throw ParseError(path, 0, std::string("bad config value: ") + e.what());
  }

  c.wrench.cup_radius = c.cup.radius;  // shared radius lives in the cup block
  c.validate();
  return c;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char b : bytes) {
    hash ^= b;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string hash_string(const std::string& bytes) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::string hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot hash missing file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return hash_string(ss.str());
}

void write_manifest(const std::string& artifact_path, const RunManifest& manifest) {
  json j;
  j["command"] = manifest.command;
  j["config_hash"] = manifest.config_hash;
  j["input_hashes"] = json::object();
  for (const auto& [path, digest] : manifest.input_hashes) j["input_hashes"][path] = digest;
  j["toolkit_version"] = manifest.toolkit_version;
  j["timestamp"] = manifest.timestamp;
  const std::string path = artifact_path + ".manifest.json";
  std::ofstream out(path);
  if (!out) throw IoError("cannot write manifest: " + path);
  out << j.dump(2) << '\n';
}

}  // namespace suctionbench
