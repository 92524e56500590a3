#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "suctionbench/baselines.hpp"
#include "suctionbench/evaluator.hpp"
#include "suctionbench/scene.hpp"
#include "suctionbench/seal.hpp"
#include "suctionbench/wrench.hpp"

namespace suctionbench {

inline constexpr const char* kToolkitVersion = "0.1.0";

/// All tunables in one auditable place. Lengths in the JSON file carry an
/// explicit _mm suffix and convert to meters here at the load boundary.
struct ToolkitConfig {
  CupModel cup;
  SealParams seal;
  WrenchParams wrench;
  CollisionParams collision;
  EvalConfig eval;
  SamplerConfig sampler;

  double voxel_size = 0.005;            // candidate sampling voxel
  double surface_spacing = 0.002;       // dense surface cloud spacing
  int normal_neighbors = 30;            // k for cloud normal estimation
  int normal_window_px = 2;             // organized-normal window radius
  int std_patch_radius_px = 5;          // sigma pooling patch radius
  double label_sigma_px = 4.0;          // label heatmap splat sigma

  std::map<std::string, std::string> mesh_registry;
  std::string output_dir = ".";

  void validate() const;  // re-checks every owning module's invariants
};

ToolkitConfig default_config();
ToolkitConfig load_config(const std::string& path);
void save_config(const std::string& path, const ToolkitConfig& config);
std::string config_to_json(const ToolkitConfig& config);

/// FNV-1a over a byte string; stable fingerprint for manifests.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hash_file(const std::string& path);     // hex digest
std::string hash_string(const std::string& bytes);  // hex digest

/// Provenance sidecar written next to every output artifact.
struct RunManifest {
  std::string command;
  std::string config_hash;
  std::map<std::string, std::string> input_hashes;  // path -> digest
  std::string toolkit_version = kToolkitVersion;
  std::string timestamp;  // RFC 3339 UTC; excluded from any hashing
};

/// Writes `<artifact_path>.manifest.json`.
void write_manifest(const std::string& artifact_path, const RunManifest& manifest);

}  // namespace suctionbench
