#pragma once

#include <string>
#include <vector>

#include "suctionbench/baselines.hpp"
#include "suctionbench/camera.hpp"
#include "suctionbench/evaluator.hpp"
#include "suctionbench/scene.hpp"

namespace suctionbench {

// ---------------------------------------------------------------------------
// Binary grids: little-endian uint32 width, uint32 height, then width*height
// float32 values row-major. Depth images store meters (0 = invalid);
// heatmaps store scores clamped to [0, 1].
// ---------------------------------------------------------------------------

void write_depth(const std::string& path, const DepthImage& depth);
DepthImage read_depth(const std::string& path);

void write_heatmap(const std::string& path, const Heatmap& map);
Heatmap read_heatmap(const std::string& path);

// Lossless 16-bit interchange: binary PGM (P5, maxval 65535) holding
// millimeters. Depths above 65.535 m saturate.
void write_depth_pgm16(const std::string& path, const DepthImage& depth);
DepthImage read_depth_pgm16(const std::string& path);

// ---------------------------------------------------------------------------
// Per-object annotation: '#' comments, then one candidate per line:
//   x y z ux uy uz s_seal s_deform s_fit
// ---------------------------------------------------------------------------

void write_object_annotation(const std::string& path,
                             const std::vector<ObjectCandidate>& candidates);
std::vector<ObjectCandidate> read_object_annotation(const std::string& path);

// ---------------------------------------------------------------------------
// Scene annotation: '#' comments, then one record per line:
//   instance object_id x y z ux uy uz s_seal s_wrench s collision_free
// ---------------------------------------------------------------------------

void write_scene_annotation(const std::string& path, const SceneAnnotation& annotation);
SceneAnnotation read_scene_annotation(const std::string& path);

// ---------------------------------------------------------------------------
// Predictions: a "frame world" or "frame camera <index>" line, then
//   x y z ux uy uz confidence
// ---------------------------------------------------------------------------

struct PredictionFile {
  bool world_frame = true;
  int camera_index = 0;  // meaningful when !world_frame
  std::vector<Prediction> predictions;
};

void write_predictions(const std::string& path, const PredictionFile& file);
PredictionFile read_predictions(const std::string& path);

// ---------------------------------------------------------------------------
// Scene configuration (JSON): mesh registry, instances with 12-number
// row-major poses, camera intrinsics, camera poses, gravity vector.
// Relative mesh paths resolve against the config file's directory.
// ---------------------------------------------------------------------------

Scene read_scene_config(const std::string& path);
void write_scene_config(const std::string& path, const Scene& scene);

// ---------------------------------------------------------------------------
// Evaluation reports: structured JSON plus a flat CSV for plotting.
// ---------------------------------------------------------------------------

void write_report_json(const std::string& path, const EvalReport& report,
                       const EvalConfig& config);
void write_report_csv(const std::string& path, const EvalReport& report,
                      const EvalConfig& config);

}  // namespace suctionbench
