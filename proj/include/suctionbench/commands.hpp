#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "suctionbench/config.hpp"
#include "suctionbench/evaluator.hpp"
#include "suctionbench/io_formats.hpp"
#include "suctionbench/scene.hpp"

namespace suctionbench {

/// Loads every mesh a scene references and builds the shared geometry caches.
SceneGeometry load_scene_geometry(const Scene& scene, const ToolkitConfig& config);

/// Voxel-samples and seal-scores one object's candidate set.
std::vector<ObjectCandidate> annotate_object_candidates(const ObjectGeometry& geometry,
                                                        const ToolkitConfig& config);

/// annotate-object: mesh -> per-object annotation file
/// `<output_dir>/<object_id>.annotation.txt`. Returns the output path.
std::string cmd_annotate_object(const std::string& mesh_path, const std::string& object_id,
                                const ToolkitConfig& config);

/// annotate-scene: scene config + per-object annotation files (from
/// annotations_dir, default output_dir) -> scene annotation file.
std::string cmd_annotate_scene(const std::string& scene_path, const ToolkitConfig& config,
                               std::string annotations_dir = "");

/// evaluate: paired scene configs and prediction files -> report.json /
/// report.csv in output_dir. Missing or malformed prediction files become
/// failed per-scene entries; the split continues.
EvalReport cmd_evaluate(const std::vector<std::string>& scene_paths,
                        const std::vector<std::string>& prediction_paths,
                        const ToolkitConfig& config, const std::string& report_stem = "report");

/// baseline-normal-std: scene + camera -> prediction file (camera frame).
std::string cmd_baseline_normal_std(const std::string& scene_path, int camera_index,
                                    const ToolkitConfig& config);

/// sample-from-heatmap: externally produced heatmap + scene depth ->
/// prediction file (camera frame).
std::string cmd_sample_from_heatmap(const std::string& scene_path, int camera_index,
                                    const std::string& heatmap_path,
                                    const ToolkitConfig& config);

/// render-labels: seal / center / combined label heatmaps for one camera.
/// Uses an existing scene annotation when given, otherwise annotates
/// in-memory. Returns the three written paths.
std::vector<std::string> cmd_render_labels(const std::string& scene_path, int camera_index,
                                           double sigma_px, const ToolkitConfig& config,
                                           std::string scene_annotation_path = "");

/// render-depth: scene + camera -> binary depth grid (and .pgm when
/// pgm16 is set).
std::string cmd_render_depth(const std::string& scene_path, int camera_index,
                             const ToolkitConfig& config, bool pgm16 = false);

/// Ground-truth helper: confidence-ranked, NMS-diverse top candidates from a
/// scene annotation (collision-free records scoring at least min_score).
std::vector<Prediction> select_diverse_candidates(const SceneAnnotation& annotation,
                                                  const EvalConfig& eval, double min_score,
                                                  int count);

std::string utc_timestamp();

}  // namespace suctionbench
