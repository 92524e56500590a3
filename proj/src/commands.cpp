#include "suctionbench/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <limits>
#include <set>

#include "suctionbench/errors.hpp"
#include "suctionbench/mesh_io.hpp"
#include "suctionbench/sampling.hpp"

namespace suctionbench {

namespace fs = std::filesystem;

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

std::string output_path(const ToolkitConfig& config, const std::string& name) {
  fs::create_directories(config.output_dir);
  return (fs::path(config.output_dir) / name).string();
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

RunManifest make_manifest(const std::string& command, const ToolkitConfig& config,
                          const std::vector<std::string>& inputs) {
  RunManifest manifest;
  manifest.command = command;
  manifest.config_hash = hash_string(config_to_json(config));
  for (const auto& input : inputs) manifest.input_hashes[input] = hash_file(input);
  manifest.timestamp = utc_timestamp();
  return manifest;
}

const RigidTransform& camera_pose_checked(const Scene& scene, int camera_index) {
  if (camera_index < 0 || camera_index >= static_cast<int>(scene.camera_poses.size())) {
    throw Error("camera index " + std::to_string(camera_index) + " out of range (" +
                std::to_string(scene.camera_poses.size()) + " cameras)");
  }
  return scene.camera_poses[static_cast<std::size_t>(camera_index)];
}

// Pixel bounds of all instance surfaces seen from the camera, padded.
PixelBox instances_bbox(const SceneGeometry& geometry, const CameraIntrinsics& intr,
                        const RigidTransform& camera_pose, int pad_px) {
  const RigidTransform world_to_cam = invert(camera_pose);
  double u0 = std::numeric_limits<double>::max();
  double v0 = std::numeric_limits<double>::max();
  double u1 = std::numeric_limits<double>::lowest();
  double v1 = std::numeric_limits<double>::lowest();
  for (const auto& p : geometry.merged_cloud().points) {
    const Vec3 cam = world_to_cam.apply(p);
    if (cam.z() <= 0.0) continue;
    const Eigen::Vector2d px = project(intr, cam);
    u0 = std::min(u0, px.x());
    v0 = std::min(v0, px.y());
    u1 = std::max(u1, px.x());
    v1 = std::max(v1, px.y());
  }
  if (u1 < u0) throw Error("no scene geometry is visible from this camera");
  PixelBox box;
  box.u0 = std::max(0, static_cast<int>(std::floor(u0)) - pad_px);
  box.v0 = std::max(0, static_cast<int>(std::floor(v0)) - pad_px);
  box.u1 = std::min(intr.width, static_cast<int>(std::ceil(u1)) + pad_px + 1);
  box.v1 = std::min(intr.height, static_cast<int>(std::ceil(v1)) + pad_px + 1);
  return box;
}

// Shared tail of the heatmap-driven prediction commands.
std::string sample_heatmap_to_predictions(const Scene& scene, const SceneGeometry& geometry,
                                          int camera_index, const Heatmap& heatmap,
                                          const ToolkitConfig& config,
                                          const std::string& out_name,
                                          RunManifest manifest) {
  const RigidTransform& cam_pose = camera_pose_checked(scene, camera_index);
  const DepthImage depth = render_depth(geometry, scene.intrinsics, cam_pose);

  const auto pixels = grid_sample(heatmap, config.sampler);
  PointCloud cloud = backproject_cloud(depth, scene.intrinsics);
  const KdTree cloud_index(cloud.points);
  const auto result = pixels_to_suctions(pixels, depth, scene.intrinsics, cloud, cloud_index,
                                         config.normal_neighbors);

  PredictionFile file;
  file.world_frame = false;
  file.camera_index = camera_index;
  file.predictions = result.predictions;
  const std::string out = output_path(config, out_name);
  write_predictions(out, file);
  write_manifest(out, manifest);
  return out;
}

}  // namespace

SceneGeometry load_scene_geometry(const Scene& scene, const ToolkitConfig& config) {
  std::map<std::string, std::shared_ptr<const ObjectGeometry>> objects;
  for (const auto& instance : scene.instances) {
    if (objects.count(instance.object_id)) continue;
    auto it = scene.mesh_registry.find(instance.object_id);
    std::string mesh_path;
    if (it != scene.mesh_registry.end()) {
      mesh_path = it->second;
    } else {
      auto global = config.mesh_registry.find(instance.object_id);
      if (global == config.mesh_registry.end()) {
        throw Error("object '" + instance.object_id + "' is in no mesh registry");
      }
      mesh_path = global->second;
    }
    objects[instance.object_id] = std::make_shared<ObjectGeometry>(
        build_object_geometry(load_mesh(mesh_path), config.surface_spacing));
  }
  return SceneGeometry(scene, std::move(objects));
}

std::vector<ObjectCandidate> annotate_object_candidates(const ObjectGeometry& geometry,
                                                        const ToolkitConfig& config) {
  std::vector<ObjectCandidate> candidates;
  for (const auto& sample : voxel_sample_surface(geometry.mesh, config.voxel_size)) {
    ObjectCandidate candidate;
    candidate.pose = {sample.point, sample.normal};
    const SealScore score =
        seal_score(geometry.bvh, geometry.surface_index, candidate.pose, config.cup, config.seal);
    candidate.s_seal = score.seal;
    candidate.s_deform = score.deform;
    candidate.s_fit = score.fit;
    candidates.push_back(std::move(candidate));
  }
  return candidates;
}

std::string cmd_annotate_object(const std::string& mesh_path, const std::string& object_id,
                                const ToolkitConfig& config) {
  config.validate();
  const ObjectGeometry geometry =
      build_object_geometry(load_mesh(mesh_path), config.surface_spacing);
  const auto candidates = annotate_object_candidates(geometry, config);
  const std::string out = output_path(config, object_id + ".annotation.txt");
  write_object_annotation(out, candidates);
  write_manifest(out, make_manifest("annotate-object " + object_id, config, {mesh_path}));
  return out;
}

std::string cmd_annotate_scene(const std::string& scene_path, const ToolkitConfig& config,
                               std::string annotations_dir) {
  config.validate();
  if (annotations_dir.empty()) annotations_dir = config.output_dir;
  const Scene scene = read_scene_config(scene_path);
  const SceneGeometry geometry = load_scene_geometry(scene, config);

  std::map<std::string, std::vector<ObjectCandidate>> candidates;
  std::vector<std::string> inputs{scene_path};
  for (const auto& instance : scene.instances) {
    if (candidates.count(instance.object_id)) continue;
    const std::string path =
        (fs::path(annotations_dir) / (instance.object_id + ".annotation.txt")).string();
    if (!fs::exists(path)) {
      throw IoError("missing annotation file for object '" + instance.object_id + "': " + path);
    }
    candidates[instance.object_id] = read_object_annotation(path);
    inputs.push_back(path);
  }

  const SceneAnnotation annotation =
      annotate_scene(geometry, candidates, config.wrench, config.collision);
  const std::string out = output_path(config, stem_of(scene_path) + ".scene_annotation.txt");
  write_scene_annotation(out, annotation);
  write_manifest(out, make_manifest("annotate-scene " + stem_of(scene_path), config, inputs));
  return out;
}

EvalReport cmd_evaluate(const std::vector<std::string>& scene_paths,
                        const std::vector<std::string>& prediction_paths,
                        const ToolkitConfig& config, const std::string& report_stem) {
  config.validate();
  if (scene_paths.size() != prediction_paths.size()) {
    throw Error("need exactly one prediction file per scene");
  }
  if (scene_paths.empty()) throw Error("no scenes to evaluate");

  EvalReport report;
  std::vector<SceneMetrics> per_scene;
  for (std::size_t i = 0; i < scene_paths.size(); ++i) {
    SceneMetrics metrics;
    try {
      const Scene scene = read_scene_config(scene_paths[i]);
      const SceneGeometry geometry = load_scene_geometry(scene, config);
      const PredictionFile file = read_predictions(prediction_paths[i]);

      std::vector<Prediction> preds = file.predictions;
      if (!file.world_frame) {
        const RigidTransform& cam = camera_pose_checked(scene, file.camera_index);
        for (auto& p : preds) {
          p.pose.point = cam.apply(p.pose.point);
          p.pose.direction = cam.rotate(p.pose.direction);
        }
      }
      metrics = evaluate_scene(geometry, std::move(preds), config.cup, config.seal,
                               config.wrench, config.eval);
    } catch (const Error& e) {
      metrics.failed = true;
      metrics.error = e.what();
      metrics.ap_s.assign(config.eval.thresholds.size(), 0.0);
      metrics.ap_s_top1.assign(config.eval.thresholds.size(), 0.0);
    }
    per_scene.push_back(metrics);
    report.scenes.emplace_back(stem_of(scene_paths[i]), metrics);
  }
  report.aggregate = aggregate_metrics(per_scene, config.eval);

  const std::string json_path = output_path(config, report_stem + ".json");
  const std::string csv_path = output_path(config, report_stem + ".csv");
  write_report_json(json_path, report, config.eval);
  write_report_csv(csv_path, report, config.eval);
  std::vector<std::string> inputs = scene_paths;
  for (const auto& p : prediction_paths) {
    if (fs::exists(p)) inputs.push_back(p);
  }
  write_manifest(json_path, make_manifest("evaluate", config, inputs));
  return report;
}

std::string cmd_baseline_normal_std(const std::string& scene_path, int camera_index,
                                    const ToolkitConfig& config) {
  config.validate();
  const Scene scene = read_scene_config(scene_path);
  const SceneGeometry geometry = load_scene_geometry(scene, config);
  const RigidTransform& cam_pose = camera_pose_checked(scene, camera_index);

  const DepthImage depth = render_depth(geometry, scene.intrinsics, cam_pose);
  const PixelBox bbox = instances_bbox(geometry, scene.intrinsics, cam_pose, 4);
  const Heatmap heatmap = normal_std_heatmap(depth, scene.intrinsics, bbox,
                                             config.std_patch_radius_px, config.normal_window_px);

  return sample_heatmap_to_predictions(
      scene, geometry, camera_index, heatmap, config,
      stem_of(scene_path) + ".cam" + std::to_string(camera_index) + ".normal_std.predictions.txt",
      make_manifest("baseline-normal-std " + stem_of(scene_path), config, {scene_path}));
}

std::string cmd_sample_from_heatmap(const std::string& scene_path, int camera_index,
                                    const std::string& heatmap_path,
                                    const ToolkitConfig& config) {
  config.validate();
  const Scene scene = read_scene_config(scene_path);
  const SceneGeometry geometry = load_scene_geometry(scene, config);
  const Heatmap heatmap = read_heatmap(heatmap_path);
  if (heatmap.width != scene.intrinsics.width || heatmap.height != scene.intrinsics.height) {
    throw Error("heatmap dimensions do not match the scene camera");
  }
  return sample_heatmap_to_predictions(
      scene, geometry, camera_index, heatmap, config,
      stem_of(scene_path) + ".cam" + std::to_string(camera_index) + ".sampled.predictions.txt",
      make_manifest("sample-from-heatmap " + stem_of(scene_path), config,
                    {scene_path, heatmap_path}));
}

std::vector<std::string> cmd_render_labels(const std::string& scene_path, int camera_index,
                                           double sigma_px, const ToolkitConfig& config,
                                           std::string scene_annotation_path) {
  config.validate();
  const Scene scene = read_scene_config(scene_path);
  const SceneGeometry geometry = load_scene_geometry(scene, config);
  const RigidTransform& cam_pose = camera_pose_checked(scene, camera_index);

  SceneAnnotation annotation;
  std::vector<std::string> inputs{scene_path};
  if (!scene_annotation_path.empty()) {
    annotation = read_scene_annotation(scene_annotation_path);
    inputs.push_back(scene_annotation_path);
  } else {
    std::map<std::string, std::vector<ObjectCandidate>> candidates;
    for (const auto& instance : scene.instances) {
      if (candidates.count(instance.object_id)) continue;
      candidates[instance.object_id] =
          annotate_object_candidates(geometry.object(instance.object_id), config);
    }
    annotation = annotate_scene(geometry, candidates, config.wrench, config.collision);
  }

  const auto [seal_map, center_map] =
      render_label_heatmaps(annotation, geometry, scene.intrinsics, cam_pose, sigma_px);
  const Heatmap final_map = combine_heatmaps(seal_map, center_map);

  const std::string stem = stem_of(scene_path) + ".cam" + std::to_string(camera_index);
  const RunManifest manifest =
      make_manifest("render-labels " + stem_of(scene_path), config, inputs);
  std::vector<std::string> outputs;
  const std::pair<const char*, const Heatmap*> maps[] = {
      {".seal_label.heatmap", &seal_map},
      {".center_label.heatmap", &center_map},
      {".final_label.heatmap", &final_map}};
  for (const auto& [suffix, map] : maps) {
    const std::string out = output_path(config, stem + suffix);
    write_heatmap(out, *map);
    write_manifest(out, manifest);
    outputs.push_back(out);
  }
  return outputs;
}

std::string cmd_render_depth(const std::string& scene_path, int camera_index,
                             const ToolkitConfig& config, bool pgm16) {
  config.validate();
  const Scene scene = read_scene_config(scene_path);
  const SceneGeometry geometry = load_scene_geometry(scene, config);
  const RigidTransform& cam_pose = camera_pose_checked(scene, camera_index);
  const DepthImage depth = render_depth(geometry, scene.intrinsics, cam_pose);

  const std::string stem = stem_of(scene_path) + ".cam" + std::to_string(camera_index);
  const RunManifest manifest =
      make_manifest("render-depth " + stem_of(scene_path), config, {scene_path});
  const std::string out = output_path(config, stem + (pgm16 ? ".depth.pgm" : ".depth"));
  if (pgm16) {
    write_depth_pgm16(out, depth);
  } else {
    write_depth(out, depth);
  }
  write_manifest(out, manifest);
  return out;
}

std::vector<Prediction> select_diverse_candidates(const SceneAnnotation& annotation,
                                                  const EvalConfig& eval, double min_score,
                                                  int count) {
  std::vector<const AnnotationRecord*> records;
  for (const auto& r : annotation.records) {
    if (r.collision_free && r.s >= min_score) records.push_back(&r);
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const AnnotationRecord* a, const AnnotationRecord* b) { return a->s > b->s; });

  std::vector<Prediction> out;
  std::map<int, int> per_instance;
  for (const auto* r : records) {
    if (static_cast<int>(out.size()) >= count) break;
    bool close = false;
    for (const auto& kept : out) {
      if ((kept.pose.point - r->point).norm() <= eval.nms_radius) {
        close = true;
        break;
      }
    }
    if (close || per_instance[r->instance] >= eval.per_object_cap) continue;
    out.push_back({{r->point, r->direction}, r->s});
    ++per_instance[r->instance];
  }
  return out;
}

}  // namespace suctionbench
