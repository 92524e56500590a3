// Acceptance suite: one pass/fail line per criterion, non-zero exit when any
// criterion fails. Heavier end-to-end checks live here rather than in the
// unit tests.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "oracles.hpp"
#include "suctionbench/commands.hpp"
#include "suctionbench/config.hpp"
#include "suctionbench/evaluator.hpp"
#include "suctionbench/io_formats.hpp"
#include "suctionbench/mesh_io.hpp"
#include "suctionbench/primitives.hpp"
#include "suctionbench/sampling.hpp"
#include "suctionbench/scene.hpp"
#include "suctionbench/seal.hpp"
#include "suctionbench/wrench.hpp"

using namespace suctionbench;
namespace fs = std::filesystem;

namespace {

int failures = 0;

class Criterion {
 public:
  Criterion(int number, std::string title)
      : number_(number), title_(std::move(title)), start_(std::chrono::steady_clock::now()) {}

  void check(bool ok, const std::string& detail) {
    if (!ok) {
      problems_.push_back(detail);
    }
  }

  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  ~Criterion() {
    const double elapsed = seconds();
    if (problems_.empty()) {
      std::printf("[PASS] criterion %d: %s (%.1fs)\n", number_, title_.c_str(), elapsed);
    } else {
      ++failures;
      std::printf("[FAIL] criterion %d: %s (%.1fs)\n", number_, title_.c_str(), elapsed);
      for (const auto& p : problems_) std::printf("       - %s\n", p.c_str());
    }
    std::fflush(stdout);
  }

 private:
  int number_;
  std::string title_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> problems_;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

RigidTransform translation(double x, double y, double z) {
  RigidTransform t;
  t.translation = Vec3(x, y, z);
  return t;
}

RigidTransform topdown_camera(double height) {
  RigidTransform cam;
  cam.rotation.col(0) = Vec3(1, 0, 0);
  cam.rotation.col(1) = Vec3(0, -1, 0);
  cam.rotation.col(2) = Vec3(0, 0, -1);
  cam.translation = Vec3(0, 0, height);
  return cam;
}

RigidTransform random_rigid(std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Vec3 axis(unit(rng), unit(rng), unit(rng));
  while (axis.norm() < 1e-3) axis = Vec3(unit(rng), unit(rng), unit(rng));
  RigidTransform t;
  t.rotation = Eigen::AngleAxisd(unit(rng) * M_PI, axis.normalized()).toRotationMatrix();
  t.translation = Vec3(unit(rng), unit(rng), unit(rng)) * 0.4;
  return t;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / (tag + "_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

// ---------------------------------------------------------------------------

void criterion_1_flat_plate() {
  Criterion c(1, "flat-plate seal property");
  ToolkitConfig config;

  const TriangleMesh plate = make_cuboid(0.1, 0.1, 0.02, 0.01);
  const ObjectGeometry geometry = build_object_geometry(plate, config.surface_spacing);
  const auto candidates = annotate_object_candidates(geometry, config);

  const double r = config.cup.radius;
  int interior = 0;
  int interior_good = 0;
  int overhang = 0;
  int overhang_zero = 0;
  for (const auto& cand : candidates) {
    const Vec3& p = cand.pose.point;
    const bool on_top = std::abs(p.z() - 0.01) < 1e-9;
    const bool on_bottom = std::abs(p.z() + 0.01) < 1e-9;
    if (on_top || on_bottom) {
      const double edge_dist = std::min(0.05 - std::abs(p.x()), 0.05 - std::abs(p.y()));
      if (edge_dist > r) {
        ++interior;
        if (cand.s_seal >= 0.95) ++interior_good;
      }
    }
    const ProjectionResult proj = project_cup(geometry.bvh, cand.pose, config.cup, config.seal);
    if (!proj.all_hit()) {
      ++overhang;
      if (cand.s_seal == 0.0) ++overhang_zero;
    }
  }

  c.check(interior > 100, fmt("only %.0f interior candidates", interior));
  c.check(interior_good >= 0.99 * interior,
          fmt("%.0f of %.0f interior candidates scored >= 0.95", interior_good, interior));
  c.check(overhang > 0, "no overhanging candidate found");
  c.check(overhang_zero == overhang,
          fmt("%.0f of %.0f overhanging candidates scored exactly 0", overhang_zero, overhang));

  // the documented near-edge example overhangs
  const SealScore near_edge = seal_score(geometry.bvh, geometry.surface_index,
                                         {Vec3(0.045, 0, 0.01), Vec3(0, 0, 1)}, config.cup,
                                         config.seal);
  c.check(near_edge.any_miss && near_edge.seal == 0.0, "45 mm off-center pose did not overhang");
  c.check(c.seconds() < 10.0, fmt("runtime %.1fs exceeds 10s", c.seconds()));
}

void criterion_2_sphere_monotonicity() {
  Criterion c(2, "seal curvature monotonicity across sphere radii");
  ToolkitConfig config;

  const double radii[] = {0.160, 0.080, 0.040, 0.020};
  const int levels[] = {6, 5, 4, 3};
  std::vector<double> means;
  for (int i = 0; i < 4; ++i) {
    const ObjectGeometry geometry =
        build_object_geometry(make_sphere(radii[i], levels[i]), config.surface_spacing);
    const auto candidates = annotate_object_candidates(geometry, config);
    double sum = 0.0;
    for (const auto& cand : candidates) sum += cand.s_seal;
    means.push_back(sum / static_cast<double>(candidates.size()));
  }

  std::printf("       mean seal scores: 160mm %.4f, 80mm %.4f, 40mm %.4f, 20mm %.4f\n",
              means[0], means[1], means[2], means[3]);
  for (int i = 1; i < 4; ++i) {
    c.check(means[static_cast<std::size_t>(i)] <= means[static_cast<std::size_t>(i - 1)] + 1e-12,
            fmt("mean rose from %.4f to %.4f when the radius shrank", means[static_cast<std::size_t>(i - 1)],
                means[static_cast<std::size_t>(i)]));
  }
  c.check(c.seconds() < 60.0, fmt("runtime %.1fs exceeds 60s", c.seconds()));
}

void criterion_3_rigid_invariance() {
  Criterion c(3, "rigid invariance of seal and wrench scores");
  ToolkitConfig config;

  const TriangleMesh mesh = make_bumpy_plate(0.12, 0.12, 0.02, 0.002, 0.03, 0.01);
  const ObjectGeometry base = build_object_geometry(mesh, config.surface_spacing);
  const Vec3 com = base.com;

  // a handful of candidate poses with varied scores
  const auto all = voxel_sample_surface(mesh, config.voxel_size);
  std::vector<SuctionPose> poses;
  for (std::size_t i = 0; i < all.size() && poses.size() < 5; i += all.size() / 5) {
    poses.push_back({all[i].point, all[i].normal});
  }

  std::vector<double> base_seal, base_wrench;
  std::vector<Vec3> refs;
  WrenchParams wrench = config.wrench;
  for (const auto& pose : poses) {
    const Vec3 ref = ring_frame(pose.direction).col(0);
    refs.push_back(ref);
    base_seal.push_back(
        seal_score(base.bvh, base.surface_index, pose, config.cup, config.seal, ref).seal);
    base_wrench.push_back(wrench_score(pose, com, wrench).score);
  }

  std::mt19937 rng(2026);
  double max_seal_dev = 0.0;
  double max_wrench_dev = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const RigidTransform t = random_rigid(rng);
    const ObjectGeometry moved = build_object_geometry(transformed(mesh, t), config.surface_spacing);
    const std::size_t i = static_cast<std::size_t>(trial) % poses.size();

    const SuctionPose moved_pose{t.apply(poses[i].point), t.rotate(poses[i].direction)};
    const double seal_after = seal_score(moved.bvh, moved.surface_index, moved_pose, config.cup,
                                         config.seal, t.rotate(refs[i]))
                                  .seal;
    max_seal_dev = std::max(max_seal_dev, std::abs(seal_after - base_seal[i]));

    WrenchParams co_rotated = wrench;
    co_rotated.gravity_direction = t.rotate(wrench.gravity_direction);
    const double wrench_after = wrench_score(moved_pose, t.apply(com), co_rotated).score;
    max_wrench_dev = std::max(max_wrench_dev, std::abs(wrench_after - base_wrench[i]));
  }

  c.check(max_seal_dev <= 1e-6, fmt("max |dS_seal| = %.3g exceeds 1e-6", max_seal_dev));
  c.check(max_wrench_dev <= 1e-6, fmt("max |dS_wrench| = %.3g exceeds 1e-6", max_wrench_dev));
}

void criterion_4_mass_ranking() {
  Criterion c(4, "wrench ranking is mass invariant");
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  const int n = 1000;
  std::vector<SuctionPose> poses;
  std::vector<Vec3> coms;
  for (int i = 0; i < n; ++i) {
    Vec3 u(unit(rng), unit(rng), unit(rng));
    while (u.norm() < 1e-3) u = Vec3(unit(rng), unit(rng), unit(rng));
    poses.push_back({Vec3(unit(rng), unit(rng), unit(rng)) * 0.2, u.normalized()});
    coms.push_back(Vec3(unit(rng), unit(rng), unit(rng)) * 0.2);
  }

  auto ranking = [&](double mass) {
    WrenchParams params;
    params.mass = mass;
    std::vector<double> tangential(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      tangential[static_cast<std::size_t>(i)] =
          wrench_score(poses[static_cast<std::size_t>(i)], coms[static_cast<std::size_t>(i)], params)
              .tangential;
    }
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return tangential[static_cast<std::size_t>(a)] < tangential[static_cast<std::size_t>(b)];
    });
    return order;
  };

  const auto at_1 = ranking(1.0);
  c.check(ranking(0.1) == at_1, "ordering differs between 0.1 kg and 1 kg");
  c.check(ranking(10.0) == at_1, "ordering differs between 10 kg and 1 kg");
}

void criterion_5_metric_oracle() {
  Criterion c(5, "metric oracle equivalence");
  EvalConfig config;

  std::mt19937 rng(123);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  bool all_exact = true;
  for (int trial = 0; trial < 1000; ++trial) {
    std::uniform_int_distribution<int> len(0, 90);
    std::vector<double> scores(static_cast<std::size_t>(len(rng)));
    for (auto& s : scores) s = unit(rng);
    const SceneMetrics m = ap_metrics(scores, config);

    double ap_sum = 0.0;
    double top1_sum = 0.0;
    for (std::size_t t = 0; t < config.thresholds.size(); ++t) {
      const double direct = oracles::ap_s_direct(scores, config.top_k, config.thresholds[t]);
      const double direct_top1 =
          oracles::precision_at_k_direct(scores, 1, config.thresholds[t]);
      if (m.ap_s[t] != direct || m.ap_s_top1[t] != direct_top1) all_exact = false;
      ap_sum += direct;
      top1_sum += direct_top1;
    }
    if (m.ap != ap_sum / static_cast<double>(config.thresholds.size())) all_exact = false;
    if (m.ap_top1 != top1_sum / static_cast<double>(config.thresholds.size())) all_exact = false;
  }
  c.check(all_exact, "accelerated metrics diverged from the definition");

  EvalConfig tiny = config;
  tiny.top_k = 3;
  const SceneMetrics hand = ap_metrics({0.9, 0.9, 0.1}, tiny);
  c.check(std::abs(hand.ap_s[1] - 8.0 / 9.0) < 1e-15,
          fmt("hand case AP_0.4 = %.12f, expected 8/9", hand.ap_s[1]));
}

void criterion_6_nms_contract() {
  Criterion c(6, "NMS spacing and per-object cap");
  EvalConfig config;
  std::mt19937 rng(321);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  // adversarial sets: exact duplicates, dense clusters, oversubscribed objects
  std::vector<Prediction> preds;
  std::vector<std::optional<int>> assoc;
  for (int cluster = 0; cluster < 40; ++cluster) {
    const Vec3 center(0.06 * (cluster % 8), 0.06 * (cluster / 8), 0.02);
    for (int rep = 0; rep < 12; ++rep) {
      const Vec3 jitter =
          rep < 6 ? Vec3(Vec3::Zero()) : Vec3(Vec3(unit(rng), unit(rng), 0.0) * 0.004);
      preds.push_back({{center + jitter, Vec3(0, 0, 1)}, unit(rng) + 1.0});
      assoc.emplace_back(cluster % 3);
    }
  }

  const auto kept = nms(preds, assoc, config);
  bool spacing_ok = true;
  for (std::size_t i = 0; i < kept.size() && spacing_ok; ++i) {
    for (std::size_t j = i + 1; j < kept.size(); ++j) {
      const double d = (preds[static_cast<std::size_t>(kept[i])].pose.point -
                        preds[static_cast<std::size_t>(kept[j])].pose.point)
                           .norm();
      if (d <= config.nms_radius) {
        spacing_ok = false;
        break;
      }
    }
  }
  std::map<int, int> per_object;
  for (int idx : kept) ++per_object[*assoc[static_cast<std::size_t>(idx)]];
  int worst = 0;
  for (const auto& [obj, count] : per_object) worst = std::max(worst, count);

  c.check(spacing_ok, "two kept predictions lie within the NMS radius");
  c.check(worst <= config.per_object_cap,
          fmt("an object kept %.0f predictions (cap %.0f)", worst, config.per_object_cap));
  c.check(!kept.empty() && kept.size() < preds.size(), "suppression did not trigger");
}

void criterion_7_geometry_oracles() {
  Criterion c(7, "brute-force geometry oracles");
  std::mt19937 rng(555);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  // ray casts against an assortment of primitives
  std::vector<TriangleMesh> meshes;
  meshes.push_back(make_sphere(0.05, 2));
  meshes.push_back(make_cuboid(0.08, 0.05, 0.03));
  meshes.push_back(make_cylinder(0.03, 0.07, 24));
  meshes.push_back(make_bumpy_plate(0.08, 0.08, 0.01, 0.002, 0.02, 0.01));

  int ray_mismatch = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto& mesh = meshes[static_cast<std::size_t>(trial) % meshes.size()];
    const MeshBvh bvh(mesh);
    for (int k = 0; k < 20; ++k) {
      const Vec3 origin = Vec3(unit(rng), unit(rng), unit(rng)) * 0.2;
      Vec3 dir(unit(rng), unit(rng), unit(rng));
      while (dir.norm() < 1e-3) dir = Vec3(unit(rng), unit(rng), unit(rng));
      dir.normalize();
      const auto fast = bvh.raycast(origin, dir);
      const auto slow = oracles::raycast_exhaustive(mesh, origin, dir, 1e9);
      if (fast.has_value() != slow.has_value()) {
        ++ray_mismatch;
      } else if (fast && (fast->face != slow->second || std::abs(fast->t - slow->first) > 1e-9)) {
        ++ray_mismatch;
      }
    }
  }
  c.check(ray_mismatch == 0, fmt("%.0f ray-cast mismatches", ray_mismatch));

  // association and collision against a three-object scene
  Scene scene;
  scene.instances.push_back({"box", translation(-0.12, 0, 0.025)});
  scene.instances.push_back({"ball", translation(0.0, 0.1, 0.05)});
  scene.instances.push_back({"box", translation(0.14, -0.05, 0.025)});
  scene.camera_poses.push_back(topdown_camera(0.8));
  scene.intrinsics = CameraIntrinsics{300, 300, 160, 120, 320, 240};
  auto box = std::make_shared<ObjectGeometry>(
      build_object_geometry(make_cuboid(0.07, 0.07, 0.05, 0.02), 0.002));
  auto ball =
      std::make_shared<ObjectGeometry>(build_object_geometry(make_sphere(0.05, 3), 0.002));
  const SceneGeometry geometry(scene, {{"box", box}, {"ball", ball}});

  int assoc_mismatch = 0;
  const double max_dist = 0.05;
  for (int i = 0; i < 1000; ++i) {
    const Vec3 q(unit(rng) * 0.3, unit(rng) * 0.3, std::abs(unit(rng)) * 0.15);
    double dist = 0.0;
    const int nearest = oracles::nearest_exhaustive(geometry.merged_cloud().points, q, &dist);
    const auto got = associate(q, geometry, max_dist);
    const std::optional<int> expected =
        dist > max_dist ? std::nullopt
                        : std::optional<int>(geometry.merged_cloud()
                                                 .object_ids[static_cast<std::size_t>(nearest)]);
    if (got != expected) ++assoc_mismatch;
  }
  c.check(assoc_mismatch == 0, fmt("%.0f association mismatches", assoc_mismatch));

  CollisionParams collision;
  int collision_mismatch = 0;
  for (int i = 0; i < 100; ++i) {
    Vec3 dir(unit(rng), unit(rng), unit(rng));
    while (dir.norm() < 1e-3) dir = Vec3(unit(rng), unit(rng), unit(rng));
    const SuctionPose pose{Vec3(unit(rng) * 0.2, unit(rng) * 0.2, std::abs(unit(rng)) * 0.12),
                           dir.normalized()};
    if (check_collision(geometry.merged_index(), pose, collision) !=
        oracles::collision_exhaustive(geometry.merged_cloud().points, pose, collision)) {
      ++collision_mismatch;
    }
  }
  c.check(collision_mismatch == 0, fmt("%.0f collision mismatches", collision_mismatch));
}

void criterion_8_end_to_end() {
  Criterion c(8, "end-to-end self-consistency and baseline ordering");
  TempDir dir("sb_accept");

  ToolkitConfig config;
  config.output_dir = dir.file("out");

  // five primitives spread over the table
  save_mesh(dir.file("slab.obj"), make_cuboid(0.12, 0.12, 0.06, 0.01));
  save_mesh(dir.file("ball.obj"), make_sphere(0.06, 4));
  save_mesh(dir.file("drum.obj"), make_cylinder(0.045, 0.08, 48));
  save_mesh(dir.file("plate.obj"), make_cuboid(0.14, 0.14, 0.02, 0.01));
  save_mesh(dir.file("brick.obj"), make_cuboid(0.10, 0.08, 0.05, 0.01));
  save_mesh(dir.file("bumpy.obj"), make_bumpy_plate(0.14, 0.14, 0.02, 0.0025, 0.025, 0.005));

  Scene scene;
  scene.mesh_registry = {{"slab", dir.file("slab.obj")},
                         {"ball", dir.file("ball.obj")},
                         {"drum", dir.file("drum.obj")},
                         {"plate", dir.file("plate.obj")},
                         {"brick", dir.file("brick.obj")}};
  scene.instances.push_back({"slab", translation(-0.22, -0.18, 0.03)});
  scene.instances.push_back({"ball", translation(0.22, -0.18, 0.06)});
  scene.instances.push_back({"drum", translation(-0.22, 0.18, 0.04)});
  scene.instances.push_back({"plate", translation(0.0, 0.0, 0.01)});
  scene.instances.push_back({"brick", translation(0.22, 0.18, 0.025)});
  scene.camera_poses.push_back(topdown_camera(0.9));
  scene.intrinsics = CameraIntrinsics{580.0, 580.0, 320.0, 240.0, 640, 480};
  const std::string scene_path = dir.file("clutter.json");
  write_scene_config(scene_path, scene);

  for (const auto& [id, path] : scene.mesh_registry) {
    cmd_annotate_object(path, id, config);
  }
  const std::string annotation_path = cmd_annotate_scene(scene_path, config);
  const SceneAnnotation annotation = read_scene_annotation(annotation_path);
  c.check(annotation.records.size() > 1000,
          fmt("only %.0f scene records", annotation.records.size()));

  // ground-truth playback: diverse top candidates become the submission
  const auto gt = select_diverse_candidates(annotation, config.eval, 0.3, 50);
  c.check(gt.size() == 50, fmt("only %.0f diverse ground-truth candidates", gt.size()));
  PredictionFile submission;
  submission.world_frame = true;
  submission.predictions = gt;
  const std::string pred_path = dir.file("gt_predictions.txt");
  write_predictions(pred_path, submission);

  const EvalReport playback = cmd_evaluate({scene_path}, {pred_path}, config, "playback");
  const double ap_02 = playback.scenes[0].second.ap_s[0];
  c.check(ap_02 >= 0.9, fmt("ground-truth playback AP_0.2 = %.3f < 0.9", ap_02));

  // Normal STD ordering: smooth scene strictly beats the bumpy-adversarial one
  Scene smooth;
  smooth.mesh_registry = {{"plate", dir.file("plate.obj")}};
  smooth.instances.push_back({"plate", translation(0, 0, 0.01)});
  smooth.camera_poses.push_back(topdown_camera(0.9));
  smooth.intrinsics = scene.intrinsics;
  const std::string smooth_path = dir.file("smooth.json");
  write_scene_config(smooth_path, smooth);

  Scene bumpy = smooth;
  bumpy.mesh_registry = {{"bumpy", dir.file("bumpy.obj")}};
  bumpy.instances[0].object_id = "bumpy";
  const std::string bumpy_path = dir.file("bumpy.json");
  write_scene_config(bumpy_path, bumpy);

  const std::string smooth_preds = cmd_baseline_normal_std(smooth_path, 0, config);
  const std::string bumpy_preds = cmd_baseline_normal_std(bumpy_path, 0, config);
  const EvalReport smooth_report =
      cmd_evaluate({smooth_path}, {smooth_preds}, config, "smooth_report");
  const EvalReport bumpy_report =
      cmd_evaluate({bumpy_path}, {bumpy_preds}, config, "bumpy_report");
  std::printf("       normal-std AP: smooth %.4f, bumpy %.4f; playback AP_0.2 %.4f\n",
              smooth_report.aggregate.ap, bumpy_report.aggregate.ap, ap_02);
  c.check(smooth_report.aggregate.ap > bumpy_report.aggregate.ap,
          fmt("smooth AP %.4f does not exceed bumpy AP %.4f", smooth_report.aggregate.ap,
              bumpy_report.aggregate.ap));

  c.check(c.seconds() < 300.0, fmt("runtime %.1fs exceeds 300s", c.seconds()));
}

void criterion_9_center_of_mass() {
  Criterion c(9, "center-of-mass exactness");

  const TriangleMesh cube = make_cuboid(1.0, 1.0, 1.0);
  const double cube_err = center_of_mass(cube).norm();
  c.check(cube_err < 1e-9, fmt("unit cube centroid off by %.3g", cube_err));

  // L prism: cross-section [0,0.2]x[0,0.1] plus [0,0.1]x[0.1,0.2], depth 0.1
  TriangleMesh l;
  const double s = 0.1;
  const std::vector<std::pair<double, double>> outline = {
      {0, 0}, {2 * s, 0}, {2 * s, s}, {s, s}, {s, 2 * s}, {0, 2 * s}};
  for (double z : {0.0, s}) {
    for (const auto& [x, y] : outline) l.vertices.emplace_back(x, y, z);
  }
  const std::array<std::array<int, 3>, 4> cap = {{{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}}};
  for (const auto& t : cap) {
    l.faces.push_back({t[0], t[2], t[1]});
    l.faces.push_back({t[0] + 6, t[1] + 6, t[2] + 6});
  }
  for (int i = 0; i < 6; ++i) {
    const int j = (i + 1) % 6;
    l.faces.push_back({i, j, j + 6});
    l.faces.push_back({i, j + 6, i + 6});
  }
  l.compute_vertex_normals();
  const Vec3 com = center_of_mass(l);

  // Monte-Carlo oracle over the analytic union of the two boxes
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> ux(0.0, 2 * s);
  std::uniform_real_distribution<double> uy(0.0, 2 * s);
  std::uniform_real_distribution<double> uz(0.0, s);
  Vec3 sum = Vec3::Zero();
  long inside = 0;
  for (long i = 0; i < 1000000; ++i) {
    const Vec3 p(ux(rng), uy(rng), uz(rng));
    const bool in_a = p.x() <= 2 * s && p.y() <= s;
    const bool in_b = p.x() <= s && p.y() >= s && p.y() <= 2 * s;
    if (in_a || in_b) {
      sum += p;
      ++inside;
    }
  }
  const Vec3 mc = sum / static_cast<double>(inside);
  const double err = (com - mc).norm();
  c.check(err < 1e-3, fmt("L-solid centroid off the Monte-Carlo oracle by %.4g m", err));
}

}  // namespace

int main() {
  std::printf("suctionbench acceptance suite\n");
  criterion_1_flat_plate();
  criterion_2_sphere_monotonicity();
  criterion_3_rigid_invariance();
  criterion_4_mass_ranking();
  criterion_5_metric_oracle();
  criterion_6_nms_contract();
  criterion_7_geometry_oracles();
  criterion_8_end_to_end();
  criterion_9_center_of_mass();
  if (failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criterion(s) FAILED\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
