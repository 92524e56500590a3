#include "suctionbench/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "suctionbench/errors.hpp"

namespace suctionbench {

void CollisionParams::validate() const {
  if (!(radius > 0.0) || !(height > 0.0) || !(start_offset > 0.0) ||
      !(exclusion_radius > 0.0)) {
    throw std::invalid_argument("collision parameters must be positive");
  }
}

ObjectGeometry build_object_geometry(TriangleMesh mesh, double sample_spacing) {
  ObjectGeometry geo;
  geo.mesh = std::move(mesh);
  geo.mesh.validate();
  if (geo.mesh.vertex_normals.size() != geo.mesh.vertices.size()) {
    geo.mesh.compute_vertex_normals();
  }
  geo.bvh = MeshBvh(geo.mesh);
  geo.surface = surface_sample_cloud(geo.mesh, sample_spacing);
  geo.surface_index = KdTree(geo.surface.points);
  if (geo.mesh.is_watertight()) {
    geo.com = center_of_mass(geo.mesh);
    geo.has_com = true;
  }
  return geo;
}

SceneGeometry::SceneGeometry(const Scene& scene,
                             std::map<std::string, std::shared_ptr<const ObjectGeometry>> objects)
    : scene_(scene), objects_(std::move(objects)) {
  scene_.intrinsics.validate();
  for (const auto& instance : scene_.instances) {
    if (objects_.find(instance.object_id) == objects_.end()) {
      throw Error("no geometry registered for object '" + instance.object_id + "'");
    }
    if (!instance.pose.is_valid(1e-6)) {
      throw Error("instance pose for '" + instance.object_id + "' is not a rigid transform");
    }
  }

  instance_points_.resize(scene_.instances.size());
  instance_indices_.resize(scene_.instances.size());
  for (std::size_t i = 0; i < scene_.instances.size(); ++i) {
    const auto& instance = scene_.instances[i];
    const auto& geo = *objects_.at(instance.object_id);
    instance_points_[i] = transform_points(instance.pose, geo.surface.points);
    instance_indices_[i] = KdTree(instance_points_[i]);
    for (const auto& p : instance_points_[i]) {
      merged_cloud_.points.push_back(p);
      merged_cloud_.object_ids.push_back(static_cast<int>(i));
    }
  }
  merged_index_ = KdTree(merged_cloud_.points);
}

const ObjectGeometry& SceneGeometry::object(const std::string& id) const {
  auto it = objects_.find(id);
  if (it == objects_.end()) throw Error("no geometry registered for object '" + id + "'");
  return *it->second;
}

const ObjectGeometry& SceneGeometry::instance_object(int instance) const {
  return object(scene_.instances[static_cast<std::size_t>(instance)].object_id);
}

const KdTree& SceneGeometry::instance_surface_index(int instance) const {
  return instance_indices_[static_cast<std::size_t>(instance)];
}

Vec3 SceneGeometry::instance_com_world(int instance) const {
  const auto& inst = scene_.instances[static_cast<std::size_t>(instance)];
  const auto& geo = object(inst.object_id);
  if (!geo.has_com) throw Error("object '" + inst.object_id + "' has no watertight volume");
  return inst.pose.apply(geo.com);
}

RigidTransform propagate_pose(const RigidTransform& cam_i, const RigidTransform& cam_0,
                              const RigidTransform& pose_0) {
  return compose(invert(cam_i), compose(cam_0, pose_0));
}

std::vector<SuctionPose> project_suctions(const ObjectInstance& instance,
                                          const RigidTransform& cam_0,
                                          const std::vector<SuctionPose>& object_frame) {
  const RigidTransform world = compose(cam_0, instance.pose);
  std::vector<SuctionPose> out;
  out.reserve(object_frame.size());
  for (const auto& s : object_frame) {
    out.push_back({world.apply(s.point), world.rotate(s.direction)});
  }
  return out;
}

bool check_collision(const KdTree& scene_cloud, const SuctionPose& pose,
                     const CollisionParams& params) {
  params.validate();
  const Vec3& u = pose.direction;
  const Vec3 base = pose.point + params.start_offset * u;
  const Vec3 mid = base + 0.5 * params.height * u;
  const double bound =
      std::sqrt(0.25 * params.height * params.height + params.radius * params.radius);

  for (int idx : scene_cloud.radius(mid, bound)) {
    const Vec3& q = scene_cloud.points()[static_cast<std::size_t>(idx)];
    if ((q - pose.point).norm() <= params.exclusion_radius) continue;
    const Vec3 w = q - base;
    const double axial = w.dot(u);
    if (axial < 0.0 || axial > params.height) continue;
    if ((w - axial * u).norm() <= params.radius) return true;
  }
  return false;
}

namespace {

// Max depth (meters) by which points of instance a sit inside instance b.
double penetration_depth(const SceneGeometry& geometry, int a, int b) {
  const auto& scene = geometry.scene();
  const auto& inst_b = scene.instances[static_cast<std::size_t>(b)];
  const auto& geo_b = geometry.instance_object(b);
  const RigidTransform world_to_b = invert(inst_b.pose);

  const auto& kd_a = geometry.instance_surface_index(a);
  const auto& kd_b = geometry.instance_surface_index(b);

  auto aabb = [](const std::vector<Vec3>& pts) {
    Vec3 lo = Vec3::Constant(std::numeric_limits<double>::max());
    Vec3 hi = Vec3::Constant(std::numeric_limits<double>::lowest());
    for (const auto& p : pts) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
    return std::make_pair(lo, hi);
  };
  const auto [lo_a, hi_a] = aabb(kd_a.points());
  const auto [lo_b, hi_b] = aabb(kd_b.points());
  for (int k = 0; k < 3; ++k) {
    if (hi_a[k] < lo_b[k] || hi_b[k] < lo_a[k]) return 0.0;
  }

  double depth = 0.0;
  for (const auto& p_world : kd_a.points()) {
    if ((p_world.array() < lo_b.array()).any() || (p_world.array() > hi_b.array()).any()) continue;
    double nearest = 0.0;
    kd_b.nearest(p_world, &nearest);
    if (nearest <= depth) continue;  // cannot improve the current max
    const Vec3 p_b = world_to_b.apply(p_world);
    if (point_inside_mesh(geo_b.bvh, p_b)) depth = std::max(depth, nearest);
  }
  return depth;
}

}  // namespace

SceneAnnotation annotate_scene(const SceneGeometry& geometry,
                               const std::map<std::string, std::vector<ObjectCandidate>>& candidates,
                               const WrenchParams& wrench_params,
                               const CollisionParams& collision_params) {
  const Scene& scene = geometry.scene();
  if (scene.instances.empty()) throw std::invalid_argument("scene has no instances to annotate");
  for (const auto& instance : scene.instances) {
    if (candidates.find(instance.object_id) == candidates.end()) {
      throw Error("no candidate annotation for object '" + instance.object_id + "'");
    }
  }

  SceneAnnotation annotation;

  for (int a = 0; a < geometry.instance_count(); ++a) {
    for (int b = 0; b < geometry.instance_count(); ++b) {
      if (a == b) continue;
      const double depth = penetration_depth(geometry, a, b);
      if (depth > 0.002) {
        annotation.warnings.push_back(
            "instance " + std::to_string(a) + " penetrates instance " + std::to_string(b) +
            " by " + std::to_string(depth * 1000.0) + " mm");
      }
    }
  }

  WrenchParams scene_wrench = wrench_params;
  scene_wrench.gravity_direction = scene.gravity_direction.normalized();

  // (object id, instance, candidate) gives the documented deterministic order.
  std::vector<int> order(scene.instances.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int lhs, int rhs) {
    const auto& l = scene.instances[static_cast<std::size_t>(lhs)].object_id;
    const auto& r = scene.instances[static_cast<std::size_t>(rhs)].object_id;
    return l != r ? l < r : lhs < rhs;
  });

  for (int inst_idx : order) {
    const auto& instance = scene.instances[static_cast<std::size_t>(inst_idx)];
    const Vec3 com_world = geometry.instance_com_world(inst_idx);
    for (const auto& candidate : candidates.at(instance.object_id)) {
      AnnotationRecord record;
      record.instance = inst_idx;
      record.object_id = instance.object_id;
      record.point = instance.pose.apply(candidate.pose.point);
      record.direction = instance.pose.rotate(candidate.pose.direction);
      record.s_seal = candidate.s_seal;  // local geometry: unchanged by the pose

      const SuctionPose world_pose{record.point, record.direction};
      record.s_wrench = wrench_score(world_pose, com_world, scene_wrench).score;
      record.s = record.s_seal * record.s_wrench;
      record.collision_free =
          !check_collision(geometry.merged_index(), world_pose, collision_params);
      annotation.records.push_back(std::move(record));
    }
  }
  return annotation;
}

DepthImage render_depth(const SceneGeometry& geometry, const CameraIntrinsics& intr,
                        const RigidTransform& camera_pose) {
  intr.validate();
  DepthImage depth = DepthImage::zeros(intr.width, intr.height);
  const Scene& scene = geometry.scene();

  struct InstanceFrame {
    const MeshBvh* bvh;
    RigidTransform world_to_object;
  };
  std::vector<InstanceFrame> frames;
  frames.reserve(scene.instances.size());
  for (std::size_t i = 0; i < scene.instances.size(); ++i) {
    frames.push_back({&geometry.instance_object(static_cast<int>(i)).bvh,
                      invert(scene.instances[i].pose)});
  }

  const Vec3 origin_world = camera_pose.translation;
  for (int v = 0; v < intr.height; ++v) {
    for (int u = 0; u < intr.width; ++u) {
      const Vec3 dir_cam = Vec3((u - intr.cx) / intr.fx, (v - intr.cy) / intr.fy, 1.0).normalized();
      const Vec3 dir_world = camera_pose.rotate(dir_cam);

      double best_t = std::numeric_limits<double>::infinity();
      if (std::abs(dir_world.z()) > 1e-12) {
        const double t_table = -origin_world.z() / dir_world.z();
        if (t_table > 1e-9) best_t = t_table;  // the table occludes anything behind it
      }
      for (const auto& frame : frames) {
        const Vec3 o = frame.world_to_object.apply(origin_world);
        const Vec3 d = frame.world_to_object.rotate(dir_world);
        if (auto hit = frame.bvh->raycast(o, d, best_t)) {
          best_t = std::min(best_t, hit->t);
        }
      }
      if (std::isfinite(best_t)) {
        // Depth images store camera-frame z, not ray length.
        depth.at(u, v) = static_cast<float>(best_t * dir_cam.z());
      }
    }
  }
  return depth;
}

}  // namespace suctionbench
