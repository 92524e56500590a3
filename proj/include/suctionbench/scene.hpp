#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "suctionbench/camera.hpp"
#include "suctionbench/geometry.hpp"
#include "suctionbench/sampling.hpp"
#include "suctionbench/seal.hpp"
#include "suctionbench/spatial_index.hpp"
#include "suctionbench/wrench.hpp"

namespace suctionbench {

/// One placed object: registry id plus object-to-world pose.
struct ObjectInstance {
  std::string object_id;
  RigidTransform pose;
};

/// A composed tabletop scene. The table is the world plane z = 0; camera
/// poses map camera frames to world.
struct Scene {
  std::vector<ObjectInstance> instances;
  std::vector<RigidTransform> camera_poses;
  CameraIntrinsics intrinsics;
  Vec3 gravity_direction = -Vec3::UnitZ();
  std::map<std::string, std::string> mesh_registry;  // object id -> mesh path
};

/// Suction end-effector approximated as a cylinder along the approach
/// direction for collision checking.
struct CollisionParams {
  double radius = 0.012;            // meters
  double height = 0.05;
  double start_offset = 0.002;      // cylinder base offset along u from the contact
  double exclusion_radius = 0.005;  // ball around the contact ignored (target surface)

  void validate() const;
};

/// Per-object geometry bundle shared by annotation and evaluation.
struct ObjectGeometry {
  TriangleMesh mesh;
  MeshBvh bvh;
  PointCloud surface;     // dense surface samples with normals, object frame
  KdTree surface_index;
  Vec3 com = Vec3::Zero();
  bool has_com = false;   // false for non-watertight meshes
};

ObjectGeometry build_object_geometry(TriangleMesh mesh, double sample_spacing);

/// Scene-wide caches: shared object geometry, per-instance world-frame
/// surface clouds, and the merged cloud used for collision queries.
class SceneGeometry {
 public:
  SceneGeometry(const Scene& scene,
                std::map<std::string, std::shared_ptr<const ObjectGeometry>> objects);

  const Scene& scene() const { return scene_; }
  const ObjectGeometry& object(const std::string& id) const;
  const ObjectGeometry& instance_object(int instance) const;
  const KdTree& instance_surface_index(int instance) const;
  const PointCloud& merged_cloud() const { return merged_cloud_; }
  const KdTree& merged_index() const { return merged_index_; }
  Vec3 instance_com_world(int instance) const;
  int instance_count() const { return static_cast<int>(scene_.instances.size()); }

 private:
  Scene scene_;
  std::map<std::string, std::shared_ptr<const ObjectGeometry>> objects_;
  std::vector<std::vector<Vec3>> instance_points_;  // world frame
  std::vector<KdTree> instance_indices_;
  PointCloud merged_cloud_;  // object_ids hold instance indices
  KdTree merged_index_;
};

/// Pose of object j in frame i from its pose in frame 0 and both camera
/// poses: P_i = cam_i^-1 * cam_0 * P_0.
RigidTransform propagate_pose(const RigidTransform& cam_i, const RigidTransform& cam_0,
                              const RigidTransform& pose_0);

/// Object-frame suction poses into the world: points by the full transform
/// cam_0 * instance.pose, directions by its rotation.
std::vector<SuctionPose> project_suctions(const ObjectInstance& instance,
                                          const RigidTransform& cam_0,
                                          const std::vector<SuctionPose>& object_frame);

/// True when any cloud point (outside the exclusion ball around the contact)
/// lies inside the end-effector cylinder.
bool check_collision(const KdTree& scene_cloud, const SuctionPose& pose,
                     const CollisionParams& params);

/// One object-frame candidate with its precomputed seal factors.
struct ObjectCandidate {
  SuctionPose pose;
  double s_seal = 0.0;
  double s_deform = 0.0;
  double s_fit = 0.0;
};

struct AnnotationRecord {
  int instance = -1;
  std::string object_id;
  Vec3 point = Vec3::Zero();      // world frame
  Vec3 direction = Vec3::UnitZ(); // world frame
  double s_seal = 0.0;
  double s_wrench = 0.0;
  double s = 0.0;
  bool collision_free = true;
};

struct SceneAnnotation {
  std::vector<AnnotationRecord> records;
  std::vector<std::string> warnings;  // e.g. instance interpenetration
};

/// Projects per-object candidates into the scene, attaches wrench scores and
/// collision flags, and keeps colliding records flagged rather than dropped.
/// Records are ordered by (object id, instance, candidate index).
/// Throws on an empty scene or a missing candidate set.
SceneAnnotation annotate_scene(const SceneGeometry& geometry,
                               const std::map<std::string, std::vector<ObjectCandidate>>& candidates,
                               const WrenchParams& wrench_params,
                               const CollisionParams& collision_params);

/// Nearest-hit depth render; rays that miss every object fall through to the
/// table plane z = 0, and upward misses give 0 (invalid).
DepthImage render_depth(const SceneGeometry& geometry, const CameraIntrinsics& intr,
                        const RigidTransform& camera_pose);

}  // namespace suctionbench
