#include "suctionbench/seal.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace suctionbench {

double CupModel::rest_length() const {
  return 2.0 * radius * std::sin(M_PI / ring_vertices);
}

void CupModel::validate() const {
  if (!(radius > 0.0)) throw std::invalid_argument("cup radius must be positive");
  if (ring_vertices < 4) throw std::invalid_argument("cup needs at least 4 ring vertices");
}

void SealParams::validate() const {
  if (!(plane_fit_decay > 0.0)) throw std::invalid_argument("plane fit decay must be positive");
  if (!(neighborhood_factor > 0.0) || !(standoff_factor > 0.0) || !(max_cast_factor > 0.0)) {
    throw std::invalid_argument("seal geometry factors must be positive");
  }
  if (max_cast_factor <= standoff_factor) {
    throw std::invalid_argument("max cast factor must exceed the standoff factor");
  }
  if (!(binary_ratio_threshold > 0.0)) {
    throw std::invalid_argument("binary ratio threshold must be positive");
  }
}

bool ProjectionResult::all_hit() const {
  for (bool h : hit) {
    if (!h) return false;
  }
  return !hit.empty();
}

int ProjectionResult::miss_count() const {
  int n = 0;
  for (bool h : hit) n += h ? 0 : 1;
  return n;
}

Mat3 ring_frame(const Vec3& u) {
  const Vec3 seed = std::abs(u.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 e1 = (seed - seed.dot(u) * u).normalized();
  const Vec3 e2 = u.cross(e1);
  Mat3 frame;
  frame.col(0) = e1;
  frame.col(1) = e2;
  frame.col(2) = u;
  return frame;
}

ProjectionResult project_cup(const MeshBvh& index, const SuctionPose& pose, const CupModel& cup,
                             const SealParams& params,
                             const std::optional<Vec3>& ring_reference) {
  cup.validate();
  params.validate();
  if (!pose.is_valid()) throw std::invalid_argument("suction pose direction must be unit length");

  const Vec3& u = pose.direction;
  Vec3 e1, e2;
  if (ring_reference) {
    const Vec3 projected = *ring_reference - ring_reference->dot(u) * u;
    if (projected.norm() < 1e-9) {
      throw std::invalid_argument("ring reference is parallel to the suction direction");
    }
    e1 = projected.normalized();
    e2 = u.cross(e1);
  } else {
    const Mat3 frame = ring_frame(u);
    e1 = frame.col(0);
    e2 = frame.col(1);
  }

  const int n = cup.ring_vertices;
  const double standoff = params.standoff_factor * cup.radius;
  const double max_t = params.max_cast_factor * cup.radius;
  const Vec3 center = pose.point + standoff * u;

  ProjectionResult result;
  result.ring_hits.assign(static_cast<std::size_t>(n), Vec3::Zero());
  result.hit.assign(static_cast<std::size_t>(n), false);
  result.deformed_lengths.assign(static_cast<std::size_t>(n),
                                 std::numeric_limits<double>::quiet_NaN());

  for (int i = 0; i < n; ++i) {
    const double angle = 2.0 * M_PI * i / n;
    const Vec3 start = center + cup.radius * (std::cos(angle) * e1 + std::sin(angle) * e2);
    if (auto hit = index.raycast(start, -u, max_t)) {
      result.ring_hits[static_cast<std::size_t>(i)] = hit->point;
      result.hit[static_cast<std::size_t>(i)] = true;
    }
  }
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    if (result.hit[static_cast<std::size_t>(i)] && result.hit[static_cast<std::size_t>(j)]) {
      result.deformed_lengths[static_cast<std::size_t>(i)] =
          (result.ring_hits[static_cast<std::size_t>(j)] -
           result.ring_hits[static_cast<std::size_t>(i)])
              .norm();
    }
  }
  return result;
}

double change_ratio(double rest, double deformed) {
  if (!(rest > 0.0)) throw std::invalid_argument("spring rest length must be positive");
  return std::min(1.0, std::abs(deformed - rest) / rest);
}

double deformation_score(const std::vector<double>& ratios) {
  if (ratios.empty()) throw std::invalid_argument("no spring ratios to score");
  double worst = 0.0;
  for (double r : ratios) worst = std::max(worst, r);
  return 1.0 - worst;
}

PlaneFit plane_fit_score(const std::vector<Vec3>& points, double decay) {
  PlaneFit out;
  if (points.size() < 3) {
    out.degenerate = true;
    return out;
  }
  Vec3 centroid = Vec3::Zero();
  for (const auto& p : points) centroid += p;
  centroid /= static_cast<double>(points.size());

  Mat3 cov = Mat3::Zero();
  for (const auto& p : points) {
    const Vec3 d = p - centroid;
    cov += d * d.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Mat3> solver(cov);
  const Vec3 evals = solver.eigenvalues();
  if (evals[2] <= 0.0 || evals[1] <= 1e-12 * evals[2]) {
    out.degenerate = true;
    return out;
  }
  // Smallest eigenvalue is the summed squared orthogonal residual.
  out.mean_sq_error = std::max(0.0, evals[0]) / static_cast<double>(points.size());
  out.score = std::exp(-decay * out.mean_sq_error);
  return out;
}

SealScore seal_score(const MeshBvh& mesh_index, const KdTree& surface_index,
                     const SuctionPose& pose, const CupModel& cup, const SealParams& params,
                     const std::optional<Vec3>& ring_reference) {
  SealScore score;
  const ProjectionResult projection =
      project_cup(mesh_index, pose, cup, params, ring_reference);
  if (!projection.all_hit()) {
    score.any_miss = true;
    return score;  // any vertex off the object voids the seal
  }

  std::vector<double> ratios;
  ratios.reserve(projection.deformed_lengths.size());
  const double rest = cup.rest_length();
  for (double deformed : projection.deformed_lengths) {
    ratios.push_back(change_ratio(rest, deformed));
  }

  if (params.binary_deform_mode) {
    double worst = 0.0;
    for (double r : ratios) worst = std::max(worst, r);
    score.deform = worst <= params.binary_ratio_threshold ? 1.0 : 0.0;
    score.fit = 1.0;
    score.seal = score.deform;
    return score;
  }

  score.deform = deformation_score(ratios);

  std::vector<Vec3> neighborhood;
  const auto indices =
      surface_index.radius(pose.point, params.neighborhood_factor * cup.radius);
  neighborhood.reserve(indices.size());
  for (int idx : indices) neighborhood.push_back(surface_index.points()[static_cast<std::size_t>(idx)]);

  const PlaneFit fit = plane_fit_score(neighborhood, params.plane_fit_decay);
  score.fit = fit.score;
  score.degenerate_fit = fit.degenerate;
  score.seal = score.deform * score.fit;
  return score;
}

}  // namespace suctionbench
