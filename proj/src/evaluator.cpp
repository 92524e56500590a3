#include "suctionbench/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace suctionbench {

void EvalConfig::validate() const {
  if (thresholds.empty()) throw std::invalid_argument("no evaluation thresholds");
  if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
    throw std::invalid_argument("thresholds must be sorted ascending");
  }
  for (double s : thresholds) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("thresholds must lie in (0, 1)");
  }
  if (top_k < 1 || per_object_cap < 1) throw std::invalid_argument("caps must be positive");
  if (!(nms_radius > 0.0) || !(association_max_dist > 0.0)) {
    throw std::invalid_argument("radii must be positive");
  }
}

std::optional<int> associate(const Vec3& point, const SceneGeometry& geometry, double max_dist) {
  double best = 0.0;
  const int idx = geometry.merged_index().nearest(point, &best);
  if (idx < 0 || best > max_dist) return std::nullopt;
  return geometry.merged_cloud().object_ids[static_cast<std::size_t>(idx)];
}

double score_prediction(const Prediction& pred, const SceneGeometry& geometry,
                        const CupModel& cup, const SealParams& seal_params,
                        const WrenchParams& wrench_params, double association_max_dist) {
  const auto instance = associate(pred.pose.point, geometry, association_max_dist);
  if (!instance) return 0.0;

  const auto& scene_instance =
      geometry.scene().instances[static_cast<std::size_t>(*instance)];
  const auto& geo = geometry.instance_object(*instance);

  // Seal depends only on local object geometry: evaluate in the object frame.
  const RigidTransform world_to_object = invert(scene_instance.pose);
  const SuctionPose local{world_to_object.apply(pred.pose.point),
                          world_to_object.rotate(pred.pose.direction)};
  const SealScore seal = seal_score(geo.bvh, geo.surface_index, local, cup, seal_params);

  WrenchParams scene_wrench = wrench_params;
  scene_wrench.gravity_direction = geometry.scene().gravity_direction.normalized();
  const WrenchResult wrench =
      wrench_score(pred.pose, geometry.instance_com_world(*instance), scene_wrench);

  return seal.seal * wrench.score;
}

std::vector<int> nms(const std::vector<Prediction>& preds,
                     const std::vector<std::optional<int>>& associations,
                     const EvalConfig& config) {
  config.validate();
  if (associations.size() != preds.size()) {
    throw std::invalid_argument("one association per prediction required");
  }

  std::vector<int> rank(preds.size());
  std::iota(rank.begin(), rank.end(), 0);
  std::stable_sort(rank.begin(), rank.end(), [&](int a, int b) {
    return preds[static_cast<std::size_t>(a)].confidence >
           preds[static_cast<std::size_t>(b)].confidence;
  });

  std::vector<int> kept;
  std::map<int, int> per_object;
  for (int idx : rank) {
    const auto& pred = preds[static_cast<std::size_t>(idx)];
    bool suppressed = false;
    for (int k : kept) {
      if ((preds[static_cast<std::size_t>(k)].pose.point - pred.pose.point).norm() <=
          config.nms_radius) {
        suppressed = true;
        break;
      }
    }
    if (!suppressed && associations[static_cast<std::size_t>(idx)]) {
      const int object = *associations[static_cast<std::size_t>(idx)];
      if (per_object[object] >= config.per_object_cap) suppressed = true;
    }
    if (suppressed) continue;
    kept.push_back(idx);
    if (associations[static_cast<std::size_t>(idx)]) {
      ++per_object[*associations[static_cast<std::size_t>(idx)]];
    }
  }
  return kept;
}

double precision_at_k(const std::vector<double>& scores, int k, double threshold) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  int positives = 0;
  const int n = std::min<int>(k, static_cast<int>(scores.size()));
  for (int i = 0; i < n; ++i) {
    if (scores[static_cast<std::size_t>(i)] > threshold) ++positives;
  }
  return static_cast<double>(positives) / static_cast<double>(k);
}

SceneMetrics ap_metrics(const std::vector<double>& ranked_scores, const EvalConfig& config) {
  config.validate();
  SceneMetrics m;
  m.ap_s.reserve(config.thresholds.size());
  m.ap_s_top1.reserve(config.thresholds.size());
  for (double s : config.thresholds) {
    double sum = 0.0;
    for (int k = 1; k <= config.top_k; ++k) sum += precision_at_k(ranked_scores, k, s);
    m.ap_s.push_back(sum / config.top_k);
    m.ap_s_top1.push_back(precision_at_k(ranked_scores, 1, s));
  }
  double ap = 0.0;
  double ap_top1 = 0.0;
  for (std::size_t i = 0; i < config.thresholds.size(); ++i) {
    ap += m.ap_s[i];
    ap_top1 += m.ap_s_top1[i];
  }
  m.ap = ap / static_cast<double>(config.thresholds.size());
  m.ap_top1 = ap_top1 / static_cast<double>(config.thresholds.size());
  return m;
}

SceneMetrics evaluate_scene(const SceneGeometry& geometry, std::vector<Prediction> preds,
                            const CupModel& cup, const SealParams& seal_params,
                            const WrenchParams& wrench_params, const EvalConfig& config) {
  config.validate();
  std::vector<std::optional<int>> associations;
  associations.reserve(preds.size());
  for (const auto& pred : preds) {
    associations.push_back(associate(pred.pose.point, geometry, config.association_max_dist));
  }

  const std::vector<int> kept = nms(preds, associations, config);

  std::vector<double> scores;
  scores.reserve(static_cast<std::size_t>(config.top_k));
  int unassociated = 0;
  for (std::size_t i = 0; i < kept.size() && i < static_cast<std::size_t>(config.top_k); ++i) {
    const int idx = kept[i];
    if (!associations[static_cast<std::size_t>(idx)]) {
      ++unassociated;
      scores.push_back(0.0);
      continue;
    }
    scores.push_back(score_prediction(preds[static_cast<std::size_t>(idx)], geometry, cup,
                                      seal_params, wrench_params,
                                      config.association_max_dist));
  }

  SceneMetrics m = ap_metrics(scores, config);
  m.evaluated = static_cast<int>(scores.size());
  m.suppressed = static_cast<int>(preds.size() - kept.size());
  m.unassociated = unassociated;
  return m;
}

SceneMetrics aggregate_metrics(const std::vector<SceneMetrics>& scenes,
                               const EvalConfig& config) {
  SceneMetrics agg;
  agg.ap_s.assign(config.thresholds.size(), 0.0);
  agg.ap_s_top1.assign(config.thresholds.size(), 0.0);
  if (scenes.empty()) return agg;
  for (const auto& m : scenes) {
    if (m.failed) continue;  // failure entries pull the mean toward zero
    for (std::size_t i = 0; i < config.thresholds.size(); ++i) {
      agg.ap_s[i] += m.ap_s[i];
      agg.ap_s_top1[i] += m.ap_s_top1[i];
    }
    agg.ap += m.ap;
    agg.ap_top1 += m.ap_top1;
    agg.evaluated += m.evaluated;
    agg.suppressed += m.suppressed;
    agg.unassociated += m.unassociated;
  }
  const double n = static_cast<double>(scenes.size());
  for (std::size_t i = 0; i < config.thresholds.size(); ++i) {
    agg.ap_s[i] /= n;
    agg.ap_s_top1[i] /= n;
  }
  agg.ap /= n;
  agg.ap_top1 /= n;
  return agg;
}

}  // namespace suctionbench
