#pragma once

#include <optional>
#include <string>
#include <vector>

#include "suctionbench/scene.hpp"
#include "suctionbench/seal.hpp"

namespace suctionbench {

/// A submitted suction pose with its ranking confidence.
struct Prediction {
  SuctionPose pose;
  double confidence = 0.0;
};

struct EvalConfig {
  std::vector<double> thresholds{0.2, 0.4, 0.6, 0.8};
  int top_k = 50;
  int per_object_cap = 10;
  double nms_radius = 0.02;            // meters, translation-only
  double association_max_dist = 0.05;  // meters

  void validate() const;
};

/// Metrics for one scene (or a split aggregate). ap_s / ap_s_top1 are
/// parallel to EvalConfig::thresholds.
struct SceneMetrics {
  std::vector<double> ap_s;
  std::vector<double> ap_s_top1;
  double ap = 0.0;
  double ap_top1 = 0.0;
  int evaluated = 0;
  int suppressed = 0;
  int unassociated = 0;
  bool failed = false;
  std::string error;
};

struct EvalReport {
  std::vector<std::pair<std::string, SceneMetrics>> scenes;
  SceneMetrics aggregate;
};

/// Instance index whose surface is nearest the point; nullopt when every
/// object is farther than max_dist.
std::optional<int> associate(const Vec3& point, const SceneGeometry& geometry, double max_dist);

/// Analytic score of one prediction: seal on the associated object's local
/// geometry times the scene wrench score; 0 when unassociated.
double score_prediction(const Prediction& pred, const SceneGeometry& geometry,
                        const CupModel& cup, const SealParams& seal_params,
                        const WrenchParams& wrench_params, double association_max_dist);

/// Greedy confidence-descending NMS (ties keep input order): a prediction is
/// dropped when it lies within nms_radius of a kept one or its associated
/// object already holds per_object_cap kept predictions. Returns indices
/// into preds, in kept order.
std::vector<int> nms(const std::vector<Prediction>& preds,
                     const std::vector<std::optional<int>>& associations,
                     const EvalConfig& config);

/// Fraction of the top-k entries scoring strictly above the threshold;
/// missing entries (fewer than k scores) count as negatives.
double precision_at_k(const std::vector<double>& scores, int k, double threshold);

/// AP_s (mean of P@k for k = 1..top_k), AP (mean of AP_s over thresholds),
/// and their top-1 variants, for one ranked score list.
SceneMetrics ap_metrics(const std::vector<double>& ranked_scores, const EvalConfig& config);

/// Full single-scene evaluation: associate, NMS, analytic scoring of the
/// top-k survivors by confidence rank, then the metrics.
SceneMetrics evaluate_scene(const SceneGeometry& geometry, std::vector<Prediction> preds,
                            const CupModel& cup, const SealParams& seal_params,
                            const WrenchParams& wrench_params, const EvalConfig& config);

/// Mean of per-scene metrics; failed scenes contribute zero metrics.
SceneMetrics aggregate_metrics(const std::vector<SceneMetrics>& scenes,
                               const EvalConfig& config);

}  // namespace suctionbench
