#pragma once

#include "cardio/dataset.hpp"
#include "cardio/types.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cardio {

inline constexpr Index kUnassigned = -1;

// Echoed into serialized models; the algorithm itself is fixed to these.
inline constexpr const char* kMetricTag = "squared-euclidean";
inline constexpr const char* kOrderingTag = "dataset";

/// Mid-run clustering state. Row i of `centroids` is the running mean of
/// segment i's members; patients not yet assigned carry kUnassigned.
struct ClusterState {
  Matrix centroids;               // k x arity
  std::vector<Index> assignment;  // one entry per patient
  std::vector<Index> sizes;       // one entry per segment

  Index k() const { return centroids.rows(); }
  bool fully_assigned() const;
};

struct KMeansConfig {
  /// Refinement pass cap; unset means 100 * N.
  std::optional<Index> max_passes;
};

/// Per-segment parameter estimates: feature means, population standard
/// deviations, and mixing proportions (segment size / N).
struct ClusterStats {
  Matrix mean;    // k x arity
  Matrix stddev;  // k x arity
  Vector weight;  // k
};

struct ClusterModel {
  Index k = 0;
  std::vector<std::string> feature_names;
  Matrix centroids;  // k x arity
  std::vector<std::vector<std::string>> members;  // per segment, dataset order
  ClusterStats stats;
  double wcss = 0.0;
  Index passes = 0;
  Index moves = 0;
  bool converged = false;
  Index max_passes = 0;  // resolved cap the run used

  Index arity() const { return centroids.cols(); }
  Index n() const;
};

/// Invoked after every executed reassignment during refinement.
using MoveObserver = std::function<void(const ClusterState&)>;

/// Segments 1..k start as singletons holding dataset records 1..k, in order;
/// everyone else is left unassigned.
ClusterState seed_initial(const Dataset& d, Index k);

/// Assigns every unassigned patient, in dataset order, to the segment with
/// the nearest centroid (ties go to the lowest segment index), updating the
/// gaining centroid after each assignment.
void assign_remaining(ClusterState& s, const Dataset& d);

/// One refinement pass in dataset order. A patient moves only when another
/// centroid is strictly closer and the move would not empty its current
/// segment; both affected centroids are updated immediately. Returns the
/// number of moves executed.
Index refine_pass(ClusterState& s, const Dataset& d, const MoveObserver& on_move = {});

/// Full sequential clustering: seed, assign, then refine until a pass makes
/// no move or the pass cap is hit. Deterministic given the dataset order, k,
/// and config.
ClusterModel run(const Dataset& d, Index k, const KMeansConfig& config = {},
                 const MoveObserver& on_move = {});

/// Sum over patients of squared Euclidean distance to their segment centroid.
double wcss(const ClusterState& s, const Dataset& d);

/// Batch recomputation of every centroid from the assignment alone.
Matrix recompute_centroids(const ClusterState& s, const Dataset& d);

ClusterStats cluster_stats(const ClusterModel& m, const Dataset& d);

/// Joins the model's member id lists back onto the dataset, returning the
/// per-patient segment index. Throws if the model does not cover the dataset.
std::vector<Index> assignment_of(const ClusterModel& m, const Dataset& d);

}  // namespace cardio
