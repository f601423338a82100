#pragma once

#include "cardio/autocorr.hpp"
#include "cardio/dataset.hpp"
#include "cardio/kmeans.hpp"
#include "cardio/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cardio {

struct Classification {
  Index cluster = 0;
  double distance = 0.0;  // Euclidean, for reporting
};

/// Nearest-centroid assignment of a query vector. The winner minimizes the
/// squared Euclidean distance (equivalently the Euclidean distance); ties go
/// to the lowest cluster index.
Classification classify(const ClusterModel& m, const Eigen::Ref<const RowVector>& query);

/// For a three-cluster model, ranks clusters by symptom load (the mean of
/// the centroid entries) and maps lowest -> Normal, middle -> ProCardiac,
/// highest -> Cardiac. Equal loads give the lower cluster index the lower
/// category. Any other k has no defined mapping and throws.
std::vector<TriageCategory> map_categories(const ClusterModel& m);

struct TriageReport {
  std::string query_id;
  RowVector query;
  Index cluster = 0;
  double distance = 0.0;       // Euclidean distance to the winning centroid
  Vector cluster_distances;    // Euclidean distance to every centroid
  std::optional<TriageCategory> category;  // set when the model has 3 clusters
  std::vector<std::string> precedents;     // members of the assigned cluster
  RiskScore risk;                          // lag-k autocorrelation of the query row
};

/// Builds a report from the model alone (no dataset checks). The category is
/// filled in only for three-cluster models.
TriageReport triage_query(const ClusterModel& m, const Eigen::Ref<const RowVector>& query,
                          Index lag, const RiskThresholds& thresholds,
                          const std::string& query_id = "query");

/// Full triage of a new patient against a model trained on `d` with k = 3:
/// nearest-cluster classification, category mapping, precedent patients, and
/// the query's own risk score.
TriageReport triage(const ClusterModel& m, const Dataset& d, const PatientRecord& q, Index lag,
                    const RiskThresholds& thresholds);

}  // namespace cardio
