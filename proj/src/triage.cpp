#include "cardio/triage.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cardio {

Classification classify(const ClusterModel& m, const Eigen::Ref<const RowVector>& query) {
  if (m.k < 1) throw std::invalid_argument("classify: model has no clusters");
  if (query.size() != m.arity())
    throw std::invalid_argument("classify: query has " + std::to_string(query.size()) +
                                " entries, model expects " + std::to_string(m.arity()));
  Index best = 0;
  double best_d = (query - m.centroids.row(0)).squaredNorm();
  for (Index c = 1; c < m.k; ++c) {
    const double d = (query - m.centroids.row(c)).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return {best, std::sqrt(best_d)};
}

std::vector<TriageCategory> map_categories(const ClusterModel& m) {
  if (m.k != 3)
    throw std::invalid_argument("category mapping is defined for exactly 3 clusters, model has " +
                                std::to_string(m.k));
  std::vector<Index> order(3);
  std::iota(order.begin(), order.end(), Index{0});
  const Vector load = m.centroids.rowwise().mean();
  std::sort(order.begin(), order.end(),
            [&](Index a, Index b) { return load(a) < load(b) || (load(a) == load(b) && a < b); });
  std::vector<TriageCategory> categories(3);
  categories[static_cast<std::size_t>(order[0])] = TriageCategory::Normal;
  categories[static_cast<std::size_t>(order[1])] = TriageCategory::ProCardiac;
  categories[static_cast<std::size_t>(order[2])] = TriageCategory::Cardiac;
  return categories;
}

TriageReport triage_query(const ClusterModel& m, const Eigen::Ref<const RowVector>& query,
                          Index lag, const RiskThresholds& thresholds,
                          const std::string& query_id) {
  const Classification cls = classify(m, query);

  TriageReport report;
  report.query_id = query_id;
  report.query = query;
  report.cluster = cls.cluster;
  report.distance = cls.distance;
  report.cluster_distances = Vector::Zero(m.k);
  for (Index c = 0; c < m.k; ++c)
    report.cluster_distances(c) = std::sqrt((query - m.centroids.row(c)).squaredNorm());
  if (m.k == 3) {
    report.category = map_categories(m)[static_cast<std::size_t>(cls.cluster)];
  }
  report.precedents = m.members[static_cast<std::size_t>(cls.cluster)];

  const AutocorrResult ac = autocorrelation(query, lag);
  RiskScore risk{query_id, lag, ac.value, ac.defined, {}};
  report.risk = categorize_risk({risk}, thresholds).front();
  return report;
}

TriageReport triage(const ClusterModel& m, const Dataset& d, const PatientRecord& q, Index lag,
                    const RiskThresholds& thresholds) {
  if (m.k != 3) throw std::invalid_argument("triage requires a 3-cluster model");
  if (m.feature_names != d.schema.names)
    throw std::invalid_argument("model features do not match the dataset schema");
  assignment_of(m, d);  // throws when the model does not cover the dataset
  if (q.features.size() != d.arity())
    throw std::invalid_argument("query has " + std::to_string(q.features.size()) +
                                " entries, schema expects " + std::to_string(d.arity()));
  for (Index j = 0; j < q.features.size(); ++j) {
    const double v = q.features(j);
    if (v != 0.0 && v != 1.0)
      throw std::invalid_argument("query entry " + std::to_string(j + 1) + " is not 0 or 1");
  }
  return triage_query(m, q.features, lag, thresholds, q.id);
}

}  // namespace cardio
