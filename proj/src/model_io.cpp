#include "cardio/model_io.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

namespace cardio {

using nlohmann::json;

namespace {

json vector_to_json(const Eigen::Ref<const RowVector>& v) {
  json a = json::array();
  for (Index j = 0; j < v.size(); ++j) a.push_back(v(j));
  return a;
}

RowVector vector_from_json(const json& a, Index arity, const char* what) {
  if (!a.is_array() || static_cast<Index>(a.size()) != arity)
    throw std::runtime_error(std::string("invalid model: ") + what + " has wrong length");
  RowVector v(arity);
  for (Index j = 0; j < arity; ++j) v(j) = a[static_cast<std::size_t>(j)].get<double>();
  return v;
}

}  // namespace

std::string model_to_json(const ClusterModel& m) {
  json doc;
  doc["format_version"] = kModelFormatVersion;
  doc["k"] = m.k;
  doc["n"] = m.n();
  doc["feature_names"] = m.feature_names;
  doc["config"] = {{"metric", kMetricTag},
                   {"ordering", kOrderingTag},
                   {"max_passes", m.max_passes}};
  json segments = json::array();
  for (Index c = 0; c < m.k; ++c) {
    const auto& members = m.members[static_cast<std::size_t>(c)];
    json seg;
    seg["members"] = members;
    seg["size"] = members.size();
    seg["centroid"] = vector_to_json(m.centroids.row(c));
    seg["mean"] = vector_to_json(m.stats.mean.row(c));
    seg["stddev"] = vector_to_json(m.stats.stddev.row(c));
    seg["weight"] = m.stats.weight(c);
    segments.push_back(std::move(seg));
  }
  doc["segments"] = std::move(segments);
  doc["wcss"] = m.wcss;
  doc["passes"] = m.passes;
  doc["moves"] = m.moves;
  doc["converged"] = m.converged;
  return doc.dump(2) + "\n";
}

ClusterModel model_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("invalid model: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw std::runtime_error("invalid model: top level is not an object");
    if (doc.at("format_version").get<int>() != kModelFormatVersion)
      throw std::runtime_error("invalid model: unsupported format_version");

    ClusterModel m;
    m.k = doc.at("k").get<Index>();
    m.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
    const Index arity = static_cast<Index>(m.feature_names.size());
    if (m.k < 1 || arity < 1) throw std::runtime_error("invalid model: empty k or feature list");

    const json& segments = doc.at("segments");
    if (!segments.is_array() || static_cast<Index>(segments.size()) != m.k)
      throw std::runtime_error("invalid model: segment count does not match k");

    m.centroids = Matrix::Zero(m.k, arity);
    m.stats.mean = Matrix::Zero(m.k, arity);
    m.stats.stddev = Matrix::Zero(m.k, arity);
    m.stats.weight = Vector::Zero(m.k);
    m.members.resize(static_cast<std::size_t>(m.k));
    Index total = 0;
    for (Index c = 0; c < m.k; ++c) {
      const json& seg = segments[static_cast<std::size_t>(c)];
      auto& members = m.members[static_cast<std::size_t>(c)];
      members = seg.at("members").get<std::vector<std::string>>();
      if (members.empty()) throw std::runtime_error("invalid model: empty segment");
      if (seg.at("size").get<Index>() != static_cast<Index>(members.size()))
        throw std::runtime_error("invalid model: segment size disagrees with its member list");
      m.centroids.row(c) = vector_from_json(seg.at("centroid"), arity, "centroid");
      m.stats.mean.row(c) = vector_from_json(seg.at("mean"), arity, "mean");
      m.stats.stddev.row(c) = vector_from_json(seg.at("stddev"), arity, "stddev");
      m.stats.weight(c) = seg.at("weight").get<double>();
      total += static_cast<Index>(members.size());
    }
    if (doc.at("n").get<Index>() != total)
      throw std::runtime_error("invalid model: n disagrees with the segment sizes");

    const json& config = doc.at("config");
    if (config.at("metric").get<std::string>() != kMetricTag ||
        config.at("ordering").get<std::string>() != kOrderingTag)
      throw std::runtime_error("invalid model: unknown metric or ordering");
    m.max_passes = config.at("max_passes").get<Index>();

    m.wcss = doc.at("wcss").get<double>();
    m.passes = doc.at("passes").get<Index>();
    m.moves = doc.at("moves").get<Index>();
    m.converged = doc.at("converged").get<bool>();
    return m;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("invalid model: ") + e.what());
  }
}

std::string report_to_json(const TriageReport& r) {
  json doc;
  doc["query_id"] = r.query_id;
  json q = json::array();
  for (Index j = 0; j < r.query.size(); ++j) q.push_back(static_cast<long long>(r.query(j)));
  doc["query"] = std::move(q);
  doc["cluster"] = r.cluster;
  doc["distance"] = r.distance;
  doc["cluster_distances"] = vector_to_json(r.cluster_distances.transpose());
  if (r.category.has_value())
    doc["category"] = to_string(*r.category);
  else
    doc["category"] = nullptr;
  doc["precedents"] = r.precedents;
  json risk;
  risk["id"] = r.risk.id;
  risk["lag"] = r.risk.lag;
  risk["r"] = r.risk.r;
  risk["defined"] = r.risk.defined;
  if (r.risk.category.has_value())
    risk["category"] = to_string(*r.risk.category);
  else
    risk["category"] = nullptr;
  doc["risk"] = std::move(risk);
  return doc.dump(2) + "\n";
}

}  // namespace cardio
