#include "cardio/kmeans.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace cardio {

namespace {

struct Nearest {
  Index segment;
  double sq_distance;
};

// Strict < keeps the lowest index on ties.
Nearest nearest_centroid(const Matrix& centroids, const Eigen::Ref<const RowVector>& x) {
  Index best = 0;
  double best_d = (x - centroids.row(0)).squaredNorm();
  for (Index c = 1; c < centroids.rows(); ++c) {
    const double d = (x - centroids.row(c)).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return {best, best_d};
}

void check_state_shape(const ClusterState& s, const Dataset& d) {
  if (static_cast<Index>(s.assignment.size()) != d.size())
    throw std::invalid_argument("state does not cover the dataset");
  if (s.centroids.cols() != d.arity())
    throw std::invalid_argument("state arity does not match the dataset");
  if (static_cast<Index>(s.sizes.size()) != s.k())
    throw std::invalid_argument("state size table does not match k");
}

ClusterStats stats_over(const std::vector<std::vector<Index>>& members, const Dataset& d,
                        Index n_total) {
  const Index k = static_cast<Index>(members.size());
  const Index arity = d.arity();
  ClusterStats st;
  st.mean = Matrix::Zero(k, arity);
  st.stddev = Matrix::Zero(k, arity);
  st.weight = Vector::Zero(k);
  for (Index c = 0; c < k; ++c) {
    const auto& rows = members[static_cast<std::size_t>(c)];
    const Index nc = static_cast<Index>(rows.size());
    if (nc == 0) throw std::invalid_argument("segment " + std::to_string(c) + " is empty");
    for (Index p : rows) st.mean.row(c) += d.features.row(p);
    st.mean.row(c) /= static_cast<double>(nc);
    for (Index p : rows)
      st.stddev.row(c) += (d.features.row(p) - st.mean.row(c)).array().square().matrix();
    st.stddev.row(c) = (st.stddev.row(c) / static_cast<double>(nc)).array().sqrt();
    st.weight(c) = static_cast<double>(nc) / static_cast<double>(n_total);
  }
  return st;
}

std::vector<std::vector<Index>> members_by_index(const ClusterState& s) {
  std::vector<std::vector<Index>> members(static_cast<std::size_t>(s.k()));
  for (std::size_t p = 0; p < s.assignment.size(); ++p) {
    const Index c = s.assignment[p];
    if (c != kUnassigned) members[static_cast<std::size_t>(c)].push_back(static_cast<Index>(p));
  }
  return members;
}

}  // namespace

bool ClusterState::fully_assigned() const {
  return std::none_of(assignment.begin(), assignment.end(),
                      [](Index c) { return c == kUnassigned; });
}

Index ClusterModel::n() const {
  return std::accumulate(members.begin(), members.end(), Index{0},
                         [](Index acc, const auto& m) {
                           return acc + static_cast<Index>(m.size());
                         });
}

ClusterState seed_initial(const Dataset& d, Index k) {
  const Index n = d.size();
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (k > n)
    throw std::invalid_argument("k (" + std::to_string(k) + ") exceeds the record count (" +
                                std::to_string(n) + ")");
  ClusterState s;
  s.centroids = d.features.topRows(k);
  s.assignment.assign(static_cast<std::size_t>(n), kUnassigned);
  s.sizes.assign(static_cast<std::size_t>(k), 1);
  for (Index i = 0; i < k; ++i) s.assignment[static_cast<std::size_t>(i)] = i;
  return s;
}

void assign_remaining(ClusterState& s, const Dataset& d) {
  check_state_shape(s, d);
  const Index n = d.size();
  const Index k = s.k();
  for (Index i = 0; i < k; ++i)
    if (s.assignment[static_cast<std::size_t>(i)] != i)
      throw std::invalid_argument("assign_remaining expects a freshly seeded state");
  bool any = false;
  for (Index p = k; p < n; ++p) {
    if (s.assignment[static_cast<std::size_t>(p)] != kUnassigned)
      throw std::invalid_argument("assign_remaining expects a freshly seeded state");
    const Nearest near = nearest_centroid(s.centroids, d.features.row(p));
    s.assignment[static_cast<std::size_t>(p)] = near.segment;
    s.sizes[static_cast<std::size_t>(near.segment)] += 1;
    s.centroids.row(near.segment) +=
        (d.features.row(p) - s.centroids.row(near.segment)) /
        static_cast<double>(s.sizes[static_cast<std::size_t>(near.segment)]);
    any = true;
  }
  // cap incremental drift before refinement starts
  if (any) s.centroids = recompute_centroids(s, d);
}

Index refine_pass(ClusterState& s, const Dataset& d, const MoveObserver& on_move) {
  check_state_shape(s, d);
  if (!s.fully_assigned()) throw std::invalid_argument("refine_pass expects a complete assignment");
  for (Index c = 0; c < s.k(); ++c)
    if (s.sizes[static_cast<std::size_t>(c)] < 1)
      throw std::invalid_argument("refine_pass expects no empty segment");

  const Index n = d.size();
  Index moves = 0;
  for (Index p = 0; p < n; ++p) {
    const Index cur = s.assignment[static_cast<std::size_t>(p)];
    const auto x = d.features.row(p);
    const double d_cur = (x - s.centroids.row(cur)).squaredNorm();
    const Nearest near = nearest_centroid(s.centroids, x);
    if (near.segment == cur || !(near.sq_distance < d_cur)) continue;
    if (s.sizes[static_cast<std::size_t>(cur)] <= 1) continue;  // never empty a segment

    s.sizes[static_cast<std::size_t>(near.segment)] += 1;
    s.centroids.row(near.segment) +=
        (x - s.centroids.row(near.segment)) /
        static_cast<double>(s.sizes[static_cast<std::size_t>(near.segment)]);
    s.sizes[static_cast<std::size_t>(cur)] -= 1;
    s.centroids.row(cur) += (s.centroids.row(cur) - x) /
                            static_cast<double>(s.sizes[static_cast<std::size_t>(cur)]);
    s.assignment[static_cast<std::size_t>(p)] = near.segment;
    ++moves;
    if (on_move) on_move(s);
  }
  // converged passes leave the state untouched bit for bit
  if (moves > 0) s.centroids = recompute_centroids(s, d);
  return moves;
}

ClusterModel run(const Dataset& d, Index k, const KMeansConfig& config,
                 const MoveObserver& on_move) {
  if (config.max_passes && *config.max_passes < 0)
    throw std::invalid_argument("max_passes must be nonnegative");

  ClusterState s = seed_initial(d, k);
  assign_remaining(s, d);

  const Index cap = config.max_passes ? *config.max_passes : 100 * d.size();
  Index passes = 0;
  Index total_moves = 0;
  bool converged = false;
  while (passes < cap) {
    const Index moved = refine_pass(s, d, on_move);
    ++passes;
    total_moves += moved;
    if (moved == 0) {
      converged = true;
      break;
    }
  }

  ClusterModel m;
  m.k = k;
  m.feature_names = d.schema.names;
  m.centroids = s.centroids;
  m.members.resize(static_cast<std::size_t>(k));
  for (Index p = 0; p < d.size(); ++p)
    m.members[static_cast<std::size_t>(s.assignment[static_cast<std::size_t>(p)])].push_back(
        d.ids[static_cast<std::size_t>(p)]);
  m.stats = stats_over(members_by_index(s), d, d.size());
  m.wcss = wcss(s, d);
  m.passes = passes;
  m.moves = total_moves;
  m.converged = converged;
  m.max_passes = cap;
  return m;
}

double wcss(const ClusterState& s, const Dataset& d) {
  check_state_shape(s, d);
  if (!s.fully_assigned())
    throw std::invalid_argument("wcss requires every patient to be assigned");
  double total = 0.0;
  for (Index p = 0; p < d.size(); ++p) {
    const Index c = s.assignment[static_cast<std::size_t>(p)];
    total += (d.features.row(p) - s.centroids.row(c)).squaredNorm();
  }
  return total;
}

Matrix recompute_centroids(const ClusterState& s, const Dataset& d) {
  check_state_shape(s, d);
  const Index k = s.k();
  Matrix sums = Matrix::Zero(k, d.arity());
  std::vector<Index> counts(static_cast<std::size_t>(k), 0);
  for (Index p = 0; p < d.size(); ++p) {
    const Index c = s.assignment[static_cast<std::size_t>(p)];
    if (c == kUnassigned) continue;
    sums.row(c) += d.features.row(p);
    counts[static_cast<std::size_t>(c)] += 1;
  }
  for (Index c = 0; c < k; ++c) {
    if (counts[static_cast<std::size_t>(c)] == 0)
      throw std::invalid_argument("segment " + std::to_string(c) + " has no members");
    sums.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
  }
  return sums;
}

ClusterStats cluster_stats(const ClusterModel& m, const Dataset& d) {
  const std::vector<Index> assignment = assignment_of(m, d);
  std::vector<std::vector<Index>> members(static_cast<std::size_t>(m.k));
  for (std::size_t p = 0; p < assignment.size(); ++p)
    members[static_cast<std::size_t>(assignment[p])].push_back(static_cast<Index>(p));
  return stats_over(members, d, d.size());
}

std::vector<Index> assignment_of(const ClusterModel& m, const Dataset& d) {
  std::unordered_map<std::string, Index> position;
  for (Index p = 0; p < d.size(); ++p) position[d.ids[static_cast<std::size_t>(p)]] = p;

  std::vector<Index> assignment(static_cast<std::size_t>(d.size()), kUnassigned);
  for (std::size_t c = 0; c < m.members.size(); ++c) {
    for (const std::string& id : m.members[c]) {
      const auto it = position.find(id);
      if (it == position.end())
        throw std::invalid_argument("model member '" + id + "' is not in the dataset");
      if (assignment[static_cast<std::size_t>(it->second)] != kUnassigned)
        throw std::invalid_argument("model assigns '" + id + "' to two segments");
      assignment[static_cast<std::size_t>(it->second)] = static_cast<Index>(c);
    }
  }
  for (Index p = 0; p < d.size(); ++p)
    if (assignment[static_cast<std::size_t>(p)] == kUnassigned)
      throw std::invalid_argument("model does not cover record '" +
                                  d.ids[static_cast<std::size_t>(p)] + "'");
  return assignment;
}

}  // namespace cardio
