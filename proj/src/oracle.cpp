#include "cardio/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cardio {

std::uint64_t stirling2(Index n, Index k) {
  if (n < 0 || k < 0) throw std::invalid_argument("stirling2 expects non-negative arguments");
  if (k > n) return 0;
  if (n == 0) return 1;  // k == 0 here
  if (k == 0) return 0;
  // S(i, j) = j * S(i-1, j) + S(i-1, j-1), one row at a time.
  std::vector<std::uint64_t> row(static_cast<std::size_t>(k) + 1, 0);
  row[0] = 1;  // S(0, 0)
  for (Index i = 1; i <= n; ++i) {
    for (Index j = std::min(i, k); j >= 1; --j)
      row[static_cast<std::size_t>(j)] = static_cast<std::uint64_t>(j) * row[static_cast<std::size_t>(j)] +
                                         row[static_cast<std::size_t>(j) - 1];
    row[0] = 0;  // S(i, 0) = 0 for i >= 1
  }
  return row[static_cast<std::size_t>(k)];
}

namespace {

void enumerate(std::vector<Index>& labels, Index i, Index used, Index k,
               const std::function<void(std::span<const Index>)>& visit) {
  const Index n = static_cast<Index>(labels.size());
  if (used + (n - i) < k) return;  // not enough positions left to open k blocks
  if (i == n) {
    if (used == k) visit(std::span<const Index>(labels.data(), labels.size()));
    return;
  }
  const Index top = std::min(used, k - 1);
  for (Index label = 0; label <= top; ++label) {
    labels[static_cast<std::size_t>(i)] = label;
    enumerate(labels, i + 1, used + (label == used ? 1 : 0), k, visit);
  }
}

}  // namespace

void for_each_partition(Index n, Index k,
                        const std::function<void(std::span<const Index>)>& visit) {
  if (n < 1) throw std::invalid_argument("partition enumeration needs at least one item");
  if (k < 1 || k > n)
    throw std::invalid_argument("cannot split " + std::to_string(n) + " items into " +
                                std::to_string(k) + " non-empty blocks");
  std::vector<Index> labels(static_cast<std::size_t>(n), 0);
  enumerate(labels, 0, 0, k, visit);
}

PartitionCertificate global_optimum(const Dataset& d, Index k, Index cap) {
  const Index n = d.size();
  if (n > cap)
    throw std::invalid_argument("exhaustive search over " + std::to_string(n) +
                                " records exceeds the cap of " + std::to_string(cap));
  const Index arity = d.arity();

  // WCSS(partition) = sum_i |x_i|^2 - sum_b |sum_b|^2 / n_b; the first term is
  // partition-independent, so the scan only accumulates block sums.
  double total_sq = 0.0;
  for (Index p = 0; p < n; ++p) total_sq += d.features.row(p).squaredNorm();

  PartitionCertificate cert;
  Matrix sums(k, arity);
  std::vector<Index> counts(static_cast<std::size_t>(k), 0);
  bool have_best = false;
  double best = 0.0;

  for_each_partition(n, k, [&](std::span<const Index> labels) {
    sums.setZero();
    std::fill(counts.begin(), counts.end(), Index{0});
    for (Index p = 0; p < n; ++p) {
      const Index b = labels[static_cast<std::size_t>(p)];
      sums.row(b) += d.features.row(p);
      counts[static_cast<std::size_t>(b)] += 1;
    }
    double explained = 0.0;
    for (Index b = 0; b < k; ++b)
      explained += sums.row(b).squaredNorm() / static_cast<double>(counts[static_cast<std::size_t>(b)]);
    const double value = total_sq - explained;
    cert.examined += 1;
    if (!have_best || value < best) {
      have_best = true;
      best = value;
      cert.best_assignment.assign(labels.begin(), labels.end());
    }
  });

  // Report the winner's score through the same path the clustering uses, so
  // comparisons against a heuristic result never hinge on accumulation order.
  ClusterState s;
  s.assignment = cert.best_assignment;
  s.sizes.assign(static_cast<std::size_t>(k), 0);
  for (Index b : cert.best_assignment) s.sizes[static_cast<std::size_t>(b)] += 1;
  s.centroids = Matrix::Zero(k, arity);
  s.centroids = recompute_centroids(s, d);
  cert.best_wcss = wcss(s, d);
  return cert;
}

bool certify_local_optimum(const ClusterState& s, const Dataset& d) {
  if (static_cast<Index>(s.assignment.size()) != d.size() || !s.fully_assigned())
    throw std::invalid_argument("local-optimum check requires a complete assignment");
  if (s.centroids.cols() != d.arity() || static_cast<Index>(s.sizes.size()) != s.k())
    throw std::invalid_argument("state shape does not match the dataset");
  for (Index p = 0; p < d.size(); ++p) {
    const Index cur = s.assignment[static_cast<std::size_t>(p)];
    if (s.sizes[static_cast<std::size_t>(cur)] <= 1) continue;  // pinned by the emptiness rule
    const auto x = d.features.row(p);
    const double d_cur = (x - s.centroids.row(cur)).squaredNorm();
    for (Index c = 0; c < s.k(); ++c) {
      if (c == cur) continue;
      if ((x - s.centroids.row(c)).squaredNorm() < d_cur) return false;
    }
  }
  return true;
}

bool certify_local_optimum(const ClusterModel& m, const Dataset& d) {
  ClusterState s;
  s.assignment = assignment_of(m, d);
  s.centroids = m.centroids;
  s.sizes.assign(static_cast<std::size_t>(m.k), 0);
  for (Index c : s.assignment) s.sizes[static_cast<std::size_t>(c)] += 1;
  return certify_local_optimum(s, d);
}

PartitionCertificate certify(const ClusterModel& m, const Dataset& d, Index cap) {
  PartitionCertificate cert = global_optimum(d, m.k, cap);
  cert.candidate_locally_optimal = certify_local_optimum(m, d);
  return cert;
}

}  // namespace cardio
