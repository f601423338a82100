#pragma once

// Exhaustive search over all partitions of a dataset into exactly k non-empty
// segments. Intended as an independent check on the sequential clustering
// heuristic for small inputs; the partition count is a Stirling number of the
// second kind and grows too fast for anything beyond kDefaultPartitionCap
// records.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cardio/dataset.hpp"
#include "cardio/kmeans.hpp"

namespace cardio {

inline constexpr Index kDefaultPartitionCap = 12;

// Number of partitions of n items into exactly k non-empty blocks.
std::uint64_t stirling2(Index n, Index k);

// Visits every partition of {0..n-1} into exactly k non-empty blocks as a
// restricted-growth string (assignment[i] = block of item i, blocks numbered
// by first appearance), in lexicographic order of that string.
void for_each_partition(Index n, Index k,
                        const std::function<void(std::span<const Index>)>& visit);

struct PartitionCertificate {
  std::vector<Index> best_assignment;  // restricted-growth labels, one per record
  double best_wcss = 0.0;
  std::uint64_t examined = 0;
  // Set by certify(): whether the audited model sits at the refinement
  // fixed point. global_optimum() alone leaves it false.
  bool candidate_locally_optimal = false;
};

// Scans every k-partition of the dataset and returns the one with minimal
// within-cluster sum of squares (first in enumeration order on ties).
// Refuses datasets larger than `cap` records.
PartitionCertificate global_optimum(const Dataset& d, Index k,
                                    Index cap = kDefaultPartitionCap);

// Full audit of a fitted model: exhaustive optimum over the same dataset plus
// the local-optimality check of the model itself.
PartitionCertificate certify(const ClusterModel& m, const Dataset& d,
                             Index cap = kDefaultPartitionCap);

// True when no record is strictly closer to another segment's centroid than
// to its own, skipping records whose move would empty their source segment.
// This is exactly the fixed-point condition of the refinement pass.
bool certify_local_optimum(const ClusterState& s, const Dataset& d);

// Same check against a fitted model; throws if the model does not cover the
// dataset.
bool certify_local_optimum(const ClusterModel& m, const Dataset& d);

}  // namespace cardio
