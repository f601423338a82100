#pragma once

#include "cardio/dataset.hpp"
#include "cardio/types.hpp"

#include <string>
#include <string_view>

namespace cardio {

namespace detail {

template <typename DerivedA, typename DerivedB>
void check_vector_pair(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if ((a.rows() != 1 && a.cols() != 1) || (b.rows() != 1 && b.cols() != 1))
    throw std::invalid_argument("distance arguments must be vectors");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("length mismatch: " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
}

}  // namespace detail

/// Number of coordinates at which the two vectors differ. On {0,1} vectors
/// this equals the squared Euclidean distance.
template <typename DerivedA, typename DerivedB>
Index hamming(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  detail::check_vector_pair(a, b);
  return static_cast<Index>((a.derived().array() != b.derived().array()).count());
}

template <typename DerivedA, typename DerivedB>
double squared_euclidean(const Eigen::MatrixBase<DerivedA>& a,
                         const Eigen::MatrixBase<DerivedB>& b) {
  detail::check_vector_pair(a, b);
  return (a.derived().template cast<double>() - b.derived().template cast<double>())
      .squaredNorm();
}

template <typename DerivedA, typename DerivedB>
double euclidean(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return std::sqrt(squared_euclidean(a, b));
}

enum class Metric { Hamming, Euclidean, SquaredEuclidean };

const char* to_string(Metric m);
Metric metric_from_string(std::string_view name);

/// Symmetric matrix of all pairwise record distances, with a zero diagonal.
struct DissimilarityMatrix {
  Metric metric = Metric::Euclidean;
  std::vector<std::string> ids;
  Matrix entries;  // order() x order()
  Index order() const { return entries.rows(); }
};

DissimilarityMatrix dissimilarity_matrix(const Dataset& d, Metric metric);

/// CSV rendering with id-labelled rows and columns.
std::string to_csv(const DissimilarityMatrix& m);

}  // namespace cardio
