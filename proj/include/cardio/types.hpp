#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace cardio {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using RowVectorX = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using Matrix = MatrixX<double>;
using Vector = VectorX<double>;
using RowVector = RowVectorX<double>;
using Index = Eigen::Index;

/// Clinical severity ladder, totally ordered: Normal < ProCardiac < Cardiac.
enum class TriageCategory { Normal = 0, ProCardiac = 1, Cardiac = 2 };

inline const char* to_string(TriageCategory c) {
  switch (c) {
    case TriageCategory::Normal:
      return "normal";
    case TriageCategory::ProCardiac:
      return "pro-cardiac";
    case TriageCategory::Cardiac:
      return "cardiac";
  }
  throw std::invalid_argument("unknown triage category");
}

}  // namespace cardio
