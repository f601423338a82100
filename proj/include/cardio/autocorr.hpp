#pragma once

#include "cardio/dataset.hpp"
#include "cardio/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cardio {

struct AutocorrResult {
  double value = 0.0;
  bool defined = false;
};

/// Lag-k autocorrelation of a series: the sum over t > k of
/// (Y_t - mean)(Y_{t-k} - mean) divided by the total squared deviation of
/// the whole series. A constant series has nothing to normalize by; it is
/// reported as value 0 with defined = false rather than an error.
///
/// Requires n >= 2 and 1 <= lag <= n-1. The defined value always lies in
/// [-1, 1]; rounding excursions past the bound are clamped.
template <typename Derived>
AutocorrResult autocorrelation(const Eigen::MatrixBase<Derived>& series, Index lag) {
  if (series.rows() != 1 && series.cols() != 1)
    throw std::invalid_argument("autocorrelation: series must be a vector");
  const Index n = series.size();
  if (n < 2) throw std::invalid_argument("autocorrelation: series needs at least 2 entries");
  if (lag < 1 || lag > n - 1)
    throw std::invalid_argument("autocorrelation: lag " + std::to_string(lag) +
                                " out of range [1, " + std::to_string(n - 1) + "]");

  Vector y(n);
  if (series.rows() == 1)
    y = series.derived().transpose().template cast<double>();
  else
    y = series.derived().template cast<double>();

  const Vector centered = y.array() - y.mean();
  const double denom = centered.squaredNorm();
  if (denom == 0.0) return {0.0, false};
  const double num = centered.tail(n - lag).dot(centered.head(n - lag));
  double r = num / denom;
  r = std::min(1.0, std::max(-1.0, r));
  if (r == 0.0) r = 0.0;  // normalize -0
  return {r, true};
}

struct RiskScore {
  std::string id;
  Index lag = 1;
  double r = 0.0;
  bool defined = false;
  std::optional<TriageCategory> category;  // set by categorize_risk
};

/// One score per patient, computed over the patient's feature row in schema
/// order. Requires arity >= 2 and a lag in [1, arity-1].
std::vector<RiskScore> risk_scores(const Dataset& d, Index lag);

struct RiskThresholds {
  double cardiac = 0.8;
  double pro = 0.5;
};

/// r >= cardiac -> Cardiac; pro <= r < cardiac -> ProCardiac; everything
/// else, undefined scores included, -> Normal. Requires cardiac > pro.
std::vector<RiskScore> categorize_risk(std::vector<RiskScore> scores, const RiskThresholds& t);

/// CSV rendering: header `id,lag,r,defined,category`.
std::string scores_to_csv(const std::vector<RiskScore>& scores);

}  // namespace cardio
