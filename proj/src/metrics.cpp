#include "cardio/metrics.hpp"

#include "cardio/format.hpp"

#include <sstream>

namespace cardio {

const char* to_string(Metric m) {
  switch (m) {
    case Metric::Hamming:
      return "hamming";
    case Metric::Euclidean:
      return "euclidean";
    case Metric::SquaredEuclidean:
      return "squared-euclidean";
  }
  throw std::invalid_argument("unknown metric");
}

Metric metric_from_string(std::string_view name) {
  if (name == "hamming") return Metric::Hamming;
  if (name == "euclidean") return Metric::Euclidean;
  if (name == "squared-euclidean") return Metric::SquaredEuclidean;
  throw std::invalid_argument("unknown metric '" + std::string(name) +
                              "' (expected hamming, euclidean, or squared-euclidean)");
}

DissimilarityMatrix dissimilarity_matrix(const Dataset& d, Metric metric) {
  const Index n = d.size();
  if (n < 1) throw std::invalid_argument("dissimilarity_matrix: dataset has no records");

  DissimilarityMatrix m;
  m.metric = metric;
  m.ids = d.ids;
  m.entries = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      double v = 0.0;
      switch (metric) {
        case Metric::Hamming:
          v = static_cast<double>(hamming(d.features.row(i), d.features.row(j)));
          break;
        case Metric::Euclidean:
          v = euclidean(d.features.row(i), d.features.row(j));
          break;
        case Metric::SquaredEuclidean:
          v = squared_euclidean(d.features.row(i), d.features.row(j));
          break;
      }
      m.entries(i, j) = v;
      m.entries(j, i) = v;
    }
  }
  return m;
}

std::string to_csv(const DissimilarityMatrix& m) {
  std::ostringstream out;
  out << "id";
  for (const auto& id : m.ids) out << ',' << id;
  out << '\n';
  for (Index i = 0; i < m.order(); ++i) {
    out << m.ids[static_cast<std::size_t>(i)];
    for (Index j = 0; j < m.order(); ++j) out << ',' << format_double(m.entries(i, j));
    out << '\n';
  }
  return out.str();
}

}  // namespace cardio
