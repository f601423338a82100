#include "cardio/autocorr.hpp"

#include "cardio/format.hpp"

#include <sstream>

namespace cardio {

std::vector<RiskScore> risk_scores(const Dataset& d, Index lag) {
  if (d.arity() < 2)
    throw std::invalid_argument("risk_scores: need at least 2 features per record");
  if (lag < 1 || lag > d.arity() - 1)
    throw std::invalid_argument("risk_scores: lag " + std::to_string(lag) +
                                " out of range [1, " + std::to_string(d.arity() - 1) + "]");
  std::vector<RiskScore> scores;
  scores.reserve(static_cast<std::size_t>(d.size()));
  for (Index i = 0; i < d.size(); ++i) {
    const AutocorrResult res = autocorrelation(d.features.row(i), lag);
    scores.push_back({d.ids[static_cast<std::size_t>(i)], lag, res.value, res.defined, {}});
  }
  return scores;
}

std::vector<RiskScore> categorize_risk(std::vector<RiskScore> scores, const RiskThresholds& t) {
  if (!(t.cardiac > t.pro))
    throw std::invalid_argument("thresholds: cardiac (" + format_double(t.cardiac) +
                                ") must exceed pro (" + format_double(t.pro) + ")");
  for (RiskScore& s : scores) {
    if (!s.defined) {
      s.category = TriageCategory::Normal;
    } else if (s.r >= t.cardiac) {
      s.category = TriageCategory::Cardiac;
    } else if (s.r >= t.pro) {
      s.category = TriageCategory::ProCardiac;
    } else {
      s.category = TriageCategory::Normal;
    }
  }
  return scores;
}

std::string scores_to_csv(const std::vector<RiskScore>& scores) {
  std::ostringstream out;
  out << "id,lag,r,defined,category\n";
  for (const RiskScore& s : scores) {
    out << s.id << ',' << s.lag << ',' << format_double(s.r) << ','
        << (s.defined ? "true" : "false") << ','
        << (s.category ? to_string(*s.category) : "") << '\n';
  }
  return out.str();
}

}  // namespace cardio
