#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cardio/autocorr.hpp"
#include "cardio/dataset.hpp"
#include "cardio/format.hpp"
#include "cardio/kmeans.hpp"
#include "cardio/metrics.hpp"
#include "cardio/model_io.hpp"
#include "cardio/oracle.hpp"
#include "cardio/triage.hpp"

namespace {

using namespace cardio;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNotConverged = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path);
}

struct InputSource {
  bool builtin = false;
  std::string path;
};

void add_input_flags(CLI::App* sub, InputSource& src, const char* path_flag = "--input") {
  sub->add_flag("--builtin-table1", src.builtin, "use the built-in 10-patient dataset");
  sub->add_option(path_flag, src.path, "patient CSV path");
}

Dataset load_input(const InputSource& src) {
  const bool has_file = !src.path.empty();
  if (src.builtin && has_file)
    throw std::runtime_error("choose one input: --builtin-table1 or a CSV path");
  if (!src.builtin && !has_file)
    throw std::runtime_error("an input is required: --builtin-table1 or a CSV path");
  if (src.builtin) return builtin_table1();
  return parse_dataset(read_file(src.path));
}

RowVector parse_query(const std::string& text) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(text.substr(start));
      break;
    }
    cells.push_back(text.substr(start, comma - start));
    start = comma + 1;
  }
  RowVector q(static_cast<Index>(cells.size()));
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::string cell = cells[i];
    const auto first = cell.find_first_not_of(" \t");
    cell = first == std::string::npos
               ? std::string{}
               : cell.substr(first, cell.find_last_not_of(" \t") - first + 1);
    if (cell == "0") {
      q(static_cast<Index>(i)) = 0.0;
    } else if (cell == "1") {
      q(static_cast<Index>(i)) = 1.0;
    } else {
      throw std::runtime_error("query entry " + std::to_string(i + 1) + " must be 0 or 1" +
                               (cell.empty() ? "" : ", got '" + cell + "'"));
    }
  }
  return q;
}

std::optional<Index> env_max_passes() {
  const char* raw = std::getenv("TRIAGE_MAX_PASSES");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  const std::string_view text(raw);
  long long value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || value < 0)
    throw std::runtime_error("TRIAGE_MAX_PASSES must be a non-negative integer, got '" +
                             std::string(text) + "'");
  return static_cast<Index>(value);
}

std::string render_certificate(const Dataset& d, const ClusterModel& m,
                               const PartitionCertificate& cert) {
  std::ostringstream out;
  out << "records: " << d.size() << "\n";
  out << "k: " << m.k << "\n";
  out << "partitions examined: " << cert.examined << "\n";
  out << "converged: " << (m.converged ? "true" : "false") << "\n";
  out << "heuristic wcss: " << format_double(m.wcss) << "\n";
  out << "optimal wcss: " << format_double(cert.best_wcss) << "\n";
  out << "gap: " << format_double(m.wcss - cert.best_wcss) << "\n";
  out << "locally optimal: " << (cert.candidate_locally_optimal ? "true" : "false") << "\n";
  std::vector<std::vector<std::string>> blocks(static_cast<std::size_t>(m.k));
  for (std::size_t i = 0; i < cert.best_assignment.size(); ++i)
    blocks[static_cast<std::size_t>(cert.best_assignment[i])].push_back(d.ids[i]);
  out << "optimal partition: ";
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (b > 0) out << " | ";
    for (std::size_t i = 0; i < blocks[b].size(); ++i) {
      if (i > 0) out << ",";
      out << blocks[b][i];
    }
  }
  out << "\n";
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cardiotriage: cluster binary symptom records, score autocorrelation risk, "
               "and triage queries against precedent patients"};
  app.require_subcommand(1);

  // cluster
  auto* cluster_cmd = app.add_subcommand("cluster", "fit a sequential k-means model");
  InputSource cluster_in;
  Index cluster_k = 0;
  Index max_passes_flag = 0;
  std::string cluster_out;
  add_input_flags(cluster_cmd, cluster_in);
  cluster_cmd->add_option("--k", cluster_k, "number of clusters")->required();
  auto* max_passes_opt =
      cluster_cmd->add_option("--max-passes", max_passes_flag, "refinement pass cap")
          ->check(CLI::NonNegativeNumber);
  cluster_cmd->add_option("--out", cluster_out, "output path (default: stdout)");

  // dissim
  auto* dissim_cmd = app.add_subcommand("dissim", "pairwise dissimilarity matrix as CSV");
  InputSource dissim_in;
  std::string dissim_metric = "euclidean";
  std::string dissim_out;
  add_input_flags(dissim_cmd, dissim_in);
  dissim_cmd->add_option("--metric", dissim_metric,
                         "hamming | euclidean | squared-euclidean (default euclidean)");
  dissim_cmd->add_option("--out", dissim_out, "output path (default: stdout)");

  // autocorr
  auto* autocorr_cmd =
      app.add_subcommand("autocorr", "per-patient lag-k autocorrelation risk scores as CSV");
  InputSource autocorr_in;
  Index autocorr_lag = 1;
  RiskThresholds autocorr_thresholds;
  std::string autocorr_out;
  add_input_flags(autocorr_cmd, autocorr_in);
  autocorr_cmd->add_option("--lag", autocorr_lag, "autocorrelation lag (default 1)");
  autocorr_cmd->add_option("--theta-cardiac", autocorr_thresholds.cardiac,
                           "cardiac threshold (default 0.8)");
  autocorr_cmd->add_option("--theta-pro", autocorr_thresholds.pro,
                           "pro-cardiac threshold (default 0.5)");
  autocorr_cmd->add_option("--out", autocorr_out, "output path (default: stdout)");

  // classify
  auto* classify_cmd =
      app.add_subcommand("classify", "assign a query vector to its nearest cluster");
  std::string classify_model;
  std::string classify_query;
  Index classify_lag = 1;
  RiskThresholds classify_thresholds;
  std::string classify_out;
  classify_cmd->add_option("--model", classify_model, "model JSON path")->required();
  classify_cmd->add_option("--query", classify_query, "comma-separated 0/1 vector")->required();
  classify_cmd->add_option("--lag", classify_lag, "risk-score lag (default 1)");
  classify_cmd->add_option("--theta-cardiac", classify_thresholds.cardiac,
                           "cardiac threshold (default 0.8)");
  classify_cmd->add_option("--theta-pro", classify_thresholds.pro,
                           "pro-cardiac threshold (default 0.5)");
  classify_cmd->add_option("--out", classify_out, "output path (default: stdout)");

  // triage
  auto* triage_cmd = app.add_subcommand(
      "triage", "full triage of a query against a model and its training data");
  InputSource triage_in;
  std::string triage_model;
  std::string triage_query_text;
  Index triage_lag = 1;
  RiskThresholds triage_thresholds;
  std::string triage_out;
  triage_cmd->add_option("--model", triage_model, "model JSON path")->required();
  add_input_flags(triage_cmd, triage_in, "--data");
  triage_cmd->add_option("--query", triage_query_text, "comma-separated 0/1 vector")->required();
  triage_cmd->add_option("--lag", triage_lag, "risk-score lag (default 1)");
  triage_cmd->add_option("--theta-cardiac", triage_thresholds.cardiac,
                         "cardiac threshold (default 0.8)");
  triage_cmd->add_option("--theta-pro", triage_thresholds.pro,
                         "pro-cardiac threshold (default 0.5)");
  triage_cmd->add_option("--out", triage_out, "output path (default: stdout)");

  // verify
  auto* verify_cmd = app.add_subcommand(
      "verify", "exhaustive-search audit of the clustering on a small dataset");
  InputSource verify_in;
  Index verify_k = 0;
  std::string verify_out;
  add_input_flags(verify_cmd, verify_in);
  verify_cmd->add_option("--k", verify_k, "number of clusters")->required();
  verify_cmd->add_option("--out", verify_out, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*cluster_cmd) {
      const Dataset d = load_input(cluster_in);
      KMeansConfig cfg;
      if (max_passes_opt->count() > 0)
        cfg.max_passes = max_passes_flag;
      else if (const auto env = env_max_passes())
        cfg.max_passes = *env;
      const ClusterModel m = run(d, cluster_k, cfg);
      write_output(cluster_out, model_to_json(m));
      return m.converged ? kExitOk : kExitNotConverged;
    }

    if (*dissim_cmd) {
      const Dataset d = load_input(dissim_in);
      const DissimilarityMatrix matrix =
          dissimilarity_matrix(d, metric_from_string(dissim_metric));
      write_output(dissim_out, to_csv(matrix));
      return kExitOk;
    }

    if (*autocorr_cmd) {
      const Dataset d = load_input(autocorr_in);
      const auto scores = categorize_risk(risk_scores(d, autocorr_lag), autocorr_thresholds);
      write_output(autocorr_out, scores_to_csv(scores));
      return kExitOk;
    }

    if (*classify_cmd) {
      const ClusterModel m = model_from_json(read_file(classify_model));
      const RowVector q = parse_query(classify_query);
      const TriageReport report = triage_query(m, q, classify_lag, classify_thresholds);
      write_output(classify_out, report_to_json(report));
      return kExitOk;
    }

    if (*triage_cmd) {
      const ClusterModel m = model_from_json(read_file(triage_model));
      const Dataset d = load_input(triage_in);
      const PatientRecord q{"query", parse_query(triage_query_text)};
      const TriageReport report = triage(m, d, q, triage_lag, triage_thresholds);
      write_output(triage_out, report_to_json(report));
      return kExitOk;
    }

    if (*verify_cmd) {
      const Dataset d = load_input(verify_in);
      KMeansConfig cfg;
      if (const auto env = env_max_passes()) cfg.max_passes = *env;
      const ClusterModel m = run(d, verify_k, cfg);
      const PartitionCertificate cert = certify(m, d);
      write_output(verify_out, render_certificate(d, m, cert));
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
