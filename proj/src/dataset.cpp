#include "cardio/dataset.hpp"

#include "cardio/format.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace cardio {

namespace {

std::string position_suffix(Index row, Index column) {
  return " (row " + std::to_string(row) + ", column " + std::to_string(column) + ")";
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines = split(text, '\n');
  for (auto& line : lines) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

}  // namespace

ParseError::ParseError(const std::string& message, Index row, Index column)
    : std::runtime_error(message + position_suffix(row, column)), row_(row), column_(column) {}

PatientRecord Dataset::record(Index i) const {
  if (i < 0 || i >= size()) throw std::out_of_range("record index out of range");
  return PatientRecord{ids[static_cast<std::size_t>(i)], features.row(i)};
}

bool Dataset::operator==(const Dataset& other) const {
  return schema == other.schema && ids == other.ids &&
         features.rows() == other.features.rows() &&
         features.cols() == other.features.cols() &&
         (features.array() == other.features.array()).all();
}

Dataset parse_dataset(std::string_view csv_text) {
  const std::vector<std::string_view> lines = split_lines(csv_text);
  if (lines.empty()) throw ParseError("empty input: expected a header row", 1, 1);

  const std::vector<std::string_view> header = split(lines[0], ',');
  if (trim(header[0]) != "id") throw ParseError("first header column must be 'id'", 1, 1);
  if (header.size() < 2) throw ParseError("header must list at least one feature", 1, 1);

  Dataset d;
  std::unordered_set<std::string> seen_names;
  for (std::size_t j = 1; j < header.size(); ++j) {
    const std::string name(trim(header[j]));
    if (name.empty()) throw ParseError("empty feature name", 1, static_cast<Index>(j + 1));
    if (!seen_names.insert(name).second)
      throw ParseError("duplicate feature name '" + name + "'", 1, static_cast<Index>(j + 1));
    d.schema.names.push_back(name);
  }
  const Index arity = d.schema.arity();

  const Index n = static_cast<Index>(lines.size()) - 1;
  d.features.resize(n, arity);
  std::unordered_set<std::string> seen_ids;
  for (Index i = 0; i < n; ++i) {
    const Index row = i + 2;
    const std::string_view line = lines[static_cast<std::size_t>(i) + 1];
    if (trim(line).empty()) throw ParseError("empty row", row, 1);
    const std::vector<std::string_view> fields = split(line, ',');
    if (static_cast<Index>(fields.size()) != arity + 1)
      throw ParseError("row has " + std::to_string(fields.size()) + " fields, expected " +
                           std::to_string(arity + 1),
                       row, static_cast<Index>(fields.size()));
    const std::string id(trim(fields[0]));
    if (id.empty()) throw ParseError("empty id", row, 1);
    if (!seen_ids.insert(id).second) throw ParseError("duplicate id '" + id + "'", row, 1);
    d.ids.push_back(id);
    for (Index j = 0; j < arity; ++j) {
      const std::string_view cell = trim(fields[static_cast<std::size_t>(j) + 1]);
      if (cell == "0") {
        d.features(i, j) = 0.0;
      } else if (cell == "1") {
        d.features(i, j) = 1.0;
      } else if (cell.empty()) {
        throw ParseError("missing value", row, j + 2);
      } else {
        throw ParseError("non-binary value '" + std::string(cell) + "'", row, j + 2);
      }
    }
  }
  return d;
}

std::string serialize_dataset(const Dataset& d) {
  std::ostringstream out;
  out << "id";
  for (const auto& name : d.schema.names) out << ',' << name;
  out << '\n';
  for (Index i = 0; i < d.size(); ++i) {
    out << d.ids[static_cast<std::size_t>(i)];
    for (Index j = 0; j < d.features.cols(); ++j) {
      const double v = d.features(i, j);
      if (v == 0.0) {
        out << ",0";
      } else if (v == 1.0) {
        out << ",1";
      } else {
        out << ',' << format_double(v);
      }
    }
    out << '\n';
  }
  return out.str();
}

Dataset builtin_table1() {
  static constexpr int kBits[10][10] = {
      {1, 0, 1, 0, 1, 1, 0, 0, 0, 0},  // P1
      {0, 0, 1, 1, 1, 1, 0, 0, 0, 0},  // P2
      {0, 0, 1, 0, 0, 0, 0, 1, 0, 0},  // P3
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0},  // P4
      {0, 1, 1, 1, 1, 1, 1, 1, 1, 0},  // P5
      {1, 1, 1, 1, 1, 1, 1, 1, 1, 1},  // P6
      {0, 0, 0, 0, 0, 0, 0, 0, 1, 0},  // P7
      {0, 0, 1, 1, 1, 0, 0, 0, 0, 0},  // P8
      {0, 0, 0, 0, 1, 0, 0, 0, 1, 0},  // P9
      {0, 1, 0, 1, 0, 1, 0, 1, 0, 1},  // P10
  };
  Dataset d;
  d.schema.names = {"BP",       "HB",          "PR",       "ECG",        "left-shoulder-pain",
                    "sweating", "vomiting",    "over-weight", "chest-pain", "breathlessness"};
  d.features.resize(10, 10);
  for (Index i = 0; i < 10; ++i) {
    d.ids.push_back("P" + std::to_string(i + 1));
    for (Index j = 0; j < 10; ++j) d.features(i, j) = kBits[i][j];
  }
  return d;
}

bool ValidationReport::ok() const {
  return std::none_of(issues.begin(), issues.end(), [](const ValidationIssue& i) {
    return i.severity == ValidationIssue::Severity::Error;
  });
}

std::vector<std::string> ValidationReport::errors() const {
  std::vector<std::string> out;
  for (const auto& i : issues)
    if (i.severity == ValidationIssue::Severity::Error) out.push_back(i.message);
  return out;
}

std::vector<std::string> ValidationReport::warnings() const {
  std::vector<std::string> out;
  for (const auto& i : issues)
    if (i.severity == ValidationIssue::Severity::Warning) out.push_back(i.message);
  return out;
}

ValidationReport validate(const Dataset& d) {
  ValidationReport report;
  auto error = [&](std::string message) {
    report.issues.push_back({ValidationIssue::Severity::Error, std::move(message)});
  };
  auto warning = [&](std::string message) {
    report.issues.push_back({ValidationIssue::Severity::Warning, std::move(message)});
  };

  if (d.schema.names.empty()) error("schema has no features");
  std::unordered_set<std::string> seen_names;
  for (std::size_t j = 0; j < d.schema.names.size(); ++j) {
    const std::string& name = d.schema.names[j];
    if (name.empty()) error("feature " + std::to_string(j + 1) + " has an empty name");
    if (!seen_names.insert(name).second) error("duplicate feature name '" + name + "'");
  }
  if (d.features.cols() != d.schema.arity())
    error("feature matrix has " + std::to_string(d.features.cols()) +
          " columns but the schema lists " + std::to_string(d.schema.arity()) + " features");
  if (static_cast<Index>(d.ids.size()) != d.features.rows())
    error("id list has " + std::to_string(d.ids.size()) + " entries but the matrix has " +
          std::to_string(d.features.rows()) + " rows");

  std::unordered_set<std::string> seen_ids;
  for (std::size_t i = 0; i < d.ids.size(); ++i) {
    const std::string& id = d.ids[i];
    if (id.empty()) error("record " + std::to_string(i + 1) + " has an empty id");
    if (!seen_ids.insert(id).second) error("duplicate id '" + id + "'");
  }

  const Index rows = std::min<Index>(d.features.rows(), static_cast<Index>(d.ids.size()));
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < d.features.cols(); ++j) {
      const double v = d.features(i, j);
      if (v != 0.0 && v != 1.0) {
        error("record '" + d.ids[static_cast<std::size_t>(i)] + "' has non-binary value " +
              format_double(v) + " in feature " + std::to_string(j + 1));
      }
    }
  }

  if (d.size() == 0) warning("no records");
  return report;
}

}  // namespace cardio
