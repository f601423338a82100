#pragma once

#include "cardio/types.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace cardio {

/// Error raised while parsing CSV input. Rows and columns are 1-based; the
/// header is row 1.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, Index row, Index column);
  Index row() const noexcept { return row_; }
  Index column() const noexcept { return column_; }

 private:
  Index row_;
  Index column_;
};

struct FeatureSchema {
  std::vector<std::string> names;
  Index arity() const { return static_cast<Index>(names.size()); }
  bool operator==(const FeatureSchema&) const = default;
};

struct PatientRecord {
  std::string id;
  RowVector features;  // entries 0 or 1
};

/// Ordered binary symptom matrix: one row per patient, one column per
/// feature. Row order is significant (clustering seeds from the leading
/// rows) and is preserved exactly as parsed.
struct Dataset {
  FeatureSchema schema;
  std::vector<std::string> ids;
  Matrix features;  // size() x arity()

  Index size() const { return static_cast<Index>(ids.size()); }
  Index arity() const { return schema.arity(); }
  PatientRecord record(Index i) const;
  bool operator==(const Dataset& other) const;
};

/// Parses `id,<feature1>,...,<featureM>` CSV. Every data cell must be exactly
/// 0 or 1; ids must be unique. Throws ParseError with the offending position.
Dataset parse_dataset(std::string_view csv_text);

std::string serialize_dataset(const Dataset& d);

/// The builtin ten-patient, ten-symptom reference dataset (ids P1..P10).
Dataset builtin_table1();

struct ValidationIssue {
  enum class Severity { Warning, Error };
  Severity severity;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const;  // true when no Error-severity issues are present
  std::vector<std::string> errors() const;
  std::vector<std::string> warnings() const;
};

/// Reports every invariant violation in the dataset without mutating it. An
/// empty dataset is flagged as a warning, not an error.
ValidationReport validate(const Dataset& d);

}  // namespace cardio
