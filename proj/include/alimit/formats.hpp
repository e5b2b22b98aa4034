#pragma once

// Serialization of results. Every file starts with (or, for JSON, carries) the
// "alpha-limit v1" tag. Numbers are written through fmt, which never consults
// the C or C++ locale.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "alimit/diagonalize.hpp"
#include "alimit/shearer.hpp"
#include "alimit/tree.hpp"

namespace alimit {

using Json = nlohmann::ordered_json;

inline constexpr int kDefaultDigits = 10;

/// %.{digits}g, with "inf", "-inf" and "nan" spelled out.
std::string format_number(double v, int digits = kDefaultDigits);
/// Shortest string that parses back to exactly v.
std::string format_exact(double v);

// DiagResult: {"format", "d", "n_pos", "n_neg", "n_zero", "removed_edges"}.
// removed_edges holds 1-based [child, parent] pairs. Doubles are written in
// shortest round-trip form so that a read-back compares equal.
Json to_json(const DiagResult& r);
DiagResult diag_result_from_json(const Json& j);

// CaterpillarSpec: a bare JSON array of pendant counts.
Json to_json(const CaterpillarSpec& spec);
CaterpillarSpec caterpillar_from_json(const Json& j);

// ShearerSequence: {"format", "alpha", "lambda", "k", "r", "b"}.
Json to_json(const ShearerSequence& seq);

/// One threshold entry of a table row.
struct Cell {
  enum class State { Value, Inf, Undefined };
  State state = State::Undefined;
  double value = 0.0;

  static Cell of(double v);
  static Cell undefined() { return {}; }
};

struct ThresholdRow {
  double alpha = 0.0;
  Cell tau0, tau1, tau1_prime, tau2;
  /// Sweep label; empty for plain tables.
  std::string regime;
  /// Limit-point segments such as "[a,b);[c,inf)"; written only when present.
  std::optional<std::string> segments;
};

enum class TableFormat { Csv, Json, Text };
std::optional<TableFormat> parse_table_format(std::string_view s);

/// CSV: header line, then `alpha,tau0,tau1,tau1_prime,tau2[,regime][,segments]`,
/// with `inf` and `undefined` as markers and the segments field double-quoted. JSON: rows with null values and a
/// `<column>_status` field ("inf" or "undefined") next to each null.
void write_threshold_rows(std::ostream& out, const std::vector<ThresholdRow>& rows,
                          const std::vector<std::string>& columns, TableFormat fmt,
                          int digits = kDefaultDigits);

/// CSV `k,rho,gap,sigma,c_over_k,Qk` after the header line. rho is written in
/// shortest round-trip form; the rest with `digits` significant digits.
void write_convergence_csv(std::ostream& out, const ConvergenceReport& rep,
                           int digits = kDefaultDigits);
Json to_json(const ConvergenceReport& rep);

}  // namespace alimit
