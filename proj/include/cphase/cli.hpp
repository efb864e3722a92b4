#pragma once

// Command-line front end: fidelity, scan, optimize, figure, convergents and
// triples subcommands writing CSV or JSON tables.

#include <iosfwd>
#include <string>
#include <vector>

namespace cphase::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kNumericalFailure = 2,
};

/// Numeric table; NaN marks a missing value (empty optional).
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// 15 significant digits, '.' separator; NaN prints as "nan".
[[nodiscard]] std::string format_number(double v);

/// Header line then one comma-separated line per row, '\n' terminated.
void write_csv(const Table& table, std::ostream& out);

/// {"meta": <meta>, "rows": [{column: value, ...}, ...]} with values
/// rounded through format_number so both formats carry the same digits.
/// `meta_json` must be a serialized JSON object.
void write_json(const Table& table, const std::string& meta_json, std::ostream& out);

/// Runs the CLI; returns an ExitCode. Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cphase::cli
