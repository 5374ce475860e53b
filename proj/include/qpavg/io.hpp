#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qpavg/real.hpp"

namespace qpavg {

/// Everything needed to reproduce a run. Reals stay as the decimal strings
/// the user typed so they can be re-parsed at either precision.
struct RunConfig {
  std::string command;
  std::string system;
  std::vector<std::string> ic;
  std::map<std::string, std::string> params;  // F, mu, H
  std::size_t n = 0;
  std::string kernel = "exp";
  std::string precision = "double";
  long long burn_in = -1;  // -1: system default
  int kmax = 0;
  int jmax = 0;
  std::size_t points = 0;  // conjugacy grid size
  std::vector<std::size_t> n_grid;
  std::string step;
  std::string tol;
  std::string format = "csv";
  std::string out;

  std::string to_json() const;
  static RunConfig from_json(const std::string& text);
};

const char* version();

Precision parse_precision(const std::string& s);

enum class OutputFormat { csv, json, gnuplot };
OutputFormat parse_format(const std::string& s);

/// Column-oriented result with summary scalars. Cells are preformatted
/// decimal strings (full precision).
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> scalars;
  /// Column whose value splits the gnuplot output into blocks; empty means
  /// a single block.
  std::string group_column;

  void add_row(std::vector<std::string> row);
};

void write_result(std::ostream& os, const RunConfig& cfg, const ResultTable& t, OutputFormat fmt);

/// Writes to cfg.out, or stdout when it is empty or "-".
void emit(const RunConfig& cfg, const ResultTable& t);

/// Config embedded in an earlier output file (CSV header comment or JSON).
RunConfig read_embedded_config(const std::string& path);

}  // namespace qpavg
