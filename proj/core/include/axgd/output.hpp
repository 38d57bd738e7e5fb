#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "axgd/experiment.hpp"

namespace axgd {

inline constexpr const char* kCsvHeader =
    "method,eps_eta,seed,k,a_k,A_k,f_upper,exact_gap,approx_gap,lower_bound,"
    "E_k,grad_queries,wall_time_ns";

inline constexpr const char* kSummarySchema = "axgd-kit/1";

/// %.17g; non-finite values as nan, inf, -inf.
std::string format_double(double value);

struct StatRow {
  long k = 0;
  double mean = 0.0;
  double std = 0.0;  // population convention (divide by N)
  double min = 0.0;
  double max = 0.0;
};

struct SummaryCell {
  std::string method;
  double eps_eta = 0.0;
  std::vector<StatRow> stats;  // ordered by k
};

struct Summary {
  std::vector<SummaryCell> cells;
};

/// Per (method, eps_eta, k) statistics of exact_gap across seeds. Seeds whose
/// value is NaN at some k (no reference, or a failed cell) are left out of
/// that k; a k with no finite value gets NaN statistics.
Summary summarize(const std::vector<CellRecord>& cells);

void write_csv(std::ostream& out, const std::vector<CellRecord>& cells);
void emit_csv(const std::vector<CellRecord>& cells, const std::string& path);

/// Parses a file written by emit_csv. Throws IoError on unreadable files or
/// a header mismatch.
std::vector<CsvRow> read_csv(const std::string& path);

std::string summary_to_json(const Summary& summary);
void emit_json(const Summary& summary, const std::string& path);

}  // namespace axgd
