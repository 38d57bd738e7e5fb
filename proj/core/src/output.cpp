#include "axgd/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "axgd/error.hpp"

namespace axgd {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

Summary summarize(const std::vector<CellRecord>& cells) {
  // (method, eps) keyed in first-seen order.
  std::vector<std::pair<std::string, double>> order;
  std::map<std::pair<std::string, double>, std::map<long, std::vector<double>>>
      values;
  for (const auto& cell : cells) {
    const std::pair<std::string, double> key{to_string(cell.method), cell.eps_eta};
    auto [it, inserted] = values.try_emplace(key);
    if (inserted) order.push_back(key);
    for (const auto& row : cell.rows) {
      auto& bucket = it->second[row.k];
      if (!std::isnan(row.exact_gap)) bucket.push_back(row.exact_gap);
    }
  }

  Summary summary;
  for (const auto& key : order) {
    SummaryCell out{key.first, key.second, {}};
    for (const auto& [k, v] : values[key]) {
      StatRow s;
      s.k = k;
      if (v.empty()) {
        s.mean = s.std = s.min = s.max = std::numeric_limits<double>::quiet_NaN();
      } else {
        double sum = 0.0;
        s.min = v.front();
        s.max = v.front();
        for (double x : v) {
          sum += x;
          s.min = std::min(s.min, x);
          s.max = std::max(s.max, x);
        }
        s.mean = sum / static_cast<double>(v.size());
        double sq = 0.0;
        for (double x : v) sq += (x - s.mean) * (x - s.mean);
        s.std = std::sqrt(sq / static_cast<double>(v.size()));
      }
      out.stats.push_back(s);
    }
    summary.cells.push_back(std::move(out));
  }
  return summary;
}

void write_csv(std::ostream& out, const std::vector<CellRecord>& cells) {
  out << kCsvHeader << '\n';
  for (const auto& cell : cells) {
    for (const auto& r : cell.rows) {
      out << r.method << ',' << format_double(r.eps_eta) << ',' << r.seed << ','
          << r.k << ',' << format_double(r.a_k) << ',' << format_double(r.A_k)
          << ',' << format_double(r.f_upper) << ','
          << format_double(r.exact_gap) << ',' << format_double(r.approx_gap)
          << ',' << format_double(r.lower_bound) << ',' << format_double(r.E_k)
          << ',' << r.grad_queries << ',' << r.wall_time_ns << '\n';
    }
  }
}

void emit_csv(const std::vector<CellRecord>& cells, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  write_csv(out, cells);
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

std::vector<CsvRow> read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw IoError(path, "missing or unexpected CSV header");
  }
  std::vector<CsvRow> rows;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (f.size() != 13) {
      throw IoError(path, "line " + std::to_string(line_no) + ": expected 13 fields");
    }
    try {
      CsvRow r;
      r.method = f[0];
      r.eps_eta = std::stod(f[1]);
      r.seed = std::stoi(f[2]);
      r.k = std::stol(f[3]);
      r.a_k = std::stod(f[4]);
      r.A_k = std::stod(f[5]);
      r.f_upper = std::stod(f[6]);
      r.exact_gap = std::stod(f[7]);
      r.approx_gap = std::stod(f[8]);
      r.lower_bound = std::stod(f[9]);
      r.E_k = std::stod(f[10]);
      r.grad_queries = std::stol(f[11]);
      r.wall_time_ns = std::stoll(f[12]);
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw IoError(path, "line " + std::to_string(line_no) + ": bad number");
    }
  }
  return rows;
}

std::string summary_to_json(const Summary& summary) {
  // NaN has no JSON spelling; it becomes null.
  auto num = [](double v) -> nlohmann::json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };
  nlohmann::json doc;
  doc["schema"] = kSummarySchema;
  doc["std_convention"] = "population";
  doc["statistic"] = "exact_gap";
  doc["cells"] = nlohmann::json::array();
  for (const auto& cell : summary.cells) {
    nlohmann::json c;
    c["method"] = cell.method;
    c["eps_eta"] = cell.eps_eta;
    c["stats"] = nlohmann::json::array();
    for (const auto& s : cell.stats) {
      c["stats"].push_back({{"k", s.k},
                            {"mean", num(s.mean)},
                            {"std", num(s.std)},
                            {"min", num(s.min)},
                            {"max", num(s.max)}});
    }
    doc["cells"].push_back(std::move(c));
  }
  return doc.dump(1) + "\n";
}

void emit_json(const Summary& summary, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  out << summary_to_json(summary);
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

}  // namespace axgd
