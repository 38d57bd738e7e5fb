#include "axgd/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "axgd/error.hpp"

namespace axgd {

namespace {

std::string Trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> SplitList(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = value.find(',', start);
    out.push_back(Trim(std::string_view(value).substr(
        start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string Render(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Collects conversion failures instead of throwing on the first one.
class Reader {
 public:
  explicit Reader(std::vector<std::string>& errors) : errors_(errors) {}

  std::optional<double> Double(const std::string& key, const std::string& v) {
    const char* first = v.data();
    const char* last = v.data() + v.size();
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last || v.empty() || !std::isfinite(out)) {
      errors_.push_back(key + ": expected a finite number, got '" + v + "'");
      return std::nullopt;
    }
    return out;
  }

  template <typename Int>
  std::optional<Int> Integer(const std::string& key, const std::string& v) {
    Int out{};
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
      errors_.push_back(key + ": expected an integer, got '" + v + "'");
      return std::nullopt;
    }
    return out;
  }

  std::optional<bool> Bool(const std::string& key, const std::string& v) {
    if (v == "true") return true;
    if (v == "false") return false;
    errors_.push_back(key + ": expected true or false, got '" + v + "'");
    return std::nullopt;
  }

  template <typename T>
  std::optional<T> Choice(const std::string& key, const std::string& v,
                          const std::map<std::string, T>& options) {
    const auto it = options.find(v);
    if (it != options.end()) return it->second;
    std::string allowed;
    for (const auto& [name, _] : options) {
      allowed += allowed.empty() ? name : " | " + name;
    }
    errors_.push_back(key + ": '" + v + "' is not one of " + allowed);
    return std::nullopt;
  }

 private:
  std::vector<std::string>& errors_;
};

const std::map<std::string, ProblemKind> kProblems{
    {"cycle-quadratic", ProblemKind::kCycleQuadratic},
    {"custom-quadratic", ProblemKind::kCustomQuadratic},
    {"lipschitz-norm", ProblemKind::kLipschitzNorm},
    {"holder-power", ProblemKind::kHolderPower}};

const std::map<std::string, DomainKind> kDomains{
    {"unconstrained", DomainKind::kUnconstrained},
    {"box", DomainKind::kBox},
    {"simplex", DomainKind::kSimplex}};

const std::map<std::string, Geometry> kGeometries{
    {"euclidean", Geometry::kEuclidean}, {"entropy", Geometry::kEntropy}};

const std::map<std::string, ScheduleKind> kSchedules{
    {"smooth", ScheduleKind::kSmooth},
    {"hoelder", ScheduleKind::kHoelder},
    {"holder", ScheduleKind::kHoelder},
    {"lipschitz", ScheduleKind::kLipschitz}};

const std::map<std::string, GapModeKind> kGapModes{
    {"oracle-optimum", GapModeKind::kOracleOptimum},
    {"radius-bound", GapModeKind::kRadiusBound}};

const std::map<std::string, UnconstrainedChoice> kUnconstrained{
    {"auto", UnconstrainedChoice::kAuto},
    {"drift", UnconstrainedChoice::kDrift},
    {"regularized", UnconstrainedChoice::kRegularized}};

const std::map<std::string, Method> kMethods{{"axgd", Method::kAxgd},
                                             {"agd", Method::kAgd},
                                             {"gd", Method::kGd},
                                             {"implicit", Method::kImplicit}};

template <typename T>
std::string NameOf(const std::map<std::string, T>& options, T value) {
  for (const auto& [name, v] : options) {
    if (v == value) return name;
  }
  return "?";
}

}  // namespace

std::string to_string(ProblemKind kind) { return NameOf(kProblems, kind); }

std::vector<std::string> validate(const ExperimentConfig& c) {
  std::vector<std::string> v;
  if (c.steps < 1) v.push_back("steps: must be >= 1");
  if (c.noise.num_seeds < 1) v.push_back("num_seeds: must be >= 1");
  if (c.noise.epsilon_eta.empty()) v.push_back("epsilon_eta: list is empty");
  for (double e : c.noise.epsilon_eta) {
    if (!(e >= 0.0)) v.push_back("epsilon_eta: entries must be >= 0");
  }
  if (c.geometry == Geometry::kEntropy && c.domain.kind != DomainKind::kSimplex) {
    v.push_back("geometry: entropy requires domain = simplex");
  }
  if (c.geometry == Geometry::kEuclidean && c.domain.kind == DomainKind::kSimplex) {
    v.push_back("geometry: the simplex domain needs geometry = entropy");
  }
  if (c.domain.kind == DomainKind::kBox && !(c.domain.lower < c.domain.upper)) {
    v.push_back("box_lower: must be < box_upper");
  }
  if (c.methods.empty()) v.push_back("methods: list is empty");
  const int min_n = c.problem.kind == ProblemKind::kCycleQuadratic ? 3 : 1;
  if (c.problem.n < min_n) {
    v.push_back("n: must be >= " + std::to_string(min_n));
  }
  if (c.problem.kind == ProblemKind::kHolderPower &&
      !(c.problem.nu > 0.0 && c.problem.nu <= 1.0)) {
    v.push_back("nu: must lie in (0, 1]");
  }
  if (!(c.problem.smoothness > 0.0)) v.push_back("problem_smoothness: must be > 0");
  if (!(c.problem.lipschitz > 0.0)) v.push_back("problem_lipschitz: must be > 0");
  if (!(c.schedule.sigma > 0.0)) v.push_back("sigma: must be > 0");
  auto positive = [&](const std::optional<double>& x, const char* key) {
    if (x && !(*x > 0.0)) v.push_back(std::string(key) + ": must be > 0");
  };
  positive(c.schedule.smoothness, "L");
  positive(c.schedule.holder_constant, "L_nu");
  positive(c.schedule.diameter, "D");
  positive(c.schedule.c_override, "c_override");
  positive(c.schedule.radius, "R");
  if (c.schedule.holder_exponent &&
      !(*c.schedule.holder_exponent > 0.0 && *c.schedule.holder_exponent <= 1.0)) {
    v.push_back("schedule_nu: must lie in (0, 1]");
  }
  if (c.gap_mode == GapModeKind::kRadiusBound && !(c.gap_radius > 0.0)) {
    v.push_back("gap_radius: radius-bound mode needs gap_radius > 0");
  }
  if (!(c.inner_tol >= 0.0)) v.push_back("inner_tol: must be >= 0");
  if (c.max_inner < 2) v.push_back("max_inner: must be >= 2");
  if (c.output.write_csv && c.output.csv.empty()) v.push_back("csv: empty path");
  if (c.output.write_json && c.output.json.empty()) v.push_back("json: empty path");
  return v;
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  std::vector<std::string> errors;
  Reader r(errors);
  std::map<std::string, int> seen;
  double box_lower = -1.0;
  double box_upper = 1.0;
  std::optional<DomainKind> domain_kind;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string content = Trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(line_no) +
                       ": expected 'key = value'");
      continue;
    }
    const std::string key = Trim(std::string_view(content).substr(0, eq));
    const std::string value = Trim(std::string_view(content).substr(eq + 1));
    if (key.empty()) {
      errors.push_back("line " + std::to_string(line_no) + ": missing key");
      continue;
    }
    if (++seen[key] == 2) errors.push_back(key + ": given more than once");

    auto set = [](auto& target, auto parsed) {
      if (parsed) target = *parsed;
    };
    if (key == "problem") {
      set(c.problem.kind, r.Choice(key, value, kProblems));
    } else if (key == "n") {
      set(c.problem.n, r.Integer<int>(key, value));
    } else if (key == "nu") {
      set(c.problem.nu, r.Double(key, value));
    } else if (key == "problem_smoothness") {
      set(c.problem.smoothness, r.Double(key, value));
    } else if (key == "problem_lipschitz") {
      set(c.problem.lipschitz, r.Double(key, value));
    } else if (key == "problem_seed") {
      set(c.problem.seed, r.Integer<std::uint64_t>(key, value));
    } else if (key == "unconstrained_mode") {
      set(c.problem.unconstrained, r.Choice(key, value, kUnconstrained));
    } else if (key == "domain") {
      set(domain_kind, r.Choice(key, value, kDomains));
    } else if (key == "box_lower") {
      set(box_lower, r.Double(key, value));
    } else if (key == "box_upper") {
      set(box_upper, r.Double(key, value));
    } else if (key == "geometry") {
      set(c.geometry, r.Choice(key, value, kGeometries));
    } else if (key == "methods") {
      c.methods.clear();
      for (const auto& m : SplitList(value)) {
        const auto method = r.Choice("methods", m, kMethods);
        if (!method) continue;
        bool duplicate = false;
        for (Method existing : c.methods) duplicate |= existing == *method;
        if (duplicate) {
          errors.push_back("methods: '" + m + "' listed twice");
        } else {
          c.methods.push_back(*method);
        }
      }
    } else if (key == "schedule") {
      set(c.schedule.kind, r.Choice(key, value, kSchedules));
    } else if (key == "sigma") {
      set(c.schedule.sigma, r.Double(key, value));
    } else if (key == "L") {
      c.schedule.smoothness = r.Double(key, value);
    } else if (key == "schedule_nu") {
      c.schedule.holder_exponent = r.Double(key, value);
    } else if (key == "L_nu") {
      c.schedule.holder_constant = r.Double(key, value);
    } else if (key == "D") {
      c.schedule.diameter = r.Double(key, value);
    } else if (key == "c_override") {
      c.schedule.c_override = r.Double(key, value);
    } else if (key == "R") {
      c.schedule.radius = r.Double(key, value);
    } else if (key == "steps") {
      set(c.steps, r.Integer<long>(key, value));
    } else if (key == "epsilon_eta") {
      c.noise.epsilon_eta.clear();
      for (const auto& e : SplitList(value)) {
        if (const auto d = r.Double(key, e)) c.noise.epsilon_eta.push_back(*d);
      }
    } else if (key == "num_seeds") {
      set(c.noise.num_seeds, r.Integer<int>(key, value));
    } else if (key == "base_seed") {
      set(c.noise.base_seed, r.Integer<std::uint64_t>(key, value));
    } else if (key == "gap_mode") {
      set(c.gap_mode, r.Choice(key, value, kGapModes));
    } else if (key == "gap_radius") {
      set(c.gap_radius, r.Double(key, value));
    } else if (key == "inner_tol") {
      set(c.inner_tol, r.Double(key, value));
    } else if (key == "max_inner") {
      set(c.max_inner, r.Integer<int>(key, value));
    } else if (key == "csv") {
      c.output.csv = value;
    } else if (key == "json") {
      c.output.json = value;
    } else if (key == "write_csv") {
      set(c.output.write_csv, r.Bool(key, value));
    } else if (key == "write_json") {
      set(c.output.write_json, r.Bool(key, value));
    } else if (key == "record_wall_time") {
      set(c.output.record_wall_time, r.Bool(key, value));
    } else {
      errors.push_back(key + ": unknown key");
    }
  }

  if (domain_kind) {
    switch (*domain_kind) {
      case DomainKind::kUnconstrained:
        c.domain = Domain::unconstrained();
        break;
      case DomainKind::kSimplex:
        c.domain = Domain::simplex();
        break;
      case DomainKind::kBox:
        c.domain = {DomainKind::kBox, box_lower, box_upper};
        break;
    }
  } else if (seen.count("box_lower") || seen.count("box_upper")) {
    errors.push_back("box_lower/box_upper: only valid with domain = box");
  }

  for (auto& v : validate(c)) errors.push_back(std::move(v));
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open config file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError(path, "read failed");
  return parse_config(buffer.str());
}

std::string render_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "problem = " << to_string(c.problem.kind) << "\n";
  out << "n = " << c.problem.n << "\n";
  out << "nu = " << Render(c.problem.nu) << "\n";
  out << "problem_smoothness = " << Render(c.problem.smoothness) << "\n";
  out << "problem_lipschitz = " << Render(c.problem.lipschitz) << "\n";
  out << "problem_seed = " << c.problem.seed << "\n";
  out << "unconstrained_mode = "
      << NameOf(kUnconstrained, c.problem.unconstrained) << "\n";
  out << "domain = " << NameOf(kDomains, c.domain.kind) << "\n";
  if (c.domain.kind == DomainKind::kBox) {
    out << "box_lower = " << Render(c.domain.lower) << "\n";
    out << "box_upper = " << Render(c.domain.upper) << "\n";
  }
  out << "geometry = " << NameOf(kGeometries, c.geometry) << "\n";
  out << "methods = ";
  for (std::size_t i = 0; i < c.methods.size(); ++i) {
    out << (i ? "," : "") << to_string(c.methods[i]);
  }
  out << "\n";
  out << "schedule = " << to_string(c.schedule.kind) << "\n";
  out << "sigma = " << Render(c.schedule.sigma) << "\n";
  auto opt = [&](const char* key, const std::optional<double>& v) {
    if (v) out << key << " = " << Render(*v) << "\n";
  };
  opt("L", c.schedule.smoothness);
  opt("schedule_nu", c.schedule.holder_exponent);
  opt("L_nu", c.schedule.holder_constant);
  opt("D", c.schedule.diameter);
  opt("c_override", c.schedule.c_override);
  opt("R", c.schedule.radius);
  out << "steps = " << c.steps << "\n";
  out << "epsilon_eta = ";
  for (std::size_t i = 0; i < c.noise.epsilon_eta.size(); ++i) {
    out << (i ? "," : "") << Render(c.noise.epsilon_eta[i]);
  }
  out << "\n";
  out << "num_seeds = " << c.noise.num_seeds << "\n";
  out << "base_seed = " << c.noise.base_seed << "\n";
  out << "gap_mode = " << NameOf(kGapModes, c.gap_mode) << "\n";
  if (c.gap_mode == GapModeKind::kRadiusBound) {
    out << "gap_radius = " << Render(c.gap_radius) << "\n";
  }
  out << "inner_tol = " << Render(c.inner_tol) << "\n";
  out << "max_inner = " << c.max_inner << "\n";
  out << "csv = " << c.output.csv << "\n";
  out << "json = " << c.output.json << "\n";
  out << "write_csv = " << (c.output.write_csv ? "true" : "false") << "\n";
  out << "write_json = " << (c.output.write_json ? "true" : "false") << "\n";
  out << "record_wall_time = " << (c.output.record_wall_time ? "true" : "false")
      << "\n";
  return out.str();
}

}  // namespace axgd
