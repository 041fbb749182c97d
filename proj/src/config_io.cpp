#include "seisctl/config_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "seisctl/errors.hpp"
#include "seisctl/units.hpp"

namespace seisctl {

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error([&] {
        std::string msg = "invalid configuration:";
        for (const auto& s : issues) msg += "\n  " + s;
        return msg;
      }()),
      issues_(std::move(issues)) {}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

enum class Dim { kNone, kLength, kTime, kDiffusivity, kCompressibility, kStressRate, kFlux, kRate, kRate2 };

const std::map<std::string, std::pair<Dim, double>>& unit_table() {
  static const std::map<std::string, std::pair<Dim, double>> table = {
      {"km", {Dim::kLength, 1.0}},
      {"m", {Dim::kLength, 1e-3}},
      {"hr", {Dim::kTime, 1.0}},
      {"s", {Dim::kTime, 1.0 / 3600.0}},
      {"day", {Dim::kTime, 24.0}},
      {"month", {Dim::kTime, units::kHoursPerMonth}},
      {"year", {Dim::kTime, units::kHoursPerYear}},
      {"km2/hr", {Dim::kDiffusivity, 1.0}},
      {"m2/s", {Dim::kDiffusivity, 3600.0 * 1e-6}},
      {"1/MPa", {Dim::kCompressibility, 1.0}},
      {"1/GPa", {Dim::kCompressibility, 1e-3}},
      {"1/Pa", {Dim::kCompressibility, 1e6}},
      {"MPa/hr", {Dim::kStressRate, 1.0}},
      {"MPa/year", {Dim::kStressRate, 1.0 / units::kHoursPerYear}},
      {"Pa/s", {Dim::kStressRate, 3600.0 * 1e-6}},
      {"m3/hr", {Dim::kFlux, 1.0}},
      {"m3/s", {Dim::kFlux, 3600.0}},
      {"1/hr", {Dim::kRate, 1.0}},
      {"1/s", {Dim::kRate, 3600.0}},
      {"1/hr2", {Dim::kRate2, 1.0}},
  };
  return table;
}

const char* dim_name(Dim d) {
  switch (d) {
    case Dim::kNone: return "dimensionless";
    case Dim::kLength: return "length (km, m)";
    case Dim::kTime: return "time (hr, s, day, month, year)";
    case Dim::kDiffusivity: return "diffusivity (km2/hr, m2/s)";
    case Dim::kCompressibility: return "compressibility (1/MPa, 1/GPa, 1/Pa)";
    case Dim::kStressRate: return "stress rate (MPa/hr, MPa/year, Pa/s)";
    case Dim::kFlux: return "flux (m3/hr, m3/s)";
    case Dim::kRate: return "rate (1/hr, 1/s)";
    case Dim::kRate2: return "rate squared (1/hr2)";
  }
  return "?";
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

struct Entry {
  std::string value;
  int line = 0;
};

class Parser {
 public:
  explicit Parser(std::string source) : source_(std::move(source)) {}

  void error(int line, const std::string& msg) {
    errors_.push_back(source_ + ":" + std::to_string(line) + ": " + msg);
  }
  void error(const std::string& msg) { errors_.push_back(source_ + ": " + msg); }
  std::vector<std::string>& errors() { return errors_; }

  void read(std::string_view text) {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto nl = text.find('\n', pos);
      const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
      pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
      ++line_no;
      const std::string line = trim(raw);
      if (line.empty() || line[0] == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        error(line_no, "expected 'key = value'");
        continue;
      }
      const std::string key = trim(std::string_view(line).substr(0, eq));
      const std::string value = trim(std::string_view(line).substr(eq + 1));
      if (key.empty()) {
        error(line_no, "missing key before '='");
        continue;
      }
      if (entries_.count(key)) {
        error(line_no, "duplicate key '" + key + "' (first set on line " + std::to_string(entries_[key].line) + ")");
        continue;
      }
      entries_[key] = {value, line_no};
    }
  }

  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  const Entry* get(const std::string& key) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return nullptr;
    used_.insert(key);
    return &it->second;
  }
  std::vector<std::string> keys_with_prefix(const std::string& prefix) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries_) {
      if (k.rfind(prefix, 0) == 0) out.push_back(k);
    }
    return out;
  }
  void report_unknown() {
    for (const auto& [k, v] : entries_) {
      if (!used_.count(k)) error(v.line, "unknown key '" + k + "'");
    }
  }

  // Splits "a, b, c unit" into the numeric part and the unit tag.
  std::pair<std::string, std::string> split_unit(const std::string& value) {
    const auto sp = value.find_last_of(" \t");
    if (sp == std::string::npos) {
      if (unit_table().count(value)) return {"", value};
      return {value, ""};
    }
    const std::string tail = trim(std::string_view(value).substr(sp + 1));
    if (unit_table().count(tail)) return {trim(std::string_view(value).substr(0, sp)), tail};
    return {value, ""};
  }

  std::optional<double> number(const std::string& text, int line, const std::string& key) {
    const std::string t = trim(text);
    double v = 0.0;
    const char* first = t.data();
    if (!t.empty() && t[0] == '+') ++first;
    const auto res = std::from_chars(first, t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
      error(line, "'" + key + "': '" + t + "' is not a number");
      return std::nullopt;
    }
    return v;
  }

  double unit_factor(Dim dim, const std::string& unit, int line, const std::string& key, bool& ok) {
    if (dim == Dim::kNone) {
      if (!unit.empty()) {
        error(line, "'" + key + "' is dimensionless but has unit '" + unit + "'");
        ok = false;
      }
      return 1.0;
    }
    if (unit.empty()) {
      error(line, "'" + key + "' needs a unit tag for " + dim_name(dim));
      ok = false;
      return 1.0;
    }
    const auto& [udim, factor] = unit_table().at(unit);
    if (udim != dim) {
      error(line, "'" + key + "': unit '" + unit + "' is not a " + dim_name(dim) + " unit");
      ok = false;
    }
    return factor;
  }

  // Comma separated list of numbers with one shared unit tag.
  std::optional<std::vector<double>> list(const std::string& key, Dim dim) {
    const Entry* e = get(key);
    if (!e) return std::nullopt;
    auto [nums, unit] = split_unit(e->value);
    bool ok = true;
    const double f = unit_factor(dim, unit, e->line, key, ok);
    std::vector<double> out;
    if (trim(nums).empty()) {
      error(e->line, "'" + key + "' has no value");
      return std::nullopt;
    }
    std::stringstream ss(nums);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto v = number(item, e->line, key);
      if (!v) {
        ok = false;
        continue;
      }
      out.push_back(*v * f);
    }
    if (!ok) return std::nullopt;
    return out;
  }

  std::optional<double> scalar(const std::string& key, Dim dim) {
    const Entry* e = entries_.count(key) ? &entries_.at(key) : nullptr;
    auto v = list(key, dim);
    if (!v) return std::nullopt;
    if (v->size() != 1) {
      error(e->line, "'" + key + "' expects a single value");
      return std::nullopt;
    }
    return v->front();
  }

  std::optional<long long> integer(const std::string& key) {
    const Entry* e = get(key);
    if (!e) return std::nullopt;
    long long v = 0;
    const auto& s = e->value;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      error(e->line, "'" + key + "': '" + s + "' is not an integer");
      return std::nullopt;
    }
    return v;
  }

  std::optional<bool> boolean(const std::string& key) {
    const Entry* e = get(key);
    if (!e) return std::nullopt;
    if (e->value == "true") return true;
    if (e->value == "false") return false;
    error(e->line, "'" + key + "' must be true or false");
    return std::nullopt;
  }

  std::optional<std::string> word(const std::string& key) {
    const Entry* e = get(key);
    if (!e) return std::nullopt;
    return e->value;
  }

  // Rows separated by ';', entries by ','. A single row of n values with
  // `diagonal_if_row` becomes an n x n diagonal matrix.
  std::optional<Eigen::MatrixXd> matrix(const std::string& key, Dim dim, bool diagonal_if_row) {
    const Entry* e = get(key);
    if (!e) return std::nullopt;
    auto [nums, unit] = split_unit(e->value);
    bool ok = true;
    const double f = unit_factor(dim, unit, e->line, key, ok);
    std::vector<std::vector<double>> rows;
    std::stringstream rs(nums);
    std::string row;
    while (std::getline(rs, row, ';')) {
      std::vector<double> vals;
      std::stringstream cs(row);
      std::string item;
      while (std::getline(cs, item, ',')) {
        auto v = number(item, e->line, key);
        if (!v) {
          ok = false;
          continue;
        }
        vals.push_back(*v * f);
      }
      rows.push_back(std::move(vals));
    }
    if (!ok) return std::nullopt;
    if (rows.empty() || rows.front().empty()) {
      error(e->line, "'" + key + "' has no value");
      return std::nullopt;
    }
    const auto cols = rows.front().size();
    for (const auto& r : rows) {
      if (r.size() != cols) {
        error(e->line, "'" + key + "' rows have different lengths");
        return std::nullopt;
      }
    }
    if (rows.size() == 1 && diagonal_if_row) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(cols), static_cast<Eigen::Index>(cols));
      for (std::size_t i = 0; i < cols; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = rows[0][i];
      return m;
    }
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < cols; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    return m;
  }

  // "+[x0,x1]x[y0,y1] -[...]x[...] km"
  std::optional<RegionSpec> region(const std::string& key) {
    const Entry* e = get(key);
    if (!e) return std::nullopt;
    auto [body, unit] = split_unit(e->value);
    bool ok = true;
    const double f = unit_factor(Dim::kLength, unit, e->line, key, ok);
    if (!ok) return std::nullopt;
    RegionSpec spec;
    std::stringstream ss(body);
    std::string token;
    while (ss >> token) {
      RectRegion r;
      if (token[0] == '+' || token[0] == '-') {
        r.sign = token[0] == '-' ? -1 : +1;
        token.erase(0, 1);
      }
      double v[4];
      char sep[7];
      std::stringstream ts(token);
      ts.imbue(std::locale::classic());
      if (!(ts >> sep[0] >> v[0] >> sep[1] >> v[1] >> sep[2] >> sep[3] >> sep[4] >> v[2] >> sep[5] >> v[3] >> sep[6]) ||
          sep[0] != '[' || sep[1] != ',' || sep[2] != ']' || sep[3] != 'x' || sep[4] != '[' || sep[5] != ',' ||
          sep[6] != ']' || ts.rdbuf()->in_avail() != 0) {
        error(e->line, "'" + key + "': cannot read rectangle '" + token + "', expected [x0,x1]x[y0,y1]");
        return std::nullopt;
      }
      r.x_lo = v[0] * f;
      r.x_hi = v[1] * f;
      r.y_lo = v[2] * f;
      r.y_hi = v[3] * f;
      spec.rects.push_back(r);
    }
    if (spec.rects.empty()) {
      error(e->line, "'" + key + "' has no rectangles");
      return std::nullopt;
    }
    return spec;
  }

  std::optional<Point> point(const std::string& key) {
    const Entry* e = entries_.count(key) ? &entries_.at(key) : nullptr;
    auto v = list(key, Dim::kLength);
    if (!v) return std::nullopt;
    if (v->size() != 2) {
      error(e->line, "'" + key + "' expects 'x, y'");
      return std::nullopt;
    }
    return Point{(*v)[0], (*v)[1]};
  }

  // Indexed keys prefix.1, prefix.2, ... must be contiguous.
  std::size_t indexed_count(const std::string& prefix) {
    std::set<long> idx;
    for (const auto& k : keys_with_prefix(prefix + ".")) {
      const std::string rest = k.substr(prefix.size() + 1);
      long v = 0;
      const auto res = std::from_chars(rest.data(), rest.data() + rest.size(), v);
      if (res.ec == std::errc() && res.ptr == rest.data() + rest.size() && v >= 1) idx.insert(v);
    }
    if (idx.empty()) return 0;
    const auto n = static_cast<std::size_t>(*idx.rbegin());
    if (idx.size() != n) error("'" + prefix + ".N' keys must be numbered 1.." + std::to_string(n) + " without gaps");
    return n;
  }

 private:
  std::string source_;
  std::map<std::string, Entry> entries_;
  std::set<std::string> used_;
  std::vector<std::string> errors_;
};

}  // namespace

ScenarioConfig parse_config_string(std::string_view text, std::string_view source) {
  Parser p{std::string(source)};
  p.read(text);
  ScenarioConfig cfg;

  auto require = [&](const std::string& key) {
    if (!p.has(key)) p.error("missing required key '" + key + "'");
  };
  for (const char* key : {"schema_version", "name", "physics.c_hy", "physics.beta", "physics.friction",
                          "physics.tau0_dot", "physics.t_a", "physics.length", "physics.depth", "control.enabled",
                          "output.horizon"}) {
    require(key);
  }

  if (auto v = p.integer("schema_version")) cfg.schema_version = static_cast<int>(*v);
  if (auto v = p.word("name")) cfg.name = *v;

  auto set_scalar = [&](const char* key, Dim dim, double& target) {
    if (auto v = p.scalar(key, dim)) target = *v;
  };
  set_scalar("physics.c_hy", Dim::kDiffusivity, cfg.physics.c_hy);
  set_scalar("physics.beta", Dim::kCompressibility, cfg.physics.beta);
  set_scalar("physics.friction", Dim::kNone, cfg.physics.friction);
  set_scalar("physics.tau0_dot", Dim::kStressRate, cfg.physics.tau0_dot);
  set_scalar("physics.t_a", Dim::kTime, cfg.physics.t_a);
  set_scalar("physics.length", Dim::kLength, cfg.physics.length);
  set_scalar("physics.depth", Dim::kLength, cfg.physics.depth);

  if (auto v = p.integer("basis.modes_per_axis")) cfg.basis_modes_per_axis = static_cast<int>(*v);
  if (auto v = p.integer("basis.modes")) cfg.basis_modes = static_cast<int>(*v);

  const std::size_t n_fixed = p.indexed_count("wells.fixed");
  const std::size_t n_flux = p.indexed_count("flux.fixed");
  if (n_flux != n_fixed) p.error("each wells.fixed.N needs a matching flux.fixed.N");
  cfg.fixed_fluxes = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_flux));
  for (std::size_t i = 1; i <= n_fixed; ++i) {
    if (auto pt = p.point("wells.fixed." + std::to_string(i))) cfg.fixed_wells.push_back(*pt);
  }
  for (std::size_t i = 1; i <= n_flux; ++i) {
    if (auto q = p.scalar("flux.fixed." + std::to_string(i), Dim::kFlux)) {
      cfg.fixed_fluxes(static_cast<Eigen::Index>(i - 1)) = *q;
    }
  }
  const std::size_t n_control = p.indexed_count("wells.control");
  for (std::size_t i = 1; i <= n_control; ++i) {
    if (auto pt = p.point("wells.control." + std::to_string(i))) cfg.control_wells.push_back(*pt);
  }
  const std::size_t n_regions = p.indexed_count("region");
  if (n_regions == 0) p.error("at least one 'region.N' key is required");
  for (std::size_t i = 1; i <= n_regions; ++i) {
    if (auto r = p.region("region." + std::to_string(i))) cfg.regions.push_back(*r);
  }

  if (auto v = p.boolean("control.enabled")) cfg.control.enabled = *v;
  if (auto m = p.matrix("control.k1", Dim::kRate, true)) cfg.control.gains.k1 = *m;
  if (auto m = p.matrix("control.k2", Dim::kRate2, true)) cfg.control.gains.k2 = *m;
  set_scalar("control.exponent", Dim::kNone, cfg.control.gains.exponent);
  set_scalar("control.nominal_bias", Dim::kNone, cfg.control.nominal_bias);
  set_scalar("control.sign_epsilon", Dim::kNone, cfg.control.sign_epsilon);
  set_scalar("control.hold_period", Dim::kTime, cfg.control.hold_period);
  if (cfg.control.enabled) {
    for (const char* key : {"control.k1", "control.k2", "control.exponent"}) {
      if (!p.has(key)) p.error(std::string("controlled runs need '") + key + "'");
    }
    if (!p.has("reference.target_log_rate") && !p.has("reference.target_rate")) {
      p.error("controlled runs need 'reference.target_log_rate' or 'reference.target_rate'");
    }
  }

  if (p.has("reference.target_log_rate") && p.has("reference.target_rate")) {
    p.error("set only one of 'reference.target_log_rate' and 'reference.target_rate'");
  }
  if (auto v = p.list("reference.target_log_rate", Dim::kNone)) {
    cfg.reference.target = Eigen::Map<const Eigen::VectorXd>(v->data(), static_cast<Eigen::Index>(v->size()));
  }
  if (auto v = p.list("reference.target_rate", Dim::kNone)) {
    cfg.reference.target.resize(static_cast<Eigen::Index>(v->size()));
    for (std::size_t i = 0; i < v->size(); ++i) {
      if (!((*v)[i] > 0.0)) p.error("reference.target_rate values must be positive");
      cfg.reference.target(static_cast<Eigen::Index>(i)) = std::log((*v)[i]);
    }
  }
  set_scalar("reference.ramp", Dim::kTime, cfg.reference.ramp);

  if (auto kind = p.word("demand.kind")) {
    if (*kind == "none") {
      cfg.demand.kind = DemandKind::kNone;
    } else if (*kind == "constant") {
      cfg.demand.kind = DemandKind::kConstant;
    } else if (*kind == "square_wave") {
      cfg.demand.kind = DemandKind::kSquareWave;
    } else {
      p.error("demand.kind must be none, constant or square_wave");
    }
  }
  if (cfg.demand.active()) {
    for (const char* key : {"demand.weights", "demand.value"}) {
      if (!p.has(key)) p.error(std::string("demand schedules need '") + key + "'");
    }
    if (cfg.demand.kind == DemandKind::kSquareWave && !p.has("demand.off_value")) {
      p.error("square_wave demand needs 'demand.off_value'");
    }
  }
  if (auto m = p.matrix("demand.weights", Dim::kNone, false)) cfg.demand.weights = *m;
  if (auto v = p.list("demand.value", Dim::kFlux)) {
    cfg.demand.value = Eigen::Map<const Eigen::VectorXd>(v->data(), static_cast<Eigen::Index>(v->size()));
  }
  if (auto v = p.list("demand.off_value", Dim::kFlux)) {
    cfg.demand.off_value = Eigen::Map<const Eigen::VectorXd>(v->data(), static_cast<Eigen::Index>(v->size()));
  }
  set_scalar("demand.period", Dim::kTime, cfg.demand.period);
  set_scalar("demand.duty", Dim::kNone, cfg.demand.duty);

  if (auto v = p.boolean("heterogeneity.enabled")) cfg.heterogeneity.enabled = *v;
  if (auto v = p.integer("heterogeneity.seed")) {
    if (*v < 0) p.error("heterogeneity.seed must be non-negative");
    cfg.heterogeneity.seed = static_cast<std::uint64_t>(*v);
  }
  set_scalar("heterogeneity.range_decades", Dim::kNone, cfg.heterogeneity.range_decades);
  set_scalar("heterogeneity.mean_ratio", Dim::kNone, cfg.heterogeneity.mean_ratio);
  set_scalar("heterogeneity.beta_range_decades", Dim::kNone, cfg.heterogeneity.beta_range_decades);
  if (auto v = p.integer("heterogeneity.quadrature_panels")) cfg.heterogeneity.quadrature_panels = static_cast<int>(*v);

  std::string method = "auto";
  if (auto v = p.word("integrator.method")) method = *v;
  if (method == "auto") {
    cfg.integrator.method = default_integrator_method(cfg.control.gains.exponent);
  } else if (method == "rk23") {
    cfg.integrator.method = IntegratorMethod::kRk23;
  } else if (method == "rk4") {
    cfg.integrator.method = IntegratorMethod::kRk4;
  } else {
    p.error("integrator.method must be auto, rk23 or rk4");
  }
  set_scalar("integrator.rtol", Dim::kNone, cfg.integrator.rtol);
  set_scalar("integrator.atol", Dim::kNone, cfg.integrator.atol);
  set_scalar("integrator.max_step", Dim::kTime, cfg.integrator.max_step);
  set_scalar("integrator.min_step", Dim::kTime, cfg.integrator.min_step);
  set_scalar("integrator.dt", Dim::kTime, cfg.integrator.dt);

  set_scalar("output.horizon", Dim::kTime, cfg.output.horizon);
  set_scalar("output.cadence", Dim::kTime, cfg.output.cadence);
  if (auto v = p.list("output.snapshot_times", Dim::kTime)) cfg.output.snapshot_times = *v;
  if (auto v = p.integer("output.snapshot_nx")) cfg.output.snapshot_nx = static_cast<int>(*v);
  if (auto v = p.integer("output.snapshot_ny")) cfg.output.snapshot_ny = static_cast<int>(*v);

  p.report_unknown();
  auto& errors = p.errors();
  if (errors.empty()) {
    for (auto& issue : cfg.issues()) errors.push_back(std::string(source) + ": " + issue);
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return cfg;
}

ScenarioConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({path.string() + ": cannot open file"});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_string(ss.str(), path.string());
}

namespace {

std::string join(const Eigen::VectorXd& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v(i));
  return s;
}

std::string join(const std::vector<double>& v) {
  return join(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
}

std::string join_matrix(const Eigen::MatrixXd& m, bool diagonal_as_row) {
  bool diagonal = diagonal_as_row && m.rows() == m.cols();
  for (Eigen::Index i = 0; diagonal && i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j && m(i, j) != 0.0) diagonal = false;
    }
  }
  if (diagonal) return join(Eigen::VectorXd(m.diagonal()));
  std::string s;
  for (Eigen::Index i = 0; i < m.rows(); ++i) s += (i ? "; " : "") + join(Eigen::VectorXd(m.row(i).transpose()));
  return s;
}

}  // namespace

std::string format_config(const ScenarioConfig& cfg) {
  std::ostringstream o;
  o << "# canonical units: km, hr, MPa; fluxes in m3/hr\n";
  o << "schema_version = " << cfg.schema_version << "\n";
  o << "name = " << cfg.name << "\n";
  o << "physics.c_hy = " << format_double(cfg.physics.c_hy) << " km2/hr\n";
  o << "physics.beta = " << format_double(cfg.physics.beta) << " 1/MPa\n";
  o << "physics.friction = " << format_double(cfg.physics.friction) << "\n";
  o << "physics.tau0_dot = " << format_double(cfg.physics.tau0_dot) << " MPa/hr\n";
  o << "physics.t_a = " << format_double(cfg.physics.t_a) << " hr\n";
  o << "physics.length = " << format_double(cfg.physics.length) << " km\n";
  o << "physics.depth = " << format_double(cfg.physics.depth) << " km\n";
  o << "basis.modes_per_axis = " << cfg.basis_modes_per_axis << "\n";
  o << "basis.modes = " << cfg.basis_modes << "\n";
  for (std::size_t i = 0; i < cfg.fixed_wells.size(); ++i) {
    o << "wells.fixed." << i + 1 << " = " << format_double(cfg.fixed_wells[i].x) << ", "
      << format_double(cfg.fixed_wells[i].y) << " km\n";
  }
  for (Eigen::Index i = 0; i < cfg.fixed_fluxes.size(); ++i) {
    o << "flux.fixed." << i + 1 << " = " << format_double(cfg.fixed_fluxes(i)) << " m3/hr\n";
  }
  for (std::size_t i = 0; i < cfg.control_wells.size(); ++i) {
    o << "wells.control." << i + 1 << " = " << format_double(cfg.control_wells[i].x) << ", "
      << format_double(cfg.control_wells[i].y) << " km\n";
  }
  for (std::size_t i = 0; i < cfg.regions.size(); ++i) {
    o << "region." << i + 1 << " =";
    for (const auto& r : cfg.regions[i].rects) {
      o << ' ' << (r.sign < 0 ? '-' : '+') << '[' << format_double(r.x_lo) << ',' << format_double(r.x_hi) << "]x["
        << format_double(r.y_lo) << ',' << format_double(r.y_hi) << ']';
    }
    o << " km\n";
  }
  o << "control.enabled = " << (cfg.control.enabled ? "true" : "false") << "\n";
  if (cfg.control.gains.k1.size() > 0) o << "control.k1 = " << join_matrix(cfg.control.gains.k1, true) << " 1/hr\n";
  if (cfg.control.gains.k2.size() > 0) o << "control.k2 = " << join_matrix(cfg.control.gains.k2, true) << " 1/hr2\n";
  o << "control.exponent = " << format_double(cfg.control.gains.exponent) << "\n";
  o << "control.nominal_bias = " << format_double(cfg.control.nominal_bias) << "\n";
  o << "control.sign_epsilon = " << format_double(cfg.control.sign_epsilon) << "\n";
  o << "control.hold_period = " << format_double(cfg.control.hold_period) << " hr\n";
  if (cfg.reference.target.size() > 0) o << "reference.target_log_rate = " << join(cfg.reference.target) << "\n";
  o << "reference.ramp = " << format_double(cfg.reference.ramp) << " hr\n";
  o << "demand.kind = " << to_string(cfg.demand.kind) << "\n";
  if (cfg.demand.active()) {
    o << "demand.weights = " << join_matrix(cfg.demand.weights, false) << "\n";
    o << "demand.value = " << join(cfg.demand.value) << " m3/hr\n";
    if (cfg.demand.kind == DemandKind::kSquareWave) {
      o << "demand.off_value = " << join(cfg.demand.off_value) << " m3/hr\n";
      o << "demand.period = " << format_double(cfg.demand.period) << " hr\n";
      o << "demand.duty = " << format_double(cfg.demand.duty) << "\n";
    }
  }
  o << "heterogeneity.enabled = " << (cfg.heterogeneity.enabled ? "true" : "false") << "\n";
  o << "heterogeneity.seed = " << cfg.heterogeneity.seed << "\n";
  o << "heterogeneity.range_decades = " << format_double(cfg.heterogeneity.range_decades) << "\n";
  o << "heterogeneity.mean_ratio = " << format_double(cfg.heterogeneity.mean_ratio) << "\n";
  o << "heterogeneity.beta_range_decades = " << format_double(cfg.heterogeneity.beta_range_decades) << "\n";
  o << "heterogeneity.quadrature_panels = " << cfg.heterogeneity.quadrature_panels << "\n";
  o << "integrator.method = " << to_string(cfg.integrator.method) << "\n";
  o << "integrator.rtol = " << format_double(cfg.integrator.rtol) << "\n";
  o << "integrator.atol = " << format_double(cfg.integrator.atol) << "\n";
  o << "integrator.max_step = " << format_double(cfg.integrator.max_step) << " hr\n";
  o << "integrator.min_step = " << format_double(cfg.integrator.min_step) << " hr\n";
  o << "integrator.dt = " << format_double(cfg.integrator.dt) << " hr\n";
  o << "output.horizon = " << format_double(cfg.output.horizon) << " hr\n";
  o << "output.cadence = " << format_double(cfg.output.cadence) << " hr\n";
  if (!cfg.output.snapshot_times.empty()) o << "output.snapshot_times = " << join(cfg.output.snapshot_times) << " hr\n";
  o << "output.snapshot_nx = " << cfg.output.snapshot_nx << "\n";
  o << "output.snapshot_ny = " << cfg.output.snapshot_ny << "\n";
  return o.str();
}

}  // namespace seisctl
