#include "crossdiff/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "crossdiff/csv_io.hpp"
#include "crossdiff/error.hpp"
#include "crossdiff/oracle.hpp"

namespace crossdiff {

namespace {

const std::map<std::string, std::set<std::string>, std::less<>> kSchema = {
    {"mesh", {"x_left", "x_right", "n"}},
    {"time", {"tau", "t_final", "tol", "k_max"}},
    {"model", {"delta", "epsilon", "q", "solver", "pressure_sign"}},
    {"species.1", {"a", "b", "c", "alpha", "beta1", "beta2"}},
    {"species.2", {"a", "b", "c", "alpha", "beta1", "beta2"}},
    {"initial", {"type", "center1", "center2", "width", "x0", "t_star", "path"}},
    {"output",
     {"snapshot_times", "directory", "jump_stencil", "jump_skip", "contact_zero_tolerance"}},
};

struct Entry {
  std::string value;
  std::size_t line = 0;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& msg) {
  std::ostringstream os;
  os << "line " << line << ": " << msg;
  throw Error(ErrorKind::parse_error, os.str());
}

[[noreturn]] void invalid(const std::string& key, const std::string& msg) {
  throw Error(ErrorKind::validation_error, key + " " + msg);
}

double to_double(std::string_view text, std::size_t line, const std::string& key) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    parse_fail(line, "'" + std::string(text) + "' is not a number (key " + key + ")");
  }
  return v;
}

std::size_t to_count(std::string_view text, std::size_t line, const std::string& key) {
  std::size_t v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    parse_fail(line, "'" + std::string(text) + "' is not a nonnegative integer (key " + key + ")");
  }
  return v;
}

class Document {
 public:
  explicit Document(std::string_view text) {
    std::string section;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto nl = text.find('\n', pos);
      std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
      pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
      ++line_no;

      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;

      if (line.front() == '[') {
        if (line.back() != ']') parse_fail(line_no, "unterminated section header");
        section = std::string(trim(line.substr(1, line.size() - 2)));
        if (!kSchema.contains(section)) parse_fail(line_no, "unknown section [" + section + "]");
        sections_.insert(section);
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) parse_fail(line_no, "expected 'key = value'");
      if (section.empty()) parse_fail(line_no, "key outside of any section");
      const std::string key(trim(line.substr(0, eq)));
      const std::string path = section + "." + key;
      if (key.empty()) parse_fail(line_no, "empty key");
      if (!kSchema.find(section)->second.contains(key)) parse_fail(line_no, "unknown key '" + path + "'");
      if (auto it = entries_.find(path); it != entries_.end()) {
        std::ostringstream os;
        os << "duplicate key '" << path << "' at line " << line_no << " (first set at line "
           << it->second.line << ")";
        parse_fail(line_no, os.str());
      }
      entries_.emplace(path, Entry{std::string(trim(line.substr(eq + 1))), line_no});
    }
  }

  bool has_section(const std::string& s) const { return sections_.contains(s); }
  bool has(const std::string& path) const { return entries_.contains(path); }

  void read(const std::string& path, double& out) const {
    if (auto it = entries_.find(path); it != entries_.end()) out = to_double(it->second.value, it->second.line, path);
  }
  void read(const std::string& path, std::size_t& out) const {
    if (auto it = entries_.find(path); it != entries_.end()) out = to_count(it->second.value, it->second.line, path);
  }
  void read(const std::string& path, std::string& out) const {
    if (auto it = entries_.find(path); it != entries_.end()) out = it->second.value;
  }
  void read(const std::string& path, std::vector<double>& out) const {
    auto it = entries_.find(path);
    if (it == entries_.end()) return;
    out.clear();
    std::string_view rest = it->second.value;
    while (!trim(rest).empty()) {
      const auto comma = rest.find(',');
      out.push_back(to_double(trim(rest.substr(0, comma)), it->second.line, path));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  template <class Enum, std::size_t N>
  void read_enum(const std::string& path, Enum& out,
                 const std::array<std::pair<std::string_view, Enum>, N>& names) const {
    auto it = entries_.find(path);
    if (it == entries_.end()) return;
    for (const auto& [name, value] : names) {
      if (it->second.value == name) {
        out = value;
        return;
      }
    }
    parse_fail(it->second.line, "unrecognized value '" + it->second.value + "' for " + path);
  }

 private:
  std::set<std::string> sections_;
  std::map<std::string, Entry> entries_;
};

constexpr std::array<std::pair<std::string_view, SolverKind>, 2> kSolverNames{
    {{"eulerian", SolverKind::eulerian}, {"fronttrack", SolverKind::fronttrack}}};
constexpr std::array<std::pair<std::string_view, InitialKind>, 3> kInitialNames{
    {{"gaussian-bumps", InitialKind::gaussian_bumps},
     {"barenblatt-split", InitialKind::barenblatt_split},
     {"file", InitialKind::file}}};

void require_finite(const std::string& key, double v) {
  if (!std::isfinite(v)) invalid(key, "must be finite");
}

}  // namespace

std::string_view to_string(InitialKind k) noexcept {
  for (const auto& [name, value] : kInitialNames) {
    if (value == k) return name;
  }
  return "unknown";
}

std::string_view to_string(SolverKind k) noexcept {
  for (const auto& [name, value] : kSolverNames) {
    if (value == k) return name;
  }
  return "unknown";
}

void SimulationConfig::validate() const {
  require_finite("mesh.x_left", mesh.x_left);
  require_finite("mesh.x_right", mesh.x_right);
  if (!(mesh.x_left < mesh.x_right)) invalid("mesh.x_right", "must exceed mesh.x_left");
  if (mesh.n < 2) invalid("mesh.n", "must be at least 2");

  if (!(time.tau > 0.0) || !std::isfinite(time.tau)) invalid("time.tau", "must be positive");
  if (!(time.t_final >= 0.0) || !std::isfinite(time.t_final)) invalid("time.t_final", "must be nonnegative");
  if (!(time.tol >= 0.0) || !std::isfinite(time.tol)) invalid("time.tol", "must be nonnegative");
  if (time.k_max < 1) invalid("time.k_max", "must be at least 1");

  if (!(model.delta >= 0.0) || !std::isfinite(model.delta)) invalid("model.delta", "must be nonnegative");
  if (!(model.epsilon > 0.0) || !std::isfinite(model.epsilon)) invalid("model.epsilon", "must be positive");
  require_finite("model.q", model.q);
  if (model.pressure_sign != 1.0 && model.pressure_sign != -1.0) {
    invalid("model.pressure_sign", "must be 1 or -1");
  }

  for (std::size_t i = 0; i < 2; ++i) {
    const std::string prefix = i == 0 ? "species.1." : "species.2.";
    const SpeciesSpec& s = species[i];
    if (!(s.a >= 0.0) || !std::isfinite(s.a)) invalid(prefix + "a", "must be nonnegative");
    if (!(s.c >= 0.0) || !std::isfinite(s.c)) invalid(prefix + "c", "must be nonnegative");
    require_finite(prefix + "b", s.b);
    require_finite(prefix + "alpha", s.alpha);
    require_finite(prefix + "beta1", s.beta1);
    require_finite(prefix + "beta2", s.beta2);
  }

  switch (initial.kind) {
    case InitialKind::gaussian_bumps:
      if (!(initial.width > 0.0)) invalid("initial.width", "must be positive");
      require_finite("initial.center1", initial.center1);
      require_finite("initial.center2", initial.center2);
      if (model.solver == SolverKind::fronttrack) {
        invalid("model.solver", "fronttrack needs segregated initial data (barenblatt-split or file)");
      }
      break;
    case InitialKind::barenblatt_split: {
      if (!(initial.t_star > 0.0)) invalid("initial.t_star", "must be positive");
      const double r0 = barenblatt_support_radius(0.0, BarenblattProfile{initial.t_star});
      if (!(std::abs(initial.x0) < r0)) invalid("initial.x0", "must lie inside the initial support");
      if (!(mesh.x_left < initial.x0 && initial.x0 < mesh.x_right)) {
        invalid("initial.x0", "must lie inside the mesh interval");
      }
      break;
    }
    case InitialKind::file:
      if (initial.path.empty()) invalid("initial.path", "is required for type = file");
      break;
  }

  for (double t : output.snapshot_times) {
    if (!(t >= 0.0) || t > time.t_final) invalid("output.snapshot_times", "must lie in [0, time.t_final]");
  }
  if (output.directory.empty()) invalid("output.directory", "must not be empty");
  if (output.jump_stencil < 1) invalid("output.jump_stencil", "must be at least 1");
  if (!(output.contact_zero_tolerance >= 0.0)) {
    invalid("output.contact_zero_tolerance", "must be nonnegative");
  }
}

SimulationConfig parse_config(std::string_view text) {
  const Document doc(text);
  SimulationConfig cfg;
  doc.read("mesh.x_left", cfg.mesh.x_left);
  doc.read("mesh.x_right", cfg.mesh.x_right);
  doc.read("mesh.n", cfg.mesh.n);

  doc.read("time.tau", cfg.time.tau);
  doc.read("time.t_final", cfg.time.t_final);
  doc.read("time.tol", cfg.time.tol);
  doc.read("time.k_max", cfg.time.k_max);

  doc.read("model.delta", cfg.model.delta);
  doc.read("model.epsilon", cfg.model.epsilon);
  doc.read("model.q", cfg.model.q);
  doc.read_enum("model.solver", cfg.model.solver, kSolverNames);
  doc.read("model.pressure_sign", cfg.model.pressure_sign);

  for (std::size_t i = 0; i < 2; ++i) {
    const std::string prefix = i == 0 ? "species.1." : "species.2.";
    SpeciesSpec& s = cfg.species[i];
    doc.read(prefix + "a", s.a);
    doc.read(prefix + "b", s.b);
    doc.read(prefix + "c", s.c);
    doc.read(prefix + "alpha", s.alpha);
    doc.read(prefix + "beta1", s.beta1);
    doc.read(prefix + "beta2", s.beta2);
  }

  doc.read_enum("initial.type", cfg.initial.kind, kInitialNames);
  doc.read("initial.center1", cfg.initial.center1);
  doc.read("initial.center2", cfg.initial.center2);
  doc.read("initial.width", cfg.initial.width);
  doc.read("initial.x0", cfg.initial.x0);
  doc.read("initial.t_star", cfg.initial.t_star);
  doc.read("initial.path", cfg.initial.path);

  doc.read("output.snapshot_times", cfg.output.snapshot_times);
  doc.read("output.directory", cfg.output.directory);
  doc.read("output.jump_stencil", cfg.output.jump_stencil);
  doc.read("output.jump_skip", cfg.output.jump_skip);
  doc.read("output.contact_zero_tolerance", cfg.output.contact_zero_tolerance);

  if (!doc.has_section("mesh")) invalid("mesh", "section is required");
  for (const char* key : {"mesh.x_left", "mesh.x_right", "mesh.n"}) {
    if (!doc.has(key)) invalid(key, "is required");
  }
  cfg.validate();
  return cfg;
}

SimulationConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io_error, "cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string render_config(const SimulationConfig& cfg) {
  std::ostringstream os;
  auto num = [](double v) { return format_double(v); };
  os << "[mesh]\n"
     << "x_left = " << num(cfg.mesh.x_left) << "\n"
     << "x_right = " << num(cfg.mesh.x_right) << "\n"
     << "n = " << cfg.mesh.n << "\n\n";
  os << "[time]\n"
     << "tau = " << num(cfg.time.tau) << "\n"
     << "t_final = " << num(cfg.time.t_final) << "\n"
     << "tol = " << num(cfg.time.tol) << "\n"
     << "k_max = " << cfg.time.k_max << "\n\n";
  os << "[model]\n"
     << "solver = " << to_string(cfg.model.solver) << "\n"
     << "delta = " << num(cfg.model.delta) << "\n"
     << "epsilon = " << num(cfg.model.epsilon) << "\n"
     << "q = " << num(cfg.model.q) << "\n"
     << "pressure_sign = " << num(cfg.model.pressure_sign) << "\n";
  for (std::size_t i = 0; i < 2; ++i) {
    const SpeciesSpec& s = cfg.species[i];
    os << "\n[species." << i + 1 << "]\n"
       << "a = " << num(s.a) << "\n"
       << "b = " << num(s.b) << "\n"
       << "c = " << num(s.c) << "\n"
       << "alpha = " << num(s.alpha) << "\n"
       << "beta1 = " << num(s.beta1) << "\n"
       << "beta2 = " << num(s.beta2) << "\n";
  }
  os << "\n[initial]\n"
     << "type = " << to_string(cfg.initial.kind) << "\n"
     << "center1 = " << num(cfg.initial.center1) << "\n"
     << "center2 = " << num(cfg.initial.center2) << "\n"
     << "width = " << num(cfg.initial.width) << "\n"
     << "x0 = " << num(cfg.initial.x0) << "\n"
     << "t_star = " << num(cfg.initial.t_star) << "\n";
  if (!cfg.initial.path.empty()) os << "path = " << cfg.initial.path << "\n";
  os << "\n[output]\n"
     << "snapshot_times = ";
  for (std::size_t i = 0; i < cfg.output.snapshot_times.size(); ++i) {
    os << (i ? ", " : "") << num(cfg.output.snapshot_times[i]);
  }
  os << "\n"
     << "directory = " << cfg.output.directory << "\n"
     << "jump_stencil = " << cfg.output.jump_stencil << "\n"
     << "jump_skip = " << cfg.output.jump_skip << "\n"
     << "contact_zero_tolerance = " << num(cfg.output.contact_zero_tolerance) << "\n";
  return os.str();
}

SimulationConfig preset_config(std::string_view name) {
  SimulationConfig cfg;
  cfg.mesh = {0.0, 1.0, 1000};
  cfg.time = {1e-5, 0.05, 1e-4, 100};
  cfg.model = {1e-3, 1e-3, 0.0, SolverKind::eulerian, 1.0};
  cfg.species[0] = {1.0, 0.0, 0.0, 1.0, 1.0, 0.5};
  cfg.species[1] = {1.0, 0.0, 0.0, 5.0, 1.0, 2.0};
  cfg.initial = InitialSpec{};
  cfg.initial.kind = InitialKind::gaussian_bumps;
  cfg.initial.center1 = 0.4;
  cfg.initial.center2 = 0.6;
  cfg.initial.width = 0.001;
  cfg.output.snapshot_times = {0.01, 0.025, 0.05};
  cfg.output.directory = "out";

  if (name == "exp1") return cfg;
  if (name == "exp2") {
    cfg.species[1].a = 3.0;
    return cfg;
  }
  throw Error(ErrorKind::invalid_argument, "unknown preset '" + std::string(name) + "'");
}

}  // namespace crossdiff
