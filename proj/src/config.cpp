#include "css2d/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "css2d/grid.hpp"

namespace css2d {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>> kKeys = {
    {"grid", {"n", "L"}},
    {"physics", {"kappa", "s", "gauge_coupling"}},
    {"stepper", {"dt", "t_end", "mode", "cutoff_mu"}},
    {"data", {"kind", "amplitude", "width", "x1", "x2", "k1", "k2", "slope", "radius", "seed"}},
    {"run", {"solver", "stride", "output_dir", "blowup_ceiling"}},
    {"picard", {"delta", "tol_outer", "tol_inner", "max_outer", "max_sweeps", "existence_horizon"}},
};

template <typename T>
T get(const pt::ptree& tree, const std::string& key, T fallback) {
  const auto v = tree.get_optional<std::string>(key);
  if (!v) return fallback;
  try {
    if constexpr (std::is_same_v<T, std::string>) {
      return *v;
    } else if constexpr (std::is_same_v<T, bool>) {
      if (*v == "true" || *v == "1") return true;
      if (*v == "false" || *v == "0") return false;
      throw ConfigError("");
    } else {
      std::istringstream in(*v);
      T out;
      in >> out;
      if (!in || !(in >> std::ws).eof()) throw ConfigError("");
      return out;
    }
  } catch (const std::exception&) {
    throw ConfigError("bad value '" + *v + "' for " + key);
  }
}

template <typename T>
std::optional<T> get_opt(const pt::ptree& tree, const std::string& key) {
  if (!tree.get_optional<std::string>(key)) return std::nullopt;
  return get<T>(tree, key, T{});
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError(std::string(what) + " must be positive");
}

}  // namespace

DataKind parse_data_kind(const std::string& s) {
  if (s == "gaussian") return DataKind::Gaussian;
  if (s == "plane_wave") return DataKind::PlaneWave;
  if (s == "random_hs") return DataKind::RandomHs;
  throw ConfigError("unknown data kind '" + s + "'");
}

std::string to_string(DataKind k) {
  switch (k) {
    case DataKind::Gaussian: return "gaussian";
    case DataKind::PlaneWave: return "plane_wave";
    case DataKind::RandomHs: return "random_hs";
  }
  return "";
}

Solver parse_solver(const std::string& s) {
  if (s == "evolve") return Solver::Evolve;
  if (s == "picard") return Solver::Picard;
  throw ConfigError("unknown solver '" + s + "'");
}

std::string to_string(Solver s) { return s == Solver::Evolve ? "evolve" : "picard"; }

void SimConfig::validate() const {
  if (grid.n < 8 || grid.n % 2 != 0) throw ConfigError("grid.n must be even and at least 8");
  positive(grid.length, "grid.L");
  if (!std::isfinite(physics.kappa)) throw ConfigError("physics.kappa must be finite");
  if (!(physics.s >= 1.0)) throw ConfigError("physics.s must be at least 1");
  positive(stepper.dt, "stepper.dt");
  positive(stepper.t_end, "stepper.t_end");
  if (!(data.amplitude >= 0.0)) throw ConfigError("data.amplitude must be nonnegative");
  positive(data.width, "data.width");
  if (data.slope && !std::isfinite(*data.slope)) throw ConfigError("data.slope must be finite");
  if (!(data.radius >= 0.0)) throw ConfigError("data.radius must be nonnegative");
  if (data.kind == DataKind::RandomHs && !data.seed) throw ConfigError("random_hs data needs data.seed");
  if (run.stride < 1) throw ConfigError("run.stride must be at least 1");
  if (run.blowup_ceiling) positive(*run.blowup_ceiling, "run.blowup_ceiling");
  if (run.output_dir.empty()) throw ConfigError("run.output_dir must not be empty");
  picard_config().validate();
  if (solver_needs_divisible_step()) step_count(stepper.t_end, stepper.dt);
}

bool SimConfig::solver_needs_divisible_step() const { return run.solver == Solver::Evolve; }

GridPtr SimConfig::make_grid() const { return Grid::create(grid.n, grid.length); }

StepperConfig SimConfig::stepper_config() const {
  StepperConfig sc;
  sc.dt = stepper.dt;
  sc.cutoff_mu = stepper.cutoff_mu;
  sc.kappa = physics.kappa;
  sc.mode = stepper.mode;
  sc.gauge_coupling = physics.gauge_coupling;
  return sc;
}

PicardConfig SimConfig::picard_config() const {
  PicardConfig pc;
  pc.s = physics.s;
  pc.delta = picard.delta;
  pc.max_outer = picard.max_outer;
  pc.max_sweeps = picard.max_sweeps;
  pc.tol_outer = picard.tol_outer;
  pc.tol_inner = picard.tol_inner;
  pc.radius = data.radius > 0.0 ? data.radius : pc.radius;
  if (!picard.existence_horizon) pc.t_end = stepper.t_end;
  pc.stepper = stepper_config();
  return pc;
}

EvolveOptions SimConfig::evolve_options() const {
  EvolveOptions opt;
  opt.stride = run.stride;
  opt.s = physics.s;
  opt.blowup_ceiling = run.blowup_ceiling;
  return opt;
}

SimConfig parse_config(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    const auto known = kKeys.find(section);
    if (known == kKeys.end()) throw ConfigError("unknown config section [" + section + "]");
    for (const auto& kv : body)
      if (!known->second.count(kv.first)) throw ConfigError("unknown key " + section + "." + kv.first);
  }

  SimConfig c;
  c.grid.n = get(tree, "grid.n", c.grid.n);
  c.grid.length = get(tree, "grid.L", c.grid.length);
  c.physics.kappa = get(tree, "physics.kappa", c.physics.kappa);
  c.physics.s = get(tree, "physics.s", c.physics.s);
  c.physics.gauge_coupling = get(tree, "physics.gauge_coupling", c.physics.gauge_coupling);
  c.stepper.dt = get(tree, "stepper.dt", c.stepper.dt);
  c.stepper.t_end = get(tree, "stepper.t_end", c.stepper.t_end);
  c.stepper.mode = parse_mode(get<std::string>(tree, "stepper.mode", to_string(c.stepper.mode)));
  c.stepper.cutoff_mu = get_opt<double>(tree, "stepper.cutoff_mu");
  c.data.kind = parse_data_kind(get<std::string>(tree, "data.kind", to_string(c.data.kind)));
  c.data.amplitude = get(tree, "data.amplitude", c.data.amplitude);
  c.data.width = get(tree, "data.width", c.data.width);
  c.data.x1 = get_opt<double>(tree, "data.x1");
  c.data.x2 = get_opt<double>(tree, "data.x2");
  c.data.k1 = get(tree, "data.k1", c.data.k1);
  c.data.k2 = get(tree, "data.k2", c.data.k2);
  c.data.slope = get_opt<double>(tree, "data.slope");
  c.data.radius = get(tree, "data.radius", c.data.radius);
  c.data.seed = get_opt<std::uint64_t>(tree, "data.seed");
  c.run.solver = parse_solver(get<std::string>(tree, "run.solver", to_string(c.run.solver)));
  c.run.stride = get(tree, "run.stride", c.run.stride);
  c.run.output_dir = get(tree, "run.output_dir", c.run.output_dir);
  c.run.blowup_ceiling = get_opt<double>(tree, "run.blowup_ceiling");
  c.picard.delta = get(tree, "picard.delta", c.picard.delta);
  c.picard.tol_outer = get(tree, "picard.tol_outer", c.picard.tol_outer);
  c.picard.tol_inner = get_opt<double>(tree, "picard.tol_inner");
  c.picard.max_outer = get(tree, "picard.max_outer", c.picard.max_outer);
  c.picard.max_sweeps = get(tree, "picard.max_sweeps", c.picard.max_sweeps);
  c.picard.existence_horizon = get(tree, "picard.existence_horizon", c.picard.existence_horizon);
  c.validate();
  return c;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize(const SimConfig& c) {
  std::ostringstream out;
  auto opt = [&](const char* key, const std::optional<double>& v) {
    if (v) out << key << " = " << num(*v) << "\n";
  };
  out << "[grid]\nn = " << c.grid.n << "\nL = " << num(c.grid.length) << "\n\n";
  out << "[physics]\nkappa = " << num(c.physics.kappa) << "\ns = " << num(c.physics.s)
      << "\ngauge_coupling = " << (c.physics.gauge_coupling ? "true" : "false") << "\n\n";
  out << "[stepper]\ndt = " << num(c.stepper.dt) << "\nt_end = " << num(c.stepper.t_end)
      << "\nmode = " << to_string(c.stepper.mode) << "\n";
  opt("cutoff_mu", c.stepper.cutoff_mu);
  out << "\n[data]\nkind = " << to_string(c.data.kind) << "\namplitude = " << num(c.data.amplitude)
      << "\nwidth = " << num(c.data.width) << "\n";
  opt("x1", c.data.x1);
  opt("x2", c.data.x2);
  out << "k1 = " << num(c.data.k1) << "\nk2 = " << num(c.data.k2) << "\n";
  opt("slope", c.data.slope);
  out << "radius = " << num(c.data.radius) << "\n";
  if (c.data.seed) out << "seed = " << *c.data.seed << "\n";
  out << "\n[run]\nsolver = " << to_string(c.run.solver) << "\nstride = " << c.run.stride
      << "\noutput_dir = " << c.run.output_dir << "\n";
  opt("blowup_ceiling", c.run.blowup_ceiling);
  out << "\n[picard]\ndelta = " << num(c.picard.delta) << "\ntol_outer = " << num(c.picard.tol_outer) << "\n";
  opt("tol_inner", c.picard.tol_inner);
  out << "max_outer = " << c.picard.max_outer << "\nmax_sweeps = " << c.picard.max_sweeps
      << "\nexistence_horizon = " << (c.picard.existence_horizon ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace css2d
