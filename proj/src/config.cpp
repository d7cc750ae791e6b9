#include <cmath>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "lglmcl/app.hpp"

namespace lglmcl {

CaseName parse_case(std::string_view name) {
  if (name == "density_wave") return CaseName::density_wave;
  if (name == "khi") return CaseName::khi;
  if (name == "sedov") return CaseName::sedov;
  if (name == "jet") return CaseName::jet;
  if (name == "custom") return CaseName::custom;
  throw ConfigError("unknown case '" + std::string(name) + "'");
}

std::string_view to_string(CaseName c) {
  switch (c) {
    case CaseName::density_wave: return "density_wave";
    case CaseName::khi: return "khi";
    case CaseName::sedov: return "sedov";
    case CaseName::jet: return "jet";
    case CaseName::custom: return "custom";
  }
  return "?";
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(std::string_view key, std::string_view v) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x))
    throw ConfigError("key '" + std::string(key) + "': not a number: '" + std::string(v) + "'");
  return x;
}

int to_int(std::string_view key, std::string_view v) {
  int x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError("key '" + std::string(key) + "': not an integer: '" + std::string(v) + "'");
  return x;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("key '" + std::string(key) + "': expected on/off, got '" + std::string(v) +
                    "'");
}

std::vector<double> to_list(std::string_view key, std::string_view v) {
  std::vector<double> out;
  while (!v.empty()) {
    const auto comma = v.find(',');
    const auto item = trim(v.substr(0, comma));
    if (!item.empty()) out.push_back(to_double(key, item));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

void set_config_value(RunConfig& c, std::string_view key, std::string_view v) {
  if (key == "case") c.case_name = parse_case(v);
  else if (key == "dim") c.dim = to_int(key, v);
  else if (key == "degree" || key == "n") c.degree = to_int(key, v);
  else if (key == "elements") c.elements = to_int(key, v);
  else if (key == "gamma") c.gamma = to_double(key, v);
  else if (key == "cfl") c.cfl = to_double(key, v);
  else if (key == "t_final") c.t_final = to_double(key, v);
  else if (key == "pipeline") c.pipeline = parse_pipeline(v);
  else if (key == "pressure") c.pressure = parse_pressure_mode(v);
  else if (key == "entropy_limiter") c.entropy_limiter = to_bool(key, v);
  else if (key == "volume_flux") c.volume_flux = parse_volume_flux(v);
  else if (key == "out") c.out_dir = std::string(v);
  else if (key == "snapshot_times") c.snapshot_times = to_list(key, v);
  else if (key == "diagnostics_every") c.diagnostics_every = to_int(key, v);
  else if (key == "audit") c.audit = to_bool(key, v);
  else if (key == "full_scale") c.full_scale = to_bool(key, v);
  else if (key == "rho_left") c.riemann.rho_left = to_double(key, v);
  else if (key == "v_left") c.riemann.v_left = to_double(key, v);
  else if (key == "p_left") c.riemann.p_left = to_double(key, v);
  else if (key == "rho_right") c.riemann.rho_right = to_double(key, v);
  else if (key == "v_right") c.riemann.v_right = to_double(key, v);
  else if (key == "p_right") c.riemann.p_right = to_double(key, v);
  else if (key == "x0") c.riemann.x0 = to_double(key, v);
  else throw ConfigError("unknown key '" + std::string(key) + "'");
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) throw ConfigError(where + "expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + "empty key");
    if (!seen.insert(std::string(key)).second)
      throw ConfigError(where + "duplicate key '" + std::string(key) + "'");
    try {
      set_config_value(cfg, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void RunConfig::resolve() {
  const bool big = full_scale;
  auto set_int = [](std::optional<int>& o, int v) { if (!o) o = v; };
  auto set_dbl = [](std::optional<double>& o, double v) { if (!o) o = v; };
  switch (case_name) {
    case CaseName::density_wave:
      set_int(dim, 2); set_int(degree, 3); set_int(elements, 8);
      set_dbl(t_final, 1.0); set_dbl(gamma, 1.4);
      if (!volume_flux) volume_flux = VolumeFlux::ranocha;
      break;
    case CaseName::khi:
      set_int(dim, 2); set_int(degree, big ? 7 : 3); set_int(elements, big ? 64 : 16);
      set_dbl(t_final, big ? 10.0 : 2.0); set_dbl(gamma, 1.4);
      if (!volume_flux) volume_flux = VolumeFlux::ranocha;
      break;
    case CaseName::sedov:
      set_int(dim, 2); set_int(degree, 3); set_int(elements, big ? 64 : 32);
      set_dbl(t_final, big ? 3.0 : 0.5); set_dbl(gamma, 1.4);
      if (!volume_flux) volume_flux = VolumeFlux::chandrashekar;
      break;
    case CaseName::jet:
      set_int(dim, 2); set_int(degree, 3); set_int(elements, big ? 256 : 64);
      set_dbl(t_final, big ? 1e-3 : 2e-4); set_dbl(gamma, 5.0 / 3.0);
      if (!volume_flux) volume_flux = VolumeFlux::ranocha;
      break;
    case CaseName::custom:
      set_int(dim, 1); set_int(degree, 3); set_int(elements, 32);
      set_dbl(t_final, 0.2); set_dbl(gamma, 1.4);
      if (!volume_flux) volume_flux = VolumeFlux::ranocha;
      break;
  }
  if (!entropy_limiter)
    entropy_limiter = pipeline == Pipeline::A || pipeline == Pipeline::B || pipeline == Pipeline::C;
  validate();
}

void RunConfig::validate() const {
  if (!dim || !degree || !elements || !gamma || !t_final || !entropy_limiter || !volume_flux)
    throw ConfigError("configuration is not resolved");
  if (*dim != 1 && *dim != 2) throw ConfigError("dim must be 1 or 2");
  if ((case_name == CaseName::khi || case_name == CaseName::sedov || case_name == CaseName::jet) &&
      *dim != 2)
    throw ConfigError(std::string(to_string(case_name)) + " is a two-dimensional case");
  if (*degree < 1 || *degree > kMaxDegree)
    throw ConfigError("degree must lie in [1, " + std::to_string(kMaxDegree) + "]");
  if (*elements < 1) throw ConfigError("elements must be positive");
  GasModel{*gamma}.validate();
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
  if (!(*t_final > 0.0)) throw ConfigError("t_final must be positive");
  if (diagnostics_every < 1) throw ConfigError("diagnostics_every must be positive");
  for (double t : snapshot_times)
    if (!(t > 0.0)) throw ConfigError("snapshot times must be positive");
  if (case_name == CaseName::custom) {
    const auto& r = riemann;
    if (!(r.rho_left > 0 && r.rho_right > 0 && r.p_left > 0 && r.p_right > 0))
      throw ConfigError("custom Riemann states need positive density and pressure");
    if (!(r.x0 > 0.0 && r.x0 < 1.0)) throw ConfigError("x0 must lie inside (0, 1)");
  }
}

LimiterConfig RunConfig::limiter() const {
  LimiterConfig l;
  l.pipeline = pipeline;
  l.pressure_mode = pressure;
  l.entropy_limiter = entropy_limiter.value_or(false);
  return l;
}

std::string format_config(const RunConfig& c) {
  std::ostringstream os;
  os << "case = " << to_string(c.case_name) << "\n";
  if (c.dim) os << "dim = " << *c.dim << "\n";
  if (c.degree) os << "degree = " << *c.degree << "\n";
  if (c.elements) os << "elements = " << *c.elements << "\n";
  if (c.gamma) os << "gamma = " << fmt(*c.gamma) << "\n";
  os << "cfl = " << fmt(c.cfl) << "\n";
  if (c.t_final) os << "t_final = " << fmt(*c.t_final) << "\n";
  os << "pipeline = " << to_string(c.pipeline) << "\n";
  os << "pressure = " << to_string(c.pressure) << "\n";
  if (c.entropy_limiter) os << "entropy_limiter = " << (*c.entropy_limiter ? "on" : "off") << "\n";
  if (c.volume_flux) os << "volume_flux = " << to_string(*c.volume_flux) << "\n";
  if (!c.out_dir.empty()) os << "out = " << c.out_dir << "\n";
  if (!c.snapshot_times.empty()) {
    os << "snapshot_times = ";
    for (std::size_t i = 0; i < c.snapshot_times.size(); ++i)
      os << (i ? ", " : "") << fmt(c.snapshot_times[i]);
    os << "\n";
  }
  os << "diagnostics_every = " << c.diagnostics_every << "\n";
  os << "audit = " << (c.audit ? "on" : "off") << "\n";
  os << "full_scale = " << (c.full_scale ? "on" : "off") << "\n";
  if (c.case_name == CaseName::custom) {
    const auto& r = c.riemann;
    os << "rho_left = " << fmt(r.rho_left) << "\nv_left = " << fmt(r.v_left)
       << "\np_left = " << fmt(r.p_left) << "\nrho_right = " << fmt(r.rho_right)
       << "\nv_right = " << fmt(r.v_right) << "\np_right = " << fmt(r.p_right)
       << "\nx0 = " << fmt(r.x0) << "\n";
  }
  return os.str();
}

}  // namespace lglmcl
