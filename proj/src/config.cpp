#include "rotor/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "rotor/error.hpp"

namespace rotor {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ValidationError("line " + std::to_string(line) + ": " + what);
}

double to_real(const std::string& v, int line, const std::string& key) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x)) {
    fail(line, key + " expects a real number, got '" + v + "'");
  }
  return x;
}

long long to_int(const std::string& v, int line, const std::string& key) {
  long long x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) fail(line, key + " expects an integer, got '" + v + "'");
  return x;
}

InitKind to_init_kind(const std::string& v, int line) {
  for (InitKind k : {InitKind::gaussian, InitKind::perturbed_gaussian, InitKind::vortex_seeded, InitKind::from_file}) {
    if (to_string(k) == v) return k;
  }
  fail(line, "solver.init_kind must be gaussian, perturbed_gaussian, vortex_seeded or from_file, got '" + v + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&, int)>;

template <typename F>
Setter real_key(const char* name, F assign, std::function<bool(double)> ok, const char* bound) {
  return [=](RunConfig& cfg, const std::string& v, int line) {
    const double x = to_real(v, line, name);
    if (!ok(x)) fail(line, std::string(name) + " " + bound);
    assign(cfg, x);
  };
}

template <typename F>
Setter int_key(const char* name, F assign, long long lo, long long hi) {
  return [=](RunConfig& cfg, const std::string& v, int line) {
    const long long x = to_int(v, line, name);
    if (x < lo || x > hi) fail(line, std::string(name) + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    assign(cfg, x);
  };
}

const std::map<std::string, Setter>& setters() {
  auto pos = [](double x) { return x > 0.0; };
  static const std::map<std::string, Setter> table = {
      {"seed", [](RunConfig& c, const std::string& v, int line) {
         const long long x = to_int(v, line, "seed");
         if (x < 0) fail(line, "seed must be non-negative");
         c.seed = static_cast<std::uint64_t>(x);
       }},
      {"output_dir", [](RunConfig& c, const std::string& v, int line) {
         if (v.empty()) fail(line, "output_dir must not be empty");
         c.output_dir = v;
       }},
      {"threads", int_key("threads", [](RunConfig& c, long long x) { c.threads = static_cast<int>(x); }, 1, 1024)},

      {"grid.dim", int_key("grid.dim", [](RunConfig& c, long long x) { c.grid.dim = static_cast<int>(x); }, 2, 3)},
      {"grid.points", [](RunConfig& c, const std::string& v, int line) {
         const long long m = to_int(v, line, "grid.points");
         if (m < 16 || m > (1 << 14) || (m & (m - 1)) != 0) fail(line, "grid.points must be a power of two >= 16");
         c.grid.points_per_axis = static_cast<int>(m);
       }},
      {"grid.half_width", real_key("grid.half_width", [](RunConfig& c, double x) { c.grid.half_width = x; }, pos, "must be positive")},

      {"physics.a", real_key("physics.a", [](RunConfig& c, double x) { c.physics.a = x; }, [](double x) { return x >= 0.0; }, "must be >= 0")},
      {"physics.p", real_key("physics.p", [](RunConfig& c, double x) { c.physics.p = x; }, [](double x) { return x > 2.0; }, "must exceed 2")},
      {"physics.omega_mag", real_key("physics.omega_mag", [](RunConfig& c, double x) { c.physics.omega_mag = x; },
                                     [](double x) { return x >= 0.0 && x < 1.0; }, "must lie in [0,1)")},

      {"constraint.c", real_key("constraint.c", [](RunConfig& c, double x) { c.solver.c = x; }, pos, "must be positive")},
      {"constraint.r", real_key("constraint.r", [](RunConfig& c, double x) { c.solver.r = x; }, pos, "must be positive")},

      {"solver.dt_imag", real_key("solver.dt_imag", [](RunConfig& c, double x) { c.solver.dt_imag = x; }, pos, "must be positive")},
      {"solver.tol_grad", real_key("solver.tol_grad", [](RunConfig& c, double x) { c.solver.tol_grad = x; }, pos, "must be positive")},
      {"solver.max_iters", int_key("solver.max_iters", [](RunConfig& c, long long x) { c.solver.max_iters = static_cast<int>(x); }, 1, 100000000)},
      {"solver.init_kind", [](RunConfig& c, const std::string& v, int line) { c.solver.init_kind = to_init_kind(v, line); }},
      {"solver.init_file", [](RunConfig& c, const std::string& v, int) { c.init_file = v; }},

      {"dynamics.T", real_key("dynamics.T", [](RunConfig& c, double x) { c.dynamics.T = x; }, pos, "must be positive")},
      {"dynamics.dt", real_key("dynamics.dt", [](RunConfig& c, double x) { c.dynamics.dt = x; }, pos, "must be positive")},
      {"dynamics.sample_every", real_key("dynamics.sample_every", [](RunConfig& c, double x) { c.dynamics.sample_every = x; }, pos, "must be positive")},
      {"dynamics.trials", int_key("dynamics.trials", [](RunConfig& c, long long x) { c.dynamics.trials = static_cast<int>(x); }, 1, 100000)},
      {"dynamics.perturbation_scale", real_key("dynamics.perturbation_scale", [](RunConfig& c, double x) { c.dynamics.perturbation_scale = x; },
                                               [](double x) { return x > 0.0 && x <= 0.1; }, "must lie in (0, 0.1]")},

      {"saddle.nodes", int_key("saddle.nodes", [](RunConfig& c, long long x) { c.saddle.nodes = static_cast<int>(x); }, 17, 1025)},
      {"saddle.sweeps", int_key("saddle.sweeps", [](RunConfig& c, long long x) { c.saddle.sweeps = static_cast<int>(x); }, 1, 1000000)},
      {"saddle.climb_after", int_key("saddle.climb_after", [](RunConfig& c, long long x) { c.saddle.climb_after = static_cast<int>(x); }, 0, 1000000)},
      {"saddle.band_tol", real_key("saddle.band_tol", [](RunConfig& c, double x) { c.saddle.band_tol = x; }, pos, "must be positive")},
      {"saddle.tol", real_key("saddle.tol", [](RunConfig& c, double x) { c.saddle.tol = x; }, pos, "must be positive")},
  };
  return table;
}

void fill_echo(RunConfig& c) {
  auto& e = c.echo;
  e.clear();
  e["seed"] = std::to_string(c.seed);
  e["output_dir"] = c.output_dir;
  e["threads"] = std::to_string(c.threads);
  e["grid.dim"] = std::to_string(c.grid.dim);
  e["grid.points"] = std::to_string(c.grid.points_per_axis);
  e["grid.half_width"] = fmt(c.grid.half_width);
  e["physics.a"] = fmt(c.physics.a);
  e["physics.p"] = fmt(c.physics.p);
  e["physics.omega_mag"] = fmt(c.physics.omega_mag);
  e["constraint.c"] = fmt(c.solver.c);
  e["constraint.r"] = fmt(c.solver.r);
  e["solver.dt_imag"] = fmt(c.solver.dt_imag);
  e["solver.tol_grad"] = fmt(c.solver.tol_grad);
  e["solver.max_iters"] = std::to_string(c.solver.max_iters);
  e["solver.init_kind"] = to_string(c.solver.init_kind);
  e["solver.init_file"] = c.init_file;
  e["dynamics.T"] = fmt(c.dynamics.T);
  e["dynamics.dt"] = fmt(c.dynamics.dt);
  e["dynamics.sample_every"] = fmt(c.dynamics.sample_every);
  e["dynamics.trials"] = std::to_string(c.dynamics.trials);
  e["dynamics.perturbation_scale"] = fmt(c.dynamics.perturbation_scale);
  e["saddle.nodes"] = std::to_string(c.saddle.nodes);
  e["saddle.sweeps"] = std::to_string(c.saddle.sweeps);
  e["saddle.climb_after"] = std::to_string(c.saddle.climb_after);
  e["saddle.band_tol"] = fmt(c.saddle.band_tol);
  e["saddle.tol"] = fmt(c.saddle.tol);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  static const std::set<std::string> sections = {"grid", "physics", "constraint", "solver", "dynamics", "saddle"};
  RunConfig cfg;
  cfg.physics.dim = cfg.grid.dim;
  std::map<std::string, int> seen;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(std::string_view(raw).substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "malformed section header '" + s + "'");
      section = trim(std::string_view(s).substr(1, s.size() - 2));
      if (!sections.count(section)) fail(line, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected key = value, got '" + s + "'");
    const std::string key = trim(std::string_view(s).substr(0, eq));
    const std::string value = trim(std::string_view(s).substr(eq + 1));
    const std::string full = section.empty() ? key : section + "." + key;
    const auto it = setters().find(full);
    if (it == setters().end()) fail(line, "unknown key '" + full + "'");
    if (seen.count(full)) fail(line, "duplicate key '" + full + "' (first set on line " + std::to_string(seen[full]) + ")");
    seen[full] = line;
    it->second(cfg, value, line);
  }
  auto line_of = [&](const char* key) { return seen.count(key) ? seen.at(key) : line; };

  cfg.physics.dim = cfg.grid.dim;
  try {
    cfg.grid = make_grid(cfg.grid.dim, cfg.grid.points_per_axis, cfg.grid.half_width);
  } catch (const ValidationError& e) {
    fail(line_of("grid.points"), e.what());
  }
  try {
    cfg.physics = make_physics(cfg.grid.dim, cfg.physics.a, cfg.physics.p, cfg.physics.omega_mag);
  } catch (const ValidationError& e) {
    fail(line_of("physics.p"), e.what());
  }
  if (cfg.solver.c > cfg.solver.r / cfg.grid.dim) {
    std::ostringstream msg;
    msg << "c > r/N: S(c)∩B(r) empty (c = " << cfg.solver.c << ", r/N = " << cfg.solver.r / cfg.grid.dim
        << "; need c <= r/N)";
    fail(line_of("constraint.c"), msg.str());
  }
  if (cfg.solver.init_kind == InitKind::from_file && cfg.init_file.empty()) {
    fail(line_of("solver.init_kind"), "solver.init_kind = from_file requires solver.init_file");
  }
  cfg.solver.seed = cfg.seed;
  fill_echo(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot open config " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

}  // namespace rotor
