#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "rotor/config.hpp"
#include "rotor/dynamics.hpp"
#include "rotor/error.hpp"
#include "rotor/groundstate.hpp"
#include "rotor/oracle.hpp"
#include "rotor/properties.hpp"
#include "rotor/report_json.hpp"
#include "rotor/saddle.hpp"
#include "rotor/snapshot.hpp"

namespace fs = std::filesystem;
using namespace rotor;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string join(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

std::optional<RotationConstants> constants_for(const RunConfig& cfg) {
  const auto& ph = cfg.physics;
  if (!(ph.omega_mag > 0.0)) return std::nullopt;
  try {
    const double gn = gn_constant(solve_Wp(ph.dim, ph.p));
    return compute_constants(ph, cfg.solver.r, gn);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

double ten_periods() { return 20.0 * std::numbers::pi; }

// Runs `body` with a manifest written whether it succeeds or fails numerically.
int with_manifest(const RunConfig& cfg, const std::string& command,
                  const std::function<void(RunOutcome&)>& body) {
  const auto t0 = Clock::now();
  prepare_output_dir(cfg.output_dir);
  RunOutcome out;
  out.command = command;
  out.constants = constants_for(cfg);
  int code = 0;
  try {
    body(out);
  } catch (const NumericalError& e) {
    out.status = "failed";
    out.diagnostic = e.kind() + ": " + e.what();
    code = 3;
  }
  if (out.status == "failed" && code == 0) code = 3;
  out.wall_time = seconds_since(t0);
  const std::string path = join(cfg.output_dir, command + "_manifest.json");
  write_text(path, dump(run_manifest(cfg, out)));
  if (code != 0) std::cerr << "rotor-gpe " << command << ": " << out.diagnostic << "\n";
  std::cout << path << "\n";
  return code;
}

void warn_regime(const RunConfig& cfg, const std::optional<RotationConstants>& k) {
  if (k && !(cfg.solver.c < k->c0)) {
    std::cerr << "warning: c = " << cfg.solver.c << " >= c0 = " << k->c0
              << "; outside the regime where a local minimizer in B(r) is guaranteed\n";
  }
}

int cmd_solve(const std::string& config_path) {
  RunConfig cfg = load_config(config_path);
  if (cfg.solver.init_kind == InitKind::from_file) cfg.solver.initial = read_snapshot(cfg.init_file).field;
  return with_manifest(cfg, "solve", [&](RunOutcome& out) {
    warn_regime(cfg, out.constants);
    const auto rep = minimize_local(cfg.grid, cfg.physics, cfg.solver);
    const std::string snap = join(cfg.output_dir, "ground_state.rgpe1");
    write_snapshot(snap, rep.field, cfg.physics, cfg.solver.c);
    out.artifacts.push_back(snap);
    out.results = to_json(rep);
    if (!rep.converged) {
      out.status = "failed";
      out.diagnostic = "not_converged: projected gradient above tol_grad after max_iters";
    }
  });
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ValidationError("--c-list entry '" + item + "' is not a number");
    out.push_back(x);
  }
  return out;
}

int cmd_sweep(const std::string& config_path, const std::string& c_list) {
  const RunConfig cfg = load_config(config_path);
  std::vector<double> cs = parse_list(c_list);
  std::sort(cs.begin(), cs.end(), std::greater<>());
  return with_manifest(cfg, "sweep", [&](RunOutcome& out) {
    const auto rows = asymptotics_sweep(cfg.grid, cfg.physics, cfg.solver, cs);
    std::ostringstream csv;
    csv << "c,m_over_c,omega_c,ratio_grad,ratio_trap,dist_sq,region,converged\n";
    Json table = Json::array();
    for (const auto& r : rows) {
      csv << csv_number(r.c) << ',' << csv_number(r.m_over_c) << ',' << csv_number(r.omega_c) << ','
          << csv_number(r.ratio_grad) << ',' << csv_number(r.ratio_trap) << ',' << csv_number(r.dist_sq) << ','
          << to_string(r.region) << ',' << (r.converged ? 1 : 0) << '\n';
      table.push_back(to_json(r));
    }
    const std::string path = join(cfg.output_dir, "sweep.csv");
    write_text(path, csv.str());
    out.artifacts.push_back(path);
    out.results = Json{{"rows", table}};
  });
}

int cmd_evolve(const std::string& init, double T, double dt, double sample_every, const std::string& reference,
               int snapshot_every, const std::string& output_dir) {
  const auto t0 = Clock::now();
  prepare_output_dir(output_dir);
  const Snapshot s = read_snapshot(init);
  const WaveField ref = reference.empty() ? s.field : read_snapshot(reference).field;
  if (!(dt > 0.0)) dt = default_dt(s.field.grid(), s.params.omega_mag);
  EvolveOptions opt;
  opt.sample_every = sample_every;
  int sample = 0;
  std::vector<std::string> artifacts;
  if (snapshot_every > 0) {
    opt.on_sample = [&](const WaveField& u, double) {
      if (sample % snapshot_every == 0) {
        char name[40];
        std::snprintf(name, sizeof name, "evolve_%06d.rgpe1", sample);
        artifacts.push_back(join(output_dir, name));
        write_snapshot(artifacts.back(), u, s.params, s.c);
      }
      ++sample;
    };
  }
  const auto st = evolve(s.field, T, dt, s.params, &ref, opt);
  std::ostringstream csv;
  csv << "t,mass,energy,grad_norm,dist\n";
  for (std::size_t i = 0; i < st.times.size(); ++i) {
    csv << csv_number(st.times[i]) << ',' << csv_number(st.mass_series[i]) << ',' << csv_number(st.energy_series[i])
        << ',' << csv_number(st.grad_norm_series[i]) << ',' << csv_number(st.dist_series[i]) << '\n';
  }
  const std::string path = join(output_dir, "evolve.csv");
  write_text(path, csv.str());
  artifacts.insert(artifacts.begin(), path);
  Json summary{{"command", "evolve"},
               {"version", kVersion},
               {"wall_time_s", seconds_since(t0)},
               {"init", init},
               {"T", T},
               {"dt", dt},
               {"samples", st.times.size()},
               {"blowup_flag", st.blowup_flag},
               {"blowup_time", st.blowup_time ? Json(*st.blowup_time) : Json(nullptr)},
               {"blowup_reason", st.blowup_reason},
               {"blowup_note", "qualitative indicator: a truncated box cannot represent a true singularity"},
               {"artifacts", artifacts}};
  write_text(join(output_dir, "evolve_summary.json"), dump(summary));
  std::cout << path << "\n";
  return 0;
}

int cmd_stability(const std::string& config_path, int trials, double scale, double T) {
  RunConfig cfg = load_config(config_path);
  if (trials > 0) cfg.dynamics.trials = trials;
  if (scale > 0.0) cfg.dynamics.perturbation_scale = scale;
  if (T > 0.0) cfg.dynamics.T = T;
  if (!(cfg.dynamics.T > 0.0)) cfg.dynamics.T = ten_periods();
  if (!(cfg.dynamics.dt > 0.0)) cfg.dynamics.dt = default_dt(cfg.grid, cfg.physics.omega_mag);
  if (!(cfg.dynamics.perturbation_scale > 0.0 && cfg.dynamics.perturbation_scale <= 0.1)) {
    throw ValidationError("perturbation_scale must lie in (0, 0.1]");
  }
  return with_manifest(cfg, "stability", [&](RunOutcome& out) {
    warn_regime(cfg, out.constants);
    const auto sum = stability_experiment(cfg.grid, cfg.physics, cfg.solver, cfg.dynamics.perturbation_scale,
                                          cfg.dynamics.trials, cfg.dynamics.T, cfg.dynamics.dt);
    out.results = to_json(sum);
    out.results["dt"] = cfg.dynamics.dt;
  });
}

int cmd_mountain_pass(const std::string& config_path) {
  const RunConfig cfg = load_config(config_path);
  return with_manifest(cfg, "mountain_pass", [&](RunOutcome& out) {
    const auto min = minimize_local(cfg.grid, cfg.physics, cfg.solver);
    if (!min.converged) throw NumericalError("not_converged", "local minimizer did not converge");
    const auto ep = endpoint_v_c(min.field, cfg.physics, cfg.solver.r);
    const Path base = baseline_path(min.field, ep.l, cfg.saddle.nodes, cfg.physics);
    GammaOptions go;
    go.sweeps = cfg.saddle.sweeps;
    go.climb_after = cfg.saddle.climb_after;
    go.tol = cfg.saddle.band_tol;
    const auto est = estimate_gamma(base, cfg.physics, go);
    SaddleOptions so;
    so.tol = cfg.saddle.tol;
    if (out.constants) so.c_omega = out.constants->c_omega;
    const auto rep = refine_saddle(est, cfg.physics, min.energy.total, so);

    const std::string snap = join(cfg.output_dir, "saddle.rgpe1");
    write_snapshot(snap, rep.saddle_field, cfg.physics, cfg.solver.c);
    std::ostringstream csv;
    csv << "t,I\n";
    for (const auto& [t, e] : rep.path_nodes) csv << csv_number(t) << ',' << csv_number(e) << '\n';
    const std::string path_csv = join(cfg.output_dir, "path.csv");
    write_text(path_csv, csv.str());
    out.artifacts = {snap, path_csv};
    out.results = to_json(rep);
    out.results["endpoint_l"] = ep.l;
    out.results["baseline_max"] = est.baseline_max;
    out.results["band_sweeps"] = est.sweeps;
    out.results["band_reparameterizations"] = est.reparameterizations;
    if (!rep.accepted) {
      out.status = "failed";
      out.diagnostic = "saddle_rejected: residual certificates not met";
    }
  });
}

int cmd_gn_constant(int dim, double p, double R, int points, const std::string& cache_path) {
  char key[64];
  std::snprintf(key, sizeof key, "N=%d,p=%.17g", dim, p);
  Json cache = Json::object();
  if (!cache_path.empty() && fs::exists(cache_path)) {
    std::ifstream is(cache_path);
    try {
      cache = Json::parse(is);
    } catch (const Json::parse_error&) {
      throw ValidationError("constants cache " + cache_path + " is not valid JSON");
    }
  }
  const double radius = R > 0.0 ? R : default_radius(dim, p);
  if (cache.contains(key) && cache[key].value("R", 0.0) == radius && cache[key].value("n_points", 0) == points) {
    std::cout << dump(cache[key]);
    return 0;
  }
  const RadialProfile w = solve_Wp(dim, p, radius, points);
  Json rec = gn_constant_json(w);
  rec["R"] = radius;
  rec["n_points"] = points;
  rec["matching_radius"] = w.matching_radius;
  rec["decay_ok"] = w.decay_ok;
  rec["ode_residual"] = ode_residual(w);
  rec["pohozaev_defect"] = pohozaev_defect(w);
  if (!cache_path.empty()) {
    cache[key] = rec;
    write_text(cache_path, dump(cache));
  }
  std::cout << dump(rec);
  return 0;
}

int cmd_geometry(const std::string& config_path) {
  const RunConfig cfg = load_config(config_path);
  return with_manifest(cfg, "geometry_probe", [&](RunOutcome& out) {
    if (!out.constants) {
      throw ValidationError("geometry-probe needs |Omega| in (0,1) and an oracle constant for (N, p)");
    }
    warn_regime(cfg, out.constants);
    const auto g = geometry_probe(cfg.grid, cfg.physics, cfg.solver, out.constants->gn_const);
    out.results = to_json(g);
    if (!(g.gap > 0.0)) {
      out.status = "failed";
      out.diagnostic = "non_positive_gap: annulus infimum estimate does not exceed the inner infimum";
    }
  });
}

int cmd_check(int fields, std::uint64_t seed) {
  int failed = 0;
  std::printf("%-26s %7s %8s %12s  %s\n", "suite", "cases", "failures", "worst_ratio", "detail");
  for (const auto& s : run_property_suites(fields, seed)) {
    std::printf("%-26s %7d %8d %12.8f  %s\n", s.name.c_str(), s.cases, s.failures, s.worst, s.detail.c_str());
    if (!s.passed()) ++failed;
  }
  return failed == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral solver suite for the rotating Gross-Pitaevskii energy with harmonic trap"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string config;
  auto* solve = app.add_subcommand("solve", "local minimizer on S(c) within B(r)");
  solve->add_option("--config", config, "run configuration")->required()->check(CLI::ExistingFile);

  std::string c_list;
  auto* sweep = app.add_subcommand("sweep", "small-mass asymptotics table");
  sweep->add_option("--config", config, "run configuration")->required()->check(CLI::ExistingFile);
  sweep->add_option("--c-list", c_list, "comma-separated masses")->required();

  std::string init, reference, out_dir = ".";
  double T = 0.0, dt = 0.0, sample_every = 0.1;
  int snapshot_every = 0;
  auto* evolve_cmd = app.add_subcommand("evolve", "real-time propagation of a snapshot");
  evolve_cmd->add_option("--init", init, "RGPE1 snapshot")->required()->check(CLI::ExistingFile);
  evolve_cmd->add_option("--T", T, "horizon")->required()->check(CLI::PositiveNumber);
  evolve_cmd->add_option("--dt", dt, "time step (default min(1e-3, rotation bound))");
  evolve_cmd->add_option("--sample-every", sample_every, "sampling interval")->check(CLI::PositiveNumber);
  evolve_cmd->add_option("--reference", reference, "snapshot whose phase orbit defines dist (default: --init)")
      ->check(CLI::ExistingFile);
  evolve_cmd->add_option("--snapshot-every", snapshot_every, "write a snapshot every k samples");
  evolve_cmd->add_option("--output-dir", out_dir, "output directory");

  int trials = 0;
  double scale = 0.0;
  auto* stability = app.add_subcommand("stability", "perturbation experiment around the minimizer");
  stability->add_option("--config", config, "run configuration")->required()->check(CLI::ExistingFile);
  stability->add_option("--trials", trials, "number of perturbations");
  stability->add_option("--scale", scale, "relative perturbation size in (0, 0.1]");
  stability->add_option("--T", T, "horizon (default 10 trap periods)");

  auto* mp = app.add_subcommand("mountain-pass", "path relaxation and saddle refinement");
  mp->add_option("--config", config, "run configuration")->required()->check(CLI::ExistingFile);

  int dim = 3, points = 8192;
  double p = 4.0, R = 0.0;
  std::string cache = "gn_constants.json";
  auto* gn = app.add_subcommand("gn-constant", "sharp Gagliardo-Nirenberg constant from the radial extremizer");
  gn->add_option("--N", dim, "dimension")->required();
  gn->add_option("--p", p, "exponent")->required();
  gn->add_option("--R", R, "outer radius (default per (N, p))");
  gn->add_option("--points", points, "radial grid points");
  gn->add_option("--cache", cache, "constants cache file ('' disables)");

  auto* geo = app.add_subcommand("geometry-probe", "inner-ball versus annulus infima");
  geo->add_option("--config", config, "run configuration")->required()->check(CLI::ExistingFile);

  int fields = 1000;
  std::uint64_t seed = 0;
  auto* check = app.add_subcommand("check", "inequality suites on seeded random fields");
  check->add_option("--fields", fields, "fields per suite")->check(CLI::PositiveNumber);
  check->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve) return cmd_solve(config);
    if (*sweep) return cmd_sweep(config, c_list);
    if (*evolve_cmd) return cmd_evolve(init, T, dt, sample_every, reference, snapshot_every, out_dir);
    if (*stability) return cmd_stability(config, trials, scale, T);
    if (*mp) return cmd_mountain_pass(config);
    if (*gn) return cmd_gn_constant(dim, p, R, points, cache);
    if (*geo) return cmd_geometry(config);
    if (*check) return cmd_check(fields, seed);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure (" << e.kind() << "): " << e.what() << "\n";
    return 3;
  }
  return 0;
}
