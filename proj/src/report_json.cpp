#include "rotor/report_json.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "rotor/error.hpp"

namespace rotor {

namespace {

Json optional_number(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

Json to_json(const EnergyBreakdown& e) {
  return Json{{"total", e.total},           {"kinetic", e.kinetic},     {"trap", e.trap},
              {"rotation", e.rotation},     {"nonlinear", e.nonlinear}, {"sigma_dot_sq", e.sigma_dot},
              {"pohozaev_q", e.pohozaev},   {"omega_est", e.omega_est}};
}

Json to_json(const GroundStateReport& r) {
  return Json{{"omega_c", r.omega_c},
              {"energy", to_json(r.energy)},
              {"iters", r.iters},
              {"grad_residual", r.grad_residual},
              {"l0", {r.l0.real(), r.l0.imag()}},
              {"dist_sq_to_l0psi0", r.dist_sq_to_l0psi0},
              {"region", to_string(r.region)},
              {"feasible", r.feasible},
              {"converged", r.converged},
              {"mass", r.field.mass()}};
}

Json to_json(const RotationConstants& k) {
  return Json{{"nu", k.nu},
              {"mu", k.mu},
              {"eps0", k.eps0},
              {"c_star", k.c_star},
              {"c_upper", k.c_upper},
              {"eps1", optional_number(k.eps1)},
              {"c1", optional_number(k.c1)},
              {"c2", optional_number(k.c2)},
              {"c_omega", optional_number(k.c_omega)},
              {"c0", k.c0},
              {"gn_const", k.gn_const}};
}

Json to_json(const GeometryReport& g) {
  return Json{{"c", g.c},
              {"r", g.r},
              {"inner_inf", g.inner_inf},
              {"inner_sigma_dot_sq", g.inner_sigma_dot},
              {"inner_in_nu_ball", g.inner_in_nu_ball},
              {"annulus_inf", g.annulus_inf},
              {"annulus_sigma_dot_sq", g.annulus_sigma_dot},
              {"annulus_iters", g.annulus_iters},
              {"gap", g.gap},
              {"annulus_lower_bound", g.annulus_lower_bound},
              {"inner_upper_bound", g.inner_upper_bound}};
}

Json to_json(const StabilitySummary& s) {
  return Json{{"trials", s.trials},
              {"perturbation_scale", s.scale},
              {"T", s.T},
              {"amplification", s.amplification},
              {"trial_amplification", s.trial_amplification},
              {"trial_initial_dist", s.trial_initial_dist},
              {"blowups", s.blowups},
              {"instability_evidence", s.instability_evidence}};
}

Json to_json(const MountainPassReport& m) {
  Json nodes = Json::array();
  for (const auto& [t, e] : m.path_nodes) nodes.push_back({t, e});
  return Json{{"gamma_c", m.gamma_c},
              {"gamma_c_kind", "upper estimate"},
              {"m_c_r", m.m_c_r},
              {"margin", m.margin},
              {"saddle_energy", m.saddle_energy},
              {"saddle_Q", m.saddle_Q},
              {"saddle_sigma_dot_sq", m.saddle_sigma_dot},
              {"saddle_grad_residual", m.saddle_grad_residual},
              {"omega_hat", m.omega_hat},
              {"theta_slope_fd", m.theta_slope_fd},
              {"identity_defect", m.identity_defect},
              {"boundedness_ok", m.boundedness_ok},
              {"accepted", m.accepted},
              {"status", m.accepted ? "candidate" : "rejected"},
              {"iters", m.iters},
              {"path_nodes", nodes}};
}

Json to_json(const SweepRow& row) {
  return Json{{"c", row.c},
              {"m_over_c", finite_or_null(row.m_over_c)},
              {"omega_c", finite_or_null(row.omega_c)},
              {"ratio_grad", finite_or_null(row.ratio_grad)},
              {"ratio_trap", finite_or_null(row.ratio_trap)},
              {"dist_sq", finite_or_null(row.dist_sq)},
              {"sigma_dot_sq", finite_or_null(row.sigma_dot)},
              {"region", to_string(row.region)},
              {"converged", row.converged},
              {"error", row.error}};
}

Json gn_constant_json(const RadialProfile& profile) {
  const double delta = profile.dim * (profile.p - 2.0) / (2.0 * profile.p);
  return Json{{"N", profile.dim},
              {"p", profile.p},
              {"delta_p", delta},
              {"W_l2_sq", profile.l2_sq},
              {"gn_const", gn_constant(profile)}};
}

Json run_manifest(const RunConfig& config, const RunOutcome& out) {
  Json m;
  m["command"] = out.command;
  m["status"] = out.status;
  if (!out.diagnostic.empty()) m["diagnostic"] = out.diagnostic;
  m["version"] = kVersion;
  m["wall_time_s"] = out.wall_time;
  Json echo = Json::object();
  for (const auto& [k, v] : config.echo) echo[k] = v;
  m["config"] = echo;
  if (out.constants) {
    m["constants"] = to_json(*out.constants);
    m["c0"] = out.constants->c0;
    m["regime_c_below_c0"] = config.solver.c < out.constants->c0;
  } else {
    m["constants"] = nullptr;
    m["c0"] = nullptr;
    m["regime_c_below_c0"] = nullptr;
  }
  m["results"] = out.results;
  m["artifacts"] = out.artifacts;
  return m;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void prepare_output_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto probe = std::filesystem::path(dir) / ".write_probe";
  std::ofstream os(probe);
  if (ec || !os) throw ValidationError("output_dir '" + dir + "' is not writable");
  os.close();
  std::filesystem::remove(probe, ec);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw ValidationError("cannot open " + path + " for writing");
  os << text;
  if (!os) throw ValidationError("failed writing " + path);
}

std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

}  // namespace rotor
