#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rotor/dynamics.hpp"
#include "rotor/error.hpp"
#include "rotor/functionals.hpp"
#include "rotor/groundstate.hpp"
#include "rotor/oracle.hpp"
#include "rotor/properties.hpp"
#include "rotor/saddle.hpp"
#include "rotor/spectral.hpp"

using namespace rotor;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Certificates {
  double worst_minimizer_q = 0.0;  // max |Q| / ||u||^2 over converged minimizers
  int minimizers = 0;
  std::optional<double> saddle_q;
};

Certificates certs;

void note_minimizer(const GroundStateReport& rep) {
  if (!rep.converged) return;
  ++certs.minimizers;
  certs.worst_minimizer_q =
      std::max(certs.worst_minimizer_q, std::abs(rep.energy.pohozaev) / rep.energy.sigma_dot);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const double kTenPeriods = 20.0 * std::numbers::pi;

SolverConfig solver(double c, double r, InitKind kind = InitKind::gaussian) {
  SolverConfig cfg;
  cfg.c = c;
  cfg.r = r;
  cfg.init_kind = kind;
  cfg.seed = 2024;
  return cfg;
}

// 3D setting shared by the multiplier, geometry and asymptotics criteria.
const GridSpec& grid3() {
  static const GridSpec g = make_grid(3, 64, 6.0);
  return g;
}
const GridSpec& grid2() {
  static const GridSpec g = make_grid(2, 128, 8.0);
  return g;
}
double gn(int dim, double p) {
  static std::map<std::pair<int, double>, double> cache;
  auto [it, fresh] = cache.try_emplace({dim, p}, 0.0);
  if (fresh) it->second = gn_constant(solve_Wp(dim, p));
  return it->second;
}

// 2D supercritical standing wave used by the conservation and stability criteria.
struct Planar {
  PhysicsParams ph;
  RotationConstants k;
  GroundStateReport rep;
};
const Planar& planar() {
  static const Planar pl = [] {
    const PhysicsParams ph = make_physics(2, 1.0, 6.0, 0.1);
    const RotationConstants k = compute_constants(ph, 1.0, gn(2, 6.0));
    Planar p{ph, k, minimize_local(grid2(), ph, solver(k.c0 / 4, 1.0))};
    note_minimizer(p.rep);
    return p;
  }();
  return pl;
}

Outcome oscillator_exactness() {
  double worst_dist = 0.0, worst_omega = 0.0;
  bool converged = true;
  for (int dim : {2, 3}) {
    const GridSpec& g = dim == 2 ? grid2() : grid3();
    const PhysicsParams ph = make_physics(dim, 0.0, 4.0, 0.1);
    const double c = 0.05;
    const auto rep = minimize_local(g, ph, solver(c, 1.0, InitKind::perturbed_gaussian));
    note_minimizer(rep);
    converged = converged && rep.converged;
    WaveField exact = hermite_ground(g);
    exact *= std::sqrt(c);
    worst_dist = std::max(worst_dist, dist_sigma_mod_phase(exact, rep.field));
    worst_omega = std::max(worst_omega, std::abs(rep.omega_c - 0.5 * dim));
  }
  return {converged && worst_dist <= 1e-6 && worst_omega <= 1e-6,
          fmt("N=2,3: Sigma dist %.2e (<= 1e-6), |omega_c - N/2| %.2e (<= 1e-6)", worst_dist, worst_omega)};
}

Outcome multiplier_window() {
  const PhysicsParams ph = make_physics(3, 1.0, 4.0, 0.1);
  const RotationConstants k = compute_constants(ph, 1.0, gn(3, 4.0));
  bool ok = true;
  std::ostringstream d;
  d << fmt("c0 = %.5g;", k.c0);
  for (double f : {0.125, 0.25, 0.5}) {
    const double c = f * k.c0;
    const auto rep = minimize_local(grid3(), ph, solver(c, 1.0));
    note_minimizer(rep);
    const double lo = omega_lower_bound(ph, k, 1.0, c);
    const bool in = rep.converged && lo <= rep.omega_c && rep.omega_c < 1.5;
    ok = ok && in;
    d << fmt(" c0*%.3g: %.4f <= %.6f < 1.5%s;", f, lo, rep.omega_c, in ? "" : " (violated)");
  }
  return {ok, d.str()};
}

Outcome geometry_gap() {
  const PhysicsParams ph = make_physics(3, 1.0, 4.0, 0.1);
  const RotationConstants k = compute_constants(ph, 1.0, gn(3, 4.0));
  const auto g = geometry_probe(grid3(), ph, solver(k.c0 / 2, 1.0), k.gn_const);
  return {g.gap > 0.0 && g.inner_in_nu_ball,
          fmt("c = c0/2: inner %.6g (||u||^2 = %.3g <= nu r = %.3g), annulus %.6g, gap %.4g", g.inner_inf,
              g.inner_sigma_dot, k.nu, g.annulus_inf, g.gap)};
}

std::vector<SweepRow> sweep_rows;
double sweep_seconds = 0.0;

const std::vector<SweepRow>& asymptotic_sweep() {
  if (sweep_rows.empty()) {
    const auto t0 = Clock::now();
    const PhysicsParams ph = make_physics(3, 1.0, 4.0, 0.3);
    const RotationConstants k = compute_constants(ph, 1.0, gn(3, 4.0));
    std::vector<double> cs;
    for (double f : {1e-1, 3e-2, 1e-2, 3e-3, 1e-3}) cs.push_back(f * k.c0);
    sweep_rows = asymptotics_sweep(grid3(), ph, solver(cs.front(), 1.0), cs);
    sweep_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  }
  return sweep_rows;
}

Outcome asymptotics() {
  const auto& rows = asymptotic_sweep();
  const double w = 0.3, n = 3.0;
  bool all = std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.converged; });
  const SweepRow& s = rows.front();
  const double vals[] = {s.m_over_c, s.omega_c, s.ratio_grad, s.ratio_trap};
  const double hi = *std::max_element(std::begin(vals), std::end(vals));
  const double lo = *std::min_element(std::begin(vals), std::end(vals));
  const double spread = hi / lo - 1.0;
  const double mean = (vals[0] + vals[1] + vals[2] + vals[3]) / 4.0;
  const double win_lo = (1.0 - w * w) * n / (2.0 * (1.0 + 3.0 * w)), win_hi = n / 2.0;
  bool monotone = true;
  for (std::size_t i = 1; i < rows.size(); ++i) monotone = monotone && rows[i - 1].sigma_dot < rows[i].sigma_dot;
  const bool ok = all && spread <= 0.02 && mean >= win_lo && mean <= win_hi && monotone && sweep_seconds <= 900.0;
  return {ok, fmt("c = 1e-3 c0: m/c %.6f, omega %.6f, grad %.6f, trap %.6f, spread %.2e (<= 2e-2), "
                  "common %.4f in [%.4f, %.4f], ||u||^2 monotone %s, %.0f s (<= 900)",
                  vals[0], vals[1], vals[2], vals[3], spread, mean, win_lo, win_hi, monotone ? "yes" : "no",
                  sweep_seconds)};
}

Outcome distance_scaling() {
  const auto& rows = asymptotic_sweep();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& r : rows) {
    if (!r.converged || !(r.dist_sq > 0.0)) continue;
    const double x = std::log(r.c), y = std::log(r.dist_sq);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++m;
  }
  if (m < 3) return {false, "fewer than three usable sweep rows"};
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const PhysicsParams ph = make_physics(3, 1.0, 4.0, 0.3);
  const double bound = std::min(1.0, ph.p * (1.0 - ph.delta_p()) / 2.0) - 0.1;
  return {slope >= bound, fmt("log-log slope %.4f over %d masses (>= %.2f)", slope, m, bound)};
}

Outcome conservation() {
  const Planar& pl = planar();
  if (!pl.rep.converged) return {false, "standing wave did not converge"};
  const auto st = evolve(pl.rep.field, kTenPeriods, 1e-3, pl.ph);
  double dm = 0, de = 0, dl = 0;
  const double m0 = st.mass_series[0], e0 = st.energy_series[0], l0 = st.angular_series[0];
  for (std::size_t i = 0; i < st.times.size(); ++i) {
    dm = std::max(dm, std::abs(st.mass_series[i] - m0) / m0);
    de = std::max(de, std::abs(st.energy_series[i] - e0) / std::abs(e0));
    dl = std::max(dl, std::abs(st.angular_series[i] - l0));
  }
  dl /= std::max(std::abs(l0), m0);
  return {!st.blowup_flag && dm <= 1e-10 && de <= 1e-8 && dl <= 1e-8,
          fmt("N=2, p=6, c = c0/4, T = 10 periods: mass %.2e (<= 1e-10), energy %.2e (<= 1e-8), "
              "<L_z> %.2e (<= 1e-8, relative to max(|L0|, c))",
              dm, de, dl)};
}

Outcome stability() {
  const Planar& pl = planar();
  if (!pl.rep.converged) return {false, "standing wave did not converge"};
  const auto t0 = Clock::now();
  const auto sum = stability_experiment(pl.rep.field, pl.ph, 1e-2, 8, kTenPeriods, 1e-3, 2024);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  return {sum.amplification <= 5.0 && sum.blowups == 0 && secs <= 1200.0,
          fmt("8 trials, scale 1e-2, c = c0/4: amplification %.3f (<= 5), blow-ups %d, %.0f s (<= 1200)",
              sum.amplification, sum.blowups, secs)};
}

Outcome blowup_contrast() {
  const PhysicsParams ph = make_physics(3, 1.0, 4.0, 0.1);
  WaveField hot = dilate(hermite_ground(grid3()), 2.0);
  normalize_mass(hot, 20.0);
  const double e_hot = energy(hot, ph).total;
  const auto st = evolve(hot, 2.0, 1e-3, ph);

  const RotationConstants k = compute_constants(ph, 1.0, gn(3, 4.0));
  WaveField cold = hermite_ground(grid3());
  normalize_mass(cold, k.c0 / 4);
  const auto quiet = evolve(cold, 2.0, 1e-3, ph);
  return {st.blowup_flag && !quiet.blowup_flag,
          fmt("c = 20 compressed x2 (I = %.2f): flag %s at t = %.2f (%s); c = c0/4 Gaussian: flag %s", e_hot,
              st.blowup_flag ? "raised" : "not raised", st.blowup_time.value_or(-1.0), st.blowup_reason.c_str(),
              quiet.blowup_flag ? "raised" : "not raised")};
}

Outcome mountain_pass() {
  const auto t0 = Clock::now();
  const GridSpec g = make_grid(2, 256, 6.0);
  const PhysicsParams ph = make_physics(2, 1.0, 6.0, 0.1);
  const double c = 2.0, r = 6.0;
  const RotationConstants k = compute_constants(ph, r, gn(2, 6.0));
  const auto min = minimize_local(g, ph, solver(c, r));
  note_minimizer(min);
  if (!min.converged) return {false, "local minimizer did not converge"};
  const auto ep = endpoint_v_c(min.field, ph, r);
  const Path base = baseline_path(min.field, ep.l, 17, ph);
  const auto est = estimate_gamma(base, ph);
  SaddleOptions so;
  so.c_omega = k.c_omega;
  const auto rep = refine_saddle(est, ph, min.energy.total, so);
  certs.saddle_q = std::abs(rep.saddle_Q) / rep.saddle_sigma_dot;
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  const double window = std::abs(rep.saddle_energy - rep.gamma_c);
  const bool ok = rep.margin > 0.0 && rep.accepted && rep.saddle_energy > rep.m_c_r && rep.identity_defect <= 1e-4 &&
                  window <= 1e-3 && secs <= 1800.0;
  return {ok, fmt("N=2, p=6, c=2 (c0 = %.3g), r=6: m = %.6f, gamma <= %.6f, margin %.4f, I(saddle) = %.6f "
                  "(|I - gamma| %.1e <= 1e-3), residual %.1e (<= 1e-5), identity defect %.1e (<= 1e-4), %.0f s (<= 1800)",
                  k.c0, rep.m_c_r, rep.gamma_c, rep.margin, rep.saddle_energy, window, rep.saddle_grad_residual,
                  rep.identity_defect, secs)};
}

Outcome inequality_suites() {
  bool ok = true;
  std::ostringstream d;
  for (const auto& s : run_property_suites(1000, 2024)) {
    ok = ok && s.passed();
    d << fmt("%s %d/%d (worst %.4f); ", s.name.c_str(), s.cases - s.failures, s.cases, s.worst);
  }
  return {ok, d.str()};
}

Outcome oracle_stability() {
  bool ok = true;
  std::ostringstream d;
  for (int dim : {2, 3}) {
    const double a = gn_constant(solve_Wp(dim, 4.0, 0.0, 4096));
    const double b = gn_constant(solve_Wp(dim, 4.0, 0.0, 8192));
    const double rel = std::abs(a - b) / std::abs(b);
    ok = ok && rel <= 5e-5;
    d << fmt("C(%d,4): %.8f vs %.8f (rel %.1e); ", dim, a, b, rel);
  }
  return {ok, d.str()};
}

Outcome pohozaev_certificates() {
  if (certs.minimizers == 0 || !certs.saddle_q) return {false, "no minimizer or saddle certificates collected"};
  return {certs.worst_minimizer_q <= 1e-6 && *certs.saddle_q <= 1e-4,
          fmt("minimizers |Q|/||u||^2 <= %.1e (<= 1e-6, %d runs), saddle %.1e (<= 1e-4)", certs.worst_minimizer_q,
              certs.minimizers, *certs.saddle_q)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<int, std::pair<const char*, std::function<Outcome()>>>> table = {
      {1, {"oscillator exactness", oscillator_exactness}},
      {3, {"multiplier window", multiplier_window}},
      {4, {"geometry gap", geometry_gap}},
      {5, {"small-mass asymptotics", asymptotics}},
      {6, {"distance scaling", distance_scaling}},
      {7, {"conservation", conservation}},
      {8, {"orbital stability", stability}},
      {9, {"blow-up contrast", blowup_contrast}},
      {10, {"mountain pass", mountain_pass}},
      {11, {"inequality suites", inequality_suites}},
      {12, {"oracle stability", oracle_stability}},
      {2, {"Pohozaev certificates", pohozaev_certificates}},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  std::map<int, std::string> lines;
  int failures = 0;
  for (const auto& [id, entry] : table) {
    if (!only.empty() && !only.count(id)) continue;
    const auto& [name, run] = entry;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (!o.pass) ++failures;
    lines[id] = fmt("%s %2d %s: %s [%.1f s]", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
    std::fprintf(stderr, "%s\n", lines[id].c_str());
  }
  for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
  std::printf("%d of %zu criteria passed\n", static_cast<int>(lines.size()) - failures, lines.size());
  return failures == 0 ? 0 : 1;
}
