#include <doctest.h>

#include <cmath>

#include "rotor/error.hpp"
#include "rotor/groundstate.hpp"
#include "rotor/saddle.hpp"
#include "rotor/spectral.hpp"

using namespace rotor;

namespace {

WaveField scaled_gaussian(const GridSpec& g, double c) {
  WaveField u = hermite_ground(g);
  normalize_mass(u, c);
  return u;
}

}  // namespace

TEST_SUITE("saddle") {
  TEST_CASE("regime checks") {
    const GridSpec g = make_grid(2, 64, 8.0);
    const WaveField u = scaled_gaussian(g, 1.0);
    CHECK_THROWS_AS(endpoint_v_c(u, make_physics(2, 0.0, 6.0, 0.1), 4.0), ValidationError);
    CHECK_THROWS_AS(endpoint_v_c(u, make_physics(2, 1.0, 4.0, 0.1), 4.0), ValidationError);
    CHECK_THROWS_AS(baseline_path(u, 2.0, 9, make_physics(2, 1.0, 6.0, 0.1)), ValidationError);
    CHECK_THROWS_AS(baseline_path(u, 0.5, 17, make_physics(2, 1.0, 6.0, 0.1)), ValidationError);
  }

  TEST_CASE("fiber maximum is a critical point of the dilated energy") {
    const GridSpec g = make_grid(2, 128, 8.0);
    const PhysicsParams ph = make_physics(2, 1.0, 6.0, 0.1);
    const DilationNorms n = dilation_norms(scaled_gaussian(g, 2.0), ph);
    const auto th = fiber_max_theta(n, ph);
    REQUIRE(th.has_value());
    CHECK(std::abs(tilde_I_slope(n, *th, ph)) <= 1e-10);
    CHECK(tilde_I(n, *th, ph) > tilde_I(n, *th - 0.01, ph));
    CHECK(tilde_I(n, *th, ph) > tilde_I(n, *th + 0.01, ph));
  }

  TEST_CASE("no interior maximum without interaction") {
    const GridSpec g = make_grid(2, 64, 8.0);
    const PhysicsParams ph = make_physics(2, 1.0, 6.0, 0.1);
    DilationNorms n = dilation_norms(scaled_gaussian(g, 1.0), ph);
    n.lp_pow = 0.0;
    CHECK_FALSE(fiber_max_theta(n, ph).has_value());
  }

  TEST_CASE("baseline path is the mass-normalized dilation family") {
    const GridSpec g = make_grid(2, 128, 6.0);
    const PhysicsParams ph = make_physics(2, 1.0, 6.0, 0.1);
    const WaveField u = scaled_gaussian(g, 2.0);
    const Path path = baseline_path(u, 2.0, 17, ph);
    REQUIRE(path.nodes.size() == 17);
    CHECK(path.params.front() == 0.0);
    CHECK(path.params.back() == 1.0);
    for (const auto& node : path.nodes) CHECK(node.mass() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(grad_sq_norm(path.nodes.back()) == doctest::Approx(4.0 * grad_sq_norm(u)).epsilon(1e-6));
    CHECK(path.energies.front() == doctest::Approx(energy(u, ph).total).epsilon(1e-14));
  }

  TEST_CASE("band relaxation never exceeds the baseline and keeps endpoints") {
    const GridSpec g = make_grid(2, 128, 6.0);
    const PhysicsParams ph = make_physics(2, 1.0, 6.0, 0.1);
    const WaveField u = scaled_gaussian(g, 2.0);
    const Path base = baseline_path(u, 2.0, 17, ph);
    GammaOptions opt;
    opt.sweeps = 5;
    const auto est = estimate_gamma(base, ph, opt);
    CHECK(est.gamma_c <= est.baseline_max);
    CHECK(est.sweeps == 5);
    WaveField d0 = est.path.nodes.front() - base.nodes.front();
    WaveField d1 = est.path.nodes.back() - base.nodes.back();
    CHECK(d0.mass() == 0.0);
    CHECK(d1.mass() == 0.0);
  }

  TEST_CASE("an unresolvable endpoint is reported, not faked") {
    const GridSpec g = make_grid(2, 32, 6.0);
    const PhysicsParams ph = make_physics(2, 1.0, 6.0, 0.1);
    CHECK_THROWS_AS(endpoint_v_c(scaled_gaussian(g, 0.01), ph, 1.0), NumericalError);
  }
}
