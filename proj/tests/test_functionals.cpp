#include <doctest.h>

#include <cmath>

#include "rotor/error.hpp"
#include "rotor/functionals.hpp"
#include "rotor/oracle.hpp"
#include "rotor/properties.hpp"
#include "rotor/random.hpp"
#include "rotor/spectral.hpp"

using namespace rotor;

TEST_SUITE("functionals") {
  TEST_CASE("linear energy of the scaled Gaussian is N c / 2") {
    const GridSpec g = make_grid(2, 64, 8.0);
    const PhysicsParams ph = make_physics(2, 0.0, 4.0, 0.4);
    WaveField u = hermite_ground(g);
    u *= std::sqrt(0.05);
    const EnergyBreakdown e = energy(u, ph);
    CHECK(e.total == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(e.omega_est == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(e.pohozaev) < 1e-12);
  }

  TEST_CASE("Gaussian L^4 norm matches its closed form") {
    // ||psi_0||_4^4 = (2 pi)^{-N/2}
    const GridSpec g = make_grid(3, 32, 6.0);
    CHECK(lp_norm_pow(hermite_ground(g), 4.0) == doctest::Approx(std::pow(2.0 * M_PI, -1.5)).epsilon(1e-10));
  }

  TEST_CASE("gradient matches central differences") {
    const GridSpec g = make_grid(2, 64, 8.0);
    for (double p : {4.0, 5.5}) {
      const PhysicsParams ph = make_physics(2, 1.0, p, 0.3);
      for (std::uint64_t base = 0; base < 3; ++base) {
        CounterRng rb(21, Stream::property, base);
        WaveField u = random_smooth_field(g, rb);
        normalize_mass(u, 0.5);
        const auto h = apply_hamiltonian(u, ph);
        for (std::uint64_t dir = 0; dir < 4; ++dir) {
          CounterRng rd(22, Stream::property, 10 * base + dir);
          WaveField phi = random_smooth_field(g, rd);
          normalize_mass(phi, 1.0);
          const double eps = 1e-5;
          const double fd = (energy(u + eps * phi, ph).total - energy(u - eps * phi, ph).total) / (2 * eps);
          const double an = 2.0 * real_inner(h.h_u, phi);
          CHECK(std::abs(fd - an) <= 1e-6 * std::max(1.0, std::abs(an)));
        }
      }
    }
  }

  TEST_CASE("theta derivative of the dilated energy equals 2Q") {
    const GridSpec g = make_grid(2, 128, 8.0);
    const PhysicsParams ph = make_physics(2, 1.0, 6.0, 0.2);
    CounterRng rng(4, Stream::property);
    WaveField u = random_smooth_field(g, rng);
    normalize_mass(u, 1.0);
    const DilationNorms n = dilation_norms(u, ph);
    const double q = pohozaev_Q(u, ph);
    CHECK(tilde_I_slope(n, 0.0, ph) == doctest::Approx(2.0 * q).epsilon(1e-12));
    const double h = 1e-3;
    const double fd = (tilde_I_resampled(u, h, ph) - tilde_I_resampled(u, -h, ph)) / (2 * h);
    CHECK(std::abs(fd - 2.0 * q) <= 1e-6 * std::max(1.0, std::abs(q)));
    CHECK(tilde_I(n, 0.0, ph) == doctest::Approx(energy(u, ph).total).epsilon(1e-12));
  }

  TEST_CASE("supercritical energy is unbounded below along dilations") {
    const GridSpec g = make_grid(3, 32, 6.0);
    const PhysicsParams ph = make_physics(3, 1.0, 4.0, 0.1);
    const DilationNorms n = dilation_norms(hermite_ground(g), ph);
    bool below = false;
    for (double th = 0.0; th <= 5.0; th += 0.25) below = below || tilde_I(n, th, ph) < -1.0;
    CHECK(below);
  }

  TEST_CASE("constants at |Omega| = 1/3") {
    const PhysicsParams ph = make_physics(3, 1.0, 4.0, 1.0 / 3.0);
    const RotationConstants k = compute_constants(ph, 1.0, 0.5);
    CHECK(k.c_star == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
    CHECK(k.c_upper == doctest::Approx(7.0 / 9.0).epsilon(1e-14));
    CHECK(k.nu == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(k.mu == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(k.c0 > 0.0);
  }

  TEST_CASE("frequency condition gates the small-mass constants") {
    const PhysicsParams ok = make_physics(3, 1.0, 4.0, 0.3);
    CHECK(compute_constants(ok, 1.0, 0.5).c_omega.has_value());
    const PhysicsParams critical = make_physics(2, 1.0, 4.0, 0.3);
    CHECK_FALSE(compute_constants(critical, 1.0, 0.5).c_omega.has_value());
    CHECK_THROWS_AS(compute_constants(make_physics(3, 1.0, 4.0, 0.0), 1.0, 0.5), ValidationError);
  }

  TEST_CASE("norm_omega1 of a real field is half the Sigma-dot norm") {
    const GridSpec g = make_grid(2, 64, 8.0);
    WaveField u = hermite_first_excited(g);
    u += 0.3 * hermite_ground(g);
    CHECK(norm_omega1(u, 0.7) == doctest::Approx(0.5 * sigma_dot_sq(u)).epsilon(1e-12));
  }

  TEST_CASE("Weinstein inequality with Gaussian equality") {
    const auto s = weinstein_suite(make_grid(2, 64, 8.0), 100, 9);
    CHECK(s.passed());
    CHECK(s.worst <= 1.0);
  }

  TEST_CASE("Gagliardo-Nirenberg inequality, sharp at the extremizer") {
    const auto s = gn_suite(make_grid(2, 64, 8.0), 4.0, 100, 9);
    INFO(s.detail);
    CHECK(s.passed());
  }

  TEST_CASE("rotation interpolation chain and norm sandwiches") {
    const GridSpec g = make_grid(2, 64, 8.0);
    CHECK(rotation_chain_suite(g, 100, 9).passed());
    CHECK(sandwich_suite(g, 6.0, 100, 9).passed());
  }

  TEST_CASE("physics validation") {
    CHECK_THROWS_WITH_AS(make_physics(2, 1.0, 4.0, 1.2), "omega_mag must lie in [0,1)", ValidationError);
    CHECK_THROWS_AS(make_physics(3, -1.0, 4.0, 0.1), ValidationError);
    CHECK_THROWS_AS(make_physics(3, 1.0, 6.5, 0.1), ValidationError);
    CHECK(make_physics(2, 1.0, 4.0, 0.0).delta_p() == doctest::Approx(0.5));
  }
}
