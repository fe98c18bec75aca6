#include <doctest.h>

#include <cmath>

#include "rotor/error.hpp"
#include "rotor/functionals.hpp"
#include "rotor/random.hpp"
#include "rotor/spectral.hpp"

using namespace rotor;

TEST_SUITE("spectral-core") {
  TEST_CASE("grid validation") {
    CHECK_THROWS_AS(make_grid(4, 64, 8.0), ValidationError);
    CHECK_THROWS_AS(make_grid(2, 100, 8.0), ValidationError);
    CHECK_THROWS_AS(make_grid(2, 8, 8.0), ValidationError);
    CHECK_THROWS_AS(make_grid(2, 64, 0.0), ValidationError);
    const GridSpec g = make_grid(3, 32, 6.0);
    CHECK(g.size() == 32u * 32u * 32u);
    CHECK(g.spacing() == doctest::Approx(12.0 / 32));
  }

  TEST_CASE("oscillator ground state norms") {
    // psi_0 = pi^{-N/4} e^{-|x|^2/2}: ||psi_0|| = 1, ||grad psi_0||^2 = ||x psi_0||^2 = N/2.
    for (int dim : {2, 3}) {
      const GridSpec g = make_grid(dim, dim == 2 ? 64 : 32, dim == 2 ? 8.0 : 6.0);
      const WaveField psi = hermite_ground(g);
      CHECK(psi.mass() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(grad_sq_norm(psi) == doctest::Approx(0.5 * dim).epsilon(1e-10));
      CHECK(xweighted_sq_norm(psi) == doctest::Approx(0.5 * dim).epsilon(1e-10));
      CHECK(std::abs(project_l0(psi) - Complex(1.0)) < 1e-12);
    }
  }

  TEST_CASE("first excited state is orthogonal with energy N + 2") {
    const GridSpec g = make_grid(2, 64, 8.0);
    const WaveField e1 = hermite_first_excited(g);
    CHECK(e1.mass() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(project_l0(e1)) < 1e-12);
    CHECK(sigma_dot_sq(e1) == doctest::Approx(4.0).epsilon(1e-10));
  }

  TEST_CASE("vortex mode is an L_z eigenfunction with eigenvalue +1") {
    const GridSpec g = make_grid(2, 64, 8.0);
    const WaveField v = vortex_mode(g, 1);
    WaveField d = apply_Lz(v);
    d -= v;
    CHECK(std::sqrt(d.mass() / v.mass()) < 1e-10);
    const WaveField w = vortex_mode(g, -1);
    WaveField e = apply_Lz(w);
    e += w;
    CHECK(std::sqrt(e.mass() / w.mass()) < 1e-10);
  }

  TEST_CASE("L_z is self-adjoint on decaying fields") {
    for (int dim : {2, 3}) {
      const GridSpec g = make_grid(dim, dim == 2 ? 64 : 32, dim == 2 ? 8.0 : 6.0);
      for (std::uint64_t j = 0; j < 5; ++j) {
        CounterRng r1(11, Stream::property, 2 * j), r2(11, Stream::property, 2 * j + 1);
        const WaveField u = random_smooth_field(g, r1), v = random_smooth_field(g, r2);
        const double lhs = real_inner(u, apply_Lz(v));
        const double rhs = real_inner(apply_Lz(u), v);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::sqrt(u.mass() * v.mass()));
      }
    }
  }

  TEST_CASE("dilation law") {
    const GridSpec g = make_grid(2, 128, 8.0);
    CounterRng rng(3, Stream::property);
    const WaveField u = random_smooth_field(g, rng);
    for (double tau : {0.75, 1.6}) {
      const WaveField ut = dilate(u, tau);
      CHECK(grad_sq_norm(ut) == doctest::Approx(tau * tau * grad_sq_norm(u)).epsilon(1e-6));
      CHECK(xweighted_sq_norm(ut) == doctest::Approx(xweighted_sq_norm(u) / (tau * tau)).epsilon(1e-6));
      CHECK(rotation_expectation(ut, 0.3) == doctest::Approx(rotation_expectation(u, 0.3)).epsilon(1e-6));
      CHECK(ut.mass() == doctest::Approx(u.mass()).epsilon(1e-8));
    }
  }

  TEST_CASE("dilation that pushes mass off the box is refused") {
    const GridSpec g = make_grid(2, 64, 8.0);
    CHECK_THROWS_AS(dilate(hermite_ground(g), 0.2), NumericalError);
  }

  TEST_CASE("rotation expectation vanishes on real fields") {
    const GridSpec g = make_grid(2, 64, 8.0);
    WaveField u = hermite_first_excited(g);
    u += hermite_ground(g);
    CHECK(std::abs(rotation_expectation(u, 0.5)) < 1e-12);
  }

  TEST_CASE("counter generator is reproducible and stream separated") {
    CounterRng a(5, Stream::init), b(5, Stream::init), c(5, Stream::perturbation);
    const auto x = a(), y = b(), z = c();
    CHECK(x == y);
    CHECK(x != z);
  }

  TEST_CASE("boundary and spectral diagnostics are tiny for the Gaussian") {
    const GridSpec g = make_grid(2, 128, 8.0);
    const WaveField psi = hermite_ground(g);
    CHECK(boundary_mass_fraction(psi) < 1e-12);
    CHECK(spectral_tail_fraction(psi) < 1e-12);
  }
}
