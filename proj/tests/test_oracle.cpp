#include <doctest.h>

#include <cmath>

#include "rotor/error.hpp"
#include "rotor/oracle.hpp"

using namespace rotor;

TEST_SUITE("oracle") {
  TEST_CASE("Townes profile in 2D: mass of the cubic ground state") {
    // -Lap W + W = W^3 in the plane; ||W||^2 = 11.70089... (the Townes mass).
    const RadialProfile w = solve_Wp(2, 4.0);
    CHECK(w.decay_ok);
    CHECK(w.l2_sq == doctest::Approx(11.7008965).epsilon(1e-6));
    CHECK(w.values.front() == doctest::Approx(2.2062).epsilon(1e-4));
  }

  TEST_CASE("constant formula inverts exactly") {
    for (auto [dim, p] : {std::pair{2, 4.0}, std::pair{3, 4.0}, std::pair{3, 3.5}}) {
      const RadialProfile w = solve_Wp(dim, p);
      const double c = gn_constant(w);
      CHECK(std::pow(c, p) * 2.0 * std::pow(w.l2_sq, 0.5 * (p - 2.0)) == doctest::Approx(p).epsilon(1e-12));
    }
  }

  TEST_CASE("profile is a positive decreasing ground state with small residuals") {
    const RadialProfile w = solve_Wp(3, 4.0);
    CHECK(w.decay_ok);
    bool positive = true, decreasing = true;
    for (std::size_t i = 0; i < w.values.size(); ++i) {
      positive = positive && w.values[i] > 0.0;
      if (i > 0) decreasing = decreasing && w.values[i] <= w.values[i - 1];
    }
    CHECK(positive);
    CHECK(decreasing);
    CHECK(ode_residual(w) <= 1e-8);
    CHECK(pohozaev_defect(w) <= 1e-6);
  }

  TEST_CASE("two radial grids agree to four digits") {
    for (auto [dim, p] : {std::pair{2, 4.0}, std::pair{3, 4.0}}) {
      const double a = gn_constant(solve_Wp(dim, p, 0.0, 4096));
      const double b = gn_constant(solve_Wp(dim, p, 0.0, 8192));
      CHECK(std::abs(a - b) <= 5e-5 * std::abs(b));
    }
  }

  TEST_CASE("constant varies continuously in p") {
    const double c35 = gn_constant(solve_Wp(3, 3.5));
    const double c40 = gn_constant(solve_Wp(3, 4.0));
    const double c45 = gn_constant(solve_Wp(3, 4.5));
    CHECK(std::abs(c40 / c35 - 1.0) < 0.2);
    CHECK(std::abs(c45 / c40 - 1.0) < 0.2);
  }

  TEST_CASE("interpolation reproduces nodes and vanishes beyond R") {
    const RadialProfile w = solve_Wp(2, 4.0);
    CHECK(w(w.radii[100]) == doctest::Approx(w.values[100]).epsilon(1e-14));
    CHECK(w(w.radii.back() + 1.0) == 0.0);
  }

  TEST_CASE("inputs outside the admissible range are rejected") {
    CHECK_THROWS_AS(solve_Wp(3, 6.0), ValidationError);
    CHECK_THROWS_AS(solve_Wp(2, 2.0), ValidationError);
    CHECK_THROWS_AS(solve_Wp(2, 4.0, 10.0), ValidationError);
    CHECK_THROWS_AS(solve_Wp(2, 4.0, 0.0, 1000), ValidationError);
  }
}
