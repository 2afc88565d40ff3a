#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "waveguard/errors.hpp"
#include "waveguard/initial_data.hpp"
#include "waveguard/oracle.hpp"

using namespace waveguard;
using std::numbers::pi;

TEST_CASE("pulse profiles") {
  PulseProfile w{PulseShape::gaussian_derivative, 2.0, 0.5, 0.05};
  // peak of s exp(-s^2/2) sits at s = 1 with value exp(-1/2)
  CHECK(w.value(0.55) == doctest::Approx(2.0));
  CHECK(w.value(0.45) == doctest::Approx(-2.0));
  CHECK(w.value(0.5) == 0.0);
  CHECK(std::abs(w.derivative(0.55)) < 1e-10);
  const double h = 1e-6;
  for (double x : {0.41, 0.47, 0.52, 0.6}) {
    CHECK(w.derivative(x) == doctest::Approx((w.value(x + h) - w.value(x - h)) / (2 * h)).epsilon(1e-6));
  }
  CHECK(w.negligible_at_ends(1.0));
  CHECK_FALSE(PulseProfile{PulseShape::gaussian_derivative, 1.0, 0.1, 0.05}.negligible_at_ends(1.0));

  PulseProfile g{PulseShape::gaussian, 1.5, 0.3, 0.1};
  CHECK(g.value(0.3) == 1.5);
  CHECK(g.value(0.4) == doctest::Approx(1.5 * std::exp(-1.0)));
}

TEST_CASE("initial kind names round-trip") {
  for (auto k : {InitialKind::gaussian_bump, InitialKind::right_moving_pulse, InitialKind::sine_mode,
                 InitialKind::constant_offset}) {
    CHECK(parse_initial_kind(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_initial_kind("square_wave"), ContractViolation);
}

TEST_CASE("constant offset has zero energy") {
  Grid grid(1.0, 50);
  InitialParams p;
  p.offset = 3.0;
  auto init = make_initial(InitialKind::constant_offset, p, grid);
  CHECK(energy(init.state, grid).total == 0.0);
  for (double u : init.state.u) CHECK(u == 3.0);
}

TEST_CASE("right-moving pulse equipartitions its energy") {
  Grid grid(1.0, 20000);
  InitialParams p;
  auto init = make_initial(InitialKind::right_moving_pulse, p, grid);
  CHECK_FALSE(init.boundary_warning);
  auto w = pulse_profile(p);
  const double half = 0.5 * oracle::integrate([&](double x) { return w.derivative(x) * w.derivative(x); }, 0, 1);
  auto e = energy(init.state, grid);
  CHECK(e.potential == doctest::Approx(half).epsilon(1e-6));
  CHECK(e.kinetic == doctest::Approx(half).epsilon(1e-6));
  CHECK(e.boundary_kinetic < 1e-20);
}

TEST_CASE("sine mode potential energy") {
  // 1/2 int (A m pi cos(m pi x))^2 = A^2 m^2 pi^2 / 4 for L = 1
  Grid grid(1.0, 512);
  for (int m : {1, 2, 3}) {
    InitialParams p;
    p.mode = m;
    p.amplitude = 0.7;
    auto e = energy(make_initial(InitialKind::sine_mode, p, grid).state, grid);
    const double exact = 0.5 * oracle::integrate(
                                   [&](double x) {
                                     const double d = 0.7 * m * pi * std::cos(m * pi * x);
                                     return d * d;
                                   },
                                   0, 1);
    CHECK(exact == doctest::Approx(0.49 * m * m * pi * pi / 4).epsilon(1e-12));
    CHECK(e.potential == doctest::Approx(exact).epsilon(1e-3));
    CHECK(e.kinetic == 0.0);
  }
}

TEST_CASE("pulse touching the boundary is flagged") {
  Grid grid(1.0, 100);
  InitialParams p;
  p.center = 0.05;
  CHECK(make_initial(InitialKind::right_moving_pulse, p, grid).boundary_warning);
  p.center = 0.98;
  CHECK(make_initial(InitialKind::gaussian_bump, p, grid).boundary_warning);
}

TEST_CASE("characteristics oracle") {
  Grid grid(1.0, 400);
  InitialParams p;
  auto w = pulse_profile(p);

  SUBCASE("t = 0 reproduces the initial data") {
    auto init = make_initial(InitialKind::right_moving_pulse, p, grid);
    auto o = characteristics_oracle(w, grid, 0.0);
    CHECK(oracle::max_abs_diff(o.u, init.state.u) == 0.0);
    CHECK(oracle::max_abs_diff(o.v, init.state.v) <= 1e-15);
  }
  SUBCASE("translation") {
    auto o = characteristics_oracle(w, grid, 0.2);
    for (std::size_t j = 0; j < grid.n_nodes(); ++j) CHECK(o.u[j] == w.value(std::max(grid.x(j) - 0.2, 0.0)));
  }
  SUBCASE("after the packet has left the state is at rest") {
    for (double t : {1.0, 1.5, 3.0}) {
      auto o = characteristics_oracle(w, grid, t);
      CHECK(energy(o, grid).total < 1e-20);
    }
  }
  SUBCASE("energy equals the part of the packet still inside") {
    Grid fine(1.0, 4000);
    for (double t : {0.0, 0.3, 0.5, 0.55, 0.7}) {
      const double inside =
          oracle::integrate([&](double x) { return w.derivative(x) * w.derivative(x); }, -2.0, 1.0 - t);
      CHECK(energy(characteristics_oracle(w, fine, t), fine).total ==
            doctest::Approx(inside).epsilon(1e-4).scale(1e-3));
    }
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(characteristics_oracle(w, grid, -0.1), ContractViolation);
    PulseProfile near_edge{PulseShape::gaussian_derivative, 1.0, 0.02, 0.05};
    CHECK_THROWS_AS(characteristics_oracle(near_edge, grid, 0.1), ContractViolation);
  }
}
