#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "waveguard/errors.hpp"
#include "waveguard/state_space.hpp"

using namespace waveguard;
using std::numbers::pi;

namespace {

FieldState linear_u(const Grid& grid) {
  return oracle::sample(grid, [](double x) { return x; }, [](double) { return 0.0; });
}

}  // namespace

TEST_CASE("grid geometry") {
  Grid grid(2.0, 8);
  CHECK(grid.dx() == doctest::Approx(0.25));
  CHECK(grid.n_nodes() == 9);
  CHECK(grid.x(8) == doctest::Approx(2.0));
  CHECK(grid.trapezoid_weight(0) == doctest::Approx(0.125));
  CHECK(grid.trapezoid_weight(4) == doctest::Approx(0.25));
  CHECK_THROWS_AS(Grid(1.0, 3), ContractViolation);
  CHECK_THROWS_AS(Grid(0.0, 10), ContractViolation);
  CHECK_THROWS_AS(Grid(std::nan(""), 10), ContractViolation);
}

TEST_CASE("bilinear_a") {
  SUBCASE("constants are in the kernel") {
    Grid grid(1.0, 16);
    std::vector<double> c(grid.n_nodes(), 3.7);
    std::vector<double> w(grid.n_nodes());
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = std::sin(3.0 * grid.x(j));
    CHECK(bilinear_a(c, c, grid) == 0.0);
    CHECK(std::abs(bilinear_a(c, w, grid)) < 1e-12);
  }
  SUBCASE("u = x gives 1 on every grid") {
    for (int n : {4, 10, 100, 1000}) {
      Grid grid(1.0, n);
      auto s = linear_u(grid);
      CHECK(bilinear_a(s.u, s.u, grid) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("sin(pi x) against quadrature of the continuum form") {
    Grid grid(1.0, 512);
    std::vector<double> u(grid.n_nodes());
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = std::sin(pi * grid.x(j));
    const double exact = oracle::integrate([](double x) { return pi * pi * std::cos(pi * x) * std::cos(pi * x); }, 0, 1);
    CHECK(exact == doctest::Approx(pi * pi / 2).epsilon(1e-12));
    CHECK(std::abs(bilinear_a(u, u, grid) - exact) < 1e-4);
  }
  SUBCASE("symmetric in its arguments") {
    Grid grid(1.5, 37);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    for (int k = 0; k < 20; ++k) {
      std::vector<double> a(grid.n_nodes()), b(grid.n_nodes());
      for (auto& x : a) x = nd(rng);
      for (auto& x : b) x = nd(rng);
      CHECK(bilinear_a(a, b, grid) == bilinear_a(b, a, grid));
    }
  }
  SUBCASE("dimension mismatch") {
    Grid grid(1.0, 8);
    std::vector<double> a(9), b(8);
    CHECK_THROWS_AS(bilinear_a(a, b, grid), ContractViolation);
  }
}

TEST_CASE("energy breakdown") {
  Grid grid(1.0, 20);
  auto zero = FieldState::zeros(grid);
  CHECK(energy(zero, grid).total == 0.0);

  auto e = energy(linear_u(grid), grid);
  CHECK(e.potential == doctest::Approx(0.5));
  CHECK(e.kinetic == 0.0);
  CHECK(e.boundary_kinetic == 0.0);
  CHECK(e.total == doctest::Approx(0.5));

  auto ones = oracle::sample(grid, [](double) { return 0.0; }, [](double) { return 1.0; });
  auto k = energy(ones, grid);
  CHECK(k.kinetic == doctest::Approx(0.5));
  CHECK(k.boundary_kinetic == doctest::Approx(0.5));
  CHECK(k.total == doctest::Approx(1.0));

  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    auto s = oracle::random_state(20, 1.0, 0.3 + i, rng);
    auto b = energy(s, grid);
    CHECK(b.total >= 0.0);
    CHECK(b.total == doctest::Approx(b.potential + b.kinetic + b.boundary_kinetic).epsilon(1e-14));
    CHECK(b.total == doctest::Approx(oracle::energy(s, 20, 1.0)).epsilon(1e-12));
  }

  CHECK_THROWS_AS(energy(FieldState::zeros(Grid(1.0, 10)), grid), ContractViolation);
}

TEST_CASE("energy vanishes exactly on constants") {
  Grid grid(1.0, 30);
  CHECK(energy(FieldState::constant(grid, -2.5), grid).total == 0.0);
  auto s = FieldState::constant(grid, 1.0);
  s.u[15] += 1e-3;
  CHECK(energy(s, grid).total > 0.0);
}

TEST_CASE("mean functional") {
  Grid grid(1.0, 512);
  CHECK(mean_functional(FieldState::constant(grid, 4.0), grid) == doctest::Approx(4.0));
  CHECK(mean_functional(linear_u(grid), grid) == doctest::Approx(0.5).epsilon(1e-14));
  auto s = oracle::sample(grid, [](double x) { return std::sin(2 * pi * x); }, [](double) { return 0.0; });
  CHECK(std::abs(mean_functional(s, grid)) < 1e-10);
}

TEST_CASE("projection orthogonal to constants") {
  Grid grid(1.0, 24);
  CHECK(h_norm_squared(project_orthogonal_to_constants(FieldState::constant(grid, 3.0), grid), grid) < 1e-26);

  // [x, 0] minus c [1, 0] with c = <x, 1>_H / <1, 1>_H = (1/2) / (L + 1) = 1/4
  auto p = project_orthogonal_to_constants(linear_u(grid), grid);
  for (std::size_t j = 0; j < grid.n_nodes(); ++j) CHECK(p.u[j] == doctest::Approx(grid.x(j) - 0.25));

  std::mt19937_64 rng(3);
  for (int i = 0; i < 30; ++i) {
    auto s = oracle::random_state(24, 1.0, 1.0, rng);
    for (auto& u : s.u) u += 5.0;
    auto q = project_orthogonal_to_constants(s, grid);
    auto qq = project_orthogonal_to_constants(q, grid);
    CHECK(oracle::max_abs_diff(q.u, qq.u) < 1e-13);
    CHECK(std::abs(h_inner(q, FieldState::constant(grid, 1.0), grid)) < 1e-12);
    CHECK(energy(q, grid).total == doctest::Approx(energy(s, grid).total).epsilon(1e-12));
  }
}

TEST_CASE("h inner product matches the assembled Gram matrix") {
  Grid grid(1.3, 17);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    auto s = oracle::random_state(17, 1.3, 2.0, rng);
    CHECK(h_norm_squared(s, grid) == doctest::Approx(oracle::h_norm_squared(s, 17, 1.3)).epsilon(1e-12));
  }
}

TEST_CASE("Poincare-Wirtinger on mean-zero displacements") {
  // ||u - mean u||^2 <= (L / pi)^2 a(u, u); the discrete constant exceeds the
  // continuum one by a factor 1 + O(dx^2), covered by the 10% margin.
  const double L = 1.0;
  Grid grid(L, 64);
  std::mt19937_64 rng(19);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 200; ++i) {
    std::vector<double> u(grid.n_nodes());
    // smooth random combination of cosines plus noise
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = 0.0;
    for (int m = 1; m <= 6; ++m) {
      const double c = nd(rng) / m;
      for (std::size_t j = 0; j < u.size(); ++j) u[j] += c * std::cos(m * pi * grid.x(j) / L);
    }
    for (auto& x : u) x += 0.05 * nd(rng);
    const double mean = trapezoid(u, grid) / L;
    std::vector<double> w(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) w[j] = u[j] - mean;
    CHECK(trapezoid_product(w, w, grid) <= 1.1 * (L / pi) * (L / pi) * bilinear_a(u, u, grid));
  }
}

TEST_CASE("distance to the stationary set") {
  Grid grid(1.0, 32);
  CHECK(dist_to_stationary(FieldState::constant(grid, 2.0), grid) < 1e-13);

  // min_c ||[x - c, 0]||_H^2 = a(x, x) + T(x^2) - (T(x) + 0)^2 / (L + 1) with
  // T the trapezoid rule: 1 + (1/3 + dx^2/6) - 1/8 = 29/24 + dx^2/6.
  const double dx = grid.dx();
  const double d = dist_to_stationary(linear_u(grid), grid);
  CHECK(d * d == doctest::Approx(29.0 / 24.0 + dx * dx / 6).epsilon(1e-12));
  CHECK(std::abs(d * d - 29.0 / 24.0) <= dx * dx / 6 + 1e-12);

  // [0, 1]: the velocity part is untouched by constants; ||1||^2 + 1 = L + 1
  auto v1 = oracle::sample(grid, [](double) { return 0.0; }, [](double) { return 1.0; });
  CHECK(dist_to_stationary(v1, grid) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("distance to sublevel sets") {
  Grid grid(1.0, 32);
  auto s = linear_u(grid);  // energy 1/2
  CHECK(dist_to_sublevel_exact(s, SublevelSetSpec(0.5), grid) == 0.0);
  CHECK(dist_to_sublevel_exact(s, SublevelSetSpec(2.0), grid) == 0.0);
  CHECK(dist_to_sublevel_bound(s, SublevelSetSpec(0.7), grid, 10.0) == 0.0);
  CHECK(dist_to_sublevel_exact(s, SublevelSetSpec(0.0), grid) ==
        doctest::Approx(dist_to_stationary(s, grid)).epsilon(1e-10));
  CHECK(dist_to_sublevel_bound(s, SublevelSetSpec(0.0), grid, 4.0) == doctest::Approx(std::sqrt(4.0 * 0.5)));

  std::mt19937_64 rng(23);
  for (int i = 0; i < 5; ++i) {
    auto x = oracle::random_state(32, 1.0, 1.0 + i, rng);
    for (double level : {0.0, 0.5, 1.0}) {
      const double exact = dist_to_sublevel_exact(x, SublevelSetSpec(level), grid);
      const double reference = oracle::projected_descent_distance(x, level, 32, 1.0, 20000);
      CHECK(exact == doctest::Approx(reference).epsilon(1e-6));
    }
  }

  CHECK_THROWS_AS(SublevelSetSpec(-1.0), ContractViolation);
  Grid big(1.0, kMaxExactDistanceCells + 1);
  CHECK_THROWS_AS(dist_to_sublevel_exact(FieldState::zeros(big), SublevelSetSpec(1.0), big), ContractViolation);
}
