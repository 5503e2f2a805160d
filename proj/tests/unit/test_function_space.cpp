#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fpcr/grid_function.hpp"
#include "fpcr/random.hpp"

using namespace fpcr;

namespace {

// random smooth function: trigonometric mixture plus low-degree polynomial
GridFunction random_smooth(Eigen::Index m, RandomStream& rng) {
  const Eigen::VectorXd u = grid_points(m);
  Eigen::VectorXd values = Eigen::VectorXd::Zero(m);
  for (int j = 1; j <= 4; ++j) {
    const double a = rng.normal();
    const double b = rng.normal();
    for (Eigen::Index k = 0; k < m; ++k) {
      values[k] += a * std::sin(2.0 * M_PI * j * u[k]) + b * std::cos(2.0 * M_PI * j * u[k]);
    }
  }
  const double c0 = rng.normal(), c1 = rng.normal(), c2 = rng.normal();
  for (Eigen::Index k = 0; k < m; ++k) {
    values[k] += c0 + c1 * u[k] + c2 * u[k] * u[k];
  }
  return GridFunction(values);
}

}  // namespace

TEST_CASE("grid_points endpoints and spacing") {
  const Eigen::VectorXd two = grid_points(2);
  CHECK(two[0] == 0.0);
  CHECK(two[1] == 1.0);

  const Eigen::VectorXd three = grid_points(3);
  CHECK(three[1] == doctest::Approx(0.5).epsilon(1e-15));

  const Eigen::VectorXd fifty = grid_points(50);
  REQUIRE(fifty.size() == 50);
  CHECK(fifty[0] == 0.0);
  CHECK(fifty[49] == 1.0);
  for (int k = 0; k + 1 < 50; ++k) {
    CHECK(fifty[k + 1] - fifty[k] == doctest::Approx(1.0 / 49.0).epsilon(1e-12));
  }

  CHECK_THROWS_AS(grid_points(1), InvalidGridError);
}

TEST_CASE("GridFunction validates its invariants") {
  CHECK_THROWS_AS(GridFunction{Eigen::VectorXd::Zero(1)}, InvalidGridError);
  Eigen::VectorXd bad(3);
  bad << 0.0, std::nan(""), 1.0;
  CHECK_THROWS_AS(GridFunction{bad}, PreconditionError);
}

TEST_CASE("inner_product L2 is exact on constants and linears") {
  const Eigen::Index m = 17;
  const GridFunction ones = GridFunction::constant(m, 1.0);
  const GridFunction linear = GridFunction::sample(m, [](double u) { return u; });
  CHECK(inner_product(ones, ones, Space::L2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(inner_product(linear, ones, Space::L2) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("inner_product W12 of the identity function approaches 4/3") {
  // reference at m=1000: quadrature error O(m^-2)
  const GridFunction fine = GridFunction::sample(1000, [](double u) { return u; });
  CHECK(std::abs(inner_product(fine, fine, Space::W12) - 4.0 / 3.0) < 5e-7);

  const GridFunction coarse = GridFunction::sample(50, [](double u) { return u; });
  CHECK(std::abs(inner_product(coarse, coarse, Space::W12) - 4.0 / 3.0) < 2e-4);
}

TEST_CASE("inner_product rejects mismatched grids") {
  const GridFunction a = GridFunction::zero(10);
  const GridFunction b = GridFunction::zero(11);
  CHECK_THROWS_AS(inner_product(a, b, Space::L2), DimensionError);
}

TEST_CASE("derivative of constants and linears is exact") {
  const GridFunction constant = GridFunction::constant(9, 3.25);
  CHECK(sup_norm(derivative(constant)) == 0.0);

  const GridFunction linear = GridFunction::sample(9, [](double u) { return u; });
  const Eigen::VectorXd d = derivative(linear).values();
  for (Eigen::Index k = 0; k < d.size(); ++k) {
    CHECK(d[k] == doctest::Approx(1.0).epsilon(1e-13));
  }

  CHECK_THROWS_AS(derivative(GridFunction::zero(2)), InvalidGridError);
}

TEST_CASE("derivative of u^2: central differences exact inside, O(1/m) at ends") {
  const Eigen::Index m = 50;
  const Eigen::VectorXd u = grid_points(m);
  const GridFunction quadratic = GridFunction::sample(m, [](double x) { return x * x; });
  const Eigen::VectorXd d = derivative(quadratic).values();
  for (Eigen::Index k = 1; k + 1 < m; ++k) {
    CHECK(d[k] == doctest::Approx(2.0 * u[k]).epsilon(1e-12));
  }
  const double h = 1.0 / 49.0;
  CHECK(std::abs(d[0] - 0.0) <= h + 1e-12);
  CHECK(std::abs(d[m - 1] - 2.0) <= h + 1e-12);
}

TEST_CASE("sup_norm") {
  CHECK(sup_norm(GridFunction::constant(7, 1.0)) == 1.0);
  const GridFunction tent = GridFunction::sample(3, [](double u) { return u - 0.5; });
  CHECK(sup_norm(tent) == 0.5);

  // sqrt(2) sin(2 pi u) peaks at sqrt(2); the grid misses the peak by O(h^2)
  const GridFunction sine = GridFunction::sample(
      50, [](double u) { return std::sqrt(2.0) * std::sin(2.0 * M_PI * u); });
  CHECK(std::abs(sup_norm(sine) - std::sqrt(2.0)) < 2e-3);
}

TEST_CASE("norm in both spaces") {
  const GridFunction ones = GridFunction::constant(21, 1.0);
  CHECK(norm(ones, Space::L2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(norm(ones, Space::W12) == doctest::Approx(1.0).epsilon(1e-14));

  const GridFunction linear = GridFunction::sample(200, [](double u) { return u; });
  CHECK(norm(linear, Space::W12) ==
        doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-4));
}

TEST_CASE("inner product symmetry and bilinearity on random functions") {
  RandomStream rng(991);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index m = 30;
    const GridFunction f = random_smooth(m, rng);
    const GridFunction g = random_smooth(m, rng);
    const GridFunction h = random_smooth(m, rng);
    const double a = rng.normal();
    const double b = rng.normal();
    for (const Space space : {Space::L2, Space::W12}) {
      CHECK(inner_product(f, g, space) == doctest::Approx(inner_product(g, f, space)).epsilon(1e-13));
      const GridFunction combo = a * f + b * g;
      const double lhs = inner_product(combo, h, space);
      const double rhs = a * inner_product(f, h, space) + b * inner_product(g, h, space);
      CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("Cauchy-Schwarz on random pairs") {
  RandomStream rng(555);
  for (int trial = 0; trial < 50; ++trial) {
    const GridFunction f = random_smooth(40, rng);
    const GridFunction g = random_smooth(40, rng);
    for (const Space space : {Space::L2, Space::W12}) {
      CHECK(std::abs(inner_product(f, g, space)) <=
            norm(f, space) * norm(g, space) + 1e-12);
    }
  }
}

TEST_CASE("Sobolev embedding: sup |f| <= sqrt(2) ||f||_W12") {
  RandomStream rng(770);
  for (int trial = 0; trial < 200; ++trial) {
    const GridFunction f = random_smooth(50, rng);
    CHECK(sup_norm(f) <= std::sqrt(2.0) * norm(f, Space::W12) + 1e-8);
  }
}

TEST_CASE("gram matrix reproduces the inner product") {
  RandomStream rng(12);
  const Eigen::Index m = 25;
  const GridFunction f = random_smooth(m, rng);
  const GridFunction g = random_smooth(m, rng);
  for (const Space space : {Space::L2, Space::W12}) {
    const Eigen::MatrixXd gram = gram_matrix(m, space);
    const double via_gram = f.values().transpose() * gram * g.values();
    CHECK(via_gram == doctest::Approx(inner_product(f, g, space)).epsilon(1e-12));
  }
}
