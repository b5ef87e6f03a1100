#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "infogeo/quadrature.hpp"

using namespace infogeo;

TEST_CASE("gauss-legendre weights sum to 2 and integrate monomials") {
  const auto& [nodes, weights] = gauss_legendre(15);
  REQUIRE(nodes.size() == 15);
  double wsum = 0.0;
  for (double w : weights) wsum += w;
  CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));

  // 15-point rule is exact through degree 29.
  for (int p : {2, 10, 28}) {
    double quad = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) quad += weights[i] * std::pow(nodes[i], p);
    const double exact = 2.0 / (p + 1);
    CHECK(quad == doctest::Approx(exact).epsilon(1e-13));
  }
}

TEST_CASE("adaptive panels on a finite interval") {
  const double value = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, M_PI);
  CHECK(value == doctest::Approx(2.0).epsilon(1e-12));

  const double osc =
      integrate_adaptive([](double x) { return std::cos(20.0 * x) * std::exp(-x); }, 0.0, 3.0);
  const double exact = (20.0 * std::sin(60.0) - std::cos(60.0)) * std::exp(-3.0) / 401.0 + 1.0 / 401.0;
  CHECK(osc == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("improper integral through tail truncation") {
  constexpr double inf = std::numeric_limits<double>::infinity();
  auto decay = [](double x) { return std::exp(-x); };
  const Interval cut = truncate_support(decay, {0.0, inf}, 1e-16);
  CHECK(cut.lower == 0.0);
  CHECK(cut.upper > 30.0);
  CHECK(integrate_adaptive(decay, cut.lower, cut.upper) == doctest::Approx(1.0).epsilon(1e-12));

  auto gauss = [](double x) { return std::exp(-0.5 * (x - 5.0) * (x - 5.0)); };
  const Interval gcut = truncate_support(gauss, {-inf, inf}, 1e-16);
  CHECK(gcut.lower < 5.0 - 8.0);
  CHECK(gcut.upper > 5.0 + 8.0);
  CHECK(integrate_adaptive(gauss, gcut.lower, gcut.upper) ==
        doctest::Approx(std::sqrt(2.0 * M_PI)).epsilon(1e-11));
}

TEST_CASE("failure is reported, not returned") {
  QuadratureOptions tight;
  tight.rel_tolerance = 1e-15;
  tight.abs_tolerance = 0.0;
  tight.max_doublings = 2;
  // |x - 1/3|^{-1/2} is integrable but far too rough for two doublings.
  auto rough = [](double x) { return 1.0 / std::sqrt(std::abs(x - 1.0 / 3.0) + 1e-300); };
  CHECK_THROWS_AS(integrate_adaptive(rough, 0.0, 1.0, tight), QuadratureNotConverged);
}

TEST_CASE("panel refinement is deterministic") {
  auto f = [](double x) { return std::exp(-x * x) * std::cos(3.0 * x); };
  const double a = integrate_adaptive(f, -4.0, 4.0);
  const double b = integrate_adaptive(f, -4.0, 4.0);
  CHECK(a == b);
}
