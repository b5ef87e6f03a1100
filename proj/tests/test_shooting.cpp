#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "infogeo/models.hpp"
#include "infogeo/shooting.hpp"

using namespace infogeo;

namespace {

Vector v1(double a) {
  Vector v(1);
  v[0] = a;
  return v;
}

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Vector v3(double a, double b, double c) {
  Vector v(3);
  v << a, b, c;
  return v;
}

}  // namespace

TEST_CASE("series seed for the boundary problem") {
  const ManifoldModel exp1d = exponential_model();
  CHECK(initial_guess(exp1d, v1(1.3), v1(1.3)).norm() == 0.0);

  // dq + (1/2) Gamma^1_11 dq^2 = 0.2 - 0.02 with Gamma^1_11(1) = -1
  CHECK(initial_guess(exp1d, v1(1.0), v1(1.2))[0] == doctest::Approx(0.18));

  const ManifoldModel cubic = euclidean_cubic_r3();
  const Vector dq = v3(0.3, -0.7, 0.1);
  CHECK((initial_guess(cubic, Vector::Zero(3), dq) - dq).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("seed error shrinks cubically with the separation") {
  const ManifoldModel exp1d = exponential_model();
  std::vector<double> errors;
  for (double dq : {0.4, 0.2, 0.1, 0.05}) {
    const Vector guess = initial_guess(exp1d, v1(1.0), v1(1.0 + dq));
    const ShootingResult sol = shoot(exp1d, 0.0, v1(1.0), v1(1.0 + dq), 1e-12);
    const double err = std::abs(guess[0] - sol.v_in[0]);
    CHECK(err <= dq * dq * dq);
    errors.push_back(err);
  }
  for (std::size_t i = 1; i < errors.size(); ++i) CHECK(errors[i - 1] / errors[i] >= 6.0);
}

TEST_CASE("exponential boundary problem has v_in = xi_in ln(xi_fin/xi_in)") {
  const ManifoldModel exp1d = exponential_model();
  for (double alpha : {0.0, 1.0, -0.5}) {
    const ShootingResult sol = shoot(exp1d, alpha, v1(1.0), v1(std::exp(1.0)), 1e-10);
    CHECK(sol.v_in[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sol.residual <= 1e-10);
  }
}

TEST_CASE("coincident endpoints solve instantly") {
  const ManifoldModel exp1d = exponential_model();
  const ShootingResult sol = shoot(exp1d, 0.7, v1(1.5), v1(1.5), 1e-10);
  CHECK(sol.v_in.norm() == 0.0);
  CHECK(sol.iterations == 0);
  CHECK(sol.residual == 0.0);
}

TEST_CASE("free particle shoots in one step") {
  const ShootingResult sol = shoot(kl_free_particle(), v1(0.0), v1(0.7), {});
  CHECK(sol.v_in[0] == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("re-integration reproduces the target endpoint") {
  const ManifoldModel sphere = sphere_pullback_model();
  const Vector q_in = v2(1.2, 0.9);
  const Vector q_fin = v2(1.5, 1.3);
  const LagrangianSystem sys = cubic_lagrangian_system(sphere, 0.5);
  ShootingOptions opts;
  opts.tolerance = 1e-11;
  const ShootingResult sol = shoot(sys, q_in, q_fin, opts);
  const Trajectory redo = integrate(sys, {q_in, sol.v_in}, opts.steps);
  CHECK((redo.final_state().q - q_fin).cwiseAbs().maxCoeff() <= sol.residual + 1e-15);
  CHECK((sol.trajectory.final_state().q - q_fin).cwiseAbs().maxCoeff() <= sol.residual + 1e-15);
}

TEST_CASE("near-diagonal problems converge within 8 iterations") {
  struct Case {
    const char* model;
    Vector q_in, q_fin;
    double alpha;
  };
  std::vector<Case> cases;
  cases.push_back({"exponential1d", v1(1.0), v1(1.5), 0.5});
  cases.push_back({"exponential-log", v1(0.0), v1(0.5), -0.5});
  cases.push_back({"euclidean-cubic-r3", v3(0.0, 0.0, 0.0), v3(0.3, -0.2, 0.3), 1.0});
  cases.push_back({"sphere-pullback", v2(1.2, 0.9), v2(1.5, 1.2), 0.5});
  cases.push_back({"kl-free", v1(0.0), v1(0.5), 0.0});
  for (const auto& c : cases) {
    CAPTURE(c.model);
    ShootingOptions opts;
    opts.tolerance = 1e-10;
    const ShootingResult sol =
        shoot(find_builtin(c.model)->system(c.alpha), c.q_in, c.q_fin, opts);
    CHECK(sol.iterations <= 8);
    CHECK(sol.residual <= 1e-10);
  }
}

TEST_CASE("continuation rescues a catastrophic seed") {
  // At dq = 5 the series seed is 5 - 25/2 = -7.5 while the true answer is
  // ln 6; the direct Newton attempt stalls and the s = 1/4 ... 1 continuation
  // has to walk the target out.
  const ManifoldModel exp1d = exponential_model();
  CHECK(initial_guess(exp1d, v1(1.0), v1(6.0))[0] == doctest::Approx(-7.5));
  const ShootingResult sol = shoot(exp1d, 0.0, v1(1.0), v1(6.0), 1e-10);
  CHECK(sol.v_in[0] == doctest::Approx(std::log(6.0)).epsilon(1e-9));
  CHECK(sol.residual <= 1e-10);
}

TEST_CASE("long sphere geodesics still converge") {
  const ManifoldModel sphere = sphere_round_model();
  const Vector a = v2(0.8, 1.0);
  const Vector b = v2(2.2, 2.3);
  const ShootingResult sol = shoot(sphere, 0.0, a, b, 1e-10);
  CHECK(sol.residual <= 1e-10);
  // the chart-connected branch has the great-circle length
  const Matrix g = metric_at(sphere, a);
  const double speed = std::sqrt(sol.v_in.dot(g * sol.v_in));
  const double dist = great_circle_distance(sphere_immersion(), a, b);
  CHECK(speed == doctest::Approx(dist).epsilon(1e-7));
}

TEST_CASE("separations near the domain scale are flagged") {
  const ManifoldModel sphere = sphere_round_model();
  CHECK(shoot(sphere, 0.0, v2(0.6, 1.0), v2(2.5, 1.2), 1e-9).separation_warning);
  CHECK_FALSE(shoot(sphere, 0.0, v2(1.2, 1.0), v2(1.5, 1.2), 1e-9).separation_warning);
}

TEST_CASE("invalid shooting inputs") {
  const ManifoldModel exp1d = exponential_model();
  CHECK_THROWS_AS(shoot(exp1d, 0.0, v1(-1.0), v1(1.0), 1e-10), DomainError);
  CHECK_THROWS_AS(shoot(exp1d, 0.0, v1(1.0), v1(-1.0), 1e-10), DomainError);
  CHECK_THROWS_AS(shoot(exp1d, 0.0, v1(1.0), v1(2.0), 0.0), Error);
}
