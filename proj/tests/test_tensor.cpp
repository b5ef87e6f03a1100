#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "infogeo/types.hpp"

using namespace infogeo;

namespace {

Tensor3 random_tensor(Index n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Tensor3 t(n);
  for (Index j = 0; j < n; ++j)
    for (Index k = 0; k < n; ++k)
      for (Index l = 0; l < n; ++l) t(j, k, l) = u(rng);
  return t;
}

Vector random_vector(Index n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

}  // namespace

TEST_CASE("contractions agree with explicit loops") {
  std::mt19937 rng(7);
  for (Index n : {1, 2, 3, 4}) {
    const Tensor3 t = random_tensor(n, rng);
    const Vector u = random_vector(n, rng);
    const Vector v = random_vector(n, rng);
    const Vector w = random_vector(n, rng);

    double full = 0.0;
    Vector two = Vector::Zero(n);
    Matrix one = Matrix::Zero(n, n);
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k)
        for (Index l = 0; l < n; ++l) {
          full += t(j, k, l) * u[j] * v[k] * w[l];
          two[j] += t(j, k, l) * v[k] * w[l];
          one(j, k) += t(j, k, l) * w[l];
        }

    CHECK(t.contract(u, v, w) == doctest::Approx(full).epsilon(1e-14));
    CHECK((t.contractLastTwo(v, w) - two).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((t.contractLast(w) - one).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("symmetry defect") {
  Tensor3 t(2);
  t(0, 0, 1) = 1.0;
  t(0, 1, 0) = 1.0;
  t(1, 0, 0) = 1.0;
  CHECK(t.symmetryDefect() == 0.0);
  t(1, 0, 0) = 1.5;
  CHECK(t.symmetryDefect() == doctest::Approx(0.5));
}

TEST_CASE("arithmetic") {
  std::mt19937 rng(11);
  const Tensor3 a = random_tensor(3, rng);
  const Tensor3 b = random_tensor(3, rng);
  const Tensor3 sum = a + b;
  const Tensor3 scaled = 2.0 * a;
  for (Index j = 0; j < 3; ++j)
    for (Index k = 0; k < 3; ++k)
      for (Index l = 0; l < 3; ++l) {
        CHECK(sum(j, k, l) == doctest::Approx(a(j, k, l) + b(j, k, l)));
        CHECK(scaled(j, k, l) == doctest::Approx(2.0 * a(j, k, l)));
      }
  CHECK((a - a).maxAbs() == 0.0);
}
