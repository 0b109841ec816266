#include <cmath>

#include "doctest.h"
#include "leonet/rng.hpp"

using namespace leonet;

TEST_CASE("rng streams are deterministic and fork-independent") {
  Rng a(42), b(42);
  for (int k = 0; k < 100; ++k) CHECK(a.next_u64() == b.next_u64());

  // Forks depend on the seed and key only, not on parent draw position.
  Rng parent(42);
  const Rng f1 = parent.fork(7);
  parent.uniform();
  parent.uniform();
  const Rng f2 = parent.fork(7);
  CHECK(f1.seed() == f2.seed());
  CHECK(parent.fork(8).seed() != f1.seed());
}

TEST_CASE("uniform draws stay in [0,1)") {
  Rng rng(3);
  for (int k = 0; k < 10000; ++k) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("poisson sample mean matches the rate over 1e6 draws") {
  // Small-mean inversion branch: mean 2.0, tolerance 3 sigma = 0.0042.
  {
    Rng rng(11);
    const int n = 1000000;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += static_cast<double>(rng.poisson(2.0));
    const double mean = sum / n;
    CHECK(std::fabs(mean - 2.0) < 3.0 * std::sqrt(2.0 / n));
  }
  // Large-mean rejection branch.
  {
    Rng rng(12);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int k = 0; k < n; ++k) {
      const double v = static_cast<double>(rng.poisson(80.0));
      sum += v;
      sum2 += v * v;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::fabs(mean - 80.0) < 3.0 * std::sqrt(80.0 / n));
    CHECK(var == doctest::Approx(80.0).epsilon(0.03));
  }
}

TEST_CASE("poisson edge cases") {
  Rng rng(5);
  CHECK(rng.poisson(0.0) == 0);
  CHECK_THROWS(rng.poisson(-1.0));
}

TEST_CASE("normal draws have the requested moments") {
  Rng rng(9);
  const int n = 400000;
  double sum = 0.0, sum2 = 0.0;
  for (int k = 0; k < n; ++k) {
    const double v = rng.normal(3.0, 2.0);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / n;
  CHECK(mean == doctest::Approx(3.0).epsilon(0.01));
  CHECK(sum2 / n - mean * mean == doctest::Approx(4.0).epsilon(0.02));
}
