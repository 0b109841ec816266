#include <cmath>

#include "doctest.h"
#include "leonet/capacity.hpp"

using namespace leonet;

namespace {

// Coefficient rows extracted from known published runs of the two-species
// system (baseline, high CAM success, no CAM).
CapacityModel2D baseline_row() {
  CapacityModel2D m;
  m.a = 0.004728332083372;
  m.b = 8.662467642990248e-08;
  m.c = 1.175401267752297e-14;
  m.d = 9.428437648428035e-10;
  m.gamma = 0.368578793358788;
  m.lambda = 0.0;
  m.e = 2.003922397999517e-17;
  m.f = 2.316928055993169e-13;
  return m;
}

CapacityModel2D high_cam_row() {
  CapacityModel2D m;
  m.a = 0.004226706317436;
  m.b = 8.676619156862889e-08;
  m.c = 1.224456162356393e-15;
  m.d = 9.606253682748494e-11;
  m.gamma = 0.166677662732838;
  m.lambda = 3000.0;
  m.e = 1.647891773627737e-17;
  m.f = 1.957039536003774e-13;
  return m;
}

CapacityModel2D no_cam_row() {
  CapacityModel2D m;
  m.a = 0.022592560002365;
  m.b = 6.214276689402071e-08;
  m.c = 1.224460289412396e-07;
  m.d = 8.664860267617623e-07;
  m.gamma = 0.166621505691604;
  m.lambda = 3000.0;
  m.e = 1.647986448760241e-09;
  m.f = 1.790973469946202e-09;
  return m;
}

// Forward RK4 integration of the 2-D system; stops early once |x| leaves
// [x_stop_lo, x_stop_hi] (the saddle dynamics are slow but explosive).
void integrate(const CapacityModel2D& m, double& x, double& y, double t_years, int steps,
               double x_stop_lo = -1e300, double x_stop_hi = 1e300) {
  const double h = t_years / steps;
  for (int k = 0; k < steps; ++k) {
    double k1x, k1y, k2x, k2y, k3x, k3y, k4x, k4y;
    capacity_derivatives(m, x, y, k1x, k1y);
    capacity_derivatives(m, x + 0.5 * h * k1x, y + 0.5 * h * k1y, k2x, k2y);
    capacity_derivatives(m, x + 0.5 * h * k2x, y + 0.5 * h * k2y, k3x, k3y);
    capacity_derivatives(m, x + h * k3x, y + h * k3y, k4x, k4y);
    x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    if (x < x_stop_lo || x > x_stop_hi) return;
  }
}

}  // namespace

TEST_CASE("coefficient extraction from synthetic cause streams") {
  SUBCASE("pure exponential decay recovers the rate within 1%") {
    const double rate = 0.31;  // per year
    const double dt = 0.01;
    std::vector<CauseRow> rows;
    double x = 50000.0;
    for (int k = 0; k < 2000; ++k) {
      CauseRow row;
      row.dt_years = dt;
      row.x_fragments = x;
      const double x_next = x * std::exp(-rate * dt);
      row.dF_decay = x_next - x;
      rows.push_back(row);
      x = x_next;
    }
    const CapacityModel1D model = extract_coefficients_1d(rows);
    CHECK(model.a == doctest::Approx(rate).epsilon(0.01));
    CHECK(model.b == 0.0);
  }
  SUBCASE("no collisions ever means b = 0") {
    std::vector<CauseRow> rows(10);
    for (auto& row : rows) {
      row.dt_years = 0.1;
      row.x_fragments = 1000.0;
      row.dF_decay = -1.0;
    }
    CHECK(extract_coefficients_1d(rows).b == 0.0);
  }
  SUBCASE("steps with empty denominators are excluded") {
    std::vector<CauseRow> rows(4);
    rows[0] = {0, 0.1, 100.0, 10.0, -1.0, 2.0, 0, 0, 0, 0, -1.0};
    rows[1] = {0, 0.1, 0.0, 0.0, -5.0, 9.0, 0, 0, 0, 0, -9.0};  // must be skipped
    rows[2] = {0, 0.1, 100.0, 10.0, -1.0, 2.0, 0, 0, 0, 0, -1.0};
    rows[3] = {0, 0.1, 100.0, 10.0, -1.0, 2.0, 0, 0, 0, 0, -1.0};
    const CapacityModel2D m = extract_coefficients_2d(rows, 0.0);
    CHECK(m.a == doctest::Approx(1.0 / (100.0 * 0.1)));
    CHECK(m.b == doctest::Approx(2.0 / (100.0 * 100.0 * 0.1)));
    CHECK(m.gamma == doctest::Approx(1.0 / (10.0 * 0.1)));
  }
  SUBCASE("noise-driven negative averages are floored at zero") {
    std::vector<CauseRow> rows(3);
    for (auto& row : rows) {
      row.dt_years = 0.1;
      row.x_fragments = 100.0;
      row.dF_FF = -4.0;  // net loss exceeding production
      row.dF_decay = 2.0;
    }
    const CapacityModel1D m = extract_coefficients_1d(rows);
    CHECK(m.a == 0.0);
    CHECK(m.b == 0.0);
  }
}

TEST_CASE("bernoulli solution of the 1-D mean field") {
  const double a = 0.004728332083372;
  const double b = 8.662467642990248e-08;
  const double capacity = a / b;

  SUBCASE("the capacity is a fixed point") {
    for (double t : {0.0, 5.0, 40.0, 200.0}) {
      CHECK(bernoulli_solution(a, b, capacity, t) == doctest::Approx(capacity).epsilon(1e-9));
    }
    CHECK_FALSE(bernoulli_blowup_time(a, b, capacity).has_value());
  }
  SUBCASE("below capacity the population decays monotonically to zero") {
    // The decay rate is slow (1/a ~ 200 years), so the window is long.
    const double x0 = 0.5 * capacity;
    double prev = x0;
    for (double t = 5.0; t <= 1500.0; t += 5.0) {
      const double x = bernoulli_solution(a, b, x0, t);
      CHECK(x < prev);
      prev = x;
    }
    CHECK(prev < 1e-2 * x0);
    CHECK_FALSE(bernoulli_blowup_time(a, b, x0).has_value());
  }
  SUBCASE("above capacity the solution blows up at a finite time") {
    const double x0 = 1.8 * capacity;
    const auto t_star = bernoulli_blowup_time(a, b, x0);
    REQUIRE(t_star.has_value());
    CHECK(*t_star > 0.0);
    const double near = bernoulli_solution(a, b, x0, *t_star * 0.999);
    CHECK(near > 50.0 * x0);
    double prev = x0;
    for (double t = *t_star / 50.0; t < *t_star * 0.999; t += *t_star / 50.0) {
      const double x = bernoulli_solution(a, b, x0, t);
      CHECK(x > prev);
      prev = x;
    }
  }
  SUBCASE("the closed form satisfies xdot = -a x + b x^2") {
    for (double x0 : {0.3 * capacity, 0.9 * capacity, 1.5 * capacity}) {
      for (double t : {0.5, 3.0, 10.0}) {
        const double h = 1e-4;
        const double fd = (bernoulli_solution(a, b, x0, t + h) -
                           bernoulli_solution(a, b, x0, t - h)) /
                          (2.0 * h);
        const double x = bernoulli_solution(a, b, x0, t);
        const double rhs = -a * x + b * x * x;
        CHECK(fd == doctest::Approx(rhs).epsilon(1e-7));
      }
    }
  }
  SUBCASE("domain errors") {
    CHECK_THROWS(bernoulli_solution(a, b, -5.0, 1.0));
    CHECK_THROWS(bernoulli_solution(a, b, 0.0, 1.0));
  }
}

TEST_CASE("equilibria of the two-species system") {
  SUBCASE("zero launch rate gives the origin and the capacity saddle") {
    const CapacityModel2D m = baseline_row();
    const auto equilibria = find_equilibria(m);
    REQUIRE(equilibria.size() == 2);
    CHECK(equilibria[0].x == doctest::Approx(0.0).scale(1.0));
    CHECK(equilibria[0].y == doctest::Approx(0.0).scale(1.0));
    CHECK(equilibria[0].stability == Stability::Stable);
    CHECK(equilibria[1].x == doctest::Approx(54584.4).epsilon(1e-3));
    CHECK(equilibria[1].y == doctest::Approx(0.0).scale(1.0));
    CHECK(equilibria[1].stability == Stability::Saddle);
  }
  SUBCASE("the high-CAM row reproduces the published equilibria within 2%") {
    const auto equilibria = find_equilibria(high_cam_row());
    REQUIRE(equilibria.size() == 2);
    CHECK(equilibria[0].x < 1.0);  // epsilon-scale root
    CHECK(equilibria[0].y == doctest::Approx(1.8e4).epsilon(0.02));
    CHECK(equilibria[0].stability == Stability::Stable);
    CHECK(equilibria[1].x == doctest::Approx(4.90e4).epsilon(0.02));
    CHECK(equilibria[1].y == doctest::Approx(1.8e4).epsilon(0.02));
    CHECK(equilibria[1].stability == Stability::Saddle);
  }
  SUBCASE("residuals satisfy the equilibrium condition") {
    for (const CapacityModel2D& m : {baseline_row(), high_cam_row(), no_cam_row()}) {
      const double scale = std::max({1.0, m.lambda, m.a * (m.b > 0.0 ? m.a / m.b : 1.0)});
      for (const Equilibrium& eq : find_equilibria(m)) {
        CHECK(eq.residual < 1e-6 * scale);
      }
    }
  }
  SUBCASE("classification agrees with forward integration") {
    const CapacityModel2D m = baseline_row();
    const auto equilibria = find_equilibria(m);
    REQUIRE(equilibria.size() == 2);
    // Perturb the stable origin: trajectories return.
    {
      double x = 200.0, y = 100.0;
      integrate(m, x, y, 50.0, 5000);
      CHECK(std::fabs(x) < 200.0);
      CHECK(std::fabs(y) < 100.0);
    }
    // Perturb the saddle along x: trajectories leave it. The unstable
    // eigenvalue is ~a (e-folding time ~200 years), so the window is long.
    {
      const double x_star = equilibria[1].x;
      double x = x_star * 1.01, y = 0.0;
      integrate(m, x, y, 900.0, 400000, 0.0, x_star * 1.5);
      CHECK(x > x_star * 1.2);  // unstable side diverges
      double x_low = x_star * 0.99, y_low = 0.0;
      integrate(m, x_low, y_low, 1500.0, 400000, x_star * 0.4, 2.0 * x_star);
      CHECK(x_low < x_star * 0.5);  // inner side falls toward the origin
    }
  }
}
