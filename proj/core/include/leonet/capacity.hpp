#pragma once

#include <optional>
#include <span>
#include <vector>

#include "leonet/engine.hpp"

namespace leonet {

// Mean-field fragment dynamics xdot = -a x + b x^2; the carrying capacity
// a/b is the unstable equilibrium separating decay from runaway growth.
struct CapacityModel1D {
  double a = 0.0;  // decay rate per unit time (years) and object
  double b = 0.0;  // fragment production per unit time and object squared
  double capacity() const { return a / b; }
};

// Two-species mean field over fragments x and payloads y:
//   xdot = b x^2 - a x + c y^2 + d x y
//   ydot = -e y^2 - f x y + lambda - gamma y
struct CapacityModel2D {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double e = 0.0;
  double f = 0.0;
  double lambda = 0.0;     // payloads per year
  double gamma = 0.0;      // disposal rate per payload per year
};

// Coefficients from cause-resolved expected deltas: each one is the
// cause-specific delta divided by the stated population powers and dt,
// averaged over every supplied step with a nonzero denominator (steps from
// several runs and initial populations can be concatenated). Negative
// averages, possible from sampling noise, are floored at zero.
CapacityModel1D extract_coefficients_1d(std::span<const CauseRow> rows);
CapacityModel2D extract_coefficients_2d(std::span<const CauseRow> rows, double lambda_per_year);

// Closed-form solution of the 1-D model, x(t) = e^{-at} / (b e^{-at}/a + C0)
// with C0 = 1/x0 - b/a. Above the capacity the solution blows up at a
// finite time, reported by bernoulli_blowup_time.
double bernoulli_solution(double a, double b, double x0, double t_years);
std::optional<double> bernoulli_blowup_time(double a, double b, double x0);

enum class Stability { Stable, Saddle, Unstable };

struct Equilibrium {
  double x = 0.0;
  double y = 0.0;
  Stability stability = Stability::Stable;
  double residual = 0.0;  // |xdot| + |ydot| at the root
};

// Real non-negative equilibria of the 2-D system. The second equation is
// solved for y as a function of x (quadratic, positive root), substituted
// into the first, and the scalar roots isolated by scanning plus bisection
// and polished by damped Newton on the full system. Classification is by
// the Jacobian eigenvalues. Returns an empty list when no real non-negative
// root exists.
std::vector<Equilibrium> find_equilibria(const CapacityModel2D& model);

// Time derivatives of the 2-D system (used by exports and tests).
void capacity_derivatives(const CapacityModel2D& model, double x, double y, double& xdot,
                          double& ydot);

}  // namespace leonet
