#include "leonet/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leonet {

namespace {

struct RatioAccumulator {
  double sum = 0.0;
  long n = 0;
  void add(double numerator, double denominator) {
    if (!(denominator > 0.0)) return;  // steps with empty denominators are excluded
    sum += numerator / denominator;
    ++n;
  }
  double mean() const { return n > 0 ? sum / n : 0.0; }
  double floored_mean() const { return std::max(0.0, mean()); }
};

}  // namespace

CapacityModel1D extract_coefficients_1d(std::span<const CauseRow> rows) {
  RatioAccumulator acc_a, acc_b;
  for (const CauseRow& row : rows) {
    const double x = row.x_fragments;
    acc_a.add(-row.dF_decay, x * row.dt_years);
    acc_b.add(row.dF_FF, x * x * row.dt_years);
  }
  CapacityModel1D model;
  model.a = acc_a.floored_mean();
  model.b = acc_b.floored_mean();
  return model;
}

CapacityModel2D extract_coefficients_2d(std::span<const CauseRow> rows, double lambda_per_year) {
  RatioAccumulator acc_a, acc_b, acc_c, acc_d, acc_e, acc_f, acc_gamma;
  for (const CauseRow& row : rows) {
    const double x = row.x_fragments;
    const double y = row.y_payloads;
    acc_a.add(-row.dF_decay, x * row.dt_years);
    acc_b.add(row.dF_FF, x * x * row.dt_years);
    acc_c.add(row.dF_PP, y * y * row.dt_years);
    acc_d.add(row.dF_PF, x * y * row.dt_years);
    acc_e.add(-row.dP_PP, y * y * row.dt_years);
    acc_f.add(-row.dP_PF, x * y * row.dt_years);
    acc_gamma.add(-row.dP_PMD, y * row.dt_years);
  }
  CapacityModel2D model;
  model.a = acc_a.floored_mean();
  model.b = acc_b.floored_mean();
  model.c = acc_c.floored_mean();
  model.d = acc_d.floored_mean();
  model.e = acc_e.floored_mean();
  model.f = acc_f.floored_mean();
  model.gamma = acc_gamma.floored_mean();
  model.lambda = lambda_per_year;
  return model;
}

double bernoulli_solution(double a, double b, double x0, double t_years) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("bernoulli_solution: need a, b > 0");
  if (!(x0 > 0.0)) throw std::domain_error("bernoulli_solution: x0 must be positive");
  const double c0 = 1.0 / x0 - b / a;
  const double decay = std::exp(-a * t_years);
  return decay / (b * decay / a + c0);
}

std::optional<double> bernoulli_blowup_time(double a, double b, double x0) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("bernoulli_blowup_time: need a, b > 0");
  if (!(x0 > 0.0)) throw std::domain_error("bernoulli_blowup_time: x0 must be positive");
  const double c0 = 1.0 / x0 - b / a;
  if (!(c0 < 0.0)) return std::nullopt;  // at or below capacity: never diverges
  return -std::log(-c0 * a / b) / a;
}

void capacity_derivatives(const CapacityModel2D& m, double x, double y, double& xdot,
                          double& ydot) {
  xdot = m.b * x * x - m.a * x + m.c * y * y + m.d * x * y;
  ydot = -m.e * y * y - m.f * x * y + m.lambda - m.gamma * y;
}

namespace {

// Non-negative root of e y^2 + (gamma + f x) y - lambda = 0.
// Falls back to the linear solution when e vanishes.
std::optional<double> payload_nullcline(const CapacityModel2D& m, double x) {
  const double linear = m.gamma + m.f * x;
  if (std::fabs(m.e) < 1e-300) {
    if (m.lambda == 0.0) return 0.0;
    if (!(linear > 0.0)) return std::nullopt;
    return m.lambda / linear;
  }
  const double disc = linear * linear + 4.0 * m.e * m.lambda;
  if (disc < 0.0) return std::nullopt;
  const double root = (-linear + std::sqrt(disc)) / (2.0 * m.e);
  return root >= 0.0 ? std::optional<double>(root) : std::nullopt;
}

double fragment_residual(const CapacityModel2D& m, double x) {
  const auto y = payload_nullcline(m, x);
  if (!y) return std::numeric_limits<double>::quiet_NaN();
  return m.b * x * x - m.a * x + m.c * (*y) * (*y) + m.d * x * (*y);
}

struct Jacobian {
  double fx, fy, gx, gy;
};

Jacobian jacobian(const CapacityModel2D& m, double x, double y) {
  return {2.0 * m.b * x - m.a + m.d * y, 2.0 * m.c * y + m.d * x, -m.f * y,
          -2.0 * m.e * y - m.f * x - m.gamma};
}

Stability classify(const Jacobian& j) {
  const double trace = j.fx + j.gy;
  const double det = j.fx * j.gy - j.fy * j.gx;
  if (det < 0.0) return Stability::Saddle;  // real eigenvalues of opposite sign
  if (trace < 0.0) return Stability::Stable;
  return Stability::Unstable;
}

// Damped Newton refinement on the full 2-D system.
bool newton_polish(const CapacityModel2D& m, double& x, double& y, double scale) {
  for (int iter = 0; iter < 80; ++iter) {
    double fx, fy;
    capacity_derivatives(m, x, y, fx, fy);
    if (std::fabs(fx) + std::fabs(fy) < 1e-12 * scale) return true;
    const Jacobian j = jacobian(m, x, y);
    const double det = j.fx * j.gy - j.fy * j.gx;
    if (std::fabs(det) < 1e-300) return false;
    double dx = (-fx * j.gy + fy * j.fy) / det;
    double dy = (-fy * j.fx + fx * j.gx) / det;
    double damp = 1.0;
    for (int back = 0; back < 30; ++back) {
      const double xn = x + damp * dx;
      const double yn = y + damp * dy;
      double fxn, fyn;
      capacity_derivatives(m, std::max(xn, 0.0), std::max(yn, 0.0), fxn, fyn);
      if (std::fabs(fxn) + std::fabs(fyn) <= std::fabs(fx) + std::fabs(fy)) {
        x = std::max(xn, 0.0);
        y = std::max(yn, 0.0);
        break;
      }
      damp *= 0.5;
    }
  }
  double fx, fy;
  capacity_derivatives(m, x, y, fx, fy);
  return std::fabs(fx) + std::fabs(fy) < 1e-6 * scale;
}

}  // namespace

std::vector<Equilibrium> find_equilibria(const CapacityModel2D& m) {
  for (double v : {m.a, m.b, m.c, m.d, m.e, m.f, m.lambda, m.gamma}) {
    if (!std::isfinite(v)) throw std::invalid_argument("find_equilibria: non-finite coefficient");
  }

  // Scan range: past the pure-fragment capacity and the launch balance.
  double x_hi = 10.0;
  if (m.b > 0.0) x_hi = std::max(x_hi, 4.0 * m.a / m.b);
  const auto y0 = payload_nullcline(m, 0.0);
  if (y0 && m.b > 0.0 && m.d > 0.0) x_hi = std::max(x_hi, 4.0 * (m.d * (*y0)) / m.b);
  if (!(x_hi > 0.0) || !std::isfinite(x_hi)) x_hi = 1e7;

  const double scale = std::max({1.0, m.a * x_hi, m.lambda});

  // Candidate roots of the scalar residual along the payload nullcline.
  std::vector<double> candidates;
  const int n_scan = 4000;
  double prev_x = 0.0;
  double prev_r = fragment_residual(m, prev_x);
  if (std::isfinite(prev_r) && std::fabs(prev_r) < 1e-12 * scale) candidates.push_back(0.0);
  for (int i = 1; i <= n_scan; ++i) {
    // Denser sampling near zero (roots at epsilon-scale x occur for high
    // CAM success), linear farther out.
    const double t = static_cast<double>(i) / n_scan;
    const double x = x_hi * t * t;
    const double r = fragment_residual(m, x);
    if (std::isfinite(prev_r) && std::isfinite(r) && prev_r * r < 0.0) {
      // Bisection.
      double lo = prev_x, hi = x, rlo = prev_r;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double rm = fragment_residual(m, mid);
        if (!std::isfinite(rm)) break;
        if (rlo * rm <= 0.0) {
          hi = mid;
        } else {
          lo = mid;
          rlo = rm;
        }
      }
      candidates.push_back(0.5 * (lo + hi));
    } else if (std::isfinite(r) && std::fabs(r) < 1e-14 * scale) {
      candidates.push_back(x);
    }
    prev_x = x;
    prev_r = r;
  }
  // The y-axis equilibrium (x = 0) when c y^2 vanishes (lambda = 0 or c = 0).
  if (const auto y_axis = payload_nullcline(m, 0.0)) {
    if (std::fabs(m.c * (*y_axis) * (*y_axis)) < 1e-12 * std::max(1.0, scale)) {
      candidates.push_back(0.0);
    }
  }

  std::vector<Equilibrium> out;
  for (double x : candidates) {
    const auto y = payload_nullcline(m, x);
    if (!y) continue;
    double xr = x, yr = *y;
    if (!newton_polish(m, xr, yr, scale)) continue;
    if (xr < -1e-9 || yr < -1e-9) continue;
    xr = std::max(xr, 0.0);
    yr = std::max(yr, 0.0);
    bool duplicate = false;
    for (const Equilibrium& prev : out) {
      const double tol = 1e-6 * std::max({1.0, std::fabs(prev.x), std::fabs(prev.y)});
      if (std::fabs(prev.x - xr) < std::max(tol, 1e-3 * x_hi / n_scan) &&
          std::fabs(prev.y - yr) < std::max(tol, 1.0)) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    Equilibrium eq;
    eq.x = xr;
    eq.y = yr;
    double fx, fy;
    capacity_derivatives(m, xr, yr, fx, fy);
    eq.residual = std::fabs(fx) + std::fabs(fy);
    eq.stability = classify(jacobian(m, xr, yr));
    out.push_back(eq);
  }
  std::sort(out.begin(), out.end(), [](const Equilibrium& a, const Equilibrium& b) {
    return a.x < b.x;
  });
  return out;
}

}  // namespace leonet
