#pragma once

#include <array>
#include <vector>

#include "leonet/rng.hpp"

namespace leonet {

// Gaussian mixture over up to 3 dimensions, fitted by expectation
// maximization with restarts. Dimensions beyond |dim| are ignored.
using GmmPoint = std::array<double, 3>;

struct GmmComponent {
  double weight = 1.0;
  GmmPoint mean{};
  std::array<double, 9> cov{};  // row-major dim x dim
};

struct GmmFitOptions {
  int max_iterations = 500;
  double tolerance = 1e-8;  // change in per-sample log-likelihood
  int restarts = 4;
  double covariance_floor = 1e-9;  // relative to the data variance scale
};

class Gmm {
 public:
  Gmm() = default;
  Gmm(int dim, std::vector<GmmComponent> components);

  int dim() const { return dim_; }
  const std::vector<GmmComponent>& components() const { return components_; }
  double log_likelihood() const { return log_likelihood_; }

  double log_pdf(const GmmPoint& x) const;
  GmmPoint sample(Rng& rng) const;

  // EM fit; requires samples.size() >= k. Deterministic under a fixed rng.
  static Gmm fit(const std::vector<GmmPoint>& samples, int dim, int k, Rng& rng,
                 const GmmFitOptions& options = {});

 private:
  int dim_ = 0;
  std::vector<GmmComponent> components_;
  double log_likelihood_ = 0.0;

  friend struct GmmFitter;
};

}  // namespace leonet
