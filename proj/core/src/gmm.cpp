#include "leonet/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "leonet/constants.hpp"

namespace leonet {

namespace {

// Cholesky factor of a dim x dim symmetric matrix; returns false when the
// matrix is not positive definite.
bool cholesky(const std::array<double, 9>& cov, int dim, std::array<double, 9>& lower) {
  lower.fill(0.0);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j <= i; ++j) {
      double sum = cov[static_cast<std::size_t>(i) * 3 + j];
      for (int k = 0; k < j; ++k) {
        sum -= lower[static_cast<std::size_t>(i) * 3 + k] * lower[static_cast<std::size_t>(j) * 3 + k];
      }
      if (i == j) {
        if (sum <= 0.0) return false;
        lower[static_cast<std::size_t>(i) * 3 + j] = std::sqrt(sum);
      } else {
        lower[static_cast<std::size_t>(i) * 3 + j] = sum / lower[static_cast<std::size_t>(j) * 3 + j];
      }
    }
  }
  return true;
}

double component_log_pdf(const GmmComponent& c, int dim, const GmmPoint& x) {
  std::array<double, 9> lower;
  std::array<double, 9> cov = c.cov;
  double jitter = 0.0;
  while (!cholesky(cov, dim, lower)) {
    jitter = jitter == 0.0 ? 1e-12 : jitter * 10.0;
    for (int i = 0; i < dim; ++i) cov[static_cast<std::size_t>(i) * 3 + i] += jitter;
    if (jitter > 1e6) throw std::runtime_error("gmm: covariance not factorizable");
  }
  // Solve L y = (x - mean), accumulate quadratic form and log-det.
  double quad = 0.0, logdet = 0.0;
  std::array<double, 3> y{};
  for (int i = 0; i < dim; ++i) {
    double v = x[static_cast<std::size_t>(i)] - c.mean[static_cast<std::size_t>(i)];
    for (int k = 0; k < i; ++k) v -= lower[static_cast<std::size_t>(i) * 3 + k] * y[static_cast<std::size_t>(k)];
    const double lii = lower[static_cast<std::size_t>(i) * 3 + i];
    y[static_cast<std::size_t>(i)] = v / lii;
    quad += y[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
    logdet += 2.0 * std::log(lii);
  }
  return -0.5 * (dim * std::log(2.0 * kPi) + logdet + quad);
}

}  // namespace

Gmm::Gmm(int dim, std::vector<GmmComponent> components)
    : dim_(dim), components_(std::move(components)) {}

double Gmm::log_pdf(const GmmPoint& x) const {
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> terms;
  terms.reserve(components_.size());
  for (const GmmComponent& c : components_) {
    const double t = std::log(c.weight) + component_log_pdf(c, dim_, x);
    terms.push_back(t);
    best = std::max(best, t);
  }
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - best);
  return best + std::log(sum);
}

GmmPoint Gmm::sample(Rng& rng) const {
  double u = rng.uniform();
  std::size_t pick = components_.size() - 1;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    u -= components_[i].weight;
    if (u <= 0.0) {
      pick = i;
      break;
    }
  }
  const GmmComponent& c = components_[pick];
  std::array<double, 9> lower;
  std::array<double, 9> cov = c.cov;
  double jitter = 0.0;
  while (!cholesky(cov, dim_, lower)) {
    jitter = jitter == 0.0 ? 1e-12 : jitter * 10.0;
    for (int i = 0; i < dim_; ++i) cov[static_cast<std::size_t>(i) * 3 + i] += jitter;
  }
  GmmPoint z{};
  for (int i = 0; i < dim_; ++i) z[static_cast<std::size_t>(i)] = rng.normal();
  GmmPoint x = c.mean;
  for (int i = 0; i < dim_; ++i) {
    for (int k = 0; k <= i; ++k) {
      x[static_cast<std::size_t>(i)] += lower[static_cast<std::size_t>(i) * 3 + k] * z[static_cast<std::size_t>(k)];
    }
  }
  return x;
}

struct GmmFitter {
  static Gmm run(const std::vector<GmmPoint>& samples, int dim, int k, Rng& rng,
                 const GmmFitOptions& opt) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("gmm: dim must be 1..3");
    if (k < 1 || k > 64) throw std::invalid_argument("gmm: k must be in 1..64");
    if (samples.size() < static_cast<std::size_t>(k)) {
      throw std::invalid_argument("gmm: need at least k samples");
    }

    // Data scale for the covariance floor.
    GmmPoint mean{};
    for (const auto& s : samples) {
      for (int d = 0; d < dim; ++d) mean[static_cast<std::size_t>(d)] += s[static_cast<std::size_t>(d)];
    }
    for (int d = 0; d < dim; ++d) mean[static_cast<std::size_t>(d)] /= static_cast<double>(samples.size());
    double var_scale = 0.0;
    for (const auto& s : samples) {
      for (int d = 0; d < dim; ++d) {
        const double r = s[static_cast<std::size_t>(d)] - mean[static_cast<std::size_t>(d)];
        var_scale += r * r;
      }
    }
    var_scale /= static_cast<double>(samples.size()) * dim;
    const double floor = std::max(opt.covariance_floor * var_scale, 1e-300);

    Gmm best;
    double best_ll = -std::numeric_limits<double>::infinity();
    for (int restart = 0; restart < std::max(1, opt.restarts); ++restart) {
      Gmm model = fit_once(samples, dim, k, rng, opt, floor);
      if (model.log_likelihood() > best_ll) {
        best_ll = model.log_likelihood();
        best = model;
      }
    }
    return best;
  }

  static Gmm fit_once(const std::vector<GmmPoint>& samples, int dim, int k, Rng& rng,
                      const GmmFitOptions& opt, double floor) {
    const std::size_t n = samples.size();

    // Initialize means on distinct random samples, shared spherical spread.
    std::vector<GmmComponent> comps(static_cast<std::size_t>(k));
    std::vector<std::size_t> picks;
    while (picks.size() < static_cast<std::size_t>(k)) {
      const std::size_t cand = rng.uniform_index(n);
      if (std::find(picks.begin(), picks.end(), cand) == picks.end()) picks.push_back(cand);
    }
    GmmPoint mean{};
    std::array<double, 3> var{};
    for (const auto& s : samples) {
      for (int d = 0; d < dim; ++d) mean[static_cast<std::size_t>(d)] += s[static_cast<std::size_t>(d)];
    }
    for (int d = 0; d < dim; ++d) mean[static_cast<std::size_t>(d)] /= static_cast<double>(n);
    for (const auto& s : samples) {
      for (int d = 0; d < dim; ++d) {
        const double r = s[static_cast<std::size_t>(d)] - mean[static_cast<std::size_t>(d)];
        var[static_cast<std::size_t>(d)] += r * r / static_cast<double>(n);
      }
    }
    for (int c = 0; c < k; ++c) {
      comps[static_cast<std::size_t>(c)].weight = 1.0 / k;
      comps[static_cast<std::size_t>(c)].mean = samples[picks[static_cast<std::size_t>(c)]];
      comps[static_cast<std::size_t>(c)].cov.fill(0.0);
      for (int d = 0; d < dim; ++d) {
        comps[static_cast<std::size_t>(c)].cov[static_cast<std::size_t>(d) * 3 + d] =
            std::max(var[static_cast<std::size_t>(d)], floor);
      }
    }

    std::vector<double> resp(n * static_cast<std::size_t>(k));
    double prev_ll = -std::numeric_limits<double>::infinity();
    double ll = prev_ll;
    for (int iter = 0; iter < opt.max_iterations; ++iter) {
      // E step.
      ll = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double best = -std::numeric_limits<double>::infinity();
        std::array<double, 64> logp;  // k is small in practice
        for (int c = 0; c < k; ++c) {
          const GmmComponent& comp = comps[static_cast<std::size_t>(c)];
          logp[static_cast<std::size_t>(c)] =
              std::log(std::max(comp.weight, 1e-300)) + component_log_pdf(comp, dim, samples[i]);
          best = std::max(best, logp[static_cast<std::size_t>(c)]);
        }
        double denom = 0.0;
        for (int c = 0; c < k; ++c) denom += std::exp(logp[static_cast<std::size_t>(c)] - best);
        for (int c = 0; c < k; ++c) {
          resp[i * static_cast<std::size_t>(k) + static_cast<std::size_t>(c)] =
              std::exp(logp[static_cast<std::size_t>(c)] - best) / denom;
        }
        ll += best + std::log(denom);
      }

      // M step (maximum-likelihood covariance, i.e. divide by Nk).
      for (int c = 0; c < k; ++c) {
        double nk = 0.0;
        GmmPoint mu{};
        for (std::size_t i = 0; i < n; ++i) {
          const double r = resp[i * static_cast<std::size_t>(k) + static_cast<std::size_t>(c)];
          nk += r;
          for (int d = 0; d < dim; ++d) {
            mu[static_cast<std::size_t>(d)] += r * samples[i][static_cast<std::size_t>(d)];
          }
        }
        GmmComponent& comp = comps[static_cast<std::size_t>(c)];
        if (nk < 1e-10) {
          // Dead component: reseed on a random sample.
          comp.mean = samples[rng.uniform_index(n)];
          comp.weight = 1.0 / n;
          continue;
        }
        for (int d = 0; d < dim; ++d) mu[static_cast<std::size_t>(d)] /= nk;
        std::array<double, 9> cov{};
        for (std::size_t i = 0; i < n; ++i) {
          const double r = resp[i * static_cast<std::size_t>(k) + static_cast<std::size_t>(c)];
          for (int d0 = 0; d0 < dim; ++d0) {
            const double e0 = samples[i][static_cast<std::size_t>(d0)] - mu[static_cast<std::size_t>(d0)];
            for (int d1 = 0; d1 <= d0; ++d1) {
              const double e1 = samples[i][static_cast<std::size_t>(d1)] - mu[static_cast<std::size_t>(d1)];
              cov[static_cast<std::size_t>(d0) * 3 + d1] += r * e0 * e1;
            }
          }
        }
        for (int d0 = 0; d0 < dim; ++d0) {
          for (int d1 = 0; d1 <= d0; ++d1) {
            cov[static_cast<std::size_t>(d0) * 3 + d1] /= nk;
            cov[static_cast<std::size_t>(d1) * 3 + d0] = cov[static_cast<std::size_t>(d0) * 3 + d1];
          }
          cov[static_cast<std::size_t>(d0) * 3 + d0] =
              std::max(cov[static_cast<std::size_t>(d0) * 3 + d0], floor);
        }
        comp.mean = mu;
        comp.cov = cov;
        comp.weight = nk / static_cast<double>(n);
      }

      if (std::fabs(ll - prev_ll) / static_cast<double>(n) < opt.tolerance) break;
      prev_ll = ll;
    }

    Gmm out(dim, comps);
    out.log_likelihood_ = ll;
    return out;
  }
};

Gmm Gmm::fit(const std::vector<GmmPoint>& samples, int dim, int k, Rng& rng,
             const GmmFitOptions& options) {
  return GmmFitter::run(samples, dim, k, rng, options);
}

}  // namespace leonet
