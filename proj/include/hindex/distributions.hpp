#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hindex/distribution.hpp"
#include "hindex/rng.hpp"

// Concrete heavy-tailed citation laws: the discrete stable family (pgf
// exp(-lambda*(1-s)^alpha)) and the discretized Weibull family
// (S(j) = exp(-(j+1)^tau)), plus the Poisson sampler both need.

namespace hindex {

// Exact Poisson draw. Sequential inversion below mean 30; Hormann's
// transformed rejection with squeeze (PTRS) above. Returned as an
// integral-valued double: the stable mixture feeds means far beyond 2^63.
inline double poisson_sample(double mean, splitmix64& g) {
    if (!(mean >= 0.0)) throw std::domain_error("poisson_sample: negative mean");
    if (mean == 0.0) return 0.0;
    if (mean < 30.0) {
        double p = std::exp(-mean);
        double cum = p;
        const double u = uniform01(g);
        double k = 0.0;
        while (u > cum) {
            k += 1.0;
            p *= mean / k;
            cum += p;
            if (p < 1e-300) break; // cum has saturated below u
        }
        return k;
    }
    const double slam = std::sqrt(mean);
    const double llam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = uniform01(g) - 0.5;
        const double v = uniform01(g);
        const double us = 0.5 - std::fabs(u);
        const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= vr) return k;
        if (k < 0.0 || (us < 0.013 && v > us)) continue;
        const double log_accept = std::log(v) + std::log(inv_alpha) -
                                  std::log(a / (us * us) + b);
        if (log_accept <= k * llam - mean - std::lgamma(k + 1.0)) return k;
    }
}

namespace detail {

// log of Zolotarev's function A(u) on (0, pi):
//   A(u) = sin(alpha*u)^(alpha/(1-alpha)) * sin((1-alpha)*u) / sin(u)^(1/(1-alpha)).
// Kept in log space; A underflows in doubles as alpha -> 1.
inline double log_zolotarev_a(double u, double alpha) {
    const double om = 1.0 - alpha;
    return (alpha / om) * std::log(std::sin(alpha * u)) + std::log(std::sin(om * u)) -
           (1.0 / om) * std::log(std::sin(u));
}

// Positive stable variate with Laplace transform exp(-t^alpha), alpha in (0,1),
// via Kanter's representation S = (A(U)/E)^((1-alpha)/alpha).
inline double positive_stable_sample(double alpha, splitmix64& g) {
    const double u = pi * uniform01(g); // open (0, pi)
    const double e = exponential(g);
    const double log_s = ((1.0 - alpha) / alpha) * (log_zolotarev_a(u, alpha) - std::log(e));
    return std::exp(log_s);
}

} // namespace detail

// Discrete stable law with pgf exp(-lambda*(1-s)^alpha), alpha in (0,1],
// lambda > 0. Paretian of order alpha for alpha < 1; Poisson(lambda) at
// alpha = 1.
//
// The pmf comes from exponentiating the power series -lambda*(1-s)^alpha:
// with a_0 = -lambda and a_j = lambda*alpha*(1-alpha)...(j-1-alpha)/j! >= 0,
// b_0 = exp(a_0) and k*b_k = sum_{j<=k} j*a_j*b_{k-j}. Every summand is
// nonnegative, so the recurrence does not cancel. Sampling uses the exact
// mixture representation Poisson(lambda^(1/alpha) * S_alpha): pmf inversion
// would need ~10^8 table entries at alpha = 0.25 for percent-level tail
// accuracy, while the mixture is exact at O(1) cost. A goodness-of-fit test
// against the series pmf guards both code paths.
class discrete_stable final : public citation_law {
public:
    discrete_stable(double alpha, double lambda) : alpha_(alpha), lambda_(lambda) {
        if (!(alpha > 0.0 && alpha <= 1.0))
            throw std::domain_error("discrete_stable: alpha outside (0,1]");
        if (!(lambda > 0.0)) throw std::domain_error("discrete_stable: lambda must be positive");
        series_.push_back(-lambda_);                  // a_0, unused by the sum
        pmf_.push_back(std::exp(-lambda_));           // b_0 = g(0)
        cdf_.push_back(pmf_[0]);
    }

    double alpha() const { return alpha_; }
    double lambda() const { return lambda_; }

    // pmf values p_0..p_{k_max}.
    std::vector<double> pmf_prefix(long long k_max) const {
        if (k_max < 0) throw std::domain_error("pmf_prefix: k_max must be >= 0");
        std::lock_guard<std::mutex> lock(mutex_);
        extend(static_cast<std::size_t>(k_max));
        return std::vector<double>(pmf_.begin(), pmf_.begin() + k_max + 1);
    }

    double survival(long long j) const override {
        if (j < 0) return 1.0;
        std::lock_guard<std::mutex> lock(mutex_);
        extend(static_cast<std::size_t>(j));
        return 1.0 - cdf_[static_cast<std::size_t>(j)];
    }

    double pmf(long long j) const override {
        if (j < 0) return 0.0;
        std::lock_guard<std::mutex> lock(mutex_);
        extend(static_cast<std::size_t>(j));
        return pmf_[static_cast<std::size_t>(j)];
    }

    double sample(splitmix64& g) const override {
        if (alpha_ == 1.0) return poisson_sample(lambda_, g);
        const double s = detail::positive_stable_sample(alpha_, g);
        return poisson_sample(std::pow(lambda_, 1.0 / alpha_) * s, g);
    }

    std::string label() const override {
        return "discrete-stable(alpha=" + std::to_string(alpha_) +
               ", lambda=" + std::to_string(lambda_) + ")";
    }

private:
    // requires mutex_ held
    void extend(std::size_t k) const {
        while (pmf_.size() <= k) {
            const std::size_t m = pmf_.size();
            // a_m by the multiplicative recurrence on binom(alpha, m)
            if (series_.size() <= m) {
                if (m == 1)
                    series_.push_back(lambda_ * alpha_);
                else
                    series_.push_back(series_[m - 1] *
                                      (static_cast<double>(m - 1) - alpha_) /
                                      static_cast<double>(m));
            }
            double sum = 0.0;
            for (std::size_t j = 1; j <= m; ++j)
                sum += static_cast<double>(j) * series_[j] * pmf_[m - j];
            pmf_.push_back(sum / static_cast<double>(m));
            // compensated prefix sum keeps survival consistent to ~1e-15
            const double y = pmf_[m] - cdf_comp_;
            const double t = cdf_.back() + y;
            cdf_comp_ = (t - cdf_.back()) - y;
            cdf_.push_back(t);
        }
    }

    double alpha_;
    double lambda_;
    mutable std::mutex mutex_;
    mutable std::vector<double> series_; // a_j
    mutable std::vector<double> pmf_;    // b_k
    mutable std::vector<double> cdf_;    // prefix sums of b
    mutable double cdf_comp_ = 0.0;      // Kahan carry
};

// Law of floor(W) for Weibull W: S(j) = exp(-(j+1)^tau), tau > 0.
// Large-sample normality of the empirical h-index is only backed for
// tau < 1/2; normal_regime() reports that without enforcing it.
class discretized_weibull final : public citation_law {
public:
    explicit discretized_weibull(double tau) : tau_(tau) {
        if (!(tau > 0.0)) throw std::domain_error("discretized_weibull: tau must be positive");
    }

    double tau() const { return tau_; }
    bool normal_regime() const { return tau_ < 0.5; }

    double survival(long long j) const override {
        if (j < 0) return 1.0;
        return std::exp(-std::pow(static_cast<double>(j) + 1.0, tau_));
    }

    // floor(E^(1/tau)) has exactly the pmf exp(-k^tau) - exp(-(k+1)^tau).
    double sample(splitmix64& g) const override {
        return std::floor(std::pow(exponential(g), 1.0 / tau_));
    }

    std::string label() const override {
        return "discretized-weibull(tau=" + std::to_string(tau_) + ")";
    }

private:
    double tau_;
};

// The same law with every count moved up by one: survival'(j) = survival(j-1).
class shifted_by_one final : public citation_law {
public:
    explicit shifted_by_one(std::shared_ptr<const citation_law> base)
        : base_(std::move(base)) {
        if (!base_) throw std::invalid_argument("shifted_by_one: null base law");
    }

    double survival(long long j) const override { return base_->survival(j - 1); }

    double pmf(long long j) const override { return j < 1 ? 0.0 : base_->pmf(j - 1); }

    double sample(splitmix64& g) const override { return base_->sample(g) + 1.0; }

    std::string label() const override { return base_->label() + "+1"; }

    const citation_law& base() const { return *base_; }

private:
    std::shared_ptr<const citation_law> base_;
};

} // namespace hindex
