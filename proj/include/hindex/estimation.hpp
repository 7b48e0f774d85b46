#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hindex/common.hpp"
#include "hindex/sample.hpp"
#include "hindex/special.hpp"

// Fully nonparametric inference for the theoretical h-index: the plug-in
// variance estimator, large-sample confidence sets, and the two-scholar
// homogeneity test. No tail-model or Paretian-index estimation is involved.

namespace hindex {

// Plug-in estimate of p_{j,n}: binomial tail at the empirical survival
// S_n(j-1) (strict inequality version). Zero for j > n by convention.
inline double plug_in_p(const citation_sample& sample, long long j) {
    if (j < 1) throw std::domain_error("plug_in_p: j must be >= 1");
    if (!sample.integer_valued())
        throw std::invalid_argument("non-integer citation count");
    const auto n = static_cast<long long>(sample.n());
    if (j > n) return 0.0;
    return binomial_tail(n, sample.survival(static_cast<double>(j - 1), false), j);
}

namespace detail {

// V over j = 1..J of the double sum
//   sum p_j(1-p_j) + 2 * sum_{l=2..J} p_l * sum_{j<l} (1-p_j)
// in one pass with a running prefix of (1-p).
inline double plug_in_variance_upto(const citation_sample& sample, long long J) {
    const auto n = static_cast<long long>(sample.n());
    double v = 0.0;
    double prefix = 0.0; // sum of (1 - p_i), i < j
    for (long long j = 1; j <= J; ++j) {
        const double shat = sample.survival(static_cast<double>(j - 1), false);
        const double pj = binomial_tail(n, shat, j);
        v += pj * (1.0 - pj) + 2.0 * pj * prefix;
        prefix += 1.0 - pj;
    }
    return v;
}

} // namespace detail

// Nonparametric variance estimator: the p_{j,n} double sum with plug-in
// p-hats, truncated at J = min(3*H_n, n). Zero when H_n = 0.
inline double variance_estimate(const citation_sample& sample) {
    const long long h = empirical_h_integer(sample); // validates integrality
    if (h == 0) return 0.0;
    const long long J = std::min(3 * h, static_cast<long long>(sample.n()));
    return detail::plug_in_variance_upto(sample, J);
}

// One scholar's inference summary. The confidence set is the consecutive
// integers {ci_lo, ..., ci_hi}.
struct h_index_report {
    long long n = 0;
    long long h_hat = 0;
    double v_hat = 0.0;
    double confidence_level = 0.0;
    long long ci_lo = 0;
    long long ci_hi = 0;
};

namespace detail {
// nearest integer, ties away from zero (llround's contract)
inline long long nearest_integer(double x) { return std::llround(x); }
} // namespace detail

// Large-sample confidence set {[[H - z*sqrt(V)]], ..., [[H + z*sqrt(V)]]}
// with z the 1-gamma/2 normal quantile. The lower endpoint is clamped at 0;
// half-integer ties round away from zero. V = 0 gives the singleton {H}.
inline h_index_report confidence_set(const citation_sample& sample, double level) {
    if (!(level > 0.0 && level < 1.0))
        throw std::domain_error("confidence_set: level outside (0,1)");
    h_index_report r;
    r.n = static_cast<long long>(sample.n());
    r.h_hat = empirical_h_integer(sample);
    r.v_hat = variance_estimate(sample);
    r.confidence_level = level;
    const double z = normal_quantile(1.0 - (1.0 - level) / 2.0);
    const double half_width = z * std::sqrt(r.v_hat);
    r.ci_lo = std::max<long long>(0, detail::nearest_integer(static_cast<double>(r.h_hat) - half_width));
    r.ci_hi = detail::nearest_integer(static_cast<double>(r.h_hat) + half_width);
    return r;
}

struct homogeneity_result {
    double t_stat = 0.0;
    double p_value = 0.0;
    bool one_sided = false;
    h_index_report first;
    h_index_report second;
};

namespace detail {
// T = (h1 - h2)/sqrt(v1 + v2); two-sided p = 2*G(|T|), one-sided upper-tail
// p = G(T).
inline std::pair<double, double> homogeneity_statistic(double h1, double v1, double h2,
                                                       double v2, bool one_sided) {
    const double pooled = v1 + v2;
    if (!(pooled > 0.0)) throw degenerate_error("degenerate variance: test undefined");
    const double t = (h1 - h2) / std::sqrt(pooled);
    const double p = one_sided ? normal_sf(t) : 2.0 * normal_sf(std::fabs(t));
    return {t, p};
}
} // namespace detail

// Homogeneity of two scholars' theoretical h-indexes. The samples may have
// different sizes: the variance estimator is per-scholar and nothing in its
// derivation couples the two n's. one_sided tests the upper-tail alternative
// (first scholar's index exceeds the second's).
inline homogeneity_result homogeneity_test(const citation_sample& first,
                                           const citation_sample& second,
                                           bool one_sided = false, double level = 0.95) {
    homogeneity_result r;
    r.one_sided = one_sided;
    r.first = confidence_set(first, level);
    r.second = confidence_set(second, level);
    const auto [t, p] = detail::homogeneity_statistic(
        static_cast<double>(r.first.h_hat), r.first.v_hat,
        static_cast<double>(r.second.h_hat), r.second.v_hat, one_sided);
    r.t_stat = t;
    r.p_value = p;
    return r;
}

} // namespace hindex
