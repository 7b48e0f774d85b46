#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hindex/distribution.hpp"
#include "hindex/special.hpp"

// Theoretical h-index and exact finite-sample moments of the integer
// empirical h-index for a known citation law, with normal-approximation
// and large-sample variance diagnostics.

namespace hindex {

// Largest j with n*S(j-1) >= j; n*S(j-1) - j is strictly decreasing in j,
// so a doubling phase followed by binary search finds it in O(log h)
// survival evaluations. Returns 0 when n*S(0) < 1 (degenerate: even one
// citation is too rare at this n; callers treat 0 as the warning flag).
inline long long theoretical_h(const integer_distribution& dist, long long n) {
    if (n < 1) throw std::domain_error("theoretical_h: n must be positive");
    const auto feasible = [&](long long j) {
        return static_cast<double>(n) * dist.survival(j - 1) >= static_cast<double>(j);
    };
    if (!feasible(1)) return 0;
    long long lo = 1;        // feasible
    long long hi = 2;        // candidate upper end
    while (hi <= n && feasible(hi)) {
        lo = hi;
        hi *= 2;
    }
    if (hi > n + 1) hi = n + 1; // feasible(n+1) is impossible since S <= 1
    // invariant: feasible(lo), !feasible(hi)
    while (hi - lo > 1) {
        const long long mid = lo + (hi - lo) / 2;
        if (feasible(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

// p_{j,n} = P(at least j of n papers have at least j citations)
//         = P(Binomial(n, S(j-1)) >= j); zero for j > n.
inline double p_jn(const integer_distribution& dist, long long n, long long j) {
    if (j < 1) throw std::domain_error("p_jn: j must be >= 1");
    if (j > n) return 0.0;
    return binomial_tail(n, dist.survival(j - 1), j);
}

// All p_{j,n}, j = 1..n. The tail terms decay super-polynomially past 2*h_n,
// so summation stops once p < 1e-15 there; remaining entries stay zero.
// The cutoff is validated against full summation in the test suite.
inline std::vector<double> h_tail_probabilities(const integer_distribution& dist, long long n) {
    const long long h = theoretical_h(dist, n);
    std::vector<double> p(static_cast<std::size_t>(n), 0.0);
    for (long long j = 1; j <= n; ++j) {
        const double pj = binomial_tail(n, dist.survival(j - 1), j);
        p[static_cast<std::size_t>(j - 1)] = pj;
        if (pj < 1e-15 && j > 2 * h) break;
    }
    return p;
}

// E[H~_n] = sum_j p_{j,n}. Summed smallest-first (p is nonincreasing).
inline double exact_mean(const integer_distribution& dist, long long n) {
    const auto p = h_tail_probabilities(dist, n);
    double sum = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) sum += *it;
    return sum;
}

// Var[H~_n] = sum_j r_{j,n} (1 - p_{j,n}) with
// r_{j,n} = p_{j,n} + 2 * sum_{l>j} p_{l,n}; one suffix pass.
inline double exact_variance(const integer_distribution& dist, long long n) {
    const auto p = h_tail_probabilities(dist, n);
    double var = 0.0;
    double suffix = 0.0; // sum of p_l for l > j
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        const double pj = *it;
        var += (pj + 2.0 * suffix) * (1.0 - pj);
        suffix += pj;
    }
    return var;
}

struct normal_tail_approx {
    double approx; // G(x_jn)
    double x_jn;
    double v_jn;
};

// Normal approximation to p_{j,n}: G((j - n*S(j-1)) / v) with
// v^2 = n*S(j-1)(1 - S(j-1)). The Berry-Esseen-type constant of the
// underlying bound is existential and is not evaluated here.
inline normal_tail_approx normal_approx_p(const integer_distribution& dist, long long n,
                                          long long j) {
    if (j < 1 || j > n) throw std::domain_error("normal_approx_p: j outside [1, n]");
    const double s = dist.survival(j - 1);
    if (!(s > 0.0 && s < 1.0)) throw std::domain_error("degenerate Bernoulli");
    const double v = std::sqrt(static_cast<double>(n) * s * (1.0 - s));
    const double x = (static_cast<double>(j) - static_cast<double>(n) * s) / v;
    return {normal_sf(x), x, v};
}

// Large-sample variance equivalent h_n / (1 + n*psi(h_n))^2.
inline double asymptotic_variance(const integer_distribution& dist, long long n) {
    const long long h = theoretical_h(dist, n);
    if (h < 1)
        throw std::domain_error("asymptotic_variance: degenerate h-index (n*S(0) < 1)");
    const double denom = 1.0 + static_cast<double>(n) * dist.pmf(h);
    return static_cast<double>(h) / (denom * denom);
}

// Pareto-type family closed form: h / (1 + alpha)^2.
inline double pareto_asymptotic_variance(double h, double alpha) {
    if (!(h > 0.0)) throw std::domain_error("pareto_asymptotic_variance: h must be positive");
    if (!(alpha >= 0.0)) throw std::domain_error("pareto_asymptotic_variance: alpha must be >= 0");
    const double denom = 1.0 + alpha;
    return h / (denom * denom);
}

// Weibull-type family closed form: h / (1 + tau*log(n/h))^2.
inline double weibull_asymptotic_variance(double h, double tau, long long n) {
    if (!(h > 0.0 && h <= static_cast<double>(n)))
        throw std::domain_error("weibull_asymptotic_variance: need 0 < h <= n");
    const double denom = 1.0 + tau * std::log(static_cast<double>(n) / h);
    return h / (denom * denom);
}

struct condition_diagnostics {
    // sqrt(n) * psi(n) / S(n) for n = 1..n_max; -> 0 iff the variance of the
    // empirical h-index diverges (local-smoothness condition).
    std::vector<double> ratio_smoothness;
    // sup over j in [n - M*sqrt(n), n + M*sqrt(n)] of |psi(j)/psi(n) - 1|;
    // -> 0 under the slightly stronger condition backing estimator
    // consistency.
    std::vector<double> sup_local_flatness;
};

inline condition_diagnostics diagnose_conditions(const integer_distribution& dist,
                                                 long long n_max, double window = 1.0) {
    if (n_max < 1) throw std::domain_error("diagnose_conditions: n_max must be >= 1");
    condition_diagnostics out;
    out.ratio_smoothness.reserve(static_cast<std::size_t>(n_max));
    out.sup_local_flatness.reserve(static_cast<std::size_t>(n_max));
    for (long long n = 1; n <= n_max; ++n) {
        const double psi_n = dist.pmf(n);
        const double s_n = dist.survival(n);
        out.ratio_smoothness.push_back(
            s_n > 0.0 ? std::sqrt(static_cast<double>(n)) * psi_n / s_n
                      : std::numeric_limits<double>::infinity());
        if (psi_n <= 0.0) {
            out.sup_local_flatness.push_back(std::numeric_limits<double>::infinity());
            continue;
        }
        const double half = window * std::sqrt(static_cast<double>(n));
        const long long lo = std::max<long long>(0, static_cast<long long>(std::ceil(n - half)));
        const long long hi = static_cast<long long>(std::floor(n + half));
        double sup = 0.0;
        for (long long j = lo; j <= hi; ++j)
            sup = std::max(sup, std::fabs(dist.pmf(j) / psi_n - 1.0));
        out.sup_local_flatness.push_back(sup);
    }
    return out;
}

// Exact and large-sample summary for one (law, n) pair.
struct moment_report {
    long long n = 0;
    long long h_n = 0;
    double exact_mean = 0.0;
    double exact_variance = 0.0;
    double asymptotic_variance = 0.0;
};

inline moment_report make_moment_report(const integer_distribution& dist, long long n) {
    moment_report r;
    r.n = n;
    r.h_n = theoretical_h(dist, n);
    r.exact_mean = exact_mean(dist, n);
    r.exact_variance = exact_variance(dist, n);
    r.asymptotic_variance = r.h_n >= 1 ? asymptotic_variance(dist, n) : 0.0;
    return r;
}

} // namespace hindex
