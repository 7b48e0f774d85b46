#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <memory>
#include <vector>

#include "hindex/distributions.hpp"
#include "hindex/moments.hpp"
#include "hindex/sample.hpp"
#include "hindex/special.hpp"
#include "support/oracles.hpp"
#include "support/reference_tables.hpp"

using namespace hindex;
using Catch::Approx;

namespace {

double poisson_pmf(double mean, long long k) {
    return std::exp(double(k) * std::log(mean) - mean - std::lgamma(double(k) + 1.0));
}

// chi-square GOF of sampler draws against a pmf at significance 1e-3
void check_sampler_fit(const citation_law& law, long long k_head, std::uint64_t seed,
                       int draws = 100000) {
    splitmix64 g(substream(seed, 77, 0));
    std::vector<double> xs(static_cast<std::size_t>(draws));
    for (auto& x : xs) x = law.sample(g);
    const auto res = oracle::chi_square_gof(
        xs, [&](long long k) { return law.pmf(k); }, k_head);
    const double crit =
        oracle::chi_square_critical(res.dof, 1e-3, normal_quantile(1.0 - 1e-3));
    INFO(law.label() << ": chi2=" << res.statistic << " dof=" << res.dof << " crit=" << crit);
    CHECK(res.statistic < crit);
}

} // namespace

TEST_CASE("discrete stable parameter validation") {
    CHECK_THROWS_AS(discrete_stable(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(discrete_stable(1.2, 1.0), std::domain_error);
    CHECK_THROWS_AS(discrete_stable(0.5, 0.0), std::domain_error);
    CHECK_NOTHROW(discrete_stable(1.0, 3.0));
}

TEST_CASE("discrete stable pmf: Poisson at alpha = 1") {
    const discrete_stable d(1.0, 2.0);
    const auto p = d.pmf_prefix(20);
    for (long long k = 0; k <= 20; ++k)
        CHECK(p[static_cast<std::size_t>(k)] == Approx(poisson_pmf(2.0, k)).margin(1e-12));
}

TEST_CASE("discrete stable pmf head and mass accumulation") {
    const discrete_stable d(0.5, 1.0);
    const auto p = d.pmf_prefix(4000);
    CHECK(p[0] == Approx(std::exp(-1.0)).margin(1e-15));
    double partial = 0.0;
    for (double v : p) {
        CHECK(v > 0.0);
        partial += v;
        CHECK(partial <= 1.0 + 1e-12);
    }
    // tail mass shrinks like K^(-1/2): sanity-check the order
    const double tail_1k = d.survival(1000);
    const double tail_4k = d.survival(4000);
    CHECK(tail_1k < 0.05);
    CHECK(tail_4k < tail_1k);
    CHECK(tail_1k / tail_4k == Approx(2.0).epsilon(0.25)); // (4000/1000)^0.5
}

TEST_CASE("discrete stable survival basics") {
    const discrete_stable d(1.0, 1.0);
    CHECK(d.survival(-1) == 1.0);
    CHECK(d.survival(0) == Approx(1.0 - std::exp(-1.0)).margin(1e-14));
    // study h value through this survival
    const shifted_by_one study(std::make_shared<discrete_stable>(0.25, 1.0));
    CHECK(theoretical_h(study, 30) == 11);
}

TEST_CASE("pmf/survival consistency across laws") {
    const auto check_consistency = [](const integer_distribution& law) {
        double mass = 0.0;
        for (long long j = 0; j <= 1000; ++j) {
            const double psi = law.pmf(j);
            CHECK(psi >= 0.0);
            CHECK(psi == Approx(law.survival(j - 1) - law.survival(j)).margin(1e-12));
            mass += psi;
        }
        CHECK(mass == Approx(1.0 - law.survival(1000)).margin(1e-12));
        double prev = 1.0;
        for (long long j = 0; j <= 200; ++j) {
            const double s = law.survival(j);
            CHECK(s > 0.0);
            CHECK(s <= prev);
            prev = s;
        }
    };
    check_consistency(discrete_stable(0.25, 1.0));
    check_consistency(discrete_stable(0.75, 2.0));
    check_consistency(discretized_weibull(0.1));
    check_consistency(shifted_by_one(std::make_shared<discrete_stable>(0.5, 1.5)));
}

TEST_CASE("discretized Weibull closed forms") {
    const discretized_weibull d(1.0);
    CHECK(d.survival(0) == Approx(std::exp(-1.0)).margin(1e-15));
    CHECK(d.survival(-1) == 1.0);
    CHECK(theoretical_h(discretized_weibull(0.40), 30) == 4);
    for (long long j = 1; j <= 50; ++j) CHECK(discretized_weibull(0.7).pmf(j) > 0.0);
    CHECK(discretized_weibull(0.3).normal_regime());
    CHECK(!discretized_weibull(0.6).normal_regime());
    CHECK_THROWS_AS(discretized_weibull(0.0), std::domain_error);
}

TEST_CASE("discretized Weibull sampler distribution at tau = 1") {
    // P(0) = 1 - e^-1
    const discretized_weibull d(1.0);
    splitmix64 g(substream(5150, 0, 0));
    int zeros = 0;
    const int reps = 100000;
    for (int i = 0; i < reps; ++i)
        if (d.sample(g) == 0.0) ++zeros;
    const double p0 = 1.0 - std::exp(-1.0);
    CHECK(double(zeros) / reps == Approx(p0).margin(4.0 * std::sqrt(p0 * (1 - p0) / reps)));
}

TEST_CASE("poisson sampler") {
    splitmix64 g(substream(31337, 0, 0));
    CHECK(poisson_sample(0.0, g) == 0.0);

    // frequencies vs pmf at mean 5, 4 sigma per cell
    const int reps = 100000;
    std::vector<long long> counts(21, 0);
    for (int i = 0; i < reps; ++i) {
        const double x = poisson_sample(5.0, g);
        if (x <= 20.0) ++counts[static_cast<std::size_t>(x)];
    }
    for (long long k = 0; k <= 20; ++k) {
        const double p = poisson_pmf(5.0, k);
        const double se = std::sqrt(p * (1.0 - p) / reps);
        INFO("k=" << k);
        CHECK(double(counts[static_cast<std::size_t>(k)]) / reps == Approx(p).margin(4.0 * se));
    }

    // CLT band at mean 1e6 over 1000 draws
    double sum = 0.0;
    for (int i = 0; i < 1000; ++i) sum += poisson_sample(1e6, g);
    CHECK(sum / 1000.0 == Approx(1e6).margin(4.0 * 1e3 / std::sqrt(1000.0)));

    CHECK_THROWS_AS(poisson_sample(-1.0, g), std::domain_error);
}

TEST_CASE("stable sampler: Poisson mean at alpha = 1") {
    const discrete_stable d(1.0, 1.5);
    splitmix64 g(substream(8998, 0, 0));
    double sum = 0.0;
    const int reps = 100000;
    for (int i = 0; i < reps; ++i) sum += d.sample(g);
    CHECK(sum / reps == Approx(1.5).margin(0.02));
}

TEST_CASE("samplers fit their pmf at the six study settings") {
    check_sampler_fit(discrete_stable(0.25, 1.0), 40, 1001);
    check_sampler_fit(discrete_stable(0.50, 1.5), 40, 1002);
    check_sampler_fit(discrete_stable(0.75, 2.0), 40, 1003);
    check_sampler_fit(discretized_weibull(0.01), 50, 1004);
    check_sampler_fit(discretized_weibull(0.10), 50, 1005);
    check_sampler_fit(discretized_weibull(0.40), 50, 1006);
    // alpha = 1 reduces to Poisson in distribution
    check_sampler_fit(discrete_stable(1.0, 2.0), 30, 1007);
}

TEST_CASE("stable sampler mean h-index matches the study mean") {
    // study law: shifted; its exact mean at n=30 is 11.31
    const shifted_by_one law(std::make_shared<discrete_stable>(0.25, 1.0));
    splitmix64 g(substream(90210, 0, 0));
    const int reps = 10000;
    double sum = 0.0;
    for (int r = 0; r < reps; ++r) {
        std::vector<double> xs(30);
        for (auto& x : xs) x = law.sample(g);
        sum += double(empirical_h_integer(citation_sample(xs)));
    }
    CHECK(sum / reps == Approx(11.31).margin(0.1));
}

TEST_CASE("weibull sampler mean h-index matches the study mean") {
    const discretized_weibull law(0.01);
    splitmix64 g(substream(90211, 0, 0));
    const int reps = 10000;
    double sum = 0.0;
    for (int r = 0; r < reps; ++r) {
        std::vector<double> xs(30);
        for (auto& x : xs) x = law.sample(g);
        sum += double(empirical_h_integer(citation_sample(xs)));
    }
    CHECK(sum / reps == Approx(10.77).margin(0.1));
}

TEST_CASE("paretian tail index of the stable family") {
    // fitted slope of log S(j) vs log j over [1e3, 1e5] approaches -alpha
    for (double alpha : {0.25, 0.5, 0.75}) {
        const discrete_stable d(alpha, 1.0);
        std::vector<double> lx, ly;
        for (long long j = 1000; j <= 100000; j = j * 5 / 4) {
            lx.push_back(std::log(double(j)));
            ly.push_back(std::log(d.survival(j)));
        }
        const auto m = lx.size();
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < m; ++i) {
            sx += lx[i];
            sy += ly[i];
            sxx += lx[i] * lx[i];
            sxy += lx[i] * ly[i];
        }
        const double slope = (double(m) * sxy - sx * sy) / (double(m) * sxx - sx * sx);
        INFO("alpha=" << alpha << " slope=" << slope);
        CHECK(slope == Approx(-alpha).margin(0.05));
    }
}

TEST_CASE("shifted law wraps its base consistently") {
    const auto base = std::make_shared<discrete_stable>(0.5, 1.5);
    const shifted_by_one law(base);
    CHECK(law.pmf(0) == 0.0);
    for (long long j = 1; j <= 30; ++j) CHECK(law.pmf(j) == base->pmf(j - 1));
    for (long long j = 0; j <= 30; ++j) CHECK(law.survival(j) == base->survival(j - 1));
    CHECK(law.survival(-1) == 1.0);
    splitmix64 g(substream(9001, 0, 0));
    for (int i = 0; i < 100; ++i) CHECK(law.sample(g) >= 1.0);
}
