#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hindex/distribution.hpp"
#include "hindex/estimation.hpp"
#include "hindex/moments.hpp"
#include "hindex/rng.hpp"
#include "hindex/sample.hpp"

// Deterministic, parallel simulation harness for coverage and variance
// studies. Replication r of sample size n draws from a stream keyed by
// (master_seed, n, r), and per-replication results are reduced in
// replication order, so output is bitwise identical for a fixed seed no
// matter how many workers run.

namespace hindex {

struct study_config {
    std::shared_ptr<const citation_law> law;
    std::string label;                       // family tag + parameters
    std::vector<long long> n_list;
    long long replications = 10000;
    double confidence_level = 0.95;
    std::uint64_t master_seed = 0;
    int jobs = 0;                            // 0 = hardware concurrency
    // Large-sample variance column; defaults to h_n/(1+n*psi(h_n))^2.
    // Studies of a named family override it with the family closed form.
    std::function<double(const integer_distribution&, long long)> asymp_variance;
};

struct study_row {
    std::string label;
    long long n = 0;
    long long h_n = 0;
    double exact_mean_h = 0.0;
    double exact_var_h = 0.0;
    double asymp_var = 0.0;
    double mc_mean_h = 0.0;
    double mc_mean_h_se = 0.0;
    double mc_var_h = 0.0;
    double mc_var_h_se = 0.0;
    double mc_mean_vhat = 0.0;
    double mc_mean_vhat_se = 0.0;
    double coverage = 0.0;
    double coverage_se = 0.0;
    bool degenerate = false; // fewer than 2 replications: no spread columns
};

namespace detail {

struct replication_outcome {
    double h = 0.0;
    double v = 0.0;
    bool covered = false;
};

inline replication_outcome run_replication(const citation_law& law, long long n,
                                           long long h_true, double level,
                                           std::uint64_t master_seed, long long r) {
    auto g = substream(master_seed, static_cast<std::uint64_t>(n),
                       static_cast<std::uint64_t>(r));
    std::vector<double> counts(static_cast<std::size_t>(n));
    for (auto& c : counts) c = law.sample(g);
    const citation_sample sample(std::move(counts));
    const h_index_report rep = confidence_set(sample, level);
    replication_outcome out;
    out.h = static_cast<double>(rep.h_hat);
    out.v = rep.v_hat;
    out.covered = rep.ci_lo <= h_true && h_true <= rep.ci_hi;
    return out;
}

// Runs replications 0..B-1 in parallel, results indexed by replication.
inline std::vector<replication_outcome> run_cell(const citation_law& law, long long n,
                                                 long long h_true, long long B, double level,
                                                 std::uint64_t master_seed, int jobs) {
    if (B < 1) throw std::domain_error("run_cell: replications must be >= 1");
    std::vector<replication_outcome> results(static_cast<std::size_t>(B));
    unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs)
                                : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(
        std::min<long long>(B, static_cast<long long>(workers)));

    std::exception_ptr first_error;
    long long failed_r = -1;
    std::mutex error_mutex;

    const auto worker = [&](unsigned w) {
        for (long long r = static_cast<long long>(w); r < B;
             r += static_cast<long long>(workers)) {
            try {
                results[static_cast<std::size_t>(r)] =
                    run_replication(law, n, h_true, level, master_seed, r);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                    failed_r = r;
                }
                return;
            }
        }
    };

    if (workers == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker, w);
        for (auto& t : pool) t.join();
    }
    if (first_error) {
        try {
            std::rethrow_exception(first_error);
        } catch (const std::exception& e) {
            throw std::runtime_error("replication (n=" + std::to_string(n) +
                                     ", r=" + std::to_string(failed_r) +
                                     ") failed: " + e.what());
        }
    }
    return results;
}

} // namespace detail

// Coverage of the level-gamma confidence set over B replications: the
// single-cell computation run_study is built from.
inline double coverage_check(const citation_law& law, long long n, long long B, double level,
                             std::uint64_t seed, int jobs = 0) {
    const long long h_true = theoretical_h(law, n);
    const auto results = detail::run_cell(law, n, h_true, B, level, seed, jobs);
    long long covered = 0;
    for (const auto& res : results) covered += res.covered ? 1 : 0;
    return static_cast<double>(covered) / static_cast<double>(B);
}

inline std::vector<study_row> run_study(const study_config& config) {
    if (!config.law) throw std::invalid_argument("run_study: no citation law");
    if (config.n_list.empty()) throw std::invalid_argument("run_study: empty n list");
    if (config.replications < 1)
        throw std::invalid_argument("run_study: replications must be >= 1");
    if (!(config.confidence_level > 0.0 && config.confidence_level < 1.0))
        throw std::domain_error("run_study: confidence level outside (0,1)");

    const auto& law = *config.law;
    const auto asymp = config.asymp_variance
                           ? config.asymp_variance
                           : [](const integer_distribution& d, long long n) {
                                 return asymptotic_variance(d, n);
                             };
    const long long B = config.replications;

    std::vector<study_row> rows;
    rows.reserve(config.n_list.size());
    for (const long long n : config.n_list) {
        if (n < 1) throw std::invalid_argument("run_study: sample sizes must be >= 1");
        study_row row;
        row.label = config.label.empty() ? law.label() : config.label;
        row.n = n;
        row.h_n = theoretical_h(law, n);
        row.exact_mean_h = exact_mean(law, n);
        row.exact_var_h = exact_variance(law, n);
        row.asymp_var = asymp(law, n);

        const auto results = detail::run_cell(law, n, row.h_n, B, config.confidence_level,
                                              config.master_seed, config.jobs);

        // reductions in replication order
        double sum_h = 0.0, sum_v = 0.0;
        long long covered = 0;
        for (const auto& res : results) {
            sum_h += res.h;
            sum_v += res.v;
            covered += res.covered ? 1 : 0;
        }
        const double nb = static_cast<double>(B);
        row.mc_mean_h = sum_h / nb;
        row.mc_mean_vhat = sum_v / nb;
        row.coverage = static_cast<double>(covered) / nb;
        row.coverage_se = std::sqrt(row.coverage * (1.0 - row.coverage) / nb);

        if (B < 2) {
            row.degenerate = true;
            rows.push_back(row);
            continue;
        }
        double m2 = 0.0, m4 = 0.0, v2 = 0.0;
        for (const auto& res : results) {
            const double dh = res.h - row.mc_mean_h;
            m2 += dh * dh;
            m4 += dh * dh * dh * dh;
            const double dv = res.v - row.mc_mean_vhat;
            v2 += dv * dv;
        }
        row.mc_var_h = m2 / (nb - 1.0);
        row.mc_mean_h_se = std::sqrt(row.mc_var_h / nb);
        // large-B standard error of the sample variance
        row.mc_var_h_se = std::sqrt(std::max(0.0, m4 / nb - (m2 / nb) * (m2 / nb)) / nb);
        row.mc_mean_vhat_se = std::sqrt(v2 / (nb - 1.0) / nb);
        rows.push_back(row);
    }
    return rows;
}

} // namespace hindex
