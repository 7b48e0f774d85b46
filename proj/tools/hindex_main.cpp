// hindex: h-index inference and simulation on citation-count data.
//
// Subcommands:
//   compute   per-scholar sample size and empirical h-index
//   ci        per-scholar large-sample confidence sets
//   test      two-scholar homogeneity test
//   moments   theoretical h-index and exact moments for a known law
//   simulate  Monte Carlo coverage/variance study
//   pmf       pmf and survival table of a citation law
//
// Exit codes: 0 success, 2 parse/usage error, 3 domain error,
// 4 degenerate statistic.

#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hindex/hindex.hpp"

namespace {

using namespace hindex;

table_format parse_output_format(const std::string& s) {
    if (s == "text") return table_format::text;
    if (s == "tsv") return table_format::tsv;
    return table_format::json;
}

citation_format resolve_input_format(const std::string& flag, const std::string& path) {
    if (flag == "csv") return citation_format::csv;
    if (flag == "json") return citation_format::json;
    return infer_citation_format(path);
}

citation_sample to_sample(const scholar_record& rec) {
    if (rec.counts.empty())
        throw std::domain_error("scholar '" + rec.id + "' has no papers");
    std::vector<double> counts(rec.counts.begin(), rec.counts.end());
    return citation_sample(std::move(counts));
}

const scholar_record& find_scholar(const std::vector<scholar_record>& records,
                                   const std::string& id) {
    for (const auto& r : records)
        if (r.id == id) return r;
    throw std::domain_error("unknown scholar '" + id + "'");
}

// Common --dist/--alpha/--lambda/--tau block. The discrete stable citation
// model has unit-shifted support {1, 2, ...}: a listed paper carries at
// least one citation. Its pmf at k is the stable series coefficient at k-1.
struct law_options {
    std::string dist;
    std::optional<double> alpha;
    std::optional<double> lambda;
    std::optional<double> tau;

    void attach(CLI::App* cmd) {
        cmd->add_option("--dist", dist, "citation law")
            ->required()
            ->check(CLI::IsMember({"discrete-stable", "discretized-weibull"}));
        cmd->add_option("--alpha", alpha, "stable index in (0,1]");
        cmd->add_option("--lambda", lambda, "stable scale > 0");
        cmd->add_option("--tau", tau, "Weibull shape > 0");
    }

    std::shared_ptr<const citation_law> make() const {
        if (dist == "discrete-stable") {
            if (!alpha || !lambda)
                throw CLI::ValidationError("--dist discrete-stable requires --alpha and --lambda");
            if (tau) throw CLI::ValidationError("--tau does not apply to discrete-stable");
            return std::make_shared<shifted_by_one>(
                std::make_shared<discrete_stable>(*alpha, *lambda));
        }
        if (!tau) throw CLI::ValidationError("--dist discretized-weibull requires --tau");
        if (alpha || lambda)
            throw CLI::ValidationError("--alpha/--lambda do not apply to discretized-weibull");
        auto law = std::make_shared<discretized_weibull>(*tau);
        if (!law->normal_regime())
            std::cerr << "warning: tau >= 0.5: normal-based confidence sets lack "
                         "large-sample backing\n";
        return law;
    }

    std::string label() const {
        if (dist == "discrete-stable")
            return "discrete-stable(" + std::to_string(*alpha) + "," +
                   std::to_string(*lambda) + ")";
        return "discretized-weibull(" + std::to_string(*tau) + ")";
    }

    // Family closed-form large-sample variance column.
    double family_asymp(const integer_distribution& law, long long n) const {
        const long long h = theoretical_h(law, n);
        if (h < 1) return 0.0;
        if (dist == "discrete-stable")
            return pareto_asymptotic_variance(static_cast<double>(h), *alpha);
        return weibull_asymptotic_variance(static_cast<double>(h), *tau, n);
    }
};

int run_compute(const std::string& path, const std::string& in_fmt, table_format out_fmt) {
    const auto records = parse_citation_file(path, resolve_input_format(in_fmt, path));
    report_table table;
    table.columns = {"scholar", "n", "h"};
    for (const auto& rec : records) {
        const auto sample = to_sample(rec);
        table.add_row({rec.id, static_cast<long long>(sample.n()),
                       empirical_h_integer(sample)});
    }
    emit_table(table, out_fmt, std::cout);
    return 0;
}

int run_ci(const std::string& path, const std::string& in_fmt, double level,
           table_format out_fmt) {
    const auto records = parse_citation_file(path, resolve_input_format(in_fmt, path));
    report_table table;
    table.columns = {"scholar", "n", "h", "C_n"};
    for (const auto& rec : records) {
        const auto sample = to_sample(rec);
        const auto rep = confidence_set(sample, level);
        if (rep.h_hat == 0)
            std::cerr << "warning: scholar '" << rec.id
                      << "' has h = 0; confidence set degenerate\n";
        table.add_row({rec.id, rep.n, rep.h_hat, format_confidence_set(rep.ci_lo, rep.ci_hi)});
    }
    emit_table(table, out_fmt, std::cout);
    return 0;
}

int run_test(const std::string& path, const std::string& in_fmt, const std::string& id_a,
             const std::string& id_b, bool one_sided, double level, table_format out_fmt) {
    const auto records = parse_citation_file(path, resolve_input_format(in_fmt, path));
    const auto sample_a = to_sample(find_scholar(records, id_a));
    const auto sample_b = to_sample(find_scholar(records, id_b));
    const auto res = homogeneity_test(sample_a, sample_b, one_sided, level);
    report_table table;
    table.columns = {"a", "b", "n_a", "n_b", "h_a", "h_b", "v_a", "v_b", "t", "p"};
    table.add_row({id_a, id_b, res.first.n, res.second.n, res.first.h_hat, res.second.h_hat,
                   res.first.v_hat, res.second.v_hat, res.t_stat, res.p_value});
    emit_table(table, out_fmt, std::cout);
    return 0;
}

int run_moments(const law_options& opts, long long n, table_format out_fmt) {
    const auto law = opts.make();
    const auto rep = make_moment_report(*law, n);
    if (rep.h_n == 0)
        std::cerr << "warning: n*S(0) < 1: theoretical h-index degenerate at this n\n";
    report_table table;
    table.columns = {"dist",      "n",         "h_n",       "exact_mean",
                     "exact_var", "asymp_var", "family_asymp_var"};
    table.add_row({opts.label(), rep.n, rep.h_n, rep.exact_mean, rep.exact_variance,
                   rep.asymptotic_variance, opts.family_asymp(*law, n)});
    emit_table(table, out_fmt, std::cout);
    return 0;
}

int run_simulate(const law_options& opts, const std::vector<long long>& n_list, long long reps,
                 std::uint64_t seed, double level, int jobs, table_format out_fmt) {
    study_config config;
    config.law = opts.make();
    config.label = opts.label();
    config.n_list = n_list;
    config.replications = reps;
    config.confidence_level = level;
    config.master_seed = seed;
    config.jobs = jobs;
    config.asymp_variance = [&opts](const integer_distribution& law, long long n) {
        return opts.family_asymp(law, n);
    };
    const auto rows = run_study(config);

    report_table table;
    table.columns = {"dist",          "n",        "h_n",           "exact_mean_h",
                     "mc_mean_h",     "mc_mean_h_se", "exact_var_h", "mc_var_h",
                     "mc_var_h_se",   "asymp_var", "mc_mean_vhat", "mc_mean_vhat_se",
                     "coverage",      "coverage_se"};
    for (const auto& row : rows) {
        if (row.degenerate)
            std::cerr << "warning: n=" << row.n
                      << ": single replication; spread columns degenerate\n";
        table.add_row({row.label, row.n, row.h_n, row.exact_mean_h, row.mc_mean_h,
                       row.mc_mean_h_se, row.exact_var_h, row.mc_var_h, row.mc_var_h_se,
                       row.asymp_var, row.mc_mean_vhat, row.mc_mean_vhat_se, row.coverage,
                       row.coverage_se});
    }
    emit_table(table, out_fmt, std::cout);
    return 0;
}

int run_pmf(const law_options& opts, long long k_max, table_format out_fmt) {
    const auto law = opts.make();
    report_table table;
    table.columns = {"k", "pmf", "survival"};
    for (long long k = 0; k <= k_max; ++k)
        table.add_row({k, law->pmf(k), law->survival(k)});
    emit_table(table, out_fmt, std::cout);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hirsch-index inference and simulation on citation counts"};
    app.require_subcommand(1);

    std::string path;
    std::string in_fmt = "auto";
    std::string out_fmt = "text";
    std::string id_a, id_b;
    bool one_sided = false;
    double level = 0.95;
    long long n = 0;
    long long k_max = 0;
    long long reps = 10000;
    std::uint64_t seed = 0;
    int jobs = 0;
    std::vector<long long> n_list = {30, 50, 100, 150, 200};
    law_options law_opts;

    const auto add_common = [&](CLI::App* cmd, bool with_file) {
        if (with_file) {
            cmd->add_option("file", path, "citation file")->required();
            cmd->add_option("--format", in_fmt, "input format (default: by extension)")
                ->check(CLI::IsMember({"csv", "json"}));
        }
        cmd->add_option("--output", out_fmt, "table format")
            ->check(CLI::IsMember({"text", "tsv", "json"}));
    };

    auto* cmd_compute = app.add_subcommand("compute", "per-scholar n and h-index");
    add_common(cmd_compute, true);

    auto* cmd_ci = app.add_subcommand("ci", "per-scholar confidence sets");
    add_common(cmd_ci, true);
    cmd_ci->add_option("--level", level, "confidence level (default 0.95)");

    auto* cmd_test = app.add_subcommand("test", "two-scholar homogeneity test");
    add_common(cmd_test, true);
    cmd_test->add_option("--a", id_a, "first scholar id")->required();
    cmd_test->add_option("--b", id_b, "second scholar id")->required();
    cmd_test->add_flag("--one-sided", one_sided, "upper-tail alternative");
    cmd_test->add_option("--level", level, "confidence level for the per-scholar reports");

    auto* cmd_moments = app.add_subcommand("moments", "theoretical h-index and exact moments");
    add_common(cmd_moments, false);
    law_opts.attach(cmd_moments);
    cmd_moments->add_option("--n", n, "sample size")->required();

    auto* cmd_simulate = app.add_subcommand("simulate", "Monte Carlo coverage study");
    add_common(cmd_simulate, false);
    law_opts.attach(cmd_simulate);
    cmd_simulate->add_option("--n-list", n_list, "sample sizes")->delimiter(',');
    cmd_simulate->add_option("--reps", reps, "replications (default 10000)");
    cmd_simulate->add_option("--seed", seed, "master seed")->required();
    cmd_simulate->add_option("--level", level, "confidence level (default 0.95)");
    cmd_simulate->add_option("--jobs", jobs, "worker threads (0 = auto)")
        ->envname("HINDEX_JOBS");

    auto* cmd_pmf = app.add_subcommand("pmf", "pmf and survival table");
    add_common(cmd_pmf, false);
    law_opts.attach(cmd_pmf);
    cmd_pmf->add_option("--kmax", k_max, "largest support point to print")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // prints help or error text
        return code == 0 ? 0 : 2;
    }

    try {
        const table_format fmt = parse_output_format(out_fmt);
        if (app.got_subcommand(cmd_compute)) return run_compute(path, in_fmt, fmt);
        if (app.got_subcommand(cmd_ci)) return run_ci(path, in_fmt, level, fmt);
        if (app.got_subcommand(cmd_test))
            return run_test(path, in_fmt, id_a, id_b, one_sided, level, fmt);
        if (app.got_subcommand(cmd_moments)) return run_moments(law_opts, n, fmt);
        if (app.got_subcommand(cmd_simulate))
            return run_simulate(law_opts, n_list, reps, seed, level, jobs, fmt);
        if (app.got_subcommand(cmd_pmf)) return run_pmf(law_opts, k_max, fmt);
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const degenerate_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
