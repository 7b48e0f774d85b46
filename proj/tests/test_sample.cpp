#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "hindex/rng.hpp"
#include "hindex/sample.hpp"
#include "support/oracles.hpp"

using namespace hindex;
using Catch::Approx;

TEST_CASE("citation_sample validation") {
    CHECK_THROWS_WITH(citation_sample({}), "empty sample");
    CHECK_THROWS_AS(citation_sample({1.0, -2.0}), std::invalid_argument);
    CHECK_NOTHROW(citation_sample({0.0}));
}

TEST_CASE("empirical_h on the defining examples") {
    CHECK(empirical_h(citation_sample({5, 4, 3, 2, 1})) == 3.0);
    CHECK(empirical_h(citation_sample({0, 0, 0, 0})) == 0.0);
    CHECK(empirical_h(citation_sample({3.7, 3.7, 3.7})) == 3.0);
}

TEST_CASE("empirical_h_integer on the defining examples") {
    CHECK(empirical_h_integer(citation_sample({10, 8, 5, 4, 3})) == 4);
    CHECK(empirical_h_integer(citation_sample({1})) == 1);
    CHECK(empirical_h_integer(citation_sample({0, 7})) == 1);
    CHECK_THROWS_WITH(empirical_h_integer(citation_sample({1.5, 2.0})),
                      "non-integer citation count");
}

TEST_CASE("empirical survival step function") {
    const citation_sample s({2, 2, 5});
    CHECK(empirical_survival(s, 2.0, true) == 1.0);
    CHECK(empirical_survival(s, 2.0, false) == Approx(1.0 / 3.0));
    CHECK(empirical_survival(citation_sample({0, 0}), 0.0, false) == 0.0);
    // monotone, bracketed, closed >= open
    const citation_sample t({0, 1, 1, 3, 7});
    double prev_open = 1.0, prev_closed = 1.0;
    for (double x = 0.0; x <= 8.0; x += 0.25) {
        const double open = t.survival(x, false);
        const double closed = t.survival(x, true);
        CHECK(open <= closed);
        CHECK(open <= prev_open);
        CHECK(closed <= prev_closed);
        prev_open = open;
        prev_closed = closed;
    }
    CHECK(t.survival(0.0, true) == 1.0);
}

TEST_CASE("order-statistic formula equals the supremum, exhaustively") {
    // every multiset of size <= 6 with counts in {0..6}; h is permutation
    // invariant so multisets suffice
    for (int n = 1; n <= 6; ++n) {
        std::vector<int> idx(static_cast<std::size_t>(n), 0);
        for (;;) {
            std::vector<double> counts(idx.begin(), idx.end());
            const citation_sample s(counts);
            CHECK(empirical_h(s) == oracle::empirical_h_bruteforce(counts, 50));
            CHECK(empirical_h_integer(s) == oracle::integer_h_bruteforce(counts));
            int pos = 0;
            while (pos < n) {
                // nondecreasing tuples enumerate multisets once
                if (++idx[static_cast<std::size_t>(pos)] <= 6 &&
                    (pos + 1 == n || idx[static_cast<std::size_t>(pos)] <=
                                         idx[static_cast<std::size_t>(pos + 1)]))
                    break;
                ++pos;
            }
            if (pos == n) break;
            for (int q = 0; q < pos; ++q)
                idx[static_cast<std::size_t>(q)] = 0;
        }
    }
}

TEST_CASE("order-statistic formula equals the supremum on random real samples") {
    splitmix64 g(substream(20240811, 1, 0));
    for (int rep = 0; rep < 500; ++rep) {
        const int n = 1 + static_cast<int>(g() % 12);
        std::vector<double> counts(static_cast<std::size_t>(n));
        for (auto& c : counts) c = 9.0 * uniform01(g);
        CHECK(empirical_h(citation_sample(counts)) ==
              Approx(oracle::empirical_h_bruteforce(counts)).margin(1e-12));
    }
}

TEST_CASE("floor relation between the real and integer estimators") {
    splitmix64 g(substream(20240811, 2, 0));
    for (int rep = 0; rep < 2000; ++rep) {
        const int n = 1 + static_cast<int>(g() % 15);
        std::vector<double> counts(static_cast<std::size_t>(n));
        std::vector<double> floors(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < counts.size(); ++i) {
            counts[i] = 12.0 * uniform01(g);
            floors[i] = std::floor(counts[i]);
        }
        const double h_real = empirical_h(citation_sample(counts));
        CHECK(empirical_h_integer(citation_sample(floors)) ==
              static_cast<long long>(std::floor(h_real)));
    }
}

TEST_CASE("append monotonicity and scale bound") {
    splitmix64 g(substream(20240811, 3, 0));
    for (int rep = 0; rep < 1000; ++rep) {
        const int n = 1 + static_cast<int>(g() % 10);
        std::vector<double> counts(static_cast<std::size_t>(n));
        double max_c = 0.0;
        for (auto& c : counts) {
            c = std::floor(8.0 * uniform01(g));
            max_c = std::max(max_c, c);
        }
        const citation_sample s(counts);
        const long long h = empirical_h_integer(s);
        CHECK(h >= 0);
        CHECK(h <= std::min<long long>(n, static_cast<long long>(max_c)));

        auto strong = counts;
        strong.push_back(static_cast<double>(h) + 1.0);
        CHECK(empirical_h_integer(citation_sample(strong)) >= h);

        auto weak = counts;
        weak.push_back(0.0);
        CHECK(empirical_h_integer(citation_sample(weak)) == h);
    }
}
