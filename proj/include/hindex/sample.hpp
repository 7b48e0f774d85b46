#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

// Empirical h-index functionals. A citation sample holds one scholar's
// per-paper citation counts; counts are reals so that floor-plus-uniform
// style samples can be analyzed, while the integer estimator validates
// integrality strictly.

namespace hindex {

class citation_sample {
public:
    explicit citation_sample(std::vector<double> counts) : counts_(std::move(counts)) {
        if (counts_.empty()) throw std::invalid_argument("empty sample");
        for (double c : counts_)
            if (!(c >= 0.0))
                throw std::invalid_argument("negative citation count");
        sorted_ = counts_;
        std::sort(sorted_.begin(), sorted_.end());
    }

    std::size_t n() const { return counts_.size(); }
    const std::vector<double>& counts() const { return counts_; }
    const std::vector<double>& sorted_ascending() const { return sorted_; }

    bool integer_valued() const {
        for (double c : counts_)
            if (std::floor(c) != c) return false;
        return true;
    }

    // Number of counts >= x (closed) or > x (open).
    std::size_t count_at_least(double x, bool closed) const {
        const auto it = closed ? std::lower_bound(sorted_.begin(), sorted_.end(), x)
                               : std::upper_bound(sorted_.begin(), sorted_.end(), x);
        return static_cast<std::size_t>(sorted_.end() - it);
    }

    // Empirical survival: S_{n-}(x) = #{X_i >= x}/n when closed_at_x,
    // S_n(x) = #{X_i > x}/n otherwise. Exact count over n.
    double survival(double x, bool closed_at_x) const {
        return static_cast<double>(count_at_least(x, closed_at_x)) /
               static_cast<double>(n());
    }

private:
    std::vector<double> counts_;
    std::vector<double> sorted_; // ascending
};

// Empirical h-index, sup{x >= 0 : n*S_{n-}(x) >= x}, computed in closed
// form as max_i min(y_(i), i) over the descending order statistics.
// All-zero samples give 0.
inline double empirical_h(const citation_sample& sample) {
    const auto& asc = sample.sorted_ascending();
    const std::size_t n = asc.size();
    double h = 0.0;
    for (std::size_t rank = 1; rank <= n; ++rank) {
        const double y = asc[n - rank]; // rank-th largest
        h = std::max(h, std::min(y, static_cast<double>(rank)));
    }
    return h;
}

// Integer-sample estimator: sum_j 1[S_n(j-1) >= j/n]. Equals
// floor(empirical_h) on any sample and empirical_h itself on integer
// samples. Requires integer counts.
inline long long empirical_h_integer(const citation_sample& sample) {
    if (!sample.integer_valued())
        throw std::invalid_argument("non-integer citation count");
    const auto n = static_cast<long long>(sample.n());
    long long h = 0;
    // The indicator is nonincreasing in j: #{X_i >= j} falls as j grows.
    for (long long j = 1; j <= n; ++j) {
        if (static_cast<long long>(sample.count_at_least(static_cast<double>(j), true)) >= j)
            h = j;
        else
            break;
    }
    return h;
}

// S_{n-}(x) or S_n(x) as a free function mirroring the member.
inline double empirical_survival(const citation_sample& sample, double x, bool closed_at_x) {
    return sample.survival(x, closed_at_x);
}

} // namespace hindex
