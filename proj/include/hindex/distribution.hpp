#pragma once

#include <string>

#include "hindex/rng.hpp"

namespace hindex {

// A citation law supported on the nonnegative integers, exposed through its
// survival function S(j) = P(X > j) with S(-1) = 1. Implementations must have
// unbounded support (S > 0 everywhere) and must be safe to call from several
// threads at once.
class integer_distribution {
public:
    virtual ~integer_distribution() = default;

    virtual double survival(long long j) const = 0;

    // psi(j) = S(j-1) - S(j); overriding is worthwhile when a closed form or
    // series term is more accurate than the difference.
    virtual double pmf(long long j) const {
        if (j < 0) return 0.0;
        return survival(j - 1) - survival(j);
    }

    virtual std::string label() const { return "integer distribution"; }
};

// An integer distribution that can also draw variates. Samples are returned
// as integral-valued doubles: heavy-tailed laws produce counts beyond any
// 64-bit integer, and the h-index functionals only compare counts against
// thresholds <= n.
class citation_law : public integer_distribution {
public:
    virtual double sample(splitmix64& rng) const = 0;
};

} // namespace hindex
