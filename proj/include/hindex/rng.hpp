#pragma once

#include <cmath>
#include <cstdint>

// Deterministic random number streams. Every consumer takes an explicit
// generator; substreams are derived by hashing (master_seed, key1, key2),
// so replication r of a study cell gets the same stream no matter how
// work is scheduled across threads.

namespace hindex {

// SplitMix64 (Steele, Lea & Flood / Vigna). 64 bits of state, passes
// BigCrush; plenty for Monte Carlo work.
class splitmix64 {
public:
    using result_type = std::uint64_t;

    explicit constexpr splitmix64(std::uint64_t seed) : state_(seed) {}

    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

    constexpr std::uint64_t operator()() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

namespace detail {
// MurmurHash3 64-bit finalizer.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 33;
    z *= 0xFF51AFD7ED558CCDULL;
    z ^= z >> 33;
    z *= 0xC4CEB9FE1A85EC53ULL;
    z ^= z >> 33;
    return z;
}
} // namespace detail

// Stream seed for (master, key1, key2); collision-free enough for study-sized
// key spaces and fully deterministic.
inline constexpr std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t key1,
                                                  std::uint64_t key2) {
    std::uint64_t s = detail::mix64(master + 0x9E3779B97F4A7C15ULL);
    s = detail::mix64(s ^ (key1 + 0xD1B54A32D192ED03ULL));
    s = detail::mix64(s ^ (key2 + 0x8CB92BA72F3D8DD7ULL));
    return s;
}

inline constexpr splitmix64 substream(std::uint64_t master, std::uint64_t key1,
                                      std::uint64_t key2) {
    return splitmix64(derive_stream_seed(master, key1, key2));
}

// Uniform on the open interval (0,1): neither endpoint is ever returned.
inline double uniform01(splitmix64& g) {
    return (static_cast<double>(g() >> 11) + 0.5) * 0x1.0p-53;
}

// Unit exponential.
inline double exponential(splitmix64& g) { return -std::log(uniform01(g)); }

} // namespace hindex
