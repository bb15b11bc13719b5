#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace pqc {

/// Counter-based random stream.
///
/// Every draw is a pure function of (key, counter), where the key is mixed
/// from a master seed and a stream id. Two streams built from the same pair
/// reproduce each other exactly; child streams obtained with derive() are
/// keyed independently, so a parallel job can hand one stream to each unit of
/// work and get the same numbers no matter which worker runs it.
///
/// Not thread-safe: one stream per worker.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
        : master_seed_(master_seed), stream_id_(stream_id),
          key_(mix(mix(master_seed ^ 0x6a09e667f3bcc909ULL) + stream_id * kGolden)) {}

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    /// Child stream keyed by this stream's key and `id`. Does not advance
    /// this stream.
    RngStream derive(std::uint64_t id) const {
        RngStream child(*this);
        child.key_ = mix(key_ ^ mix(id + 0x3c6ef372fe94f82bULL));
        child.counter_ = 0;
        child.stream_id_ = id;
        return child;
    }

    std::uint64_t next_u64() {
        ++counter_;
        return mix(key_ + counter_ * kGolden);
    }

    /// Uniform double on (0, 1].
    double uniform_open_closed() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform double on [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller. Uses two uniforms per call; the second
    /// variate is discarded so the draw count per call stays fixed.
    double normal() {
        const double u1 = uniform_open_closed();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    std::uint64_t counter() const { return counter_; }

private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

    // SplitMix64 finalizer.
    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace pqc
