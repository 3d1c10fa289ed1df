#pragma once

#include <cstdint>

namespace tailfit {

/// Deterministic splittable generator. A (seed, stream_id) pair fully
/// determines the output sequence, independently of thread scheduling;
/// distinct stream ids from the same seed give statistically independent
/// streams. SplitMix64 core: the stream key selects a start position on
/// the Weyl sequence, each step advances by the golden-ratio increment
/// and applies the 64-bit finalizer.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed, std::uint64_t stream_id = 0)
        : state_(mix(seed + kGolden) ^ mix(stream_id * kGolden + 0xD1B54A32D192ED03ull)) {}

    std::uint64_t next_u64() {
        state_ += kGolden;
        return mix(state_);
    }

    /// Uniform double on the open interval (0, 1).
    double next_unit() {
        double u;
        do {
            u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        } while (u == 0.0);
        return u;
    }

private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state_;
};

}  // namespace tailfit
