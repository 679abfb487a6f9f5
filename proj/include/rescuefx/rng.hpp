#pragma once

#include <cstdint>

namespace rescuefx {

// splitmix64 finalizer. Good avalanche, cheap, and stable across platforms,
// which is all we need for reproducible simulation streams.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Counter-based per-subject stream: the draw sequence for subject i of
// replicate k depends only on (seed, k, i), never on evaluation order or
// thread placement. That is what makes datasets bit-identical across
// thread counts.
class SubjectRng {
public:
    SubjectRng(std::uint64_t seed, std::uint64_t replicate, std::uint64_t subject)
        : state_(mix64(mix64(mix64(seed) + replicate) + subject)) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    // Uniform on the open interval (0,1); never returns an exact 0 or 1,
    // so log() in the Box-Muller transform below is always finite.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    // Standard normal via Box-Muller with pair caching: each subject's
    // (y1, y2) pair costs exactly two uniforms.
    double normal();

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace rescuefx
