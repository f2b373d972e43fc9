#pragma once

#include <cstdint>

namespace wpbc {

// One fading realization. |gi|^2 are exponential(1) powers (Rayleigh
// amplitude), hi fold in the distance-dependent path loss.
struct ChannelInstance {
    double g0_sq = 1;
    double g1_sq = 1;
    double h0 = 0;
    double h1 = 0;
};

struct ScenarioConfig {
    double d0 = 10.0;  // source->tag distance [m]
    double d1 = 15.0;  // tag->receiver distance [m]
    double path_loss_exponent = 3.0;
    std::uint64_t seed = 424242;
};

// splitmix64, kept tiny and local so the stream contract stays frozen.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t s) : state(s) {}
    std::uint64_t next();
    // uniform in (0,1): (top 53 bits + 0.5) * 2^-53, never exactly 0 or 1
    double unit();
};

std::uint64_t mix64(std::uint64_t x);

// Deterministic draw for trial `stream_index`: the stream seed depends only
// on (seed, stream_index), so trial k is identical no matter how many trials
// run or in which order. |g|^2 sampled as -ln(U), U uniform in (0,1).
ChannelInstance draw_instance(const ScenarioConfig& cfg, std::uint64_t stream_index);

// Unit fading: |g0|^2 = |g1|^2 = 1, path loss only.
ChannelInstance fixed_instance(const ScenarioConfig& cfg);

// Recorded in every output file's metadata header.
const char* generator_family();

}  // namespace wpbc
