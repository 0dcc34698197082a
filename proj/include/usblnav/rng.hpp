#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace usblnav {

using Rng = std::mt19937_64;

/// 64-bit FNV-1a over a byte string.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL);

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Independent deterministic stream for (seed, label), e.g. "imu/0", "loss/2/1".
/// Each consumer owns its stream, so draws on one never shift another.
Rng derive_rng(std::uint64_t seed, std::string_view label);

/// Standard normal draw scaled by `stddev`; returns 0 without consuming when stddev == 0.
double gaussian(Rng& rng, double stddev);

/// Uniform draw on [0, 1).
double uniform01(Rng& rng);

}  // namespace usblnav
