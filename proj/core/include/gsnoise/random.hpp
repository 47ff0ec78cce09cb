#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace gsnoise {

/// Random stream type used everywhere. Each run/worker owns its own instance.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent seeds from coordinates.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// FNV-1a 64-bit hash of a byte string.
constexpr std::uint64_t fnv1a64(std::string_view s) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Order-sensitive combination of a seed with one more coordinate.
constexpr std::uint64_t seed_combine(std::uint64_t seed, std::uint64_t value) noexcept
{
    return mix64(seed ^ mix64(value + 0x632be59bd9b4e019ULL));
}

double uniform01(Rng& rng);
double uniform(Rng& rng, double lo, double hi);
std::size_t uniform_index(Rng& rng, std::size_t n);
bool bernoulli(Rng& rng, double p);
double standard_normal(Rng& rng);

} // namespace gsnoise
