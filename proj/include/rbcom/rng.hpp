#pragma once

#include <cstdint>
#include <random>

namespace rbcom {

// Random streams
// --------------
// Every stochastic quantity is drawn from a std::mt19937_64 whose seed is
// derived from (run seed, stream id, purpose tag) by SplitMix64 mixing. Streams
// are independent of evaluation order, so a frame's noise is the same whether
// frames are processed serially or by an OpenMP team.

using Rng = std::mt19937_64;

enum class StreamTag : std::uint64_t {
    Data = 0x64617461,
    Noise = 0x6e6f6973,
    Sync = 0x73796e63,
    Sequence = 0x73657175,
    Trial = 0x7472696c,
};

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream,
                                           StreamTag tag) noexcept {
    return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ static_cast<std::uint64_t>(tag));
}

inline Rng make_stream(std::uint64_t seed, std::uint64_t stream, StreamTag tag) {
    return Rng(stream_seed(seed, stream, tag));
}

}  // namespace rbcom
