#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace pmj {

using Engine = std::mt19937_64;

/// SplitMix64 finalizer; used to decorrelate derived seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Deterministic substream seed from a master seed and a path of
/// coordinates (replicate, kind, index, system number, ...).
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept;

/// Engine seeded from derive_seed(master, path).
Engine make_engine(std::uint64_t master, std::initializer_list<std::uint64_t> path);

/// Uniform double in [0, 1) built from the top 53 bits of one engine draw.
inline double uniform01(Engine& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

/// 64-bit FNV-1a over a byte string; stable across platforms.
std::uint64_t stable_hash(const void* data, std::size_t size) noexcept;

}  // namespace pmj
