#include "pmj/rng.hpp"

namespace pmj {

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t state = mix64(master);
    for (std::uint64_t coord : path) {
        state = mix64(state ^ mix64(coord + 0x632BE59BD9B4E019ULL));
    }
    return state;
}

Engine make_engine(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    return Engine(derive_seed(master, path));
}

std::uint64_t stable_hash(const void* data, std::size_t size) noexcept {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace pmj
