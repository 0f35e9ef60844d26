#pragma once

#include <cstdint>
#include <string_view>

namespace dpg {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives an independent stream seed from a base seed and a stream index.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept {
    return mix64(mix64(base) ^ mix64(stream * 0x632be59bd9b4e019ULL + 1));
}

/// Same, keyed by a stream name (FNV-1a of the name).
constexpr std::uint64_t derive_seed(std::uint64_t base, std::string_view stream) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : stream) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return derive_seed(base, h);
}

} // namespace dpg
