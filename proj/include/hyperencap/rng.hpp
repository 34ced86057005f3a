#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace hyperencap {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for an independent stream: the component name and index are hashed
/// together with the master seed, so "randomize"/3 and "simulate"/3 never
/// share a stream.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view component,
                                 std::uint64_t index = 0) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : component) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(splitmix64(master ^ h) + index);
}

inline Rng make_rng(std::uint64_t master, std::string_view component, std::uint64_t index = 0) {
  return Rng(derive_seed(master, component, index));
}

}  // namespace hyperencap
