#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace sparsemc {

// Deterministic per-use streams: one generator per (seed, component, round, item).
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_name(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : name) {
    h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t stream_seed(std::uint64_t seed, std::string_view component,
                                 std::uint64_t round = 0, std::uint64_t item = 0) {
  std::uint64_t h = mix64(seed ^ hash_name(component));
  h = mix64(h ^ round);
  return mix64(h ^ (item * 0x2545f4914f6cdd1dULL));
}

using Rng = std::mt19937_64;

inline Rng make_stream(std::uint64_t seed, std::string_view component, std::uint64_t round = 0,
                       std::uint64_t item = 0) {
  return Rng(stream_seed(seed, component, round, item));
}

// Portable bounded draw; std::uniform_int_distribution differs across standard libraries.
inline std::uint64_t draw_below(Rng &rng, std::uint64_t bound) {
  if (bound <= 1) {
    return 0;
  }
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

} // namespace sparsemc
