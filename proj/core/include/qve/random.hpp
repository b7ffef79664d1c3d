#pragma once

#include <cstdint>
#include <random>

namespace qve {

/// Project-wide generator. mt19937_64 output is fully specified by the
/// standard, so streams are identical across platforms; distributions are
/// done by hand below because the std:: ones are implementation-defined.
using Engine = std::mt19937_64;

/// SplitMix64 finalizer, used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for the stream identified by (master, a, b, c). Distinct tuples give
/// unrelated streams, so work can be scheduled in any order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                    std::uint64_t b = 0,
                                    std::uint64_t c = 0) noexcept {
  std::uint64_t h = mix64(master);
  h = mix64(h ^ mix64(a + 0x1000));
  h = mix64(h ^ mix64(b + 0x2000));
  h = mix64(h ^ mix64(c + 0x3000));
  return h;
}

inline Engine make_engine(std::uint64_t seed) { return Engine(seed); }

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Engine &engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n) by rejection; n > 0.
inline std::uint64_t uniform_index(Engine &engine, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = engine();
  } while (v >= limit);
  return v % n;
}

/// +1 or -1 with equal probability.
inline int rademacher(Engine &engine) { return (engine() >> 63) ? 1 : -1; }

} // namespace qve
