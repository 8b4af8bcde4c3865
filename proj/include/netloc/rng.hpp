#pragma once

#include <cstdint>
#include <random>

namespace netloc {

// splitmix64; used to derive independent, well-mixed engine seeds from a
// (user seed, stream index) pair so that parallel work items are reproducible
// regardless of scheduling.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(stream)));
}

// Uniform double in [0, 1) with 53 random bits, independent of library
// distribution internals.
inline double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

}  // namespace netloc
