#pragma once
// Counter-based random streams. Every draw is a pure function of
// (seed, path_index, step_index, draw counter), so simulations are bitwise
// reproducible regardless of thread count or evaluation order across paths.

#include <cstdint>

#include "ltmc/special.hpp"

namespace ltmc {

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// One stream per (seed, path_index, step_index). Draws advance a private
// counter; the increment is itself derived from the triple, so distinct
// triples walk distinct orbits rather than shifted copies of one sequence.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t path_index, std::uint64_t step_index) {
    std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ull);
    h = mix64(h ^ (path_index * 0xbf58476d1ce4e5b9ull + 0x94d049bb133111ebull));
    h = mix64(h ^ (step_index * 0x2545f4914f6cdd1dull + 0xd6e8feb86659fd93ull));
    state_ = h;
    inc_ = mix64(h + 0x9e3779b97f4a7c15ull) | 1ull;
  }

  std::uint64_t next_u64() {
    state_ += inc_;
    return mix64(state_);
  }

  // Uniform on the open interval (0,1); endpoints are unreachable.
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via the inverse CDF; one uniform per variate keeps the
  // draw count deterministic.
  double gaussian() { return normal_quantile(uniform()); }

 private:
  std::uint64_t state_;
  std::uint64_t inc_;
};

}  // namespace ltmc
