#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace ufs {

// Deterministic seedable random stream. A stream is identified by a 64-bit
// key derived from (master_seed, stream_id); substreams are derived by
// re-mixing the key with a child id, so any tree of streams is reproducible
// regardless of the order in which siblings are consumed. All draw paths are
// hand-rolled (no std::*_distribution) so sequences are identical across
// standard library implementations.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
      : key_(mix(mix(master_seed, 0x517cc1b727220a95ULL), stream_id)),
        state_(key_) {}

  // Child stream independent of this stream's draw position.
  RngStream substream(std::uint64_t id) const { return RngStream(mix(key_, id)); }

  std::uint64_t next_u64() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller (no cached spare).
  double gaussian() {
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  // Circularly-symmetric complex Gaussian CN(0, var): independent real and
  // imaginary parts, each with variance var/2.
  std::complex<double> cgaussian(double var) {
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    double r = std::sqrt(-var * std::log(u1));
    double th = 6.283185307179586476925287 * u2;
    return {r * std::cos(th), r * std::sin(th)};
  }

 private:
  explicit RngStream(std::uint64_t key) : key_(key), state_(key) {}

  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = a + 0x9e3779b97f4a7c15ULL * (b + 0x632be59bd9b4e019ULL);
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t key_;
  std::uint64_t state_;
};

}  // namespace ufs
