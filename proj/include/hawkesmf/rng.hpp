#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace hawkesmf {

// Splittable random streams. One root seed; every consumer derives its own
// sub-stream from (n, replica, purpose) so replicas are independent and the
// first R replicas of a run do not change when R grows. All transforms are
// hand-rolled so output is bit-reproducible across standard libraries.

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

enum class StreamPurpose : std::uint64_t {
  Signs = 1,
  Candidates = 2,
  Accept = 3,
  Noise = 4,
  WDraw = 5,
  Oracle = 6,
};

// xoshiro256++ seeded through splitmix64.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64_next(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0,1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1); never returns an endpoint, so log() below is safe.
  double uniform_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard exponential, strictly positive.
  double exponential() { return -std::log(uniform_open()); }

  // Standard normal via Box-Muller; the spare is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Uniform index in {0, ..., n-1}.
  std::uint64_t pick_index(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("pick_index: n must be positive");
    return static_cast<std::uint64_t>(uniform01() * static_cast<double>(n)) % n;
  }

  bool bernoulli(double prob) { return uniform01() < prob; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4]{};
  double spare_{0.0};
  bool has_spare_{false};
};

// Derive the sub-stream seed for (n, replica, purpose) under a root seed.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t n,
                                 std::uint64_t replica, std::uint64_t purpose) {
  std::uint64_t h = root;
  h = splitmix64_next(h) ^ (n * 0xD6E8FEB86659FD93ULL);
  h = splitmix64_next(h) ^ (replica * 0xCA5A826395121157ULL);
  h = splitmix64_next(h) ^ (purpose * 0xA24BAED4963EE407ULL);
  return splitmix64_next(h);
}

inline RngStream make_stream(std::uint64_t root, std::uint64_t n,
                             std::uint64_t replica, StreamPurpose purpose) {
  return RngStream(derive_seed(root, n, replica,
                               static_cast<std::uint64_t>(purpose)));
}

}  // namespace hawkesmf
