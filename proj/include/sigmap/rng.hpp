#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "sigmap/prob.hpp"

namespace sigmap {

/// splitmix64 step; used to whiten seeds and derive independent substreams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed ^ (0xd1b54a32d192ed03ULL * (index + 1));
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  return a ^ (b << 1);
}

/// Deterministic RNG. Distributions are hand-rolled on top of the raw 64-bit
/// stream because std::uniform_real_distribution is not specified bit-exactly
/// across standard libraries, and reports must be byte-stable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    gen_.seed(splitmix64(s));
  }

  std::uint64_t bits() { return gen_(); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Uniform integer in [0, m).
  std::uint64_t below(std::uint64_t m) { return gen_() % m; }

  double exponential() {
    double u;
    do {
      u = uniform01();
    } while (u == 0.0);
    return -std::log(u);
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = uniform(-1.0, 1.0);
      v = uniform(-1.0, 1.0);
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Uniform sample from the probability simplex (exponential normalization).
inline MeasureD simplex_sample(Rng& rng, std::size_t n) {
  std::vector<double> w(n);
  double s = 0.0;
  for (double& x : w) {
    x = rng.exponential();
    s += x;
  }
  for (double& x : w) x /= s;
  return MeasureD(std::move(w));
}

}  // namespace sigmap
