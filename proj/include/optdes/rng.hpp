#ifndef OPTDES_RNG_HPP_
#define OPTDES_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace optdes {

// Seedable random number generator with a fixed, documented algorithm so
// that runs reproduce bit-identically across platforms and standard-library
// implementations.  The engine is std::mt19937_64 (whose output sequence is
// pinned by the C++ standard); uniform doubles take the top 53 bits of one
// draw, and bounded integers use unbiased rejection.  Distribution adapters
// from <random> are avoided on purpose: their output is implementation
// defined.
class Rng {
 public:
  // Identifier recorded in result metadata alongside the seed.
  static constexpr const char *kAlgorithmId = "mt19937_64/u53";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform draw in [0, 1) with 53-bit resolution.
  double uniform01() { return (engine_() >> 11) * 0x1.0p-53; }

  // Uniform draw in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n), unbiased via rejection.  n must be >= 1.
  std::uint64_t bounded(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return draw % n;
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// A draw from the flat Dirichlet distribution on the n-simplex: normalized
// unit-rate exponentials obtained as -log(u).  u is nudged away from zero so
// the log is always finite.
inline std::vector<double> dirichlet_uniform(int n, Rng &rng) {
  std::vector<double> w(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform01();
    if (u <= 0.0) u = 0x1.0p-53;
    w[i] = -std::log(u);
    total += w[i];
  }
  for (double &wi : w) wi /= total;
  return w;
}

}  // namespace optdes

#endif  // OPTDES_RNG_HPP_
