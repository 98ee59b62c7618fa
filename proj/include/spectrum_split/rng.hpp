#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace spectrum_split {

// SplitMix64 finalizer; bijective on 64-bit integers.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

// ln(k!) via a cached table for small k and a Stirling series beyond it.
// Accurate to well below 1e-10 everywhere, which is ample for the rejection
// test that consumes it.
inline double log_factorial(std::uint64_t k) {
  static const std::array<double, 1024> table = [] {
    std::array<double, 1024> t{};
    double acc = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) {
      acc += std::log(static_cast<double>(i));
      t[i] = acc;
    }
    return t;
  }();
  if (k < table.size()) return table[k];
  const double x = static_cast<double>(k) + 1.0;  // ln Gamma(x)
  const double x3 = x * x * x;
  return (x - 0.5) * std::log(x) - x + 0.91893853320467274 + 1.0 / (12.0 * x) -
         1.0 / (360.0 * x3) + 1.0 / (1260.0 * x3 * x * x);
}

// Counter-based substream keyed by (master seed, trial index, purpose tag).
// Each draw hashes an incrementing counter, so any substream can be evaluated
// independently of every other; results do not depend on how trials are
// distributed over threads.
class CounterRng {
 public:
  CounterRng(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t purpose) {
    std::uint64_t k = mix64(master_seed + 0x9e3779b97f4a7c15ull);
    k = mix64(k ^ mix64(trial + 0xd1b54a32d192ed03ull));
    state_ = mix64(k ^ mix64(purpose + 0x8cb92ba72f3d8dd7ull));
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix64(state_);
  }

  // Uniform on [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Unit-mean exponential.
  double next_exp() { return -std::log1p(-next_unit()); }

  // Poisson with the given mean. Product method below 30, Hormann's PTRS
  // transformed rejection above; both consume only this substream.
  std::uint64_t next_poisson(double mean) {
    if (!(mean >= 0.0)) throw std::invalid_argument("poisson mean must be >= 0");
    if (mean == 0.0) return 0;
    if (mean < 30.0) {
      const double limit = std::exp(-mean);
      double prod = 1.0;
      std::uint64_t k = 0;
      do {
        ++k;
        prod *= next_unit();
      } while (prod > limit);
      return k - 1;
    }
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_mean = std::log(mean);
    for (;;) {
      const double u = next_unit() - 0.5;
      const double v = next_unit();
      const double us = 0.5 - std::fabs(u);
      const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
      if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
      if (kf < 0.0 || (us < 0.013 && v > us)) continue;
      const auto k = static_cast<std::uint64_t>(kf);
      if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
          kf * log_mean - mean - log_factorial(k)) {
        return k;
      }
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace spectrum_split
