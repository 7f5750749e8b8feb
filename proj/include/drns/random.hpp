#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace drns {

// Seeded random stream with draw routines implemented on top of the raw
// 64-bit output, so results do not depend on the standard library's
// distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) {
    const double x = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    return lo + x * (hi - lo);
  }

  // Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    return lo + static_cast<int>(eng_() % span);
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform(0.0, 1.0);
    while (u1 <= 0.0) u1 = uniform(0.0, 1.0);
    const double u2 = uniform(0.0, 1.0);
    const double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return mag * std::cos(2.0 * M_PI * u2);
  }

  int binomial(int trials, double p) {
    if (p <= 0.0) return 0;
    if (p >= 1.0) return trials;
    int hits = 0;
    for (int k = 0; k < trials; ++k)
      if (uniform(0.0, 1.0) < p) ++hits;
    return hits;
  }

  // Log-normal draw parameterized by the mean and standard deviation of the
  // variable itself (not of its logarithm). sd == 0 degenerates to the mean.
  double lognormal_mean_sd(double mean, double sd) {
    if (sd <= 0.0) return mean;
    const double sigma2 = std::log(1.0 + (sd * sd) / (mean * mean));
    const double mu = std::log(mean) - 0.5 * sigma2;
    return std::exp(mu + std::sqrt(sigma2) * normal());
  }

  std::uint64_t raw() { return eng_(); }

  // Derives an independent stream, e.g. one per scenario, so that results do
  // not depend on how work is chunked across threads.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace drns
