#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace reslab {

// SplitMix64. Counter-based, so environments can be keyed by (seed, index)
// and extended without resampling earlier draws.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in (0,1): never returns 0 or 1
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * next_unit(); }

  // integer in [0, n)
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  double normal() {  // Box-Muller
    double u1 = next_unit(), u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  std::uint64_t state_;
};

// stateless mix of a seed and an index, for independent streams
std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t index);

// Runs fn(i) for i in [0, n). Honors RESLAB_THREADS; results must be written
// to per-index slots by the caller so aggregation order is deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

int thread_cap();

// float formatting with 17 significant digits, for reproducible CSV output
std::string format_double(double v);

// ordinary least squares of y against x; slope, intercept and the standard
// error of the slope
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace reslab
