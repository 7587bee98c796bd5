#include "reslab/util.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace reslab {

std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  g.next_u64();
  return g.next_u64();
}

int thread_cap() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("RESLAB_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v < 1024) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return static_cast<int>(hw);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(thread_cap()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= n) break;
          fn(i);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line: need at least two matching samples");
  const std::size_t n = x.size();
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LineFit out;
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  if (n > 2) {
    double rss = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double r = y[i] - (out.intercept + out.slope * x[i]);
      rss += r * r;
    }
    out.slope_stderr = std::sqrt(rss / (static_cast<double>(n - 2) * sxx));
  }
  return out;
}

}  // namespace reslab
