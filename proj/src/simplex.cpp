#include "reslab/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace reslab {

LpResult simplex_maximize(const Matrix& a, const std::vector<double>& b,
                          const std::vector<double>& c) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m || c.size() != n) throw std::invalid_argument("simplex: shape mismatch");
  for (double v : b)
    if (v < 0.0) throw std::invalid_argument("simplex: negative right-hand side");

  // tableau: m rows of [A | I | b], plus objective row (negated reduced costs)
  const std::size_t width = n + m + 1;
  Matrix t(m + 1, width);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t(i, j) = a(i, j);
    t(i, n + i) = 1.0;
    t(i, width - 1) = b[i];
  }
  for (std::size_t j = 0; j < n; ++j) t(m, j) = -c[j];

  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  const double eps = 1e-11;
  const std::size_t max_iter = 400 * (m + n) + 5000;
  std::size_t stall = 0;
  double last_obj = 0.0;

  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    const bool bland = stall > m + n;

    // entering column
    std::size_t enter = width;  // sentinel
    if (bland) {
      for (std::size_t j = 0; j + 1 < width; ++j)
        if (t(m, j) < -eps) {
          enter = j;
          break;
        }
    } else {
      double best = -eps;
      for (std::size_t j = 0; j + 1 < width; ++j)
        if (t(m, j) < best) {
          best = t(m, j);
          enter = j;
        }
    }
    if (enter == width) {  // optimal
      LpResult res;
      res.x.assign(n, 0.0);
      for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) res.x[basis[i]] = t(i, width - 1);
      res.value = t(m, width - 1);
      return res;
    }

    // ratio test; ties resolved toward the smallest basis index
    std::size_t leave = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      double aij = t(i, enter);
      if (aij > eps) {
        double ratio = t(i, width - 1) / aij;
        if (ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 && leave < m && basis[i] < basis[leave])) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave == m) throw std::runtime_error("simplex: unbounded objective");

    // pivot
    const double piv = t(leave, enter);
    double* lrow = t.row_ptr(leave);
    for (std::size_t j = 0; j < width; ++j) lrow[j] /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      double f = t(i, enter);
      if (f == 0.0) continue;
      double* row = t.row_ptr(i);
      for (std::size_t j = 0; j < width; ++j) row[j] -= f * lrow[j];
      row[enter] = 0.0;
    }
    basis[leave] = enter;

    double obj = t(m, width - 1);
    if (obj > last_obj + 1e-13)
      stall = 0;
    else
      ++stall;
    last_obj = obj;
  }
  throw std::runtime_error("simplex: iteration limit exceeded");
}

}  // namespace reslab
