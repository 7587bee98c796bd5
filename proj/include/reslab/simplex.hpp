#pragma once

#include <vector>

#include "reslab/linalg.hpp"

namespace reslab {

// Primal tableau simplex for   max c.x  s.t.  A x <= b, x >= 0
// with b >= 0, so the slack basis is the starting feasible point.
// Dantzig pricing with a Bland fallback after stalls.
struct LpResult {
  double value = 0.0;
  std::vector<double> x;
};

LpResult simplex_maximize(const Matrix& a, const std::vector<double>& b,
                          const std::vector<double>& c);

}  // namespace reslab
