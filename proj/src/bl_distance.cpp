#include "reslab/bl_distance.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>

#include "reslab/simplex.hpp"

namespace reslab {

namespace {

// LP over the support points only; McShane extension makes the value on the
// support equal to the value on the whole space.
double bl_lp_on_support(const std::vector<double>& w, const Matrix& dk) {
  const std::size_t n = w.size();
  if (n == 0) return 0.0;
  if (n == 1) return std::abs(w[0]);
  if (n > 700) throw std::invalid_argument("bl_distance: instance too large for the dense LP");

  double wsum = 0.0;
  for (double v : w) wsum += v;

  // variables: g_0..g_{n-1}, s, l   (f_i = g_i - s)
  const std::size_t nv = n + 2;
  const std::size_t s_ix = n, l_ix = n + 1;

  struct PairRow {
    std::size_t i, j;
  };
  std::vector<PairRow> pairs;
  std::set<std::pair<std::size_t, std::size_t>> have;
  auto add_pair = [&](std::size_t i, std::size_t j) {
    if (have.insert({i, j}).second) pairs.push_back({i, j});
  };

  if (n <= 48) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) add_pair(i, j);
  } else {
    // seed with a few nearest neighbours per point
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::pair<double, std::size_t>> near;
      near.reserve(n - 1);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) near.push_back({dk(i, j), j});
      std::partial_sort(near.begin(), near.begin() + std::min<std::size_t>(2, near.size()),
                        near.end());
      for (std::size_t k = 0; k < std::min<std::size_t>(2, near.size()); ++k) {
        add_pair(i, near[k].second);
        add_pair(near[k].second, i);
      }
    }
  }

  std::vector<double> c(nv, 0.0);
  for (std::size_t i = 0; i < n; ++i) c[i] = w[i];
  c[s_ix] = -wsum;

  // Graded perturbation of the zero right-hand sides: the LP is heavily
  // degenerate at the origin and exact ties can defeat the pivoting. The
  // perturbation only relaxes constraints so the value moves by at most
  // O(delta * dual mass), far below the advertised tolerances.
  const double delta = 1e-11;

  LpResult sol;
  for (int round = 0; round < 80; ++round) {
    const std::size_t m = n + 1 + pairs.size();
    Matrix a(m, nv);
    std::vector<double> b(m, 0.0);
    for (std::size_t i = 0; i < n; ++i) {  // g_i - 2s <= 0
      a(i, i) = 1.0;
      a(i, s_ix) = -2.0;
      b[i] = delta * (1.0 + double(i) / double(m));
    }
    a(n, s_ix) = 1.0;  // s + l <= 1
    a(n, l_ix) = 1.0;
    b[n] = 1.0;
    for (std::size_t p = 0; p < pairs.size(); ++p) {  // g_i - g_j - l c_ij <= 0
      a(n + 1 + p, pairs[p].i) = 1.0;
      a(n + 1 + p, pairs[p].j) = -1.0;
      a(n + 1 + p, l_ix) = -dk(pairs[p].i, pairs[p].j);
      b[n + 1 + p] = delta * (1.0 + double(n + 1 + p) / double(m));
    }

    sol = simplex_maximize(a, b, c);

    // violated pair constraints not yet in the working set
    const double l = sol.x[l_ix];
    std::vector<std::pair<double, PairRow>> violated;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        double v = sol.x[i] - sol.x[j] - l * dk(i, j);
        if (v > 1e-10 && !have.count({i, j})) violated.push_back({v, {i, j}});
      }
    if (violated.empty()) return std::max(sol.value, 0.0);
    std::sort(violated.begin(), violated.end(),
              [](const auto& x, const auto& y) { return x.first > y.first; });
    std::size_t budget = std::max<std::size_t>(n, 64);
    for (std::size_t k = 0; k < violated.size() && k < budget; ++k)
      add_pair(violated[k].second.i, violated[k].second.j);
  }
  throw std::runtime_error("bl_distance: constraint generation failed to converge");
}

}  // namespace

double bl_distance(const FiniteMetricSpace& space, const std::vector<double>& mu,
                   const std::vector<double>& nu, double kappa) {
  if (!(kappa > 0.0 && kappa <= 1.0)) throw std::invalid_argument("bl_distance: bad kappa");
  if (mu.size() != space.size() || nu.size() != space.size())
    throw std::invalid_argument("bl_distance: mass vector size mismatch");
  for (double v : mu)
    if (!(v >= 0.0)) throw std::invalid_argument("bl_distance: negative mass");
  for (double v : nu)
    if (!(v >= 0.0)) throw std::invalid_argument("bl_distance: negative mass");

  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < space.size(); ++i)
    if (mu[i] != nu[i]) support.push_back(i);
  if (support.empty()) return 0.0;

  std::vector<double> w(support.size());
  for (std::size_t k = 0; k < support.size(); ++k) w[k] = mu[support[k]] - nu[support[k]];
  // canonical orientation so that d(mu,nu) and d(nu,mu) run the same pivots
  if (w[0] < 0.0)
    for (double& v : w) v = -v;

  Matrix dk(support.size(), support.size());
  for (std::size_t a = 0; a < support.size(); ++a)
    for (std::size_t b = 0; b < support.size(); ++b)
      dk(a, b) = (a == b) ? 0.0 : std::pow(space.dist(support[a], support[b]), kappa);

  return bl_lp_on_support(w, dk);
}

namespace {

// concave piecewise-linear function on [lo, hi] as breakpoint lists
struct ConcavePl {
  std::vector<double> x, y;

  double max_value() const {
    double m = y[0];
    for (double v : y) m = std::max(m, v);
    return m;
  }
};

// value sweep for one l: feasible increments |f_{i+1}-f_i| <= l * gap_i,
// box |f_i| <= s
double line_value(const std::vector<double>& xs, const std::vector<double>& w, double l) {
  const double s = 1.0 - l;
  const std::size_t n = xs.size();
  if (s <= 0.0) return 0.0;
  ConcavePl J, G, C;
  const std::size_t cap = n + 4;
  J.x.reserve(cap);
  J.y.reserve(cap);
  G.x.reserve(cap);
  G.y.reserve(cap);
  C.x.reserve(cap);
  C.y.reserve(cap);
  J.x = {-s, s};
  J.y = {w[n - 1] * -s, w[n - 1] * s};
  for (std::size_t ii = n - 1; ii-- > 0;) {
    const double a = l * (xs[ii + 1] - xs[ii]);
    // window max of width 2a, then clip to [-s, s], then add w[ii] * f
    std::size_t k = J.x.size();
    std::size_t mi = 0;
    for (std::size_t t = 1; t < k; ++t)
      if (J.y[t] > J.y[mi]) mi = t;
    // plateau [pl, pr] of the max (concave: contiguous)
    std::size_t lo = mi, hi = mi;
    while (lo > 0 && J.y[lo - 1] == J.y[mi]) --lo;
    while (hi + 1 < k && J.y[hi + 1] == J.y[mi]) ++hi;
    const double pl = J.x[lo] - a, pr = J.x[hi] + a;
    const double peak = J.y[mi];

    G.x.clear();
    G.y.clear();
    for (std::size_t t = 0; t < lo; ++t) {
      G.x.push_back(J.x[t] - a);
      G.y.push_back(J.y[t]);
    }
    G.x.push_back(pl);
    G.y.push_back(peak);
    if (pr > pl) {
      G.x.push_back(pr);
      G.y.push_back(peak);
    }
    for (std::size_t t = hi + 1; t < k; ++t) {
      G.x.push_back(J.x[t] + a);
      G.y.push_back(J.y[t]);
    }

    // clip to [-s, s]
    auto value_at = [&](double q) {
      if (q <= G.x.front()) return G.y.front();
      if (q >= G.x.back()) return G.y.back();
      std::size_t t = std::upper_bound(G.x.begin(), G.x.end(), q) - G.x.begin();
      double x0 = G.x[t - 1], x1 = G.x[t];
      double y0 = G.y[t - 1], y1 = G.y[t];
      return y0 + (y1 - y0) * (q - x0) / (x1 - x0);
    };
    C.x.clear();
    C.y.clear();
    C.x.push_back(-s);
    C.y.push_back(value_at(-s));
    for (std::size_t t = 0; t < G.x.size(); ++t)
      if (G.x[t] > -s && G.x[t] < s) {
        C.x.push_back(G.x[t]);
        C.y.push_back(G.y[t]);
      }
    C.x.push_back(s);
    C.y.push_back(value_at(s));

    const double wi = w[ii];
    for (std::size_t t = 0; t < C.x.size(); ++t) C.y[t] += wi * C.x[t];
    std::swap(J.x, C.x);
    std::swap(J.y, C.y);
  }
  return std::max(J.max_value(), 0.0);
}

// Same sweep with an amortized representation: two deques of segments
// (width, raw slope) on either side of the running argmax, a global slope
// offset, and the peak value tracked incrementally. The window step only
// moves widths; the linear step walks the argmax across segments whose
// effective slope changes sign.
struct SegmentDeque {
  struct Seg {
    double width, raw;
  };
  std::deque<Seg> left;   // front() touches the left domain end
  std::deque<Seg> right;  // back() touches the right domain end
  double lambda = 0.0;    // effective slope = raw + lambda
  double plateau = 0.0;   // width of the flat top
  double peak = 0.0;      // function value on the flat top
  double wl = 0.0, wr = 0.0;

  void trim_left(double amount) {
    wl -= amount;
    while (amount > 0.0 && !left.empty()) {
      if (left.front().width > amount) {
        left.front().width -= amount;
        return;
      }
      amount -= left.front().width;
      left.pop_front();
    }
    if (amount > 0.0) plateau -= amount;  // the clip ate into the flat top
  }
  void trim_right(double amount) {
    wr -= amount;
    while (amount > 0.0 && !right.empty()) {
      if (right.back().width > amount) {
        right.back().width -= amount;
        return;
      }
      amount -= right.back().width;
      right.pop_back();
    }
    if (amount > 0.0) plateau -= amount;
  }

  // widen the plateau by a on both sides, then clip back to the fixed domain
  void window_max(double a) {
    plateau += 2.0 * a;
    trim_left(a);
    trim_right(a);
    if (wl < 0.0) wl = 0.0;
    if (wr < 0.0) wr = 0.0;
  }

  void add_linear(double c, double s) {
    if (c == 0.0) return;
    const double pxl = -s + wl;  // left end of the plateau
    peak += c * pxl;             // value at the anchor under the tilted function
    const double old_lambda = lambda;
    lambda += c;
    if (c > 0.0) {
      // old plateau slopes upward now; its top is its right end
      if (plateau > 0.0) {
        left.push_back({plateau, -old_lambda});
        wl += plateau;
        peak += plateau * c;
        plateau = 0.0;
      }
      while (!right.empty() && right.front().raw + lambda > 0.0) {
        auto seg = right.front();
        right.pop_front();
        peak += seg.width * (seg.raw + lambda);
        left.push_back(seg);
        wl += seg.width;
        wr -= seg.width;
      }
      if (!right.empty() && right.front().raw + lambda == 0.0) {
        plateau = right.front().width;
        wr -= plateau;
        right.pop_front();
      }
    } else {
      if (plateau > 0.0) {
        right.push_front({plateau, -old_lambda});
        wr += plateau;
        plateau = 0.0;
      }
      while (!left.empty() && left.back().raw + lambda < 0.0) {
        auto seg = left.back();
        left.pop_back();
        peak -= seg.width * (seg.raw + lambda);
        right.push_front(seg);
        wr += seg.width;
        wl -= seg.width;
      }
      if (!left.empty() && left.back().raw + lambda == 0.0) {
        plateau = left.back().width;
        wl -= plateau;
        left.pop_back();
      }
    }
  }
};

double line_value_fast(const std::vector<double>& xs, const std::vector<double>& w, double l) {
  const double s = 1.0 - l;
  const std::size_t n = xs.size();
  if (s <= 0.0) return 0.0;
  SegmentDeque J;
  // start from the terminal linear piece w[n-1] * f on [-s, s]
  if (w[n - 1] > 0.0) {
    J.left.push_back({2.0 * s, w[n - 1]});
    J.wl = 2.0 * s;
    J.peak = w[n - 1] * s;
  } else if (w[n - 1] < 0.0) {
    J.right.push_back({2.0 * s, w[n - 1]});
    J.wr = 2.0 * s;
    J.peak = -w[n - 1] * s;
  } else {
    J.plateau = 2.0 * s;
  }
  for (std::size_t ii = n - 1; ii-- > 0;) {
    J.window_max(l * (xs[ii + 1] - xs[ii]));
    J.add_linear(w[ii], s);
  }
  return std::max(J.peak, 0.0);
}

}  // namespace

namespace detail {

double line_sweep_value(const std::vector<double>& coords, const std::vector<double>& weight,
                        double l) {
  return line_value_fast(coords, weight, l);
}

double line_sweep_value_reference(const std::vector<double>& coords,
                                  const std::vector<double>& weight, double l) {
  return line_value(coords, weight, l);
}

}  // namespace detail

double bl_distance_line(const std::vector<double>& coords, const std::vector<double>& weight,
                        int search_evals) {
  if (coords.size() != weight.size())
    throw std::invalid_argument("bl_distance_line: size mismatch");
  // keep support only, sorted
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (weight[i] != 0.0) pts.push_back({coords[i], weight[i]});
  if (pts.empty()) return 0.0;
  std::sort(pts.begin(), pts.end());
  std::vector<double> xs, w;
  for (auto& p : pts) {
    if (!xs.empty() && p.first == xs.back())
      w.back() += p.second;
    else {
      xs.push_back(p.first);
      w.push_back(p.second);
    }
  }
  if (xs.size() == 1) return std::abs(w[0]);

  // golden search over l in [0,1]; the value is concave in l
  const double phi = 0.6180339887498949;
  double a = 0.0, b = 1.0;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = line_value_fast(xs, w, x1), f2 = line_value_fast(xs, w, x2);
  int evals = 2;
  while (evals < search_evals && (b - a) > 1e-12) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = line_value_fast(xs, w, x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = line_value_fast(xs, w, x1);
    }
    ++evals;
  }
  double best = std::max(f1, f2);
  best = std::max(best, line_value_fast(xs, w, 0.0));
  best = std::max(best, line_value_fast(xs, w, 1.0));
  return best;
}

double hausdorff_distance(const EmbeddedPair& pair) {
  pair.validate();
  auto one_side = [&](const std::vector<std::size_t>& from, const std::vector<std::size_t>& to) {
    double worst = 0.0;
    for (std::size_t p : from) {
      double best = 1e300;
      for (std::size_t q : to) best = std::min(best, pair.ambient.dist(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_side(pair.index_a, pair.index_b), one_side(pair.index_b, pair.index_a));
}

namespace {

std::vector<double> root_distances(const EmbeddedPair& pair, const std::vector<std::size_t>& idx,
                                   std::size_t root) {
  std::vector<double> out(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) out[k] = pair.ambient.dist(root, idx[k]);
  return out;
}

std::vector<double> filtration_breakpoints(const std::vector<double>& da,
                                           const std::vector<double>& db) {
  std::vector<double> bp;
  bp.insert(bp.end(), da.begin(), da.end());
  bp.insert(bp.end(), db.begin(), db.end());
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  return bp;
}

// integral of e^-r * step(r), with step constant on [bp_k, bp_{k+1})
double exp_step_integral(const std::vector<double>& bp, const std::vector<double>& value) {
  double total = 0.0;
  for (std::size_t k = 0; k < bp.size(); ++k) {
    double lo = std::exp(-bp[k]);
    double hi = (k + 1 < bp.size()) ? std::exp(-bp[k + 1]) : 0.0;
    total += value[k] * (lo - hi);
  }
  return total;
}

}  // namespace

double rooted_bl_distance(const EmbeddedPair& pair, double kappa) {
  pair.validate();
  if (!pair.root_a || !pair.root_b)
    throw std::invalid_argument("rooted_bl_distance: missing root");
  if (!pair.mass_a || !pair.mass_b)
    throw std::invalid_argument("rooted_bl_distance: missing masses");
  const auto da = root_distances(pair, pair.index_a, *pair.root_a);
  const auto db = root_distances(pair, pair.index_b, *pair.root_b);
  const auto bp = filtration_breakpoints(da, db);

  std::vector<double> vals(bp.size());
  const std::size_t n = pair.ambient.size();
  for (std::size_t k = 0; k < bp.size(); ++k) {
    const double r = bp[k];
    std::vector<double> mu(n, 0.0), nu(n, 0.0);
    for (std::size_t t = 0; t < pair.index_a.size(); ++t)
      if (da[t] <= r) mu[pair.index_a[t]] += (*pair.mass_a)[t];
    for (std::size_t t = 0; t < pair.index_b.size(); ++t)
      if (db[t] <= r) nu[pair.index_b[t]] += (*pair.mass_b)[t];
    vals[k] = std::min(1.0, bl_distance(pair.ambient, mu, nu, kappa));
  }
  return exp_step_integral(bp, vals);
}

double local_hausdorff_distance(const EmbeddedPair& pair) {
  pair.validate();
  if (!pair.root_a || !pair.root_b)
    throw std::invalid_argument("local_hausdorff_distance: missing root");
  const auto da = root_distances(pair, pair.index_a, *pair.root_a);
  const auto db = root_distances(pair, pair.index_b, *pair.root_b);
  const auto bp = filtration_breakpoints(da, db);

  std::vector<double> vals(bp.size());
  for (std::size_t k = 0; k < bp.size(); ++k) {
    const double r = bp[k];
    std::vector<std::size_t> ar, br;
    for (std::size_t t = 0; t < pair.index_a.size(); ++t)
      if (da[t] <= r) ar.push_back(pair.index_a[t]);
    for (std::size_t t = 0; t < pair.index_b.size(); ++t)
      if (db[t] <= r) br.push_back(pair.index_b[t]);
    if (ar.empty() && br.empty())
      vals[k] = 0.0;
    else if (ar.empty() || br.empty())
      vals[k] = 1.0;
    else {
      EmbeddedPair sub{pair.ambient, ar, br, std::nullopt, std::nullopt, std::nullopt,
                       std::nullopt};
      vals[k] = std::min(1.0, hausdorff_distance(sub));
    }
  }
  return exp_step_integral(bp, vals);
}

double ghp_embedded_distance(const EmbeddedPair& pair, double kappa, bool rooted) {
  pair.validate();
  if (!pair.mass_a || !pair.mass_b)
    throw std::invalid_argument("ghp_embedded_distance: missing masses");
  if (rooted && (!pair.root_a || !pair.root_b))
    throw std::invalid_argument("ghp_embedded_distance: rooted form needs roots");
  const std::size_t n = pair.ambient.size();
  std::vector<double> mu(n, 0.0), nu(n, 0.0);
  for (std::size_t t = 0; t < pair.index_a.size(); ++t) mu[pair.index_a[t]] += (*pair.mass_a)[t];
  for (std::size_t t = 0; t < pair.index_b.size(); ++t) nu[pair.index_b[t]] += (*pair.mass_b)[t];
  double v = std::max(hausdorff_distance(pair), bl_distance(pair.ambient, mu, nu, kappa));
  if (rooted) v = std::max(v, pair.ambient.dist(*pair.root_a, *pair.root_b));
  return v;
}

}  // namespace reslab
