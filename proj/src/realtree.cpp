#include "reslab/realtree.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "reslab/bl_distance.hpp"
#include "reslab/util.hpp"

namespace reslab {

CodedExcursion::CodedExcursion(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (grid_.size() < 2 || grid_.size() != values_.size())
    throw std::invalid_argument("CodedExcursion: need a grid of at least two points");
  if (grid_.front() != 0.0) throw std::invalid_argument("CodedExcursion: grid must start at 0");
  for (std::size_t i = 1; i < grid_.size(); ++i)
    if (!(grid_[i] > grid_[i - 1]))
      throw std::invalid_argument("CodedExcursion: grid must be strictly increasing");
  for (double v : values_)
    if (!(v >= 0.0)) throw std::invalid_argument("CodedExcursion: negative value");
  if (values_.front() != 0.0 || values_.back() != 0.0)
    throw std::invalid_argument("CodedExcursion: must vanish at both ends");
  sigma_ = 0.0;
  for (std::size_t i = 0; i + 1 < values_.size(); ++i)
    if (values_[i] > 0.0) sigma_ = grid_[i + 1];
}

double CodedExcursion::value_at(double t) const {
  if (t <= grid_.front()) return values_.front();
  if (t >= grid_.back()) return values_.back();
  std::size_t hi = std::upper_bound(grid_.begin(), grid_.end(), t) - grid_.begin();
  std::size_t lo = hi - 1;
  double w = (t - grid_[lo]) / (grid_[hi] - grid_[lo]);
  return values_[lo] + w * (values_[hi] - values_[lo]);
}

double CodedExcursion::inf_on(double s, double t) const {
  if (s > t) std::swap(s, t);
  double m = std::min(value_at(s), value_at(t));
  for (std::size_t i = 0; i < grid_.size(); ++i)
    if (grid_[i] > s && grid_[i] < t) m = std::min(m, values_[i]);
  return m;
}

double CodedExcursion::sup_norm_diff(const CodedExcursion& other) const {
  const double hi = std::min(sigma_, other.sigma_);
  std::vector<double> ts;
  for (double t : grid_)
    if (t <= hi) ts.push_back(t);
  for (double t : other.grid_)
    if (t <= hi) ts.push_back(t);
  ts.push_back(hi);
  double m = 0.0;
  for (double t : ts) m = std::max(m, std::abs(value_at(t) - other.value_at(t)));
  return m;
}

namespace {

struct Segment {
  double t0, t1, f0, f1;
  double slope() const { return (f1 - f0) / (t1 - t0); }
  double at(double t) const { return f0 + slope() * (t - t0); }
};

// linear pieces of the excursion restricted to [0, sigma]
std::vector<Segment> support_segments(const CodedExcursion& f) {
  std::vector<Segment> out;
  const auto& g = f.grid();
  const auto& v = f.values();
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    if (g[i] >= f.sigma()) break;
    double t1 = std::min(g[i + 1], f.sigma());
    double f1 = v[i] + (v[i + 1] - v[i]) * (t1 - g[i]) / (g[i + 1] - g[i]);
    out.push_back({g[i], t1, v[i], f1});
  }
  return out;
}

// minimal t - s with s in sa, t in sb (sb not earlier than sa), subject to
// the linear constraint F_b(t) - F_a(s) >= r (or the mirrored sign);
// +infinity when infeasible
double min_gap_one_sign(const Segment& sa, const Segment& sb, double r, bool b_above) {
  auto ok = [&](double s, double t) {
    double d = b_above ? sb.at(t) - sa.at(s) : sa.at(s) - sb.at(t);
    return t >= s - 1e-15 && d >= r - 1e-12;
  };
  double best = 1e300;
  auto consider = [&](double s, double t) {
    if (ok(s, t)) best = std::min(best, std::max(0.0, t - s));
  };
  for (double s : {sa.t0, sa.t1})
    for (double t : {sb.t0, sb.t1}) consider(s, t);
  auto solve_for_t = [&](double s) {
    double target = b_above ? sa.at(s) + r : sa.at(s) - r;
    double m = sb.slope();
    if (m == 0.0) return;
    double t = sb.t0 + (target - sb.f0) / m;
    if (t >= sb.t0 - 1e-12 && t <= sb.t1 + 1e-12) consider(s, std::clamp(t, sb.t0, sb.t1));
  };
  auto solve_for_s = [&](double t) {
    double target = b_above ? sb.at(t) - r : sb.at(t) + r;
    double m = sa.slope();
    if (m == 0.0) return;
    double s = sa.t0 + (target - sa.f0) / m;
    if (s >= sa.t0 - 1e-12 && s <= sa.t1 + 1e-12) consider(std::clamp(s, sa.t0, sa.t1), t);
  };
  solve_for_t(sa.t0);
  solve_for_t(sa.t1);
  solve_for_s(sb.t0);
  solve_for_s(sb.t1);
  return best;
}

}  // namespace

double CodedExcursion::modulus_inverse(double r) const {
  if (!(r > 0.0)) throw std::invalid_argument("modulus_inverse: r must be positive");
  const auto segs = support_segments(*this);
  double best = 1e300;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    double m = std::abs(segs[i].slope());
    if (m > 0.0) {
      double gap = r / m;
      if (gap <= segs[i].t1 - segs[i].t0 + 1e-15) best = std::min(best, gap);
    }
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      best = std::min(best, min_gap_one_sign(segs[i], segs[j], r, true));
      best = std::min(best, min_gap_one_sign(segs[i], segs[j], r, false));
    }
  }
  return best;  // +infinity when the oscillation never reaches r
}

double tree_pseudometric(const CodedExcursion& f, double s, double t) {
  return f.value_at(s) + f.value_at(t) - 2.0 * f.inf_on(s, t);
}

CodedTree build_coded_tree(const CodedExcursion& f) {
  const auto& grid = f.grid();
  const auto& val = f.values();
  std::size_t m = 0;
  while (m < grid.size() && grid[m] <= f.sigma()) ++m;
  if (m < 1) m = 1;

  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };

  Matrix d(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    double running = val[i];
    for (std::size_t j = i + 1; j < m; ++j) {
      running = std::min(running, val[j]);
      d(i, j) = d(j, i) = val[i] + val[j] - 2.0 * running;
      if (d(i, j) <= 1e-12) parent[find(i)] = find(j);
    }
  }

  CodedTree tree;
  std::vector<std::size_t> rep_of(m, m);
  std::vector<std::size_t> rep_index;
  tree.class_of.assign(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t root = find(i);
    if (rep_of[root] == m) {
      rep_of[root] = tree.rep_times.size();
      tree.rep_times.push_back(grid[i]);
      rep_index.push_back(i);
    }
    tree.class_of[i] = rep_of[root];
  }

  const std::size_t k = tree.rep_times.size();
  tree.metric = Matrix(k, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) tree.metric(a, b) = d(rep_index[a], rep_index[b]);

  // cell mass: midpoint cells partition [0, sigma]
  tree.mass.assign(k, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double lo = (i == 0) ? 0.0 : 0.5 * (grid[i - 1] + grid[i]);
    double hi = (i + 1 < grid.size()) ? 0.5 * (grid[i] + grid[i + 1]) : grid[i];
    lo = std::min(lo, f.sigma());
    hi = std::min(hi, f.sigma());
    if (hi > lo) tree.mass[tree.class_of[i]] += hi - lo;
  }
  return tree;
}

double ghp_bound(const CodedExcursion& f, const CodedExcursion& g, double kappa) {
  if (!(kappa > 0.0 && kappa <= 1.0)) throw std::invalid_argument("ghp_bound: bad kappa");
  const double u = f.sup_norm_diff(g);
  const double smin = std::min(f.sigma(), g.sigma());
  const double tail = std::abs(f.sigma() - g.sigma());
  const double holder = (u > 0.0) ? std::pow(2.0, kappa) * smin * std::pow(u, kappa) : 0.0;
  return 2.0 * u + holder + tail;
}

namespace {

CodedExcursion refine_to(const CodedExcursion& f, const std::vector<double>& grid) {
  std::vector<double> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = f.value_at(grid[i]);
  return CodedExcursion(grid, vals);
}

}  // namespace

CorrespondenceResult correspondence_embedding(const CodedExcursion& f, const CodedExcursion& g,
                                              double epsilon, double kappa) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("correspondence_embedding: epsilon <= 0");
  std::vector<double> grid;
  grid.insert(grid.end(), f.grid().begin(), f.grid().end());
  grid.insert(grid.end(), g.grid().begin(), g.grid().end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  CodedExcursion fr = refine_to(f, grid);
  CodedExcursion gr = refine_to(g, grid);
  CodedTree tf = build_coded_tree(fr);
  CodedTree tg = build_coded_tree(gr);

  // time-matched correspondence; times beyond a support clip to its end
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  const std::size_t mf = tf.class_of.size(), mg = tg.class_of.size();
  for (std::size_t i = 0; i < grid.size(); ++i)
    pairs.push_back({tf.class_of[std::min(i, mf - 1)], tg.class_of[std::min(i, mg - 1)]});
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  double dis = 0.0;
  for (std::size_t a = 0; a < pairs.size(); ++a)
    for (std::size_t b = a + 1; b < pairs.size(); ++b)
      dis = std::max(dis, std::abs(tf.metric(pairs[a].first, pairs[b].first) -
                                   tg.metric(pairs[a].second, pairs[b].second)));

  const std::size_t nf = tf.rep_times.size(), ng = tg.rep_times.size();
  const std::size_t n = nf + ng;
  Matrix dist(n, n);
  for (std::size_t a = 0; a < nf; ++a)
    for (std::size_t b = 0; b < nf; ++b) dist(a, b) = tf.metric(a, b);
  for (std::size_t a = 0; a < ng; ++a)
    for (std::size_t b = 0; b < ng; ++b) dist(nf + a, nf + b) = tg.metric(a, b);
  const double pad = 0.5 * dis + epsilon;
  for (std::size_t a = 0; a < nf; ++a)
    for (std::size_t b = 0; b < ng; ++b) {
      double best = 1e300;
      for (const auto& [pf, pg] : pairs)
        best = std::min(best, tf.metric(a, pf) + tg.metric(b, pg));
      dist(a, nf + b) = dist(nf + b, a) = best + pad;
    }

  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = (i < nf ? "f" : "g") + std::to_string(i);
  EmbeddedPair pair{FiniteMetricSpace(std::move(names), std::move(dist), 1e-9),
                    {},
                    {},
                    tf.mass,
                    tg.mass,
                    std::nullopt,
                    std::nullopt};
  pair.index_a.resize(nf);
  std::iota(pair.index_a.begin(), pair.index_a.end(), std::size_t{0});
  pair.index_b.resize(ng);
  std::iota(pair.index_b.begin(), pair.index_b.end(), nf);

  CorrespondenceResult out;
  out.distortion = dis;
  out.achieved_ghp = ghp_embedded_distance(pair, kappa, false);
  return out;
}

BallVolume ball_volume_bounds(const CodedExcursion& f, double t0, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("ball_volume_bounds: r must be positive");
  if (t0 < 0.0 || t0 > f.sigma())
    throw std::invalid_argument("ball_volume_bounds: time outside the support");
  BallVolume out;
  out.lower = std::min(f.modulus_inverse(0.5 * r), 0.5 * f.sigma());

  const double ft0 = f.value_at(t0);
  const auto segs = support_segments(f);

  auto dbar = [&](double t) {
    return f.value_at(t) + ft0 - 2.0 * f.inf_on(std::min(t, t0), std::max(t, t0));
  };
  // length of {t in [u,v] : q(t) < level} for a linear q with endpoint values
  auto linear_below = [](double u, double v, double qu, double qv, double level) {
    if (v <= u) return 0.0;
    if (qu < level && qv < level) return v - u;
    if (qu >= level && qv >= level) return 0.0;
    double cross = u + (level - qu) * (v - u) / (qv - qu);
    return (qu < level) ? cross - u : v - cross;
  };

  // The pseudometric restricted to a linear piece on one side of t0 is
  // piecewise linear with at most one kink, where the piece crosses the
  // running minimum toward t0. Splitting there makes linear interpolation of
  // the endpoint values exact.
  double measured = 0.0;
  for (const Segment& s : segs) {
    std::vector<double> cut{s.t0, s.t1};
    if (t0 > s.t0 && t0 < s.t1) cut.push_back(t0);
    std::sort(cut.begin(), cut.end());
    for (std::size_t p = 0; p + 1 < cut.size(); ++p) {
      double u = cut[p], v = cut[p + 1];
      if (v <= u) continue;
      double fu = f.value_at(u), fv = f.value_at(v);
      double slope = (fv - fu) / (v - u);
      std::vector<double> sub{u, v};
      if (slope != 0.0) {
        double gap_min =
            (v <= t0) ? f.inf_on(v, t0) : (u >= t0 ? f.inf_on(t0, u) : ft0);
        double w = u + (gap_min - fu) / slope;
        if (w > u + 1e-15 && w < v - 1e-15) sub.insert(sub.begin() + 1, w);
      }
      for (std::size_t q = 0; q + 1 < sub.size(); ++q)
        measured += linear_below(sub[q], sub[q + 1], dbar(sub[q]), dbar(sub[q + 1]), r);
    }
  }
  out.measured = measured;

  // component of {f > f(t0) - r} through t0, intersected with the band
  const double level = ft0 - r;
  double left = 0.0, right = f.sigma();
  if (level >= 0.0) {
    for (const Segment& s : segs) {
      double lo = s.t0, hi = std::min(s.t1, t0);
      if (hi <= lo) continue;
      double flo = s.at(lo), fhi = s.at(hi);
      // rightmost point of [lo,hi] with f <= level
      if (flo <= level || fhi <= level) {
        double cand;
        if (fhi <= level)
          cand = hi;
        else
          cand = lo + (level - flo) / s.slope();
        left = std::max(left, std::min(cand, hi));
      }
    }
    bool found_right = false;
    for (const Segment& s : segs) {
      if (found_right) break;
      double lo = std::max(s.t0, t0), hi = s.t1;
      if (hi <= lo) continue;
      double flo = s.at(lo), fhi = s.at(hi);
      // leftmost point of [lo,hi] with f <= level
      if (flo <= level || fhi <= level) {
        double cand;
        if (flo <= level)
          cand = lo;
        else
          cand = lo + (level - flo) / s.slope();
        right = std::max(lo, std::min(cand, hi));
        found_right = true;
      }
    }
  }
  double upper = 0.0;
  for (const Segment& s : segs) {
    double u = std::max(s.t0, left), v = std::min(s.t1, right);
    if (v <= u) continue;
    upper += linear_below(u, v, s.at(u), s.at(v), ft0 + r);
  }
  out.upper = upper;
  return out;
}

CodedExcursion CodedExcursion::random_walk_excursion(std::size_t steps, std::uint64_t seed) {
  if (steps < 2) throw std::invalid_argument("random_walk_excursion: need at least two steps");
  SplitMix64 rng(seed);
  const std::size_t n2 = 2 * steps;
  std::vector<int> incr(n2, 1);
  for (std::size_t i = steps; i < n2; ++i) incr[i] = -1;
  for (std::size_t i = n2 - 1; i > 0; --i)
    std::swap(incr[i], incr[rng.next_below(i + 1)]);
  std::vector<int> walk(n2 + 1, 0);
  for (std::size_t i = 0; i < n2; ++i) walk[i + 1] = walk[i] + incr[i];
  std::size_t argmin = 0;
  for (std::size_t i = 1; i <= n2; ++i)
    if (walk[i] < walk[argmin]) argmin = i;
  // rotate the bridge at its first minimum: the result stays nonnegative
  const int vmin = walk[argmin];
  const double scale = 1.0 / std::sqrt(static_cast<double>(n2));
  std::vector<double> vals(n2 + 1, 0.0);
  for (std::size_t i = 0; i <= n2; ++i) {
    std::size_t j = argmin + i;
    int v = (j <= n2) ? walk[j] : walk[j - n2];
    vals[i] = (v - vmin) * scale;
  }
  vals[0] = 0.0;
  vals[n2] = 0.0;
  std::vector<double> grid(n2 + 1);
  for (std::size_t i = 0; i <= n2; ++i) grid[i] = static_cast<double>(i) / n2;
  return CodedExcursion(std::move(grid), std::move(vals));
}

CodedExcursion load_excursion_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<double> grid, vals;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double t, v;
    if (ss >> t >> v) {
      grid.push_back(t);
      vals.push_back(v);
    }
  }
  return CodedExcursion(std::move(grid), std::move(vals));
}

}  // namespace reslab
