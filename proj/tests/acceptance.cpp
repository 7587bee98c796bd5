// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in code next to each check.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "reslab/bl_distance.hpp"
#include "reslab/btm.hpp"
#include "reslab/exponents.hpp"
#include "reslab/metric_space.hpp"
#include "reslab/realtree.hpp"
#include "reslab/resistance_network.hpp"
#include "reslab/sierpinski.hpp"
#include "reslab/spectral.hpp"
#include "reslab/util.hpp"

using namespace reslab;
using reslab::testing::random_measure;
using reslab::testing::random_network;

namespace {

int g_failures = 0;

void verdict(int id, bool pass, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, what.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string num(double v) { return format_double(v); }

// ---------------------------------------------------------------- criterion 1
void criterion_exponents() {
  namespace ex = reslab::exponents;
  auto sg = ex::sierpinski_exponents(1.0);
  bool ok = std::abs(sg.sg1 - 0.0956756) <= 1e-6 && std::abs(sg.hk1 - 0.0867505) <= 1e-6;
  double amin = ex::btm_annealed_alpha_min(1.0);
  ok = ok && (amin == 121.0 / 14.0);
  auto an = ex::btm_annealed_exponents(9.0, 1.0);
  ok = ok && (an.hk_sup == 1.0 / 42.0);
  verdict(1, ok, "headline exponents reproduced",
          "sg1=" + num(sg.sg1) + " hk1=" + num(sg.hk1) + " alpha_min=" + num(amin) +
              " hk_sup=" + num(an.hk_sup));
}

// ------------------------------------------------------------- criteria 2..5
struct GraphCase {
  ResistanceNetwork net;
  NetworkMeasure mu;
};

std::vector<GraphCase> graph_corpus(int count, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<GraphCase> out;
  while (static_cast<int>(out.size()) < count) {
    std::size_t n = 4 + rng.next_below(9);  // up to 12 vertices
    auto net = random_network(n, rng);
    NetworkMeasure mu(random_measure(n, rng));
    out.push_back({std::move(net), std::move(mu)});
  }
  return out;
}

void criterion_green(const std::vector<GraphCase>& corpus, std::uint64_t seed) {
  SplitMix64 rng(seed);
  double worst = 0.0;
  for (const auto& g : corpus) {
    const std::size_t n = g.net.size();
    std::vector<std::size_t> a{rng.next_below(n)};
    if (rng.next_unit() < 0.5) a.push_back(rng.next_below(n));
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    if (a.size() >= n) a.resize(1);
    std::vector<std::size_t> alive;
    std::vector<char> dead(n, 0);
    for (auto v : a) dead[v] = 1;
    for (std::size_t v = 0; v < n; ++v)
      if (!dead[v]) alive.push_back(v);
    Matrix lu = g.net.killed_laplacian(a);
    Cholesky chol(lu);
    for (std::size_t i = 0; i < alive.size(); ++i) {
      std::vector<double> e(alive.size(), 0.0);
      e[i] = 1.0;
      auto col = chol.solve(e);
      for (std::size_t j = 0; j < alive.size(); ++j)
        worst = std::max(worst,
                         std::abs(g.net.green_function(a, alive[j], alive[i]) - col[j]));
    }
  }
  verdict(2, worst <= 1e-9, "killed Green formula vs restricted inverse",
          "max error " + num(worst) + " <= 1e-9");
}

void criterion_commute(const std::vector<GraphCase>& corpus, std::uint64_t seed) {
  SplitMix64 rng(seed);
  double worst = 0.0;
  for (const auto& g : corpus) {
    std::size_t n = g.net.size();
    std::size_t x = rng.next_below(n), y = rng.next_below(n);
    if (x == y) y = (y + 1) % n;
    double commute =
        expected_hitting_time(g.net, g.mu, x, y) + expected_hitting_time(g.net, g.mu, y, x);
    worst = std::max(worst,
                     std::abs(commute - g.net.effective_resistance(x, y) * g.mu.total()));
  }
  verdict(3, worst <= 1e-9, "commute-time identity", "max error " + num(worst) + " <= 1e-9");
}

void criterion_resolvent(const std::vector<GraphCase>& corpus, std::uint64_t seed) {
  SplitMix64 rng(seed);
  double worst = 0.0;
  for (const auto& g : corpus) {
    std::size_t n = g.net.size();
    std::size_t x = rng.next_below(n);
    std::vector<double> f(n);
    for (auto& v : f) v = rng.uniform(-1.0, 1.0);
    double alpha = 0.5 / (g.net.resistance_diameter() * g.mu.total());
    auto series = resolvent_series(g.net, g.mu, x, alpha, f, 1e-12);
    auto direct = resolvent_direct(g.net, g.mu, x, alpha, f);
    for (std::size_t v = 0; v < n; ++v)
      worst = std::max(worst, std::abs(series[v] - direct[v]));
  }
  verdict(4, worst <= 1e-8, "resolvent series vs direct solve",
          "max error " + num(worst) + " <= 1e-8");
}

void criterion_heat_kernel(const std::vector<GraphCase>& corpus, std::uint64_t seed) {
  SplitMix64 rng(seed);
  double worst_identity = 0.0;
  double worst_lip = 0.0;
  for (const auto& g : corpus) {
    const std::size_t n = g.net.size();
    SpectralDecomposition spec(g.net, g.mu);
    double t = rng.uniform(0.05, 1.5), s = rng.uniform(0.05, 1.5);
    for (std::size_t x = 0; x < n; ++x) {
      double total = 0.0;
      for (std::size_t y = 0; y < n; ++y) {
        double p = spec.heat_kernel(t, x, y);
        worst_identity = std::max(worst_identity, std::abs(p - spec.heat_kernel(t, y, x)));
        worst_identity = std::max(worst_identity, std::max(0.0, -p));
        total += p * g.mu.mass[y];
        double ck = 0.0;
        for (std::size_t z = 0; z < n; ++z)
          ck += spec.heat_kernel(t, x, z) * spec.heat_kernel(s, y, z) * g.mu.mass[z];
        worst_identity = std::max(worst_identity, std::abs(ck - spec.heat_kernel(t + s, x, y)));
      }
      worst_identity = std::max(worst_identity, std::abs(total - 1.0));
    }
    // killed potential density is 2-Lipschitz in resistance
    std::vector<std::size_t> a{rng.next_below(n)};
    SpectralDecomposition killed(g.net, g.mu, a);
    double alpha = rng.uniform(0.2, 2.0);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) {
          double gap = std::abs(killed.potential_density(alpha, x, y) -
                                killed.potential_density(alpha, x, z));
          worst_lip =
              std::max(worst_lip, gap - 2.0 * g.net.effective_resistance(y, z));
        }
  }
  bool ok = worst_identity <= 1e-9 && worst_lip <= 1e-10;
  verdict(5, ok, "heat-kernel identities and killed 2-Lipschitz bound",
          "max identity error " + num(worst_identity) + " <= 1e-9, Lipschitz excess " +
              num(worst_lip) + " <= 1e-10");
}

// ---------------------------------------------------------------- criterion 6
// brute-force oracle: grid over (f1, f2) at step 1e-3, with the third value
// optimized exactly over its feasible interval (the norm is convex in f3)
double three_point_oracle(const Matrix& dk, const std::vector<double>& w) {
  const double c12 = dk(0, 1), c13 = dk(0, 2), c23 = dk(1, 2);
  const double step = 1e-3;
  double best = 0.0;
  auto norm_f3 = [&](double f1, double f2, double a, double b, double f3) {
    double sup = std::max(a, std::abs(f3));
    double hold = std::max(b, std::max(std::abs(f3 - f1) / c13, std::abs(f3 - f2) / c23));
    return sup + hold;
  };
  for (double f1 = -1.0; f1 <= 1.0 + 1e-12; f1 += step) {
    for (double f2 = -1.0; f2 <= 1.0 + 1e-12; f2 += step) {
      double a = std::max(std::abs(f1), std::abs(f2));
      double b = std::abs(f1 - f2) / c12;
      if (a + b > 1.0) continue;  // no feasible f3
      // convex in f3: ternary search for the minimizer, then edge bisection
      double lo = -1.5, hi = 1.5;
      for (int it = 0; it < 60; ++it) {
        double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (norm_f3(f1, f2, a, b, m1) < norm_f3(f1, f2, a, b, m2))
          hi = m2;
        else
          lo = m1;
      }
      double fmin = 0.5 * (lo + hi);
      if (norm_f3(f1, f2, a, b, fmin) > 1.0) continue;
      double f3;
      if (w[2] > 0.0) {
        double l = fmin, h = 1.5;
        for (int it = 0; it < 60; ++it) {
          double m = 0.5 * (l + h);
          (norm_f3(f1, f2, a, b, m) <= 1.0 ? l : h) = m;
        }
        f3 = l;
      } else {
        double l = -1.5, h = fmin;
        for (int it = 0; it < 60; ++it) {
          double m = 0.5 * (l + h);
          (norm_f3(f1, f2, a, b, m) <= 1.0 ? h : l) = m;
        }
        f3 = h;
      }
      best = std::max(best, w[0] * f1 + w[1] * f2 + w[2] * f3);
    }
  }
  return best;
}

void criterion_bl_oracle() {
  // two-point closed form first
  Matrix d2(2, 2);
  d2(0, 1) = d2(1, 0) = 1.0;
  FiniteMetricSpace two({"p", "q"}, d2, 1e-12);
  double delta_pair = bl_distance(two, {1.0, 0.0}, {0.0, 1.0}, 1.0);
  bool ok = std::abs(delta_pair - 2.0 / 3.0) <= 1e-9;

  // deterministic family of three-point spaces with grid masses
  const double dists[][3] = {
      {1.0, 1.0, 1.0}, {1.0, 1.0, 2.0}, {1.0, 2.0, 2.0}, {2.0, 2.0, 2.0}, {0.5, 1.0, 1.4}};
  const double masses[][6] = {
      {1, 0, 0, 0, 1, 0}, {2, 0, 1, 0, 0, 1},    {1, 1, 0, 0, 0, 2},
      {0.5, 1, 2, 1, 0, 0}, {1, 2, 0, 2, 0, 1},  {0, 0.5, 1, 1, 0.5, 0},
      {2, 1, 1, 0, 0, 0}, {1, 0.5, 0.5, 0, 2, 0.5}};
  double worst = 0.0;
  for (const auto& dd : dists) {
    Matrix d(3, 3);
    d(0, 1) = d(1, 0) = dd[0];
    d(0, 2) = d(2, 0) = dd[1];
    d(1, 2) = d(2, 1) = dd[2];
    FiniteMetricSpace sp({"a", "b", "c"}, d, 1e-12);
    for (const auto& mm : masses) {
      std::vector<double> mu{mm[0], mm[1], mm[2]}, nu{mm[3], mm[4], mm[5]};
      double lp = bl_distance(sp, mu, nu, 1.0);
      std::vector<double> w{mu[0] - nu[0], mu[1] - nu[1], mu[2] - nu[2]};
      double oracle = three_point_oracle(d, w);
      worst = std::max(worst, std::abs(lp - oracle));
    }
  }
  ok = ok && worst <= 5e-3;
  verdict(6, ok, "BL optimum vs function-grid search",
          "delta-pair " + num(delta_pair) + ", max grid gap " + num(worst) + " <= 5e-3");
}

// ---------------------------------------------------------------- criterion 7
void criterion_sg_structure() {
  bool counts_ok = true;
  for (int n = 0; n <= 4; ++n) {
    SgLevel lvl(n);
    std::size_t pow3 = 1;
    for (int k = 0; k < n; ++k) pow3 *= 3;
    counts_ok = counts_ok && lvl.n_vertices() == 3 * (pow3 + 1) / 2 &&
                lvl.n_edges() == 3 * pow3;
  }
  double worst_decim = 0.0;
  for (int n = 0; n <= 4; ++n) worst_decim = std::max(worst_decim, decimation_check(n));
  SgLevel l5(5);
  double slope = euclid_resistance_fit(l5);
  bool ok = counts_ok && worst_decim <= 1e-9 && slope >= 0.70 && slope <= 0.78;
  verdict(7, ok, "gasket structure, decimation and log-slope",
          std::string("counts ") + (counts_ok ? "exact" : "WRONG") + ", decimation " +
              num(worst_decim) + " <= 1e-9, slope " + num(slope) + " in [0.70, 0.78]");
}

// ---------------------------------------------------------------- criterion 8
void criterion_sg_rates() {
  auto dh = sg_hausdorff_decay(5, true);
  auto db = sg_measure_decay(5, 1.0, true);
  double rh = dh[4] / dh[3];
  double rb = db[4] / db[3];
  bool ratios_ok = std::abs(rh - 0.6) <= 0.05 && std::abs(rb - 0.6) <= 0.1;

  auto rows = sg_semigroup_error(2, 6, 1.0);  // errors for n = 2..5 at t = 1
  auto e = reslab::exponents::sierpinski_exponents(1.0);
  auto shape = [&](int n) {
    return std::pow(3.0 / 5.0, e.sg1 * n) * std::pow(double(n), e.sg2);
  };
  double calib = rows.front().err / shape(rows.front().n);
  bool bound_ok = true;
  for (const auto& r : rows) bound_ok = bound_ok && r.err <= calib * shape(r.n) + 1e-15;
  verdict(8, ratios_ok && bound_ok, "gasket decay ratios and semigroup bound",
          "hausdorff ratio " + num(rh) + " (0.6 +- 0.05), measure ratio " + num(rb) +
              " (0.6 +- 0.1), bound " + (bound_ok ? "holds for n <= 5" : "VIOLATED"));
}

// ---------------------------------------------------------------- criterion 9
void criterion_btm_flat() {
  auto flat = TrapEnvironment::constant(1 << 14, 1.0);
  std::vector<double> errs;
  for (int n : {64, 128, 256, 512}) {
    BtmChain chain(flat, n, default_window_radius(1.0), ChainConvention::paper_generator);
    errs.push_back(quenched_cdf_error(chain, 1.0));
  }
  bool ok = true;
  std::string detail = "factors";
  for (std::size_t k = 1; k < errs.size(); ++k) {
    double factor = errs[k - 1] / errs[k];
    detail += " " + num(factor);
    ok = ok && factor >= 1.3 && factor <= 2.8;
  }
  verdict(9, ok, "flat-trap chain refines at the central-limit rate",
          detail + " all in [1.3, 2.8]");
}

// --------------------------------------------------------------- criterion 10
void criterion_btm_quenched() {
  const double alpha = 3.0, t = 1.0;
  const std::vector<int> ns{100, 200, 400, 800};
  const int seeds = 20;
  const double threshold = 0.75 * (2.0 / 11.0) * 0.5;

  std::vector<double> exponents(seeds, 0.0);
  std::vector<char> exit_ok(seeds, 1);
  parallel_for(seeds, [&](std::size_t s) {
    std::vector<double> xs, ys;
    for (int n : ns) {
      auto r = run_quenched(alpha, hash_combine(4242, s), n, t, 1.0, 2.0, false);
      xs.push_back(n);
      ys.push_back(r.cdf_err);
    }
    exponents[s] = rate_fit(xs, ys).exponent;
    // exit probabilities against the sub-gaussian bound on the largest chain
    const double radius = default_window_radius(t);
    const int window = static_cast<int>(std::floor(800.0 * radius)) + 1;
    auto env = TrapEnvironment::sample(alpha, window, hash_combine(4242, s));
    BtmChain chain(env, 800, radius, ChainConvention::paper_generator);
    for (double r : {2.0, 3.0, 5.0}) {
      double p = chain.exit_probability(t, 0, r);
      double bound = 4.0 * std::exp(-r * r / (8.0 * t));
      if (p > bound + 1e-12) exit_ok[s] = 0;
    }
  });
  int good = 0, exits = 0;
  double min_exp = 1e300;
  for (int s = 0; s < seeds; ++s) {
    if (exponents[s] >= threshold) ++good;
    if (exit_ok[s]) ++exits;
    min_exp = std::min(min_exp, exponents[s]);
  }
  bool ok = good >= 18 && exits == seeds;  // >= 90% of 20 seeds
  verdict(10, ok, "trap-chain quenched distribution rate",
          std::to_string(good) + "/20 seeds above " + num(threshold) + " (min fit " +
              num(min_exp) + "), exit bound " + (exits == seeds ? "held" : "VIOLATED"));
}

// --------------------------------------------------------------- criterion 11
void criterion_trees() {
  SplitMix64 rng(31337);
  const double eps = 1e-9;
  bool ok = true;
  std::string why = "all inequalities held";
  double worst_fp = 0.0;
  for (int rep = 0; rep < 100 && ok; ++rep) {
    auto f = CodedExcursion::random_walk_excursion(16, rng.next_u64());
    auto g = CodedExcursion::random_walk_excursion(16, rng.next_u64());
    auto res = correspondence_embedding(f, g, eps, 1.0);
    if (res.distortion > 4.0 * f.sup_norm_diff(g) + 1e-12) {
      ok = false;
      why = "distortion exceeded 4 sup|f-g|";
    }
    if (res.achieved_ghp > ghp_bound(f, g, 1.0) + 2.0 * eps) {
      ok = false;
      why = "embedded value exceeded bound + 2 eps";
    }
    auto tree = build_coded_tree(f);
    const std::size_t k = tree.rep_times.size();
    for (int trial = 0; trial < 100; ++trial) {
      std::size_t a = rng.next_below(k), b = rng.next_below(k);
      std::size_t c = rng.next_below(k), d = rng.next_below(k);
      double lhs = tree.metric(a, b) + tree.metric(c, d);
      double rhs = std::max(tree.metric(a, c) + tree.metric(b, d),
                            tree.metric(a, d) + tree.metric(b, c));
      worst_fp = std::max(worst_fp, lhs - rhs);
    }
  }
  ok = ok && worst_fp <= 1e-10;
  verdict(11, ok, "coded-tree embedding bounds and four-point condition",
          why + ", four-point excess " + num(worst_fp) + " <= 1e-10");
}

// --------------------------------------------------------------- criterion 12
void criterion_metric_core() {
  SplitMix64 rng(2024);
  double worst_ball = -1e300;
  for (int rep = 0; rep < 200; ++rep) {
    std::size_t n = 2 + rng.next_below(7);
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = rng.uniform(0.0, 2.0);
      ys[i] = rng.uniform(0.0, 2.0);
    }
    Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        d(i, j) = std::hypot(xs[i] - xs[j], ys[i] - ys[j]);
    std::vector<std::string> names(n, "p");
    FiniteMetricSpace sp(names, d, 1e-9);
    std::vector<double> mu(n), nu(n);
    for (auto& v : mu) v = rng.uniform(0.0, 2.0);
    for (auto& v : nu) v = rng.uniform(0.0, 2.0);
    double kappa = rng.uniform(0.4, 1.0);
    double dist = bl_distance(sp, mu, nu, kappa);
    std::size_t x = rng.next_below(n);
    double r = rng.uniform(0.0, 2.5), rho = rng.uniform(0.05, 1.5);
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (sp.dist(x, i) < r) lhs += nu[i];
      if (sp.dist(x, i) < r + rho) rhs += mu[i];
    }
    rhs += (1.0 + std::pow(rho, -kappa)) * dist;
    worst_ball = std::max(worst_ball, lhs - rhs);
  }

  double worst_ext = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    std::size_t n = 3 + rng.next_below(6);
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = rng.uniform(0.0, 2.0);
      ys[i] = rng.uniform(0.0, 2.0);
    }
    Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        d(i, j) = std::hypot(xs[i] - xs[j], ys[i] - ys[j]);
    std::vector<std::string> names(n, "p");
    FiniteMetricSpace sp(names, d, 1e-9);
    double kappa = rng.uniform(0.4, 1.0);
    PartialFunction f;
    for (std::size_t i = 0; i < n; ++i)
      if (rng.next_unit() < 0.6) {
        f.domain.push_back(i);
        f.values.push_back(rng.uniform(-2.0, 2.0));
      }
    if (f.domain.empty()) continue;
    auto base = bl_norm(sp, f, kappa);
    auto ext = mcshane_extend(sp, f, kappa);
    PartialFunction full;
    for (std::size_t i = 0; i < n; ++i) {
      full.domain.push_back(i);
      full.values.push_back(ext[i]);
    }
    auto after = bl_norm(sp, full, kappa);
    worst_ext = std::max({worst_ext, std::abs(after.sup - base.sup),
                          std::abs(after.holder - base.holder)});
  }
  bool ok = worst_ball <= 1e-9 && worst_ext <= 1e-12;
  verdict(12, ok, "ball inequality and extension norm preservation",
          "ball excess " + num(worst_ball) + " <= 1e-9, extension drift " + num(worst_ext) +
              " <= 1e-12");
}

}  // namespace

int main() {
  criterion_exponents();
  auto corpus = graph_corpus(50, 20240);
  criterion_green(corpus, 1);
  criterion_commute(corpus, 2);
  criterion_resolvent(corpus, 3);
  criterion_heat_kernel(corpus, 4);
  criterion_bl_oracle();
  criterion_sg_structure();
  criterion_sg_rates();
  criterion_btm_flat();
  criterion_btm_quenched();
  criterion_trees();
  criterion_metric_core();
  std::printf("%d of 12 criteria passed\n", 12 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
