#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "reslab/btm.hpp"
#include "reslab/metric_space.hpp"
#include "reslab/bl_distance.hpp"
#include "reslab/resistance_network.hpp"
#include "reslab/spectral.hpp"
#include "reslab/util.hpp"

using namespace reslab;

TEST_CASE("environment sampling: law, determinism, degeneration") {
  auto env = TrapEnvironment::sample(2.5, 50000, 42);
  auto env2 = TrapEnvironment::sample(2.5, 50000, 42);
  CHECK(env.tau == env2.tau);
  for (double v : env.tau) CHECK(v > 1.0);

  // empirical tail against u^-alpha with 3-sigma binomial bands
  const double alpha = 2.5;
  const std::size_t n = env.tau.size();
  for (double u : {2.0, 4.0, 8.0}) {
    double p = std::pow(u, -alpha);
    std::size_t hits = 0;
    for (double v : env.tau)
      if (v > u) ++hits;
    double sigma = std::sqrt(p * (1.0 - p) * n);
    CHECK(std::abs(double(hits) - p * n) <= 3.0 * sigma);
  }

  // huge alpha: depths collapse toward 1
  auto flat = TrapEnvironment::sample(1e6, 1000, 7);
  for (double v : flat.tau) CHECK(v < 1.0001);

  // window growth keeps earlier sites
  auto small = TrapEnvironment::sample(2.5, 100, 42);
  for (int s = -100; s <= 100; ++s) CHECK(small.tau_at(s) == env.tau_at(s));
}

TEST_CASE("chain construction invariants") {
  auto env = TrapEnvironment::sample(3.0, 200, 5);
  BtmChain chain(env, 16, 10.0, ChainConvention::paper_generator);
  CHECK(chain.size() == 2 * 160 + 1);
  CHECK(chain.reversibility_defect() <= 1e-12);
  CHECK(chain.generator_rowsum_defect() <= 1e-9);
  CHECK(chain.edge_conductance() == 8.0);  // n/2

  BtmChain unit(env, 16, 10.0, ChainConvention::unit_resistance);
  CHECK(unit.edge_conductance() == 16.0);  // resistance metric = Euclidean

  // flat traps give the simple walk at rate n^2/2 per side
  auto flat = TrapEnvironment::constant(100, 1.0);
  BtmChain srw(flat, 10, 5.0, ChainConvention::paper_generator);
  const auto& d = srw.sym_diag();
  CHECK(std::abs(d[1] - 2.0 * 10.0 * 10.0 / 2.0) < 1e-9);  // interior rate sum

  CHECK_THROWS(BtmChain(env, 64, 10.0, ChainConvention::paper_generator));  // window too small
}

TEST_CASE("chain kernel against the dense network solver") {
  auto env = TrapEnvironment::sample(2.0, 64, 11);
  const int n = 8;
  BtmChain chain(env, n, 4.0, ChainConvention::paper_generator);
  const std::size_t sz = chain.size();

  std::vector<Edge> edges;
  std::vector<double> mass(sz);
  for (std::size_t i = 0; i < sz; ++i) mass[i] = chain.mass(i);
  for (std::size_t i = 0; i + 1 < sz; ++i) edges.push_back({i, i + 1, chain.edge_conductance()});
  ResistanceNetwork net(sz, edges);
  NetworkMeasure mu(mass);
  SpectralDecomposition spec(net, mu);

  for (double t : {0.05, 0.3, 1.0}) {
    auto row = chain.kernel_row(t, 0);
    std::size_t x = chain.index_of_site(0);
    double total = 0.0;
    for (std::size_t j = 0; j < sz; ++j) {
      CHECK(std::abs(row[j] - spec.heat_kernel(t, x, j)) < 1e-8);
      total += row[j] * chain.mass(j);
    }
    CHECK(std::abs(total - 1.0) < 1e-8);  // conservative
    // symmetry through the two-argument form
    CHECK(std::abs(chain.heat_kernel(t, -3, 5) - chain.heat_kernel(t, 5, -3)) < 1e-12);
  }
}

TEST_CASE("limit kernel and cdf") {
  for (double mean : {1.0, 1.5, 3.0}) {
    // density with respect to mean * Lebesgue integrates to one
    double total = 0.0;
    const double h = 1e-3;
    for (double y = -20.0; y < 20.0; y += h)
      total += limit_heat_kernel(mean, 1.0, 0.3, y + 0.5 * h) * mean * h;
    CHECK(std::abs(total - 1.0) < 1e-6);
    CHECK(limit_heat_kernel(mean, 0.7, 0.2, 1.2) == limit_heat_kernel(mean, 0.7, 1.2, 0.2));
    CHECK(std::abs(limit_cdf(mean, 1.0, 0.0) - 0.5) < 1e-12);
    CHECK(limit_cdf(mean, 1.0, 8.0) > 1.0 - 1e-8);
  }
}

TEST_CASE("flat-trap chain approaches the gaussian limit") {
  auto flat = TrapEnvironment::constant(4000, 1.0);
  double prev = 0.0;
  for (int n : {16, 32, 64}) {
    BtmChain chain(flat, n, 16.0, ChainConvention::paper_generator);
    double err = quenched_cdf_error(chain, 1.0);
    if (prev > 0.0) {
      CHECK(err < prev);  // refinement helps
      double factor = prev / err;
      CHECK(factor > 1.2);
      CHECK(factor < 3.0);
    }
    prev = err;
  }
}

TEST_CASE("exit probability respects the sub-gaussian bound") {
  auto env = TrapEnvironment::sample(3.0, 2000, 9);
  BtmChain chain(env, 50, 16.0, ChainConvention::paper_generator);
  for (double r : {2.0, 4.0, 6.0}) {
    for (double t : {0.5, 1.0}) {
      double p = chain.exit_probability(t, 0, r);
      CHECK(p >= 0.0);
      CHECK(p <= std::min(1.0, 4.0 * std::exp(-r * r / (8.0 * t))) + 1e-9);
    }
  }
  CHECK_THROWS(chain.exit_probability(1e-4, 0, 2.0));  // r > 4nt
}

TEST_CASE("bl error: line solver matches the LP on small windows") {
  auto env = TrapEnvironment::sample(2.2, 100, 13);
  const int n = 8;  // grid of 129 points fits the dense LP
  double line = quenched_bl_error(env, n, 1.0, 1.0);

  const int per = 8, m = n;
  const double step = 1.0 / (per * double(n));
  const std::size_t sz = 2 * per * m + 1;
  std::vector<double> coords(sz), mu(sz, 0.0), nu(sz, 0.0);
  for (std::size_t k = 0; k < sz; ++k) {
    coords[k] = (double(k) - per * m) * step;
    mu[k] = env.mean_tau * ((k == 0 || k + 1 == sz) ? 0.5 * step : step);
  }
  for (int site = -m; site <= m; ++site)
    nu[per * (site + m)] += env.tau_at(site) / double(n);
  auto sp = FiniteMetricSpace::from_coords_1d(coords);
  double lp = bl_distance(sp, mu, nu, 1.0);
  CHECK(std::abs(line - lp) < 1e-6);

  // fractional kappa takes the LP path
  double frac = quenched_bl_error(env, n, 1.0, 0.8);
  CHECK(frac > 0.0);
}

TEST_CASE("bl error decays roughly like the law of large numbers") {
  // Deep traps enter the window as n grows, so a single environment
  // fluctuates; the average over environments shows the clean decay.
  std::vector<double> ns{64, 128, 256, 512}, errs(ns.size(), 0.0);
  const int seeds = 6;
  for (int s = 0; s < seeds; ++s) {
    auto env = TrapEnvironment::sample(3.0, 1 << 13, hash_combine(17, s));
    for (std::size_t k = 0; k < ns.size(); ++k)
      errs[k] += quenched_bl_error(env, static_cast<int>(ns[k]), 1.0, 1.0) / seeds;
  }
  CHECK(errs.back() < errs.front());
  auto fit = rate_fit(ns, errs);
  CHECK(fit.exponent > 0.3);  // target 1/2 up to logs
}

TEST_CASE("rate fit on exact power data") {
  std::vector<double> ns{100, 200, 400, 800}, errs;
  for (double n : ns) errs.push_back(3.0 * std::pow(n, -0.62));
  auto fit = rate_fit(ns, errs);
  CHECK(std::abs(fit.exponent - 0.62) < 1e-10);
  CHECK(fit.band < 1e-9);
}

TEST_CASE("quenched experiment produces sane errors") {
  auto res = run_quenched(3.0, 99, 50, 1.0, 1.0, 2.0, true);
  CHECK(res.cdf_err > 0.0);
  CHECK(res.cdf_err < 0.5);
  CHECK(res.hk_err > 0.0);
  CHECK(res.bl_err > 0.0);
}
