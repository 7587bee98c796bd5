#include "reslab/btm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "reslab/bl_distance.hpp"
#include "reslab/linalg.hpp"
#include "reslab/metric_space.hpp"

namespace reslab {

double TrapEnvironment::tau_at(int site) const {
  if (site < -window || site > window)
    throw std::invalid_argument("TrapEnvironment: site outside the window");
  return tau[static_cast<std::size_t>(site + window)];
}

TrapEnvironment TrapEnvironment::sample(double alpha, int window, std::uint64_t seed) {
  if (!(alpha > 1.0)) throw std::invalid_argument("TrapEnvironment: requires alpha > 1");
  if (window < 0) throw std::invalid_argument("TrapEnvironment: negative window");
  TrapEnvironment env;
  env.alpha = alpha;
  env.window = window;
  env.seed = seed;
  env.mean_tau = alpha / (alpha - 1.0);
  env.tau.resize(2 * window + 1);
  for (int site = -window; site <= window; ++site) {
    // keyed draw: stable under window growth
    SplitMix64 g(hash_combine(seed, static_cast<std::uint64_t>(site + (1 << 30))));
    double u = g.next_unit();
    env.tau[static_cast<std::size_t>(site + window)] = std::pow(u, -1.0 / alpha);
  }
  return env;
}

TrapEnvironment TrapEnvironment::constant(int window, double tau_value) {
  if (!(tau_value >= 1.0)) throw std::invalid_argument("TrapEnvironment: tau must be >= 1");
  TrapEnvironment env;
  env.alpha = std::numeric_limits<double>::infinity();
  env.window = window;
  env.seed = 0;
  env.mean_tau = tau_value;
  env.tau.assign(2 * window + 1, tau_value);
  return env;
}

struct BtmChain::EigenCache {
  std::mutex lock;
  double cutoff = -1.0;
  TridiagPartialEigen eigen;
};

BtmChain::BtmChain(const TrapEnvironment& env, int n, double window_radius,
                   ChainConvention convention)
    : n_(n), radius_(window_radius), convention_(convention) {
  if (n < 1) throw std::invalid_argument("BtmChain: n must be positive");
  if (!(window_radius > 0.0)) throw std::invalid_argument("BtmChain: radius must be positive");
  const int m = static_cast<int>(std::floor(double(n) * window_radius));
  if (m > env.window) throw std::invalid_argument("BtmChain: environment window too small");
  if (m < 1) throw std::invalid_argument("BtmChain: window shorter than one lattice step");
  site_lo_ = -m;
  site_hi_ = m;
  conductance_ = (convention == ChainConvention::paper_generator) ? 0.5 * n : double(n);
  mean_tau_ = env.mean_tau;

  const std::size_t sz = static_cast<std::size_t>(2 * m + 1);
  mass_.resize(sz);
  for (int site = site_lo_; site <= site_hi_; ++site)
    mass_[static_cast<std::size_t>(site - site_lo_)] = env.tau_at(site) / double(n);

  diag_.assign(sz, 0.0);
  off_.assign(sz - 1, 0.0);
  for (std::size_t i = 0; i + 1 < sz; ++i) {
    diag_[i] += conductance_ / mass_[i];
    diag_[i + 1] += conductance_ / mass_[i + 1];
    off_[i] = -conductance_ / std::sqrt(mass_[i] * mass_[i + 1]);
  }
  cache_ = std::make_shared<EigenCache>();
}

std::size_t BtmChain::index_of_site(int site) const {
  if (site < site_lo_ || site > site_hi_)
    throw std::invalid_argument("BtmChain: site outside the window");
  return static_cast<std::size_t>(site - site_lo_);
}

double BtmChain::total_mass() const {
  double s = 0.0;
  for (double v : mass_) s += v;
  return s;
}

double BtmChain::reversibility_defect() const {
  // rate(i -> i+1) = conductance / mass_i; detailed balance is built in, the
  // defect only measures floating-point noise
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < mass_.size(); ++i) {
    double lhs = mass_[i] * (conductance_ / mass_[i]);
    double rhs = mass_[i + 1] * (conductance_ / mass_[i + 1]);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double BtmChain::generator_rowsum_defect() const {
  // generator row: -diag entry plus the jump rates to the neighbours
  double worst = 0.0;
  for (std::size_t i = 0; i < mass_.size(); ++i) {
    double rates = 0.0;
    if (i > 0) rates += conductance_ / mass_[i];
    if (i + 1 < mass_.size()) rates += conductance_ / mass_[i];
    worst = std::max(worst, std::abs(rates - diag_[i]));
  }
  return worst;
}

void BtmChain::ensure_modes(double t) const {
  const double cutoff = 45.0 / t;
  std::lock_guard<std::mutex> guard(cache_->lock);
  if (cache_->cutoff >= cutoff) return;
  cache_->eigen = tridiag_eigen_below(diag_, off_, cutoff);
  cache_->cutoff = cutoff;
}

std::vector<double> BtmChain::kernel_row(double t, int site_x) const {
  if (!(t > 0.0)) throw std::invalid_argument("kernel_row: t must be positive");
  ensure_modes(t);
  const std::size_t xi = index_of_site(site_x);
  const std::size_t sz = mass_.size();
  std::vector<double> row(sz, 0.0);
  std::lock_guard<std::mutex> guard(cache_->lock);
  const auto& eig = cache_->eigen;
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    if (eig.values[k] * t > 46.0) break;
    const double w = std::exp(-std::max(eig.values[k], 0.0) * t) * eig.vectors[k][xi];
    const auto& vec = eig.vectors[k];
    for (std::size_t j = 0; j < sz; ++j) row[j] += w * vec[j];
  }
  const double sx = std::sqrt(mass_[xi]);
  for (std::size_t j = 0; j < sz; ++j) row[j] /= sx * std::sqrt(mass_[j]);
  return row;
}

double BtmChain::heat_kernel(double t, int site_x, int site_y) const {
  ensure_modes(t);
  const std::size_t xi = index_of_site(site_x), yi = index_of_site(site_y);
  std::lock_guard<std::mutex> guard(cache_->lock);
  double s = 0.0;
  for (std::size_t k = 0; k < cache_->eigen.values.size(); ++k) {
    const double lam = std::max(cache_->eigen.values[k], 0.0);
    if (lam * t > 46.0) break;
    s += std::exp(-lam * t) * cache_->eigen.vectors[k][xi] * cache_->eigen.vectors[k][yi];
  }
  return s / std::sqrt(mass_[xi] * mass_[yi]);
}

double BtmChain::exit_probability(double t, int site_x, double ball_radius) const {
  if (!(ball_radius > 0.0)) throw std::invalid_argument("exit_probability: bad radius");
  if (ball_radius > 4.0 * n_ * t)
    throw std::invalid_argument("exit_probability: radius above the 4nt range");
  const double x = position(index_of_site(site_x));
  // sites strictly inside the Euclidean ball
  int lo = site_x, hi = site_x;
  while (lo - 1 >= site_lo_ && std::abs((lo - 1) / double(n_) - x) < ball_radius) --lo;
  while (hi + 1 <= site_hi_ && std::abs((hi + 1) / double(n_) - x) < ball_radius) ++hi;
  if (lo == site_lo_ || hi == site_hi_)
    throw std::invalid_argument("exit_probability: ball reaches the window edge");
  const std::size_t a = index_of_site(lo), b = index_of_site(hi);
  const std::size_t sz = b - a + 1;
  // Dirichlet restriction keeps the full diagonal
  std::vector<double> d(diag_.begin() + a, diag_.begin() + a + sz);
  std::vector<double> e(off_.begin() + a, off_.begin() + a + sz - 1);
  auto eig = tridiag_eigen_below(d, e, 45.0 / t);
  const std::size_t xi = index_of_site(site_x) - a;
  double survive = 0.0;
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    const double lam = std::max(eig.values[k], 0.0);
    if (lam * t > 46.0) break;
    double inner = 0.0;
    for (std::size_t j = 0; j < sz; ++j)
      inner += eig.vectors[k][j] * std::sqrt(mass_[a + j]);
    survive += std::exp(-lam * t) * eig.vectors[k][xi] / std::sqrt(mass_[a + xi]) * inner;
  }
  return std::clamp(1.0 - survive, 0.0, 1.0);
}

double limit_heat_kernel(double mean_tau, double t, double x, double y) {
  if (!(mean_tau > 0.0 && t > 0.0)) throw std::invalid_argument("limit_heat_kernel: bad input");
  constexpr double two_pi = 6.283185307179586476925287;
  const double var = t / mean_tau;
  return std::exp(-(x - y) * (x - y) / (2.0 * var)) / (mean_tau * std::sqrt(two_pi * var));
}

double limit_cdf(double mean_tau, double t, double x) {
  const double sigma = std::sqrt(t / mean_tau);
  return 0.5 * std::erfc(-x / (sigma * std::sqrt(2.0)));
}

double quenched_cdf_error(const BtmChain& chain, double t) {
  const auto row = chain.kernel_row(t, 0);
  const double sigma = std::sqrt(t / chain.mean_tau());
  const double span = 6.0 * sigma;
  // right-continuous CDF steps at the site positions
  const std::size_t sz = chain.size();
  std::vector<double> pos(sz), cum(sz);
  double acc = 0.0;
  for (std::size_t i = 0; i < sz; ++i) {
    pos[i] = chain.position(i);
    acc += row[i] * chain.mass(i);
    cum[i] = acc;
  }
  double worst = 0.0;
  const int grid = 4001;
  for (int g = 0; g < grid; ++g) {
    double x = -span + 2.0 * span * g / (grid - 1);
    // last site with position <= x
    auto it = std::upper_bound(pos.begin(), pos.end(), x);
    double chain_cdf = (it == pos.begin()) ? 0.0 : cum[(it - pos.begin()) - 1];
    worst = std::max(worst, std::abs(chain_cdf - limit_cdf(chain.mean_tau(), t, x)));
  }
  return worst;
}

double quenched_hk_error(const BtmChain& chain, double t, double k_range) {
  const auto row = chain.kernel_row(t, 0);
  double worst = 0.0;
  const int grid = 801;
  for (int g = 0; g < grid; ++g) {
    double x = -k_range + 2.0 * k_range * g / (grid - 1);
    int site = static_cast<int>(std::floor(x * chain.n()));
    std::size_t i = chain.index_of_site(site);
    worst = std::max(worst,
                     std::abs(row[i] - limit_heat_kernel(chain.mean_tau(), t, 0.0, x)));
  }
  return worst;
}

namespace {

double tent(double y) { return std::max(0.0, 1.0 - std::abs(y)); }

// composite Simpson of tent * limit kernel, split at the tent kinks
double limit_tent_semigroup(double mean_tau, double t, double x) {
  auto g = [&](double y) { return tent(y) * limit_heat_kernel(mean_tau, t, x, y) * mean_tau; };
  auto piece = [&](double a, double b) {
    const int panels = 2048;
    double h = (b - a) / panels;
    double s = g(a) + g(b);
    for (int k = 1; k < panels; ++k) s += (k % 2 ? 4.0 : 2.0) * g(a + k * h);
    return s * h / 3.0;
  };
  return piece(-1.0, 0.0) + piece(0.0, 1.0);
}

}  // namespace

double quenched_sg_error(const BtmChain& chain, double t, double k_range) {
  double worst = 0.0;
  const int grid = 41;
  for (int g = 0; g < grid; ++g) {
    double x = -k_range + 2.0 * k_range * g / (grid - 1);
    int site = static_cast<int>(std::floor(x * chain.n()));
    const auto row = chain.kernel_row(t, site);
    double chain_val = 0.0;
    for (std::size_t j = 0; j < chain.size(); ++j)
      chain_val += tent(chain.position(j)) * row[j] * chain.mass(j);
    double limit_val = limit_tent_semigroup(chain.mean_tau(), t, x);
    worst = std::max(worst, std::abs(chain_val - limit_val));
  }
  return worst;
}

double quenched_bl_error(const TrapEnvironment& env, int n, double r, double kappa) {
  if (!(r > 0.0)) throw std::invalid_argument("quenched_bl_error: bad radius");
  const int m = static_cast<int>(std::floor(double(n) * r));
  if (m > env.window) throw std::invalid_argument("quenched_bl_error: window too small");
  // Lebesgue discretization 8x finer than the lattice
  const int per = 8;
  const int half = per * m;  // grid spans [-m/n, m/n]
  const double step = 1.0 / (per * double(n));
  const std::size_t sz = static_cast<std::size_t>(2 * half + 1);
  std::vector<double> coords(sz), w(sz, 0.0);
  for (std::size_t k = 0; k < sz; ++k) {
    coords[k] = (static_cast<double>(k) - half) * step;
    double cell = (k == 0 || k + 1 == sz) ? 0.5 * step : step;
    w[k] = env.mean_tau * cell;
  }
  for (int site = -m; site <= m; ++site) {
    std::size_t k = static_cast<std::size_t>(per * (site + m));
    w[k] -= env.tau_at(site) / double(n);
  }
  if (kappa == 1.0) {
    // the golden search narrows geometrically; large instances need fewer
    // evaluations than the worst-case default
    const int evals = (sz > 2000) ? 36 : 80;
    return bl_distance_line(coords, w, evals);
  }
  if (sz > 500)
    throw std::invalid_argument("quenched_bl_error: kappa != 1 needs a small instance");
  FiniteMetricSpace space = FiniteMetricSpace::from_coords_1d(coords);
  std::vector<double> mu(sz, 0.0), nu(sz, 0.0);
  for (std::size_t k = 0; k < sz; ++k) {
    if (w[k] >= 0)
      mu[k] = w[k];
    else
      nu[k] = -w[k];
  }
  return bl_distance(space, mu, nu, kappa);
}

RateFit rate_fit(const std::vector<double>& ns, const std::vector<double>& errors) {
  if (ns.size() != errors.size() || ns.size() < 2)
    throw std::invalid_argument("rate_fit: need matching samples");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!(errors[i] > 0.0)) throw std::invalid_argument("rate_fit: nonpositive error");
    lx.push_back(std::log(ns[i]));
    ly.push_back(std::log(errors[i]));
  }
  LineFit fit = fit_line(lx, ly);
  return {-fit.slope, 2.0 * fit.slope_stderr};
}

double default_window_radius(double t) {
  return std::ceil(std::sqrt(8.0 * t * std::log(4.0e12)));
}

QuenchedErrors run_quenched(double alpha, std::uint64_t seed, int n, double t, double kappa,
                            double k_range, bool with_bl) {
  const double radius = default_window_radius(t);
  const int window = static_cast<int>(std::floor(double(n) * radius)) + 1;
  TrapEnvironment env = TrapEnvironment::sample(alpha, window, seed);
  BtmChain chain(env, n, radius, ChainConvention::paper_generator);
  QuenchedErrors out;
  out.n = n;
  out.seed = seed;
  out.cdf_err = quenched_cdf_error(chain, t);
  out.hk_err = quenched_hk_error(chain, t, k_range);
  out.bl_err = with_bl ? quenched_bl_error(env, n, 1.0, kappa) : 0.0;
  return out;
}

std::vector<AnnealedRow> annealed_experiment(double alpha, double kappa,
                                             const std::vector<int>& n_list, int trials,
                                             std::uint64_t base_seed, double t,
                                             double k_range) {
  (void)kappa;
  if (trials < 1) throw std::invalid_argument("annealed_experiment: trials must be positive");
  std::vector<AnnealedRow> rows(n_list.size());
  for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
    const int n = n_list[ni];
    std::vector<double> sg_errs(trials, 0.0), hk_errs(trials, 0.0);
    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t trial) {
      const double radius = default_window_radius(t);
      const int window = static_cast<int>(std::floor(double(n) * radius)) + 1;
      TrapEnvironment env =
          TrapEnvironment::sample(alpha, window, hash_combine(base_seed, trial));
      BtmChain chain(env, n, radius, ChainConvention::paper_generator);
      sg_errs[trial] = quenched_sg_error(chain, t, k_range);
      hk_errs[trial] = quenched_hk_error(chain, t, k_range);
    });
    AnnealedRow row{n, 0.0, 0.0};
    for (int k = 0; k < trials; ++k) {  // deterministic fold in trial order
      row.mean_sg_err += sg_errs[k];
      row.mean_hk_err += hk_errs[k];
    }
    row.mean_sg_err /= trials;
    row.mean_hk_err /= trials;
    rows[ni] = row;
  }
  return rows;
}

}  // namespace reslab
