#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "reslab/util.hpp"

namespace reslab {

// i.i.d. heavy-tailed trap depths tau_x > 1 with P(tau > u) = u^-alpha,
// keyed by (seed, site) so a window can grow without resampling
struct TrapEnvironment {
  double alpha = 0.0;
  int window = 0;  // sites -window..window
  std::uint64_t seed = 0;
  std::vector<double> tau;  // index 0 corresponds to site -window
  double mean_tau = 1.0;    // alpha/(alpha-1) for sampled laws

  double tau_at(int site) const;
  static TrapEnvironment sample(double alpha, int window, std::uint64_t seed);
  static TrapEnvironment constant(int window, double tau_value);
};

enum class ChainConvention {
  paper_generator,  // edge conductance n/2, jump rate n^2/(2 tau_x) per side
  unit_resistance,  // edge conductance n: resistance metric equals Euclidean
};

// Finite window of the scaled trap-model chain on sites |x| <= floor(n r),
// reflecting at the window edge. Vertex mass tau_x / n. Tridiagonal
// generator; kernel rows come from a partial eigensolve of the symmetrized
// matrix, cut off where e^{-lambda t} is negligible.
class BtmChain {
 public:
  BtmChain(const TrapEnvironment& env, int n, double window_radius,
           ChainConvention convention);

  int n() const { return n_; }
  double window_radius() const { return radius_; }
  std::size_t size() const { return mass_.size(); }
  int site_lo() const { return site_lo_; }
  double position(std::size_t i) const { return (site_lo_ + static_cast<int>(i)) / double(n_); }
  std::size_t index_of_site(int site) const;
  double mass(std::size_t i) const { return mass_[i]; }
  double total_mass() const;
  double edge_conductance() const { return conductance_; }
  double mean_tau() const { return mean_tau_; }

  const std::vector<double>& sym_diag() const { return diag_; }
  const std::vector<double>& sym_off() const { return off_; }

  // max |mu_x rate(x->y) - mu_y rate(y->x)| over edges
  double reversibility_defect() const;
  // max |row sum| of the generator
  double generator_rowsum_defect() const;

  // p(t, x, .) as a density w.r.t. the chain measure
  std::vector<double> kernel_row(double t, int site_x) const;
  double heat_kernel(double t, int site_x, int site_y) const;

  // P_x(exit the Euclidean ball of the given radius by time t); the killed
  // kernel of the sub-chain strictly inside the ball
  double exit_probability(double t, int site_x, double ball_radius) const;

 private:
  int n_;
  double radius_;
  ChainConvention convention_;
  int site_lo_, site_hi_;
  double conductance_;
  double mean_tau_;
  std::vector<double> mass_;
  std::vector<double> diag_, off_;  // symmetrized tridiagonal

  struct EigenCache;
  std::shared_ptr<EigenCache> cache_;
  void ensure_modes(double t) const;
};

// limit density w.r.t. mean_tau * Lebesgue: Brownian motion with generator
// (1/(2 mean_tau)) d^2/dx^2
double limit_heat_kernel(double mean_tau, double t, double x, double y);
double limit_cdf(double mean_tau, double t, double x);

// sup over a 4001-point grid spanning +-6 sigma sqrt(t) of
// |limit CDF - chain CDF from the kernel row at site 0|
double quenched_cdf_error(const BtmChain& chain, double t);

// sup_{|x| <= K, x on a grid} |p(t,0,x) - p_n(t,0,floor(nx)/n)|
double quenched_hk_error(const BtmChain& chain, double t, double k_range);

// sup over starting points |x| <= K of the semigroup difference on the tent
// test function max(0, 1-|y|)
double quenched_sg_error(const BtmChain& chain, double t, double k_range);

// d_BL^kappa between mean_tau * Lebesgue on [-r, r], discretized on a grid 8x
// finer than 1/n, and the trap measure restricted to the window; kappa = 1
// uses the exact chain solver, smaller instances may use the generic LP
double quenched_bl_error(const TrapEnvironment& env, int n, double r, double kappa);

struct RateFit {
  double exponent;  // decay exponent (positive means decay)
  double band;      // two standard errors
};
RateFit rate_fit(const std::vector<double>& ns, const std::vector<double>& errors);

// window radius making the escape term 4 e^{-r^2/8t} at most 1e-12
double default_window_radius(double t);

struct QuenchedErrors {
  int n;
  std::uint64_t seed;
  double cdf_err;
  double bl_err;
  double hk_err;
};

// one environment, one n
QuenchedErrors run_quenched(double alpha, std::uint64_t seed, int n, double t, double kappa,
                            double k_range, bool with_bl);

struct AnnealedRow {
  int n;
  double mean_sg_err;
  double mean_hk_err;
};

// averages over independent environments, seed_i = hash(base_seed, i)
std::vector<AnnealedRow> annealed_experiment(double alpha, double kappa,
                                             const std::vector<int>& n_list, int trials,
                                             std::uint64_t base_seed, double t, double k_range);

}  // namespace reslab
