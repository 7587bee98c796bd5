#pragma once

#include <vector>

#include "reslab/resistance_network.hpp"

namespace reslab {

// Eigen-expansion of the negative generator on L^2(mu). Eigenvectors are
// orthonormal in the mu-weighted inner product; lambda_0 = 0 belongs to the
// constant eigenfunction 1/sqrt(mu(F)).
class SpectralDecomposition {
 public:
  SpectralDecomposition(const ResistanceNetwork& net, const NetworkMeasure& mu);

  // restriction of the generator to the complement of `killed` (absorbing)
  SpectralDecomposition(const ResistanceNetwork& net, const NetworkMeasure& mu,
                        const std::vector<std::size_t>& killed);

  std::size_t n_modes() const { return values_.size(); }
  std::size_t n_vertices() const { return n_; }
  double eigenvalue(std::size_t i) const { return values_[i]; }
  const std::vector<double>& eigenvalues() const { return values_; }
  // mu-orthonormal eigenfunction value; zero on killed vertices
  double eigenfunction(std::size_t i, std::size_t vertex) const { return funcs_(vertex, i); }
  const std::vector<double>& mass() const { return mass_; }

  double heat_kernel(double t, std::size_t x, std::size_t y) const;
  std::vector<double> semigroup_apply(double t, const std::vector<double>& f) const;
  double potential_density(double alpha, std::size_t x, std::size_t y) const;
  // total surviving mass sum_z p(t,x,z) mu_z
  double survival(double t, std::size_t x) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
  Matrix funcs_;  // (vertex, mode)
  std::vector<double> mass_;

  void build(const ResistanceNetwork& net, const NetworkMeasure& mu,
             const std::vector<std::size_t>& killed);
};

// P_x(time to hit A <= t) = 1 - survival mass of the killed kernel
double hitting_probability(const KilledSystem& sys, std::size_t x, double t);

// 2 [ 1 - ((R-d)/(R+d)) exp(-2t / (mu(B(x,d)) (R-d))) ],  R = R(x,A),
// B(x,d) the open resistance ball; requires 0 < d < R.
double exit_bound_eval(const ResistanceNetwork& net, const NetworkMeasure& mu, std::size_t x,
                       const std::vector<std::size_t>& a, double delta, double t);

// (2 sup_{y in A} R(x,y) / t + sqrt(2)/mu(A), p(t,x,x))
struct DiagBound {
  double bound;
  double value;
};
DiagBound hk_diag_bound_check(const SpectralDecomposition& spec, const ResistanceNetwork& net,
                              const NetworkMeasure& mu, std::size_t x, double t,
                              const std::vector<std::size_t>& a);

// BL norm data of p(t,x,.) in the resistance metric
BlNorm holder_norm_of_kernel(const SpectralDecomposition& spec, const ResistanceNetwork& net,
                             double t, std::size_t x, double kappa);

}  // namespace reslab
