#include "reslab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace reslab {

SpectralDecomposition::SpectralDecomposition(const ResistanceNetwork& net,
                                             const NetworkMeasure& mu) {
  build(net, mu, {});
}

SpectralDecomposition::SpectralDecomposition(const ResistanceNetwork& net,
                                             const NetworkMeasure& mu,
                                             const std::vector<std::size_t>& killed) {
  build(net, mu, killed);
}

void SpectralDecomposition::build(const ResistanceNetwork& net, const NetworkMeasure& mu,
                                  const std::vector<std::size_t>& killed) {
  if (mu.mass.size() != net.size())
    throw std::invalid_argument("SpectralDecomposition: measure size mismatch");
  n_ = net.size();
  mass_ = mu.mass;

  std::vector<char> dead(n_, 0);
  for (std::size_t v : killed) dead[v] = 1;
  std::vector<std::size_t> alive;
  for (std::size_t v = 0; v < n_; ++v)
    if (!dead[v]) alive.push_back(v);
  if (alive.empty()) throw std::invalid_argument("SpectralDecomposition: everything killed");

  // symmetrized operator M^{-1/2} L M^{-1/2} on the alive set
  Matrix l = net.killed_laplacian(killed);
  const std::size_t m = alive.size();
  std::vector<double> sq(m);
  for (std::size_t i = 0; i < m; ++i) sq[i] = std::sqrt(mu.mass[alive[i]]);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) l(i, j) /= sq[i] * sq[j];

  SymmetricEigen eig = symmetric_eigen(l);

  // eigenvalue floor: snap roundoff-size values to zero, reject anything
  // genuinely negative
  double scale = 0.0;
  for (double v : eig.values) scale = std::max(scale, std::abs(v));
  const double floor_tol = 1e-12 * std::max(1.0, scale);
  for (double& v : eig.values) {
    if (std::abs(v) <= floor_tol)
      v = 0.0;
    else if (v < 0.0)
      throw std::runtime_error("SpectralDecomposition: negative eigenvalue beyond tolerance");
  }

  values_ = eig.values;
  funcs_ = Matrix(n_, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) funcs_(alive[i], k) = eig.vectors(i, k) / sq[i];

  // deterministic sign: make the constant mode positive, others keyed to the
  // first nonvanishing entry
  for (std::size_t k = 0; k < m; ++k) {
    double key = 0.0;
    for (std::size_t v = 0; v < n_; ++v) {
      if (std::abs(funcs_(v, k)) > 1e-12) {
        key = funcs_(v, k);
        break;
      }
    }
    if (key < 0.0)
      for (std::size_t v = 0; v < n_; ++v) funcs_(v, k) = -funcs_(v, k);
  }
}

double SpectralDecomposition::heat_kernel(double t, std::size_t x, std::size_t y) const {
  if (!(t > 0.0)) throw std::invalid_argument("heat_kernel: t must be positive");
  double s = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k)
    s += std::exp(-values_[k] * t) * funcs_(x, k) * funcs_(y, k);
  return s;
}

std::vector<double> SpectralDecomposition::semigroup_apply(double t,
                                                           const std::vector<double>& f) const {
  if (f.size() != n_) throw std::invalid_argument("semigroup_apply: size mismatch");
  if (t < 0.0) throw std::invalid_argument("semigroup_apply: negative time");
  std::vector<double> coeff(values_.size(), 0.0);
  for (std::size_t k = 0; k < values_.size(); ++k) {
    double s = 0.0;
    for (std::size_t v = 0; v < n_; ++v) s += f[v] * funcs_(v, k) * mass_[v];
    coeff[k] = s * std::exp(-values_[k] * t);
  }
  std::vector<double> out(n_, 0.0);
  for (std::size_t v = 0; v < n_; ++v) {
    double s = 0.0;
    for (std::size_t k = 0; k < values_.size(); ++k) s += coeff[k] * funcs_(v, k);
    out[v] = s;
  }
  return out;
}

double SpectralDecomposition::potential_density(double alpha, std::size_t x,
                                                std::size_t y) const {
  if (!(alpha > 0.0)) throw std::invalid_argument("potential_density: alpha must be positive");
  double s = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k)
    s += funcs_(x, k) * funcs_(y, k) / (alpha + values_[k]);
  return s;
}

double SpectralDecomposition::survival(double t, std::size_t x) const {
  double s = 0.0;
  for (std::size_t y = 0; y < n_; ++y) s += heat_kernel(t, x, y) * mass_[y];
  return s;
}

double hitting_probability(const KilledSystem& sys, std::size_t x, double t) {
  SpectralDecomposition spec(sys.net, sys.measure, sys.killing_set);
  return 1.0 - spec.survival(t, x);
}

double exit_bound_eval(const ResistanceNetwork& net, const NetworkMeasure& mu, std::size_t x,
                       const std::vector<std::size_t>& a, double delta, double t) {
  const double r = net.resistance_to_set(x, a);
  if (!(delta > 0.0 && delta < r))
    throw std::invalid_argument("exit_bound_eval: delta must lie in (0, R(x,A))");
  double ball = 0.0;
  for (std::size_t y = 0; y < net.size(); ++y)
    if (net.effective_resistance(x, y) < delta) ball += mu.mass[y];
  const double ratio = (r - delta) / (r + delta);
  return 2.0 * (1.0 - ratio * std::exp(-2.0 * t / (ball * (r - delta))));
}

DiagBound hk_diag_bound_check(const SpectralDecomposition& spec, const ResistanceNetwork& net,
                              const NetworkMeasure& mu, std::size_t x, double t,
                              const std::vector<std::size_t>& a) {
  if (a.empty()) throw std::invalid_argument("hk_diag_bound_check: empty set");
  double sup_r = 0.0, mass_a = 0.0;
  for (std::size_t y : a) {
    sup_r = std::max(sup_r, net.effective_resistance(x, y));
    mass_a += mu.mass[y];
  }
  DiagBound out;
  out.bound = 2.0 * sup_r / t + std::sqrt(2.0) / mass_a;
  out.value = spec.heat_kernel(t, x, x);
  return out;
}

BlNorm holder_norm_of_kernel(const SpectralDecomposition& spec, const ResistanceNetwork& net,
                             double t, std::size_t x, double kappa) {
  const std::size_t n = net.size();
  PartialFunction f;
  f.domain.resize(n);
  f.values.resize(n);
  for (std::size_t y = 0; y < n; ++y) {
    f.domain[y] = y;
    f.values[y] = spec.heat_kernel(t, x, y);
  }
  return bl_norm(net.resistance_space(), f, kappa);
}

}  // namespace reslab
