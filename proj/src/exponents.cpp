#include "reslab/exponents.hpp"

#include <cmath>
#include <stdexcept>

namespace reslab::exponents {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_volume_pair(double s0, double s1) {
  require(s0 > 0.0 && s1 > 0.0, "volume exponents must be positive");
  require(s1 <= s0, "upper volume exponent s1 must not exceed s0");
}

double log53(double v) { return std::log(v) / std::log(5.0 / 3.0); }

}  // namespace

double theta_cap(double s0, double s1) {
  check_volume_pair(s0, s1);
  const double q = (s0 - s1) * (2.0 + s0);
  require(q < 1.0, "theta_cap: requires (s0-s1)(2+s0) < 1");
  return (1.0 + s0 - s1) / (1.0 - q);
}

double beta(double s0, double s1) {
  check_volume_pair(s0, s1);
  const double q = (2.0 + s0) * (s0 - s1);
  require(q < 1.0, "beta: requires (2+s0)(s0-s1) < 1");
  return (1.0 - q) / (s1 + 2.0 * q);
}

double sg_exponent_a2(double s0, double theta, double kappa) {
  require(s0 > 0.0, "s0 must be positive");
  require(theta > 0.0, "theta must be positive");
  require(kappa >= 0.5 && kappa <= 1.0, "kappa must lie in [1/2, 1]");
  return kappa / (kappa + (1.0 + s0) * (2.0 + kappa) * (kappa + theta));
}

ExponentPair sg_exponents_a3(double s0, double s1, double kappa) {
  require(kappa >= 0.5 && kappa <= 1.0, "kappa must lie in [1/2, 1]");
  const double cap = theta_cap(s0, s1);
  const double den = kappa + (1.0 + s0) * (2.0 + kappa) * cap;
  return {kappa / den, kappa * (2.0 + kappa) * ((1.0 + s0) * cap - 1.0) / den};
}

double hk_exponent_a1(double s0, double s1, double kappa) {
  check_volume_pair(s0, s1);
  require(s0 < s1 + 1.0, "hk_exponent_a1: requires s0 < s1 + 1");
  require(kappa >= 0.5 && kappa < 2.0 / 3.0, "hk_exponent_a1: kappa must lie in [1/2, 2/3)");
  const double delta = s1 - s0 + 1.0;
  const double den = ((2.0 * kappa + 5.0) * s0 + 2.0 * kappa + 4.0) * (s1 + 2.0) + 2.0 * delta;
  return 2.0 * delta / den;
}

double hk_exponent_a2(double s0, double s1, double theta, double kappa) {
  check_volume_pair(s0, s1);
  require(s0 < s1 + 1.0, "hk_exponent_a2: requires s0 < s1 + 1");
  require(kappa >= 0.5 && kappa <= 1.0, "kappa must lie in [1/2, 1]");
  require((1.0 + s0) * theta > std::max(1.0, s1),
          "hk_exponent_a2: requires (1+s0) theta > max(1, s1)");
  const double delta = s1 - s0 + 1.0;
  return delta / ((kappa + 2.0) * (1.0 + s0) * (s1 + 2.0) + 0.5 * s0 + delta);
}

ExponentPair hk_exponents_a3(double s0, double s1, double kappa) {
  require(kappa >= 0.5 && kappa <= 1.0, "kappa must lie in [1/2, 1]");
  const double cap = theta_cap(s0, s1);
  const double q = (2.0 + s0) * (s0 - s1);
  const double delta = s1 - s0 + 1.0;
  const double e1 = delta / ((2.0 + kappa) * (1.0 + s0) * cap + 0.5 * s0 + delta);
  const double e2 = (2.0 + kappa) * (s1 + 2.0 * q) / (1.0 - q);
  return {e1, e2};
}

SierpinskiExponents sierpinski_exponents(double kappa) {
  require(kappa >= 0.5 && kappa <= 1.0, "kappa must lie in [1/2, 1]");
  const double l5 = log53(5.0);  // never hard-coded
  const double l3 = log53(3.0);
  SierpinskiExponents out;
  out.sg1 = kappa * kappa / (kappa + (2.0 + kappa) * l5);
  out.sg2 = kappa * (2.0 + kappa) * l3 / (kappa + (2.0 + kappa) * l5);
  out.hk1 = kappa / ((2.0 + kappa) * l5 + 0.5 * l3 + 1.0);
  out.hk2 = (2.0 + kappa) * l5;
  return out;
}

SierpinskiReference sierpinski_reference() { return {0.0956756, 0.86580748, 0.0867505}; }

BtmQuenched btm_quenched_exponents(double alpha, double kappa) {
  require(alpha > 1.0, "btm_quenched_exponents: requires alpha > 1");
  require(kappa >= 0.5 && kappa <= 1.0, "btm_quenched_exponents: kappa must lie in [1/2, 1]");
  const double cap = std::min(1.0 - 1.0 / alpha, 0.5);
  return {(2.0 / 11.0) * cap, kappa / (3.0 * kappa + 4.0) * cap};
}

double btm_annealed_alpha_min(double kappa) {
  // kept as a single quotient so exact rationals print exactly
  return (kappa + (5.0 * kappa + 3.5) * (3.0 * kappa + 4.0)) / (3.0 * kappa + 4.0);
}

BtmAnnealed btm_annealed_exponents(double alpha, double kappa) {
  require(kappa >= 0.5 && kappa <= 1.0, "btm_annealed_exponents: kappa must lie in [1/2, 1]");
  require(alpha > btm_annealed_alpha_min(kappa),
          "btm_annealed_exponents: alpha below the admissible threshold");
  return {kappa / (2.0 * (3.0 * kappa + 4.0)),
          kappa / (2.0 * (3.0 * kappa + 4.0) * (kappa + 2.0))};
}

RegularityConstants regularity_constants(const RegularityParams& p) {
  check_volume_pair(p.s0, p.s1);
  require(p.c_l > 0 && p.c_u > 0 && p.c_LR > 0, "constants must be positive");
  require(p.c_UP > 0 && p.c_UP < 1, "c_UP must lie in (0,1)");
  require(p.theta > 0, "theta must be positive");
  require(p.diam > 0, "diam must be positive");

  RegularityConstants out;
  out.c_a1 = 1.0 + 1.0 / p.c_l;
  out.theta_impl = 1.0 + p.s0 - p.s1;
  out.c_lr = 1.0 / (4.0 * p.c_u * std::pow(0.25 * p.c_UP + 1.0, p.s1) /
                    (p.c_l * std::pow(p.c_UP / 16.0, p.s0) * p.c_UP));
  out.c_exit = std::pow(4.0, 2.0 + p.s0) / (3.0 * p.c_l * std::pow(p.c_LR, 1.0 + p.s0));
  out.d_f = std::min(0.5 * p.diam, std::pow(2.0 * p.diam / p.c_LR, 1.0 / p.theta));
  out.c_a2 = 0.01 / (p.c_u * std::pow(5.0 * out.c_exit,
                                      p.s1 / ((1.0 + p.s0) * p.theta)));

  const double b = beta(p.s0, p.s1);
  const double c_ur = 1.0 + 1.0 / p.c_UP;
  const double base = p.c_l * std::pow(p.c_LR / 4.0, 1.0 + p.s0);
  const double big_c = (base / (4.0 * p.c_u * c_ur)) *
                       std::pow(base * base / (256.0 * p.c_u * c_ur), b);
  out.c_a3 = (1.0 / (4.0 * p.c_u)) *
             std::pow(std::log(4.0) / (std::pow(2.0, b) * big_c), b * p.s1 / (1.0 + b));
  return out;
}

double noncompact_constant(double mu_n_r, double mu_r, double diam_union, double diam_r,
                           double s, double theta, double kappa) {
  require(mu_n_r > 0 && mu_r > 0 && diam_union > 0 && diam_r > 0, "sizes must be positive");
  require(s > 0 && theta > 0, "s and theta must be positive");
  require(kappa >= 0.5 && kappa <= 1.0, "kappa must lie in [1/2, 1]");
  const double d = std::max(mu_r * diam_r, mu_n_r * diam_union);
  const double expo = 4.0 + 2.0 * (1.0 + s / (2.0 * (1.0 + s) * theta)) * (2.0 * kappa - 1.0);
  const double bracket = (diam_union + mu_n_r) * diam_union * mu_n_r * std::pow(mu_r, 1.5) *
                         diam_r * (std::sqrt(mu_r) + mu_n_r);
  return std::pow(d, expo) * bracket;
}

}  // namespace reslab::exponents
