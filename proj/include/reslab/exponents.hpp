#pragma once

#include <string>

namespace reslab::exponents {

// Volume / resistance regularity data: c_l r^{s0} <= mu(B(x,r)) <= c_u r^{s1},
// R(x, B(x,r)^c) >= c_LR r^{theta}, annuli nonempty below scale c_UP.
struct RegularityParams {
  double s0 = 1.0;
  double s1 = 1.0;
  double theta = 1.0;
  double kappa = 1.0;
  double c_l = 1.0;
  double c_u = 1.0;
  double c_LR = 1.0;
  double c_UP = 0.5;
  double diam = 1.0;
};

// Theta = (1 + s0 - s1) / (1 - (s0 - s1)(2 + s0)); needs (s0-s1)(2+s0) < 1.
double theta_cap(double s0, double s1);

// beta = (1 - (2+s0)(s0-s1)) / (s1 + 2(2+s0)(s0-s1)); satisfies
// (1+s0) * theta_cap = 1 + 1/beta.
double beta(double s0, double s1);

// semigroup rate under volume + resistance lower bounds:
//   E = kappa / (kappa + (1+s0)(2+kappa)(kappa+theta))
double sg_exponent_a2(double s0, double theta, double kappa);

// semigroup rate pair under two-sided volume bounds with locality:
//   E1 = kappa / (kappa + (1+s0)(2+kappa) Theta)
//   E2 = kappa (2+kappa) [ (1+s0) Theta - 1 ] / (kappa + (1+s0)(2+kappa) Theta)
struct ExponentPair {
  double e1, e2;
};
ExponentPair sg_exponents_a3(double s0, double s1, double kappa);

// heat-kernel rates; the first needs kappa in [1/2, 2/3) and s0 < s1 + 1
double hk_exponent_a1(double s0, double s1, double kappa);
double hk_exponent_a2(double s0, double s1, double theta, double kappa);
ExponentPair hk_exponents_a3(double s0, double s1, double kappa);

// gasket rates (level-n graphs with conductance (5/3)^n):
//   E_sg1 = kappa^2 / (kappa + (2+kappa) log_{5/3} 5)
//   E_sg2 = kappa (2+kappa) log_{5/3} 3 / (kappa + (2+kappa) log_{5/3} 5)
//   E_hk1 = kappa / ((2+kappa) log_{5/3} 5 + (1/2) log_{5/3} 3 + 1)
//   E_hk2 = (2+kappa) log_{5/3} 5
struct SierpinskiExponents {
  double sg1, sg2, hk1, hk2;
};
SierpinskiExponents sierpinski_exponents(double kappa);

// published headline values for the kappa = 1 gasket rate; sg2_printed does
// not agree with sierpinski_exponents(1).sg2 and is kept for comparison only
struct SierpinskiReference {
  double sg1_printed;  // 0.0956756
  double sg2_printed;  // 0.86580748
  double hk1_printed;  // 0.0867505
};
SierpinskiReference sierpinski_reference();

// trap-model rate suprema; valid exponents are anything strictly below
struct BtmQuenched {
  double dist_sup;  // (2/11) [ (1 - 1/alpha) ^ 1/2 ]
  double sg_sup;    // (kappa/(3kappa+4)) [ (1 - 1/alpha) ^ 1/2 ]
};
BtmQuenched btm_quenched_exponents(double alpha, double kappa);

struct BtmAnnealed {
  double sg_sup;  // kappa / (2 (3kappa+4))
  double hk_sup;  // kappa / (2 (3kappa+4)(kappa+2))
};
// requires alpha > btm_annealed_alpha_min(kappa)
BtmAnnealed btm_annealed_exponents(double alpha, double kappa);
double btm_annealed_alpha_min(double kappa);

// explicit constants implied by the regularity data
struct RegularityConstants {
  double c_a1;        // 1 + 1/c_l
  double c_lr;        // lower-resistance constant derived from volume + UP
  double theta_impl;  // 1 + s0 - s1
  double c_exit;      // 4^{2+s0} / (3 c_l c_LR^{1+s0})
  double d_f;         // diam/2 ^ (2 diam / c_LR)^{1/theta}
  double c_a2;
  double c_a3;
};
RegularityConstants regularity_constants(const RegularityParams& p);

// window-truncation polynomial for the unbounded-space semigroup estimate
double noncompact_constant(double mu_n_r, double mu_r, double diam_union, double diam_r,
                           double s, double theta, double kappa);

}  // namespace reslab::exponents
