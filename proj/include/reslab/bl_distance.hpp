#pragma once

#include <vector>

#include "reslab/metric_space.hpp"

namespace reslab {

// d_BL^kappa(mu, nu): value of
//   max  sum_i f_i (mu_i - nu_i)
//   s.t. |f_i| <= s,  |f_i - f_j| <= l d_ij^kappa,  s + l <= 1,  s, l >= 0,
// solved as a linear program with lazy generation of the pair constraints.
double bl_distance(const FiniteMetricSpace& space, const std::vector<double>& mu,
                   const std::vector<double>& nu, double kappa);

// Same optimization for kappa = 1 on a one-dimensional space given by sorted
// coordinates, via a concave-envelope sweep over the chain plus a golden
// search in l. Adjacent-gap constraints are equivalent to the full pair set
// on the line when kappa = 1. Used where the generic LP would be too large;
// cross-checked against it in the tests.
double bl_distance_line(const std::vector<double>& coords, const std::vector<double>& weight,
                        int search_evals = 80);

namespace detail {
// Value of the chain optimization for one fixed Lipschitz budget l, on
// sorted distinct coordinates. The reference version rebuilds the concave
// envelope every step; the fast one maintains it in amortized form. They
// must agree; tests compare them.
double line_sweep_value(const std::vector<double>& coords, const std::vector<double>& weight,
                        double l);
double line_sweep_value_reference(const std::vector<double>& coords,
                                  const std::vector<double>& weight, double l);
}  // namespace detail

// max-min Hausdorff distance between the two embedded index sets
double hausdorff_distance(const EmbeddedPair& pair);

// int_0^inf e^-r (1 ^ d_BL(mu|ball(rootA,r), nu|ball(rootB,r))) dr, evaluated
// exactly as a finite sum over the breakpoints of the two ball filtrations
// (closed balls).
double rooted_bl_distance(const EmbeddedPair& pair, double kappa);

// Same integral with the Hausdorff integrand. If exactly one restricted set
// is empty the integrand is 1; if both are empty it is 0.
double local_hausdorff_distance(const EmbeddedPair& pair);

// max(Hausdorff, BL) over the given embedding; the rooted form also takes the
// ambient root separation into the max. An upper bound for the
// infimum-over-embeddings distance, never the infimum itself.
double ghp_embedded_distance(const EmbeddedPair& pair, double kappa, bool rooted);

}  // namespace reslab
