#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reslab/metric_space.hpp"

namespace reslab {

// Nonnegative piecewise-linear function on a grid, zero at both ends. Codes
// a compact tree: points s, t of [0, sigma] are identified when
// f(s) + f(t) - 2 min f on [s,t] vanishes.
class CodedExcursion {
 public:
  CodedExcursion(std::vector<double> grid, std::vector<double> values);

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double sigma() const { return sigma_; }  // sup of the support
  double value_at(double t) const;         // linear interpolation
  double inf_on(double s, double t) const;  // exact for the linear pieces
  double sup_norm_diff(const CodedExcursion& other) const;  // over [0, sf ^ sg]

  // exact modulus-of-continuity inverse: sup{h : osc(h) < r}
  double modulus_inverse(double r) const;

  static CodedExcursion random_walk_excursion(std::size_t steps, std::uint64_t seed);

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
  double sigma_;
};

// f(s) + f(t) - 2 inf_{[s,t]} f
double tree_pseudometric(const CodedExcursion& f, double s, double t);

// quotient of the grid by vanishing pseudometric, with the pushforward of
// Lebesgue measure on [0, sigma]
struct CodedTree {
  std::vector<double> rep_times;   // one grid time per equivalence class
  Matrix metric;                    // tree metric between representatives
  std::vector<double> mass;         // total cell length mapped to each class
  std::vector<std::size_t> class_of;  // grid index -> representative index
};
CodedTree build_coded_tree(const CodedExcursion& f);

// 2 |f-g| + 2^kappa (sf ^ sg) |f-g|^kappa + |sf - sg|, sup over the common
// grid refinement
double ghp_bound(const CodedExcursion& f, const CodedExcursion& g, double kappa);

// Glue the two coded trees along the time-matched correspondence, with cross
// distances inflated by half the distortion plus epsilon, and evaluate the
// embedded distance there.
struct CorrespondenceResult {
  double achieved_ghp;
  double distortion;
};
CorrespondenceResult correspondence_embedding(const CodedExcursion& f, const CodedExcursion& g,
                                              double epsilon, double kappa);

// volume of the open ball around x = class of time t0, with the proved
// two-sided envelopes
struct BallVolume {
  double lower;     // modulus_inverse(r/2) ^ sigma/2
  double measured;  // exact Lebesgue measure of {s : d(s, t0) < r}
  double upper;     // Leb(I(t0,r) cap {|f - f(t0)| < r})
};
BallVolume ball_volume_bounds(const CodedExcursion& f, double t0, double r);

// CSV with rows "t,f" (header optional)
CodedExcursion load_excursion_csv(const std::string& path);

}  // namespace reslab
