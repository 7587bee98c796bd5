#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reslab/linalg.hpp"

namespace reslab {

// Finite metric space: opaque point labels plus a distance matrix.
// Immutable after construction; construction validates the metric axioms.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace(std::vector<std::string> points, Matrix dist,
                    double triangle_tol = 1e-9);

  std::size_t size() const { return points_.size(); }
  const std::vector<std::string>& points() const { return points_; }
  double dist(std::size_t i, std::size_t j) const { return dist_(i, j); }
  const Matrix& dist_matrix() const { return dist_; }
  double diameter() const;

  // indices of the open ball {y : d(x,y) < r}
  std::vector<std::size_t> open_ball(std::size_t x, double r) const;
  // indices of the closed ball {y : d(x,y) <= r}
  std::vector<std::size_t> closed_ball(std::size_t x, double r) const;

  static FiniteMetricSpace from_coords_1d(const std::vector<double>& xs);

 private:
  std::vector<std::string> points_;
  Matrix dist_;
};

struct MeasuredFiniteMetricSpace {
  FiniteMetricSpace space;
  std::vector<double> mass;  // nonnegative weight per point

  MeasuredFiniteMetricSpace(FiniteMetricSpace sp, std::vector<double> m,
                            bool require_full_support = false);
  double total_mass() const;
  double ball_mass(std::size_t x, double r, bool open = true) const;
};

// real-valued function on a subset of a space's indices
struct PartialFunction {
  std::vector<std::size_t> domain;
  std::vector<double> values;
};

struct BlNorm {
  double sup = 0.0;     // max |f|
  double holder = 0.0;  // kappa-Holder constant
  double bl = 0.0;      // sup + holder
};

// Norm data of f over its domain; a singleton domain has Holder constant 0.
BlNorm bl_norm(const FiniteMetricSpace& space, const PartialFunction& f, double kappa);

// Extension of f from its domain to the whole space preserving both the sup
// norm and the kappa-Holder constant:
//   g(x) = sup_a (f(a) - L d(x,a)^kappa) clamped to [min f, max f].
std::vector<double> mcshane_extend(const FiniteMetricSpace& space, const PartialFunction& f,
                                   double kappa);

// Embedded copies of two spaces inside one ambient space, with optional
// masses and marked points. Roots are ambient indices; the marked point of a
// copy usually belongs to it, but the local (root-relative) distances only
// need the root to exist in the ambient space.
struct EmbeddedPair {
  FiniteMetricSpace ambient;
  std::vector<std::size_t> index_a;
  std::vector<std::size_t> index_b;
  std::optional<std::vector<double>> mass_a;
  std::optional<std::vector<double>> mass_b;
  std::optional<std::size_t> root_a;
  std::optional<std::size_t> root_b;

  void validate() const;
};

// JSON document {"points": [...], "dist": [[...]], "mass": [...], "root": i}
struct SpaceDocument {
  FiniteMetricSpace space;
  std::optional<std::vector<double>> mass;
  std::optional<std::size_t> root;
};
SpaceDocument load_space_json(const std::string& path);
void save_space_json(const std::string& path, const FiniteMetricSpace& space,
                     const std::vector<double>* mass, const std::size_t* root);

}  // namespace reslab
