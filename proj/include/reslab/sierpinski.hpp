#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "reslab/resistance_network.hpp"
#include "reslab/spectral.hpp"

namespace reslab {

// Level-n gasket graph. Vertices carry exact coordinates a*u + b*v over the
// triangular lattice basis u = (1,0), v = (1/2, sqrt(3)/2), scaled by 2^-n;
// each of the 3^n cells contributes its three corner edges with conductance
// (5/3)^n, and the vertex weight is (#incident cells) / 3^(n+1).
class SgLevel {
 public:
  explicit SgLevel(int level);

  int level() const { return level_; }
  std::size_t n_vertices() const { return coords_.size(); }
  std::size_t n_edges() const { return edge_list_.size(); }
  const std::vector<std::pair<std::int64_t, std::int64_t>>& lattice_coords() const {
    return coords_;
  }
  // Euclidean position with unit side length
  std::pair<double, double> position(std::size_t v) const;
  double euclidean_distance(std::size_t a, std::size_t b) const;

  const ResistanceNetwork& network() const { return *net_; }
  const std::vector<double>& measure() const { return mass_; }

  // the three outer corners (present at every level)
  std::array<std::size_t, 3> corners() const { return corners_; }

  // index of the vertex with the given lattice coordinates, or npos
  std::size_t find_vertex(std::int64_t a, std::int64_t b) const;
  // vertex of this level matching vertex `v` of the coarser level `other`
  std::size_t match_from(const SgLevel& other, std::size_t v) const;

 private:
  int level_;
  std::vector<std::pair<std::int64_t, std::int64_t>> coords_;
  std::vector<Edge> edge_list_;
  std::vector<double> mass_;
  std::array<std::size_t, 3> corners_;
  std::unique_ptr<ResistanceNetwork> net_;
};

// max over pairs of V_n of |R within level n+1 - R within level n|
double decimation_check(int level);

// Hausdorff distance tables in the resistance metric of the finest level:
// entry k is d_H(V_k, V_{k+1}) for consecutive, or d_H(V_k, V_max) otherwise.
std::vector<double> sg_hausdorff_decay(int n_max, bool consecutive);

// BL distances between the invariant measures, in the finest-level metric
std::vector<double> sg_measure_decay(int n_max, double kappa, bool consecutive);

// least-squares slope of log R against log d_E over all vertex pairs
double euclid_resistance_fit(const SgLevel& lvl);

// fit mu(B(x,r)) ~ c r^s in the resistance metric
struct AhlforsFit {
  double lower_c, upper_c, exponent;
};
AhlforsFit ahlfors_fit(const SgLevel& lvl);

// consecutive-level semigroup and heat-kernel differences at matched corners
struct SgRateRow {
  int n;
  double err;
};
// errors |P_t f(corner) - P_t^{n+1} f(corner)| for n in [n_lo, n_hi);
// f defaults to the first Euclidean coordinate
std::vector<SgRateRow> sg_semigroup_error(int n_lo, int n_hi, double t);
std::vector<SgRateRow> sg_heat_kernel_error(int n_lo, int n_hi, double t);

}  // namespace reslab
