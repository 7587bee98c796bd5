#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "reslab/linalg.hpp"
#include "reslab/metric_space.hpp"

namespace reslab {

struct Edge {
  std::size_t u, v;
  double conductance;
};

// Finite electrical network with symmetric conductances. Connectivity is
// required at construction; the full pairwise effective-resistance matrix is
// built eagerly so later reads are contention-free.
//
// Conventions: energy E(f,f) = sum over unordered edges of c (f(u)-f(v))^2,
// so a single edge of conductance c has resistance 1/c, and the generator of
// the process with speed measure m is Df(x) = (1/m_x) sum_y c_xy (f(y)-f(x)).
class ResistanceNetwork {
 public:
  ResistanceNetwork(std::size_t n_vertices, std::vector<Edge> edges);

  std::size_t size() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  double conductance(std::size_t u, std::size_t v) const;

  double effective_resistance(std::size_t x, std::size_t y) const { return r_(x, y); }
  const Matrix& resistance_matrix() const { return r_; }
  double resistance_diameter() const;

  // R(x, A) with the whole of A grounded; 0 if x lies in A.
  double resistance_to_set(std::size_t x, const std::vector<std::size_t>& a) const;

  // effective resistance between y and z after identifying A to one node
  double fused_resistance(std::size_t y, std::size_t z, const std::vector<std::size_t>& a) const;

  // g_A(y,z) = (R(y,A) + R(z,A) - R_A(y,z)) / 2
  double green_function(const std::vector<std::size_t>& a, std::size_t y, std::size_t z) const;

  // g_x(y,z) = (R(x,y) + R(x,z) - R(y,z)) / 2
  double point_green(std::size_t x, std::size_t y, std::size_t z) const;

  // graph Laplacian restricted to the complement of `killed`
  Matrix killed_laplacian(const std::vector<std::size_t>& killed) const;
  Matrix laplacian() const;

  // Dirichlet energy of a vertex function
  double energy(const std::vector<double>& f) const;

  // vertex set as a metric space under effective resistance
  FiniteMetricSpace resistance_space() const;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<std::size_t, double>>> adj_;
  Matrix r_;  // pairwise effective resistance

  void build_resistance_matrix();
};

// strictly positive vertex weights (the speed measure)
struct NetworkMeasure {
  std::vector<double> mass;
  explicit NetworkMeasure(std::vector<double> m);
  double total() const;
};

// process killed on hitting A: holds the network, measure and killing set
struct KilledSystem {
  const ResistanceNetwork& net;
  NetworkMeasure measure;
  std::vector<std::size_t> killing_set;  // nonempty, proper subset

  KilledSystem(const ResistanceNetwork& n, NetworkMeasure m, std::vector<std::size_t> a);
  std::vector<std::size_t> alive() const;  // complement of the killing set
};

// (G_A f)(y) = sum_z g_A(y,z) f(z) m_z
std::vector<double> killed_green_apply(const KilledSystem& sys, const std::vector<double>& f);

// occupation-time oracle: solve (-D) u = f on the complement of A, u|_A = 0
std::vector<double> killed_green_solve(const KilledSystem& sys, const std::vector<double>& f);

// Killed resolvent by the alternating iterated-kernel series
//   G_x^alpha f = sum_{i>=1} (-alpha)^{i-1} G_x^{(i)} f,
// valid for alpha in (0, 1/(diam_R * total mass)); refuses alpha outside.
std::vector<double> resolvent_series(const ResistanceNetwork& net, const NetworkMeasure& mu,
                                     std::size_t x, double alpha, const std::vector<double>& f,
                                     double tol);

// direct-solve oracle for the killed resolvent: (alpha - D) u = f off x, u(x)=0
std::vector<double> resolvent_direct(const ResistanceNetwork& net, const NetworkMeasure& mu,
                                     std::size_t x, double alpha, const std::vector<double>& f);

// E_x[time to hit y]: solve (-D) u = 1 off y with u(y) = 0
double expected_hitting_time(const ResistanceNetwork& net, const NetworkMeasure& mu,
                             std::size_t x, std::size_t y);

// JSON I/O: {"n": int, "edges": [[i, j, conductance]], "mass": [...]}
struct NetworkDocument {
  ResistanceNetwork net;
  std::vector<double> mass;
};
NetworkDocument load_network_json(const std::string& path);
void save_network_json(const std::string& path, const ResistanceNetwork& net,
                       const std::vector<double>& mass);

}  // namespace reslab
