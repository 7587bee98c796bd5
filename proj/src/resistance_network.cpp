#include "reslab/resistance_network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace reslab {

ResistanceNetwork::ResistanceNetwork(std::size_t n_vertices, std::vector<Edge> edges)
    : n_(n_vertices), edges_(std::move(edges)) {
  if (n_ == 0) throw std::invalid_argument("ResistanceNetwork: no vertices");
  adj_.assign(n_, {});
  for (const Edge& e : edges_) {
    if (e.u >= n_ || e.v >= n_) throw std::invalid_argument("ResistanceNetwork: bad edge index");
    if (e.u == e.v) throw std::invalid_argument("ResistanceNetwork: self loop");
    if (!(e.conductance >= 0.0))
      throw std::invalid_argument("ResistanceNetwork: negative conductance");
    if (e.conductance == 0.0) continue;
    adj_[e.u].push_back({e.v, e.conductance});
    adj_[e.v].push_back({e.u, e.conductance});
  }
  // connectivity over positive conductances
  std::vector<char> seen(n_, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t count = 0;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    ++count;
    for (auto& [w, c] : adj_[v])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  if (count != n_) throw std::invalid_argument("ResistanceNetwork: graph not connected");
  build_resistance_matrix();
}

double ResistanceNetwork::conductance(std::size_t u, std::size_t v) const {
  for (auto& [w, c] : adj_[u])
    if (w == v) return c;
  return 0.0;
}

Matrix ResistanceNetwork::laplacian() const {
  Matrix l(n_, n_);
  for (const Edge& e : edges_) {
    if (e.conductance == 0.0) continue;
    l(e.u, e.u) += e.conductance;
    l(e.v, e.v) += e.conductance;
    l(e.u, e.v) -= e.conductance;
    l(e.v, e.u) -= e.conductance;
  }
  return l;
}

Matrix ResistanceNetwork::killed_laplacian(const std::vector<std::size_t>& killed) const {
  std::vector<char> dead(n_, 0);
  for (std::size_t v : killed) dead[v] = 1;
  std::vector<std::size_t> alive;
  for (std::size_t v = 0; v < n_; ++v)
    if (!dead[v]) alive.push_back(v);
  Matrix full = laplacian();
  Matrix sub(alive.size(), alive.size());
  for (std::size_t i = 0; i < alive.size(); ++i)
    for (std::size_t j = 0; j < alive.size(); ++j) sub(i, j) = full(alive[i], alive[j]);
  return sub;
}

void ResistanceNetwork::build_resistance_matrix() {
  r_ = Matrix(n_, n_);
  if (n_ == 1) return;
  // ground the last vertex and invert the reduced Laplacian
  const std::size_t g = n_ - 1;
  Matrix lg = killed_laplacian({g});
  Cholesky chol(lg);
  Matrix inv(n_ - 1, n_ - 1);
  std::vector<double> e(n_ - 1, 0.0);
  for (std::size_t j = 0; j + 1 < n_; ++j) {
    e.assign(n_ - 1, 0.0);
    e[j] = 1.0;
    auto col = chol.solve(e);
    for (std::size_t i = 0; i + 1 < n_; ++i) inv(i, j) = col[i];
  }
  for (std::size_t i = 0; i + 1 < n_; ++i) {
    r_(i, g) = r_(g, i) = inv(i, i);
    for (std::size_t j = i + 1; j + 1 < n_; ++j)
      r_(i, j) = r_(j, i) = inv(i, i) + inv(j, j) - inv(i, j) - inv(j, i);
  }
}

double ResistanceNetwork::resistance_diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) d = std::max(d, r_(i, j));
  return d;
}

double ResistanceNetwork::resistance_to_set(std::size_t x,
                                            const std::vector<std::size_t>& a) const {
  if (a.empty()) throw std::invalid_argument("resistance_to_set: empty set");
  for (std::size_t v : a)
    if (v == x) return 0.0;
  // unit current into x with A grounded: R = u(x)
  std::vector<char> dead(n_, 0);
  for (std::size_t v : a) dead[v] = 1;
  std::vector<std::size_t> alive;
  for (std::size_t v = 0; v < n_; ++v)
    if (!dead[v]) alive.push_back(v);
  Matrix sub = killed_laplacian(a);
  std::vector<double> rhs(alive.size(), 0.0);
  std::size_t xi = std::find(alive.begin(), alive.end(), x) - alive.begin();
  rhs[xi] = 1.0;
  Cholesky chol(sub);
  auto u = chol.solve(rhs);
  return u[xi];
}

double ResistanceNetwork::fused_resistance(std::size_t y, std::size_t z,
                                           const std::vector<std::size_t>& a) const {
  if (a.empty()) throw std::invalid_argument("fused_resistance: empty set");
  if (y == z) return 0.0;
  // contract A to one node, summing parallel conductances
  std::vector<std::size_t> remap(n_);
  std::vector<char> in_a(n_, 0);
  for (std::size_t v : a) in_a[v] = 1;
  std::size_t next = 0;
  const std::size_t fused = 0;  // node 0 of the contracted graph is A
  bool any = false;
  for (std::size_t v = 0; v < n_; ++v)
    if (in_a[v]) {
      remap[v] = fused;
      any = true;
    }
  next = any ? 1 : 0;
  for (std::size_t v = 0; v < n_; ++v)
    if (!in_a[v]) remap[v] = next++;
  // accumulate conductances between contracted endpoints
  std::vector<Edge> contracted;
  std::vector<std::vector<double>> acc(next, std::vector<double>(next, 0.0));
  for (const Edge& e : edges_) {
    std::size_t u = remap[e.u], v = remap[e.v];
    if (u == v) continue;
    acc[u][v] += e.conductance;
    acc[v][u] += e.conductance;
  }
  for (std::size_t u = 0; u < next; ++u)
    for (std::size_t v = u + 1; v < next; ++v)
      if (acc[u][v] > 0.0) contracted.push_back({u, v, acc[u][v]});
  ResistanceNetwork cn(next, std::move(contracted));
  return cn.effective_resistance(remap[y], remap[z]);
}

double ResistanceNetwork::green_function(const std::vector<std::size_t>& a, std::size_t y,
                                         std::size_t z) const {
  for (std::size_t v : a)
    if (v == y || v == z) return 0.0;
  return 0.5 * (resistance_to_set(y, a) + resistance_to_set(z, a) - fused_resistance(y, z, a));
}

double ResistanceNetwork::point_green(std::size_t x, std::size_t y, std::size_t z) const {
  return 0.5 * (r_(x, y) + r_(x, z) - r_(y, z));
}

double ResistanceNetwork::energy(const std::vector<double>& f) const {
  if (f.size() != n_) throw std::invalid_argument("energy: size mismatch");
  double e = 0.0;
  for (const Edge& ed : edges_) {
    double d = f[ed.u] - f[ed.v];
    e += ed.conductance * d * d;
  }
  return e;
}

FiniteMetricSpace ResistanceNetwork::resistance_space() const {
  std::vector<std::string> names(n_);
  for (std::size_t i = 0; i < n_; ++i) names[i] = "v" + std::to_string(i);
  return FiniteMetricSpace(std::move(names), r_, 1e-8 * std::max(1.0, resistance_diameter()));
}

NetworkMeasure::NetworkMeasure(std::vector<double> m) : mass(std::move(m)) {
  if (mass.empty()) throw std::invalid_argument("NetworkMeasure: empty");
  for (double v : mass)
    if (!(v > 0.0)) throw std::invalid_argument("NetworkMeasure: full support required");
}

double NetworkMeasure::total() const {
  double s = 0.0;
  for (double v : mass) s += v;
  return s;
}

KilledSystem::KilledSystem(const ResistanceNetwork& n, NetworkMeasure m,
                           std::vector<std::size_t> a)
    : net(n), measure(std::move(m)), killing_set(std::move(a)) {
  if (measure.mass.size() != net.size())
    throw std::invalid_argument("KilledSystem: measure size mismatch");
  if (killing_set.empty()) throw std::invalid_argument("KilledSystem: empty killing set");
  std::sort(killing_set.begin(), killing_set.end());
  killing_set.erase(std::unique(killing_set.begin(), killing_set.end()), killing_set.end());
  for (std::size_t v : killing_set)
    if (v >= net.size()) throw std::invalid_argument("KilledSystem: killing vertex out of range");
  if (killing_set.size() >= net.size())
    throw std::invalid_argument("KilledSystem: killing set must be a proper subset");
}

std::vector<std::size_t> KilledSystem::alive() const {
  std::vector<char> dead(net.size(), 0);
  for (std::size_t v : killing_set) dead[v] = 1;
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < net.size(); ++v)
    if (!dead[v]) out.push_back(v);
  return out;
}

std::vector<double> killed_green_apply(const KilledSystem& sys, const std::vector<double>& f) {
  const std::size_t n = sys.net.size();
  if (f.size() != n) throw std::invalid_argument("killed_green_apply: size mismatch");
  std::vector<double> out(n, 0.0);
  const auto alive = sys.alive();
  for (std::size_t y : alive) {
    double s = 0.0;
    for (std::size_t z : alive)
      s += sys.net.green_function(sys.killing_set, y, z) * f[z] * sys.measure.mass[z];
    out[y] = s;
  }
  return out;
}

std::vector<double> killed_green_solve(const KilledSystem& sys, const std::vector<double>& f) {
  const std::size_t n = sys.net.size();
  if (f.size() != n) throw std::invalid_argument("killed_green_solve: size mismatch");
  const auto alive = sys.alive();
  Matrix lu = sys.net.killed_laplacian(sys.killing_set);
  std::vector<double> rhs(alive.size());
  for (std::size_t i = 0; i < alive.size(); ++i)
    rhs[i] = sys.measure.mass[alive[i]] * f[alive[i]];
  Cholesky chol(lu);
  auto u = chol.solve(rhs);
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < alive.size(); ++i) out[alive[i]] = u[i];
  return out;
}

namespace {

// one application of the killed Green operator with kernel g_x
std::vector<double> point_green_apply(const ResistanceNetwork& net, const NetworkMeasure& mu,
                                      std::size_t x, const std::vector<double>& f) {
  const std::size_t n = net.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t y = 0; y < n; ++y) {
    double s = 0.0;
    for (std::size_t z = 0; z < n; ++z) s += net.point_green(x, y, z) * f[z] * mu.mass[z];
    out[y] = s;
  }
  return out;
}

}  // namespace

std::vector<double> resolvent_series(const ResistanceNetwork& net, const NetworkMeasure& mu,
                                     std::size_t x, double alpha, const std::vector<double>& f,
                                     double tol) {
  if (f.size() != net.size()) throw std::invalid_argument("resolvent_series: size mismatch");
  const double window = 1.0 / (net.resistance_diameter() * mu.total());
  if (!(alpha > 0.0) || !(alpha < window))
    throw std::invalid_argument("resolvent_series: alpha outside the convergence window");
  std::vector<double> term = point_green_apply(net, mu, x, f);
  std::vector<double> sum = term;
  double coeff = 1.0;
  for (int i = 2; i <= 20000; ++i) {
    term = point_green_apply(net, mu, x, term);
    coeff *= -alpha;
    double sup = 0.0;
    for (std::size_t k = 0; k < term.size(); ++k) {
      sum[k] += coeff * term[k];
      sup = std::max(sup, std::abs(coeff * term[k]));
    }
    if (sup < tol) return sum;
  }
  throw std::runtime_error("resolvent_series: did not reach tolerance");
}

std::vector<double> resolvent_direct(const ResistanceNetwork& net, const NetworkMeasure& mu,
                                     std::size_t x, double alpha, const std::vector<double>& f) {
  if (f.size() != net.size()) throw std::invalid_argument("resolvent_direct: size mismatch");
  const std::size_t n = net.size();
  std::vector<std::size_t> alive;
  for (std::size_t v = 0; v < n; ++v)
    if (v != x) alive.push_back(v);
  Matrix a = net.killed_laplacian({x});
  for (std::size_t i = 0; i < alive.size(); ++i) a(i, i) += alpha * mu.mass[alive[i]];
  std::vector<double> rhs(alive.size());
  for (std::size_t i = 0; i < alive.size(); ++i) rhs[i] = mu.mass[alive[i]] * f[alive[i]];
  Cholesky chol(a);
  auto u = chol.solve(rhs);
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < alive.size(); ++i) out[alive[i]] = u[i];
  return out;
}

double expected_hitting_time(const ResistanceNetwork& net, const NetworkMeasure& mu,
                             std::size_t x, std::size_t y) {
  if (x == y) return 0.0;
  KilledSystem sys(net, mu, {y});
  std::vector<double> ones(net.size(), 1.0);
  auto u = killed_green_solve(sys, ones);
  return u[x];
}

NetworkDocument load_network_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  std::size_t n = j.at("n").get<std::size_t>();
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges"))
    edges.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(),
                     e.at(2).get<double>()});
  std::vector<double> mass(n, 1.0);
  if (j.contains("mass")) mass = j.at("mass").get<std::vector<double>>();
  return NetworkDocument{ResistanceNetwork(n, std::move(edges)), std::move(mass)};
}

void save_network_json(const std::string& path, const ResistanceNetwork& net,
                       const std::vector<double>& mass) {
  nlohmann::json j;
  j["n"] = net.size();
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : net.edges()) edges.push_back({e.u, e.v, e.conductance});
  j["edges"] = edges;
  j["mass"] = mass;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace reslab
