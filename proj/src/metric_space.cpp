#include "reslab/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace reslab {

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> points, Matrix dist,
                                     double triangle_tol)
    : points_(std::move(points)), dist_(std::move(dist)) {
  const std::size_t n = points_.size();
  if (n == 0) throw std::invalid_argument("FiniteMetricSpace: empty point set");
  if (dist_.rows() != n || dist_.cols() != n)
    throw std::invalid_argument("FiniteMetricSpace: distance matrix shape mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (dist_(i, i) != 0.0) throw std::invalid_argument("FiniteMetricSpace: nonzero diagonal");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dist_(i, j) != dist_(j, i))
        throw std::invalid_argument("FiniteMetricSpace: asymmetric distances");
      if (!(dist_(i, j) > 0.0))
        throw std::invalid_argument("FiniteMetricSpace: non-positive off-diagonal distance");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (dist_(i, k) > dist_(i, j) + dist_(j, k) + triangle_tol)
          throw std::invalid_argument("FiniteMetricSpace: triangle inequality violated");
}

double FiniteMetricSpace::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j) d = std::max(d, dist_(i, j));
  return d;
}

std::vector<std::size_t> FiniteMetricSpace::open_ball(std::size_t x, double r) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (dist_(x, i) < r) out.push_back(i);
  return out;
}

std::vector<std::size_t> FiniteMetricSpace::closed_ball(std::size_t x, double r) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (dist_(x, i) <= r) out.push_back(i);
  return out;
}

FiniteMetricSpace FiniteMetricSpace::from_coords_1d(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  Matrix d(n, n);
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) {
    names[i] = "x" + std::to_string(i);
    for (std::size_t j = 0; j < n; ++j) d(i, j) = std::abs(xs[i] - xs[j]);
  }
  return FiniteMetricSpace(std::move(names), std::move(d), 1e-12);
}

MeasuredFiniteMetricSpace::MeasuredFiniteMetricSpace(FiniteMetricSpace sp, std::vector<double> m,
                                                     bool require_full_support)
    : space(std::move(sp)), mass(std::move(m)) {
  if (mass.size() != space.size())
    throw std::invalid_argument("MeasuredFiniteMetricSpace: mass vector size mismatch");
  for (double v : mass) {
    if (!(v >= 0.0)) throw std::invalid_argument("MeasuredFiniteMetricSpace: negative mass");
    if (require_full_support && !(v > 0.0))
      throw std::invalid_argument("MeasuredFiniteMetricSpace: full support required");
  }
}

double MeasuredFiniteMetricSpace::total_mass() const {
  double s = 0.0;
  for (double v : mass) s += v;
  return s;
}

double MeasuredFiniteMetricSpace::ball_mass(std::size_t x, double r, bool open) const {
  double s = 0.0;
  for (std::size_t i = 0; i < space.size(); ++i) {
    double d = space.dist(x, i);
    if (open ? (d < r) : (d <= r)) s += mass[i];
  }
  return s;
}

static void check_kappa(double kappa) {
  if (!(kappa > 0.0 && kappa <= 1.0))
    throw std::invalid_argument("kappa must lie in (0, 1]");
}

BlNorm bl_norm(const FiniteMetricSpace& space, const PartialFunction& f, double kappa) {
  check_kappa(kappa);
  if (f.domain.empty()) throw std::invalid_argument("bl_norm: empty domain");
  if (f.domain.size() != f.values.size())
    throw std::invalid_argument("bl_norm: domain/value size mismatch");
  BlNorm out;
  for (double v : f.values) out.sup = std::max(out.sup, std::abs(v));
  for (std::size_t a = 0; a < f.domain.size(); ++a)
    for (std::size_t b = a + 1; b < f.domain.size(); ++b) {
      double d = space.dist(f.domain[a], f.domain[b]);
      out.holder = std::max(out.holder,
                            std::abs(f.values[a] - f.values[b]) / std::pow(d, kappa));
    }
  out.bl = out.sup + out.holder;
  return out;
}

std::vector<double> mcshane_extend(const FiniteMetricSpace& space, const PartialFunction& f,
                                   double kappa) {
  check_kappa(kappa);
  if (f.domain.empty()) throw std::invalid_argument("mcshane_extend: empty domain");
  const BlNorm norms = bl_norm(space, f, kappa);
  const double L = norms.holder;
  double fmin = f.values[0], fmax = f.values[0];
  for (double v : f.values) {
    fmin = std::min(fmin, v);
    fmax = std::max(fmax, v);
  }
  std::vector<double> out(space.size());
  for (std::size_t x = 0; x < space.size(); ++x) {
    double g = -1e300;
    for (std::size_t a = 0; a < f.domain.size(); ++a) {
      double d = space.dist(x, f.domain[a]);
      g = std::max(g, f.values[a] - L * std::pow(d, kappa));
    }
    out[x] = std::clamp(g, fmin, fmax);
  }
  // points of the domain keep their values exactly
  for (std::size_t a = 0; a < f.domain.size(); ++a) out[f.domain[a]] = f.values[a];
  return out;
}

void EmbeddedPair::validate() const {
  if (index_a.empty() || index_b.empty())
    throw std::invalid_argument("EmbeddedPair: empty index set");
  auto check_subset = [&](const std::vector<std::size_t>& idx) {
    for (std::size_t i : idx)
      if (i >= ambient.size()) throw std::invalid_argument("EmbeddedPair: index out of range");
  };
  check_subset(index_a);
  check_subset(index_b);
  if (mass_a && mass_a->size() != index_a.size())
    throw std::invalid_argument("EmbeddedPair: massA size mismatch");
  if (mass_b && mass_b->size() != index_b.size())
    throw std::invalid_argument("EmbeddedPair: massB size mismatch");
  if (root_a && *root_a >= ambient.size())
    throw std::invalid_argument("EmbeddedPair: rootA out of range");
  if (root_b && *root_b >= ambient.size())
    throw std::invalid_argument("EmbeddedPair: rootB out of range");
}

SpaceDocument load_space_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  std::vector<std::string> points;
  if (j.contains("points"))
    for (const auto& p : j.at("points")) points.push_back(p.is_string() ? p.get<std::string>()
                                                                        : p.dump());
  const auto& dj = j.at("dist");
  const std::size_t n = dj.size();
  if (points.empty())
    for (std::size_t i = 0; i < n; ++i) points.push_back("p" + std::to_string(i));
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) d(i, k) = dj.at(i).at(k).get<double>();
  SpaceDocument doc{FiniteMetricSpace(std::move(points), std::move(d)), std::nullopt,
                    std::nullopt};
  if (j.contains("mass")) doc.mass = j.at("mass").get<std::vector<double>>();
  if (j.contains("root")) doc.root = j.at("root").get<std::size_t>();
  return doc;
}

void save_space_json(const std::string& path, const FiniteMetricSpace& space,
                     const std::vector<double>* mass, const std::size_t* root) {
  nlohmann::json j;
  j["points"] = space.points();
  std::vector<std::vector<double>> d(space.size(), std::vector<double>(space.size()));
  for (std::size_t i = 0; i < space.size(); ++i)
    for (std::size_t k = 0; k < space.size(); ++k) d[i][k] = space.dist(i, k);
  j["dist"] = d;
  if (mass) j["mass"] = *mass;
  if (root) j["root"] = *root;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace reslab
