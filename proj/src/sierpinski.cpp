#include "reslab/sierpinski.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "reslab/bl_distance.hpp"
#include "reslab/util.hpp"

namespace reslab {

namespace {

// corner offsets of one cell of side 2^-k, in lattice units of 2^-n:
// cell corner plus side * {(0,0), (1,0), (0,1)}
struct Cell {
  std::int64_t a, b;  // lattice coordinates of the bottom-left corner
  std::int64_t side;
};

}  // namespace

SgLevel::SgLevel(int level) : level_(level) {
  if (level < 0 || level > 8) throw std::invalid_argument("SgLevel: level must lie in [0, 8]");
  const std::int64_t full = std::int64_t{1} << level;

  // subdivide cells word by word
  std::vector<Cell> cells{{0, 0, full}};
  for (int k = 0; k < level; ++k) {
    std::vector<Cell> next;
    next.reserve(cells.size() * 3);
    for (const Cell& c : cells) {
      std::int64_t h = c.side / 2;
      next.push_back({c.a, c.b, h});
      next.push_back({c.a + h, c.b, h});
      next.push_back({c.a, c.b + h, h});
    }
    cells = std::move(next);
  }

  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> index;
  auto vertex = [&](std::int64_t a, std::int64_t b) {
    auto it = index.find({a, b});
    if (it != index.end()) return it->second;
    std::size_t id = coords_.size();
    index[{a, b}] = id;
    coords_.push_back({a, b});
    return id;
  };

  const double conductance = std::pow(5.0 / 3.0, level);
  std::vector<double> cell_count;
  for (const Cell& c : cells) {
    std::size_t p0 = vertex(c.a, c.b);
    std::size_t p1 = vertex(c.a + c.side, c.b);
    std::size_t p2 = vertex(c.a, c.b + c.side);
    edge_list_.push_back({p0, p1, conductance});
    edge_list_.push_back({p1, p2, conductance});
    edge_list_.push_back({p0, p2, conductance});
    cell_count.resize(coords_.size(), 0.0);
    cell_count[p0] += 1.0;
    cell_count[p1] += 1.0;
    cell_count[p2] += 1.0;
  }
  cell_count.resize(coords_.size(), 0.0);

  const double norm = 3.0 * std::pow(3.0, level);  // 3^{n+1}
  mass_.resize(coords_.size());
  for (std::size_t i = 0; i < coords_.size(); ++i) mass_[i] = cell_count[i] / norm;

  corners_ = {vertex(0, 0), vertex(full, 0), vertex(0, full)};
  net_ = std::make_unique<ResistanceNetwork>(coords_.size(), edge_list_);
}

std::pair<double, double> SgLevel::position(std::size_t v) const {
  const double scale = 1.0 / static_cast<double>(std::int64_t{1} << level_);
  double a = static_cast<double>(coords_[v].first) * scale;
  double b = static_cast<double>(coords_[v].second) * scale;
  return {a + 0.5 * b, b * std::sqrt(3.0) / 2.0};
}

double SgLevel::euclidean_distance(std::size_t x, std::size_t y) const {
  // |a u + b v|^2 = a^2 + a b + b^2 in lattice units
  double da = static_cast<double>(coords_[x].first - coords_[y].first);
  double db = static_cast<double>(coords_[x].second - coords_[y].second);
  const double scale = 1.0 / static_cast<double>(std::int64_t{1} << level_);
  return std::sqrt(da * da + da * db + db * db) * scale;
}

std::size_t SgLevel::find_vertex(std::int64_t a, std::int64_t b) const {
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (coords_[i].first == a && coords_[i].second == b) return i;
  return static_cast<std::size_t>(-1);
}

std::size_t SgLevel::match_from(const SgLevel& other, std::size_t v) const {
  if (other.level_ > level_) throw std::invalid_argument("match_from: finer source level");
  const std::int64_t shift = std::int64_t{1} << (level_ - other.level_);
  std::size_t id = find_vertex(other.coords_[v].first * shift, other.coords_[v].second * shift);
  if (id == static_cast<std::size_t>(-1))
    throw std::runtime_error("match_from: vertex not present at the finer level");
  return id;
}

double decimation_check(int level) {
  SgLevel coarse(level), fine(level + 1);
  double worst = 0.0;
  for (std::size_t x = 0; x < coarse.n_vertices(); ++x) {
    std::size_t fx = fine.match_from(coarse, x);
    for (std::size_t y = x + 1; y < coarse.n_vertices(); ++y) {
      std::size_t fy = fine.match_from(coarse, y);
      worst = std::max(worst, std::abs(fine.network().effective_resistance(fx, fy) -
                                       coarse.network().effective_resistance(x, y)));
    }
  }
  return worst;
}

namespace {

std::vector<std::size_t> embed_level(const SgLevel& fine, const SgLevel& coarse) {
  std::vector<std::size_t> map(coarse.n_vertices());
  for (std::size_t v = 0; v < coarse.n_vertices(); ++v) map[v] = fine.match_from(coarse, v);
  return map;
}

}  // namespace

std::vector<double> sg_hausdorff_decay(int n_max, bool consecutive) {
  SgLevel fine(n_max);
  const Matrix& r = fine.network().resistance_matrix();
  std::vector<double> out;
  for (int n = 0; n < n_max; ++n) {
    SgLevel a(n);
    auto ia = embed_level(fine, a);
    std::vector<std::size_t> ib;
    if (consecutive) {
      SgLevel b(n + 1);
      ib = embed_level(fine, b);
    } else {
      ib.resize(fine.n_vertices());
      for (std::size_t v = 0; v < fine.n_vertices(); ++v) ib[v] = v;
    }
    // one-sided suffices: V_n is a subset of the other set
    double worst = 0.0;
    for (std::size_t q : ib) {
      double best = 1e300;
      for (std::size_t p : ia) best = std::min(best, r(p, q));
      worst = std::max(worst, best);
    }
    out.push_back(worst);
  }
  return out;
}

std::vector<double> sg_measure_decay(int n_max, double kappa, bool consecutive) {
  SgLevel fine(n_max);
  FiniteMetricSpace ambient = fine.network().resistance_space();
  std::vector<double> out;
  for (int n = 0; n < n_max; ++n) {
    SgLevel a(n);
    auto ia = embed_level(fine, a);
    std::vector<double> mu(fine.n_vertices(), 0.0), nu(fine.n_vertices(), 0.0);
    for (std::size_t v = 0; v < a.n_vertices(); ++v) mu[ia[v]] = a.measure()[v];
    if (consecutive) {
      SgLevel b(n + 1);
      auto ib = embed_level(fine, b);
      for (std::size_t v = 0; v < b.n_vertices(); ++v) nu[ib[v]] = b.measure()[v];
    } else {
      for (std::size_t v = 0; v < fine.n_vertices(); ++v) nu[v] = fine.measure()[v];
    }
    out.push_back(bl_distance(ambient, mu, nu, kappa));
  }
  return out;
}

double euclid_resistance_fit(const SgLevel& lvl) {
  std::vector<double> lx, ly;
  const std::size_t n = lvl.n_vertices();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      lx.push_back(std::log(lvl.euclidean_distance(i, j)));
      ly.push_back(std::log(lvl.network().effective_resistance(i, j)));
    }
  return fit_line(lx, ly).slope;
}

AhlforsFit ahlfors_fit(const SgLevel& lvl) {
  const Matrix& r = lvl.network().resistance_matrix();
  const auto& mass = lvl.measure();
  const std::size_t n = lvl.n_vertices();
  const double diam = lvl.network().resistance_diameter();
  std::vector<double> lx, ly;
  for (std::size_t x = 0; x < n; ++x) {
    for (double frac : {0.08, 0.16, 0.32, 0.64}) {
      double rad = frac * diam;
      double m = 0.0;
      for (std::size_t y = 0; y < n; ++y)
        if (r(x, y) < rad) m += mass[y];
      if (m > 0.0) {
        lx.push_back(std::log(rad));
        ly.push_back(std::log(m));
      }
    }
  }
  LineFit fit = fit_line(lx, ly);
  AhlforsFit out;
  out.exponent = fit.slope;
  double lo = 1e300, hi = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    double c = std::exp(ly[k] - fit.slope * lx[k]);
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  out.lower_c = lo;
  out.upper_c = hi;
  return out;
}

namespace {

// first Euclidean coordinate as the default Lipschitz test function
std::vector<double> coordinate_function(const SgLevel& lvl) {
  std::vector<double> f(lvl.n_vertices());
  for (std::size_t v = 0; v < lvl.n_vertices(); ++v) f[v] = lvl.position(v).first;
  return f;
}

struct LevelSolve {
  std::unique_ptr<SgLevel> lvl;
  std::unique_ptr<SpectralDecomposition> spec;
};

LevelSolve solve_level(int n) {
  LevelSolve out;
  out.lvl = std::make_unique<SgLevel>(n);
  NetworkMeasure mu(out.lvl->measure());
  out.spec = std::make_unique<SpectralDecomposition>(out.lvl->network(), mu);
  return out;
}

}  // namespace

std::vector<SgRateRow> sg_semigroup_error(int n_lo, int n_hi, double t) {
  if (n_lo < 0 || n_hi <= n_lo) throw std::invalid_argument("sg_semigroup_error: bad range");
  std::vector<LevelSolve> solves(n_hi - n_lo + 1);
  parallel_for(solves.size(), [&](std::size_t k) { solves[k] = solve_level(n_lo + k); });
  std::vector<SgRateRow> rows;
  for (int n = n_lo; n < n_hi; ++n) {
    const LevelSolve& a = solves[n - n_lo];
    const LevelSolve& b = solves[n - n_lo + 1];
    auto fa = a.spec->semigroup_apply(t, coordinate_function(*a.lvl));
    auto fb = b.spec->semigroup_apply(t, coordinate_function(*b.lvl));
    // corner vertices are common to every level, matched at distance zero
    double err = 0.0;
    for (int c = 0; c < 3; ++c) {
      std::size_t va = a.lvl->corners()[c];
      std::size_t vb = b.lvl->corners()[c];
      err = std::max(err, std::abs(fa[va] - fb[vb]));
    }
    rows.push_back({n, err});
  }
  return rows;
}

std::vector<SgRateRow> sg_heat_kernel_error(int n_lo, int n_hi, double t) {
  if (n_lo < 0 || n_hi <= n_lo) throw std::invalid_argument("sg_heat_kernel_error: bad range");
  std::vector<LevelSolve> solves(n_hi - n_lo + 1);
  parallel_for(solves.size(), [&](std::size_t k) { solves[k] = solve_level(n_lo + k); });
  std::vector<SgRateRow> rows;
  for (int n = n_lo; n < n_hi; ++n) {
    const LevelSolve& a = solves[n - n_lo];
    const LevelSolve& b = solves[n - n_lo + 1];
    double err = 0.0;
    for (int c = 0; c < 3; ++c)
      for (int d = 0; d < 3; ++d) {
        double pa = a.spec->heat_kernel(t, a.lvl->corners()[c], a.lvl->corners()[d]);
        double pb = b.spec->heat_kernel(t, b.lvl->corners()[c], b.lvl->corners()[d]);
        err = std::max(err, std::abs(pa - pb));
      }
    rows.push_back({n, err});
  }
  return rows;
}

}  // namespace reslab
