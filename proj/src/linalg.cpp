#include "reslab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace reslab {

std::vector<double> Matrix::multiply(const std::vector<double>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("Matrix::multiply: size mismatch");
  std::vector<double> out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double* row = row_ptr(i);
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += row[j] * v[j];
    out[i] = s;
  }
  return out;
}

Cholesky::Cholesky(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("Cholesky: square matrix required");
  const std::size_t n = a.rows();
  l_ = Matrix(n, n);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(a(i, i)));
  const double tol = 1e-13 * std::max(scale, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l_(j, k) * l_(j, k);
    if (d <= tol * 1e-3) throw std::runtime_error("Cholesky: matrix not positive definite");
    const double ljj = std::sqrt(d);
    l_(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l_(i, k) * l_(j, k);
      l_(i, j) = s / ljj;
    }
  }
}

std::vector<double> Cholesky::solve(const std::vector<double>& rhs) const {
  const std::size_t n = l_.rows();
  if (rhs.size() != n) throw std::invalid_argument("Cholesky::solve: size mismatch");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = rhs[i];
    for (std::size_t k = 0; k < i; ++k) s -= l_(i, k) * y[k];
    y[i] = s / l_(i, i);
  }
  std::vector<double> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= l_(k, ii) * x[k];
    x[ii] = s / l_(ii, ii);
  }
  return x;
}

namespace {

double hypot2(double a, double b) { return std::sqrt(a * a + b * b); }

// Householder reduction of a symmetric matrix to tridiagonal form with
// accumulation of the orthogonal transformation (classic tred2).
void tred2(Matrix& z, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = z.rows();
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::size_t l = i - 1;
    double h = 0.0, scale = 0.0;
    if (l > 0) {
      for (std::size_t k = 0; k <= l; ++k) scale += std::abs(z(i, k));
      if (scale == 0.0) {
        e[i] = z(i, l);
      } else {
        for (std::size_t k = 0; k <= l; ++k) {
          z(i, k) /= scale;
          h += z(i, k) * z(i, k);
        }
        double f = z(i, l);
        double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        z(i, l) = f - g;
        f = 0.0;
        for (std::size_t j = 0; j <= l; ++j) {
          z(j, i) = z(i, j) / h;
          g = 0.0;
          for (std::size_t k = 0; k <= j; ++k) g += z(j, k) * z(i, k);
          for (std::size_t k = j + 1; k <= l; ++k) g += z(k, j) * z(i, k);
          e[j] = g / h;
          f += e[j] * z(i, j);
        }
        double hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
          f = z(i, j);
          e[j] = g = e[j] - hh * f;
          for (std::size_t k = 0; k <= j; ++k) z(j, k) -= f * e[k] + g * z(i, k);
        }
      }
    } else {
      e[i] = z(i, l);
    }
    d[i] = h;
  }
  d[0] = 0.0;
  e[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t l = i;
    if (d[i] != 0.0) {
      for (std::size_t j = 0; j < l; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k < l; ++k) g += z(i, k) * z(k, j);
        for (std::size_t k = 0; k < l; ++k) z(k, j) -= g * z(k, i);
      }
    }
    d[i] = z(i, i);
    z(i, i) = 1.0;
    for (std::size_t j = 0; j < l; ++j) {
      z(j, i) = 0.0;
      z(i, j) = 0.0;
    }
  }
}

// Implicit-shift QL on a tridiagonal matrix; rotations applied to z (tql2).
void tql2(std::vector<double>& d, std::vector<double>& e, Matrix& z) {
  const std::size_t n = d.size();
  if (n == 0) return;
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-300 || std::abs(e[m]) <= 2.3e-16 * dd) break;
      }
      if (m != l) {
        if (++iter == 60) throw std::runtime_error("tql2: too many iterations");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = hypot2(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          double b = c * e[i];
          r = hypot2(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (std::size_t k = 0; k < n; ++k) {
            f = z(k, i + 1);
            z(k, i + 1) = s * z(k, i) + c * f;
            z(k, i) = c * z(k, i) - s * f;
          }
        }
        if (r == 0.0 && m - l > 1) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  // sort ascending, carrying eigenvectors
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::size_t k = i;
    double p = d[i];
    for (std::size_t j = i + 1; j < n; ++j)
      if (d[j] < p) {
        k = j;
        p = d[j];
      }
    if (k != i) {
      std::swap(d[k], d[i]);
      for (std::size_t j = 0; j < n; ++j) std::swap(z(j, i), z(j, k));
    }
  }
}

void fix_vector_signs(Matrix& z) {
  const std::size_t n = z.rows();
  for (std::size_t j = 0; j < z.cols(); ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(z(i, j)) > 1e-12) {
        if (z(i, j) < 0.0)
          for (std::size_t k = 0; k < n; ++k) z(k, j) = -z(k, j);
        break;
      }
    }
  }
}

}  // namespace

SymmetricEigen symmetric_eigen(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("symmetric_eigen: square matrix required");
  SymmetricEigen out;
  out.vectors = a;
  std::vector<double> e;
  tred2(out.vectors, out.values, e);
  tql2(out.values, e, out.vectors);
  fix_vector_signs(out.vectors);
  return out;
}

SymmetricEigen jacobi_eigen(const Matrix& a, int max_sweeps) {
  if (a.rows() != a.cols()) throw std::invalid_argument("jacobi_eigen: square matrix required");
  const std::size_t n = a.rows();
  Matrix m = a;
  Matrix v = Matrix::identity(n);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += m(i, j) * m(i, j);
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(m(p, q)) < 1e-300) continue;
        double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double mkp = m(k, p), mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double mpk = m(p, k), mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }
  SymmetricEigen out;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = m(i, i);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return out.values[x] < out.values[y]; });
  Matrix vs(n, n);
  std::vector<double> dv(n);
  for (std::size_t j = 0; j < n; ++j) {
    dv[j] = out.values[order[j]];
    for (std::size_t i = 0; i < n; ++i) vs(i, j) = v(i, order[j]);
  }
  out.values = dv;
  out.vectors = vs;
  fix_vector_signs(out.vectors);
  return out;
}

int tridiag_count_below(const std::vector<double>& diag, const std::vector<double>& off,
                        double x) {
  const std::size_t n = diag.size();
  int count = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    double bb = (i == 0) ? 0.0 : off[i - 1] * off[i - 1];
    d = diag[i] - x - (d != 0.0 ? bb / d : bb / 1e-300);
    if (d == 0.0) d = -1e-300;
    if (d < 0.0) ++count;
  }
  return count;
}

namespace {

// inverse iteration for one eigenvalue of a symmetric tridiagonal matrix;
// tridiagonal LU with partial pivoting
std::vector<double> tridiag_inverse_iteration(const std::vector<double>& diag,
                                              const std::vector<double>& off, double lambda,
                                              std::uint64_t salt) {
  const std::size_t n = diag.size();
  // factor (T - lambda I) with partial pivoting; bandwidth 2 in U
  std::vector<double> du(n), du1(n > 1 ? n - 1 : 0), du2(n > 2 ? n - 2 : 0), dl(n > 1 ? n - 1 : 0);
  std::vector<char> piv(n > 1 ? n - 1 : 0, 0);

  auto factor = [&](double shift) {
    std::vector<double> a(n), b(n > 1 ? n - 1 : 0), c(n > 1 ? n - 1 : 0);
    for (std::size_t i = 0; i < n; ++i) a[i] = diag[i] - shift;
    for (std::size_t i = 0; i + 1 < n; ++i) b[i] = off[i], c[i] = off[i];
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(a[i]) >= std::abs(c[i])) {
        piv[i] = 0;
        if (a[i] == 0.0) a[i] = 1e-300;
        double m = c[i] / a[i];
        dl[i] = m;
        a[i + 1] -= m * b[i];
        du[i] = a[i];
        du1[i] = b[i];
        if (i + 2 < n) du2[i] = 0.0;
      } else {
        piv[i] = 1;
        double m = a[i] / c[i];
        dl[i] = m;
        du[i] = c[i];
        du1[i] = a[i + 1];
        double t = b[i] - m * a[i + 1];
        if (i + 2 < n) {
          du2[i] = b[i + 1];
          b[i + 1] = -m * b[i + 1];
        }
        a[i + 1] = t;
      }
    }
    du[n - 1] = (a[n - 1] == 0.0) ? 1e-300 : a[n - 1];
  };

  auto solve = [&](std::vector<double>& x) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (piv[i]) std::swap(x[i], x[i + 1]);
      x[i + 1] -= dl[i] * x[i];
    }
    for (std::size_t ii = n; ii-- > 0;) {
      double s = x[ii];
      if (ii + 1 < n) s -= du1[ii] * x[ii + 1];
      if (ii + 2 < n) s -= du2[ii] * x[ii + 2];
      x[ii] = s / du[ii];
    }
  };

  // small relative perturbation keeps the factorization well defined when
  // lambda is essentially exact
  double scale = 0.0;
  for (double v : diag) scale = std::max(scale, std::abs(v));
  for (double v : off) scale = std::max(scale, std::abs(v));
  factor(lambda + 1e-13 * std::max(scale, 1.0) * 1e-2);

  // deterministic start vector
  std::vector<double> x(n);
  std::uint64_t s = 0x9e3779b97f4a7c15ULL ^ salt;
  for (std::size_t i = 0; i < n; ++i) {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    x[i] = (static_cast<double>(s >> 11) * 0x1.0p-53) - 0.5;
  }
  for (int it = 0; it < 4; ++it) {
    solve(x);
    double nrm = 0.0;
    for (double v : x) nrm += v * v;
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) nrm = 1.0;
    for (double& v : x) v /= nrm;
  }
  return x;
}

}  // namespace

TridiagPartialEigen tridiag_eigen_below(const std::vector<double>& diag,
                                        const std::vector<double>& off, double cutoff) {
  const std::size_t n = diag.size();
  if (off.size() + 1 != n) throw std::invalid_argument("tridiag_eigen_below: size mismatch");
  TridiagPartialEigen out;
  if (n == 0) return out;
  // Gershgorin bounds
  double lo = diag[0], hi = diag[0];
  for (std::size_t i = 0; i < n; ++i) {
    double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(off[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  double top = std::min(cutoff, hi + 1e-12 * (std::abs(hi) + 1.0));
  if (top <= lo) return out;
  const int k = tridiag_count_below(diag, off, top);
  if (k == 0) return out;

  const double span = std::max(hi - lo, 1e-300);
  out.values.resize(k);
  for (int j = 0; j < k; ++j) {
    // bisection for the (j+1)-th smallest eigenvalue
    double a = lo - 1e-12 * span, b = top;
    for (int it = 0; it < 80 && (b - a) > 1e-15 * span; ++it) {
      double m = 0.5 * (a + b);
      if (tridiag_count_below(diag, off, m) >= j + 1)
        b = m;
      else
        a = m;
    }
    out.values[j] = 0.5 * (a + b);
  }

  out.vectors.resize(k);
  for (int j = 0; j < k; ++j)
    out.vectors[j] = tridiag_inverse_iteration(diag, off, out.values[j], 0x51edULL * (j + 1));

  // re-orthogonalize within clusters of close eigenvalues
  const double cluster_tol = 1e-8 * span;
  for (int j = 1; j < k; ++j) {
    if (out.values[j] - out.values[j - 1] < cluster_tol) {
      for (int m = j - 1; m >= 0 && out.values[j] - out.values[m] < cluster_tol; --m) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += out.vectors[j][i] * out.vectors[m][i];
        for (std::size_t i = 0; i < n; ++i) out.vectors[j][i] -= dot * out.vectors[m][i];
      }
      double nrm = 0.0;
      for (double v : out.vectors[j]) nrm += v * v;
      nrm = std::sqrt(nrm);
      if (nrm > 0) {
        for (double& v : out.vectors[j]) v /= nrm;
      }
    }
  }
  return out;
}

}  // namespace reslab
