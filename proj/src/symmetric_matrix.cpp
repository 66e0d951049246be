#include "pcaretain/symmetric_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pcaretain/errors.hpp"

namespace pcaretain {

SymmetricMatrix::SymmetricMatrix(std::size_t dim)
    : dim_(dim), entries_(dim * dim, 0.0) {
  if (dim == 0) throw DataError("SymmetricMatrix: dim must be >= 1");
}

SymmetricMatrix::SymmetricMatrix(std::size_t dim, std::vector<double> row_major)
    : dim_(dim), entries_(std::move(row_major)) {
  if (dim == 0) throw DataError("SymmetricMatrix: dim must be >= 1");
  if (entries_.size() != dim * dim) {
    throw DataError("SymmetricMatrix: expected " + std::to_string(dim * dim) +
                    " entries, got " + std::to_string(entries_.size()));
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i + 1; j < dim_; ++j) {
      const double upper = entries_[i * dim_ + j];
      const double lower = entries_[j * dim_ + i];
      const double mean = 0.5 * (upper + lower);
      if (std::abs(upper - lower) > 1e-12) symmetrized_ = true;
      entries_[i * dim_ + j] = mean;
      entries_[j * dim_ + i] = mean;
    }
  }
}

SymmetricMatrix SymmetricMatrix::identity(std::size_t dim) {
  SymmetricMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.entries_[i * dim + i] = 1.0;
  return m;
}

SymmetricMatrix SymmetricMatrix::diagonal(const std::vector<double>& diag) {
  SymmetricMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.entries_[i * m.dim_ + i] = diag[i];
  return m;
}

double SymmetricMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += entries_[i * dim_ + i];
  return t;
}

double SymmetricMatrix::max_abs() const {
  double m = 0.0;
  for (double v : entries_) m = std::max(m, std::abs(v));
  return m;
}

double SymmetricMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : entries_) s += v * v;
  return std::sqrt(s);
}

namespace {

double offdiag_norm(const std::vector<double>& w, std::size_t p) {
  double s = 0.0;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j) s += 2.0 * w[i * p + j] * w[i * p + j];
  return std::sqrt(s);
}

// One Jacobi rotation zeroing w[pq]; accumulates the rotation into v.
void rotate(std::vector<double>& w, std::vector<double>& v, std::size_t p,
            std::size_t row, std::size_t col) {
  const double apq = w[row * p + col];
  if (apq == 0.0) return;
  const double app = w[row * p + row];
  const double aqq = w[col * p + col];
  const double theta = (aqq - app) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const double tau = s / (1.0 + c);

  w[row * p + row] = app - t * apq;
  w[col * p + col] = aqq + t * apq;
  w[row * p + col] = 0.0;
  w[col * p + row] = 0.0;
  for (std::size_t r = 0; r < p; ++r) {
    if (r != row && r != col) {
      const double arp = w[r * p + row];
      const double arq = w[r * p + col];
      w[r * p + row] = arp - s * (arq + tau * arp);
      w[row * p + r] = w[r * p + row];
      w[r * p + col] = arq + s * (arp - tau * arq);
      w[col * p + r] = w[r * p + col];
    }
    const double vrp = v[r * p + row];
    const double vrq = v[r * p + col];
    v[r * p + row] = vrp - s * (vrq + tau * vrp);
    v[r * p + col] = vrq + s * (vrp - tau * vrq);
  }
}

}  // namespace

EigenSpectrum eigen_decompose(const SymmetricMatrix& a) {
  const std::size_t p = a.dim();
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (!std::isfinite(a(i, j))) {
        throw DataError("eigen_decompose: non-finite entry at (" +
                        std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }

  std::vector<double> w = a.entries();
  std::vector<double> v(p * p, 0.0);
  for (std::size_t i = 0; i < p; ++i) v[i * p + i] = 1.0;

  const double tol = 1e-12 * a.frobenius_norm();
  for (int sweep = 0; sweep < 100; ++sweep) {
    if (offdiag_norm(w, p) <= tol) break;
    for (std::size_t row = 0; row + 1 < p; ++row)
      for (std::size_t col = row + 1; col < p; ++col) rotate(w, v, p, row, col);
  }

  // Sort descending; stable so repeated eigenvalues keep a fixed order.
  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return w[x * p + x] > w[y * p + y];
  });

  EigenSpectrum out;
  out.dim = p;
  out.values.resize(p);
  out.vectors.resize(p * p);
  for (std::size_t k = 0; k < p; ++k) {
    const std::size_t src = order[k];
    out.values[k] = w[src * p + src];
    // Sign convention: largest-magnitude component positive, ties -> lowest index.
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < p; ++i) {
      const double mag = std::abs(v[i * p + src]);
      if (mag > best + 1e-15) {
        best = mag;
        arg = i;
      }
    }
    const double sign = v[arg * p + src] < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < p; ++i) out.vectors[i * p + k] = sign * v[i * p + src];
  }
  return out;
}

SymmetricMatrix psd_sqrt(const SymmetricMatrix& a) {
  const std::size_t p = a.dim();
  EigenSpectrum spec = eigen_decompose(a);
  double max_mag = 0.0;
  for (double v : spec.values) max_mag = std::max(max_mag, std::abs(v));
  const double floor = -1e-10 * max_mag;

  std::vector<double> roots(p);
  for (std::size_t k = 0; k < p; ++k) {
    const double lambda = spec.values[k];
    if (lambda < floor) {
      throw DegeneracyError("psd_sqrt: not positive semi-definite (eigenvalue " +
                            std::to_string(lambda) + ")");
    }
    roots[k] = std::sqrt(std::max(lambda, 0.0));
  }

  std::vector<double> b(p * p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i; j < p; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < p; ++k)
        s += spec.vector_entry(i, k) * roots[k] * spec.vector_entry(j, k);
      b[i * p + j] = s;
      b[j * p + i] = s;
    }
  }
  return SymmetricMatrix(p, std::move(b));
}

}  // namespace pcaretain
