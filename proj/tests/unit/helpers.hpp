#ifndef PCARETAIN_TEST_HELPERS_HPP
#define PCARETAIN_TEST_HELPERS_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "pcaretain/covariance.hpp"
#include "pcaretain/rng.hpp"
#include "pcaretain/symmetric_matrix.hpp"

namespace testutil {

inline pcaretain::SymmetricMatrix random_symmetric(std::uint64_t seed, std::size_t p,
                                                   double scale = 1.0) {
  pcaretain::rng::GaussianStream gauss(seed);
  std::vector<double> a(p * p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i; j < p; ++j) {
      const double v = scale * gauss.next();
      a[i * p + j] = v;
      a[j * p + i] = v;
    }
  }
  return pcaretain::SymmetricMatrix(p, std::move(a));
}

inline pcaretain::DataMatrix random_data(std::uint64_t seed, std::size_t n, std::size_t p) {
  pcaretain::rng::GaussianStream gauss(seed);
  std::vector<double> rows(n * p);
  for (double& v : rows) v = gauss.next();
  return pcaretain::DataMatrix(n, p, std::move(rows));
}

// Brute-force covariance: explicit two-pass mean + double loop over entries.
// Intentionally naive; the oracle for the estimator implementations.
inline std::vector<double> covariance_oracle(const pcaretain::DataMatrix& x, double divisor) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  std::vector<double> mean(p, 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t i = 0; i < n; ++i) mean[j] += x(i, j);
    mean[j] /= static_cast<double>(n);
  }
  std::vector<double> s(p * p, 0.0);
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = 0; b < p; ++b) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += (x(i, a) - mean[a]) * (x(i, b) - mean[b]);
      s[a * p + b] = acc / divisor;
    }
  }
  return s;
}

// Ordered-pair pairwise-differences oracle with the 1/(2 n (n-1)) weight.
inline std::vector<double> pairwise_oracle(const pcaretain::DataMatrix& x) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  std::vector<double> s(p * p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = 0; b < p; ++b)
          s[a * p + b] += (x(i, a) - x(j, a)) * (x(i, b) - x(j, b));
    }
  }
  const double norm = 2.0 * static_cast<double>(n) * static_cast<double>(n - 1);
  for (double& v : s) v /= norm;
  return s;
}

inline double max_abs_diff(const pcaretain::SymmetricMatrix& m, const std::vector<double>& ref) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - ref[i * m.dim() + j]));
  return worst;
}

inline double max_abs_diff(const pcaretain::SymmetricMatrix& a, const pcaretain::SymmetricMatrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

}  // namespace testutil

#endif
