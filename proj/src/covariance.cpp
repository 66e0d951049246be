#include "pcaretain/covariance.hpp"

#include <algorithm>
#include <cmath>

#include "pcaretain/errors.hpp"

namespace pcaretain {

DataMatrix::DataMatrix(std::size_t rows, std::size_t cols, std::vector<double> data,
                       std::vector<std::string> labels)
    : rows_(rows), cols_(cols), data_(std::move(data)), labels_(std::move(labels)) {
  if (rows_ == 0 || cols_ == 0) throw DataError("DataMatrix: empty shape");
  if (data_.size() != rows_ * cols_) {
    throw DataError("DataMatrix: expected " + std::to_string(rows_ * cols_) +
                    " values, got " + std::to_string(data_.size()));
  }
  if (!labels_.empty() && labels_.size() != cols_) {
    throw DataError("DataMatrix: label count does not match column count");
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!std::isfinite(data_[i * cols_ + j])) {
        throw DataError("DataMatrix: non-finite value at row " + std::to_string(i) +
                        ", column " + std::to_string(j));
      }
    }
  }
}

std::vector<double> DataMatrix::column_means() const {
  std::vector<double> mean(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) mean[j] += (*this)(i, j);
  for (double& m : mean) m /= static_cast<double>(rows_);
  return mean;
}

std::string estimator_name(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::Mle: return "mle";
    case EstimatorKind::Unbiased: return "unbiased";
    case EstimatorKind::LedoitWolf: return "lw";
    case EstimatorKind::Pdc: return "pdc";
    case EstimatorKind::Spdc: return "spdc";
  }
  return "unknown";
}

EstimatorKind estimator_from_name(const std::string& name) {
  if (name == "mle") return EstimatorKind::Mle;
  if (name == "unbiased") return EstimatorKind::Unbiased;
  if (name == "lw" || name == "ledoit-wolf") return EstimatorKind::LedoitWolf;
  if (name == "pdc") return EstimatorKind::Pdc;
  if (name == "spdc") return EstimatorKind::Spdc;
  throw DataError("unknown estimator '" + name +
                  "' (expected mle, unbiased, lw, pdc, or spdc)");
}

namespace {

void require_two_rows(const DataMatrix& x, const char* who) {
  if (x.rows() < 2) {
    throw DataError(std::string(who) + ": insufficient observations (n = " +
                    std::to_string(x.rows()) + ", need >= 2)");
  }
}

}  // namespace

SymmetricMatrix mle_covariance(const DataMatrix& x) {
  require_two_rows(x, "mle_covariance");
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  const std::vector<double> mean = x.column_means();

  std::vector<double> s(p * p, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < p; ++i) {
      const double di = x(k, i) - mean[i];
      for (std::size_t j = i; j < p; ++j) s[i * p + j] += di * (x(k, j) - mean[j]);
    }
  }
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i; j < p; ++j) {
      s[i * p + j] /= static_cast<double>(n);
      s[j * p + i] = s[i * p + j];
    }
  }
  return SymmetricMatrix(p, std::move(s));
}

SymmetricMatrix unbiased_covariance(const DataMatrix& x) {
  require_two_rows(x, "unbiased_covariance");
  const double factor = static_cast<double>(x.rows()) / static_cast<double>(x.rows() - 1);
  SymmetricMatrix s = mle_covariance(x);
  std::vector<double> scaled = s.entries();
  for (double& v : scaled) v *= factor;
  return SymmetricMatrix(s.dim(), std::move(scaled));
}

LedoitWolfResult ledoit_wolf(const DataMatrix& x) {
  require_two_rows(x, "ledoit_wolf");
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  SymmetricMatrix s = mle_covariance(x);
  const double mu = s.trace() / static_cast<double>(p);

  if (mu <= 0.0) {
    // All-constant data: nothing to estimate, shrink fully.
    return LedoitWolfResult{SymmetricMatrix(p), 1.0, true};
  }

  // Squared distance of S from the target mu*I, normalized by p.
  double d2 = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      const double v = s(i, j) - (i == j ? mu : 0.0);
      d2 += v * v;
    }
  }
  d2 /= static_cast<double>(p);

  // Average squared distance of the rank-one terms from S.
  const std::vector<double> mean = x.column_means();
  double b2bar = 0.0;
  std::vector<double> centered(p);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < p; ++j) centered[j] = x(k, j) - mean[j];
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        const double v = centered[i] * centered[j] - s(i, j);
        b2bar += v * v;
      }
    }
  }
  b2bar /= static_cast<double>(n) * static_cast<double>(n) * static_cast<double>(p);

  double rho;
  if (d2 <= 0.0) {
    rho = 0.0;  // S already equals mu*I; shrinking is a no-op either way
  } else {
    rho = std::clamp(std::min(b2bar, d2) / d2, 0.0, 1.0);
  }

  std::vector<double> out(p * p, 0.0);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      out[i * p + j] = (1.0 - rho) * s(i, j) + (i == j ? rho * mu : 0.0);
  return LedoitWolfResult{SymmetricMatrix(p, std::move(out)), rho, false};
}

SymmetricMatrix pdc_covariance(const DataMatrix& x) {
  require_two_rows(x, "pdc_covariance");
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();

  // Unordered pairs, each counted once; the ordered-pair sum is twice this,
  // so the 1/(2 n (n-1)) normalization becomes 1/(n (n-1)).
  std::vector<double> s(p * p, 0.0);
  std::vector<double> diff(p);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t j = 0; j < p; ++j) diff[j] = x(a, j) - x(b, j);
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i; j < p; ++j) s[i * p + j] += diff[i] * diff[j];
    }
  }
  const double norm = static_cast<double>(n) * static_cast<double>(n - 1);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i; j < p; ++j) {
      s[i * p + j] /= norm;
      s[j * p + i] = s[i * p + j];
    }
  }
  return SymmetricMatrix(p, std::move(s));
}

SpdcResult spdc_covariance(const DataMatrix& x, double shrinkage) {
  require_two_rows(x, "spdc_covariance");
  if (!(shrinkage >= 0.0 && shrinkage <= 1.0)) {
    throw DataError("spdc_covariance: shrinkage must be in [0, 1], got " +
                    std::to_string(shrinkage));
  }
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();

  SymmetricMatrix base = pdc_covariance(x);
  std::vector<double> scale(p);
  std::vector<std::size_t> zero_columns;
  for (std::size_t j = 0; j < p; ++j) {
    scale[j] = std::sqrt(std::max(base(j, j), 0.0));
    if (scale[j] == 0.0) zero_columns.push_back(j);
  }

  // Zero-variance columns are left unscaled; their rows vanish on rescale.
  std::vector<double> standardized(n * p);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < p; ++j)
      standardized[k * p + j] = scale[j] > 0.0 ? x(k, j) / scale[j] : x(k, j);

  SymmetricMatrix corr = pdc_covariance(DataMatrix(n, p, std::move(standardized)));

  std::vector<double> out(p * p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      const double shrunk =
          (1.0 - shrinkage) * corr(i, j) + (i == j ? shrinkage : 0.0);
      out[i * p + j] = scale[i] * scale[j] * shrunk;
    }
  }
  return SpdcResult{SymmetricMatrix(p, std::move(out)), std::move(zero_columns)};
}

SymmetricMatrix estimate_covariance(const DataMatrix& x, EstimatorKind kind,
                                    double spdc_shrinkage) {
  switch (kind) {
    case EstimatorKind::Mle: return mle_covariance(x);
    case EstimatorKind::Unbiased: return unbiased_covariance(x);
    case EstimatorKind::LedoitWolf: return ledoit_wolf(x).sigma;
    case EstimatorKind::Pdc: return pdc_covariance(x);
    case EstimatorKind::Spdc: return spdc_covariance(x, spdc_shrinkage).sigma;
  }
  throw DataError("estimate_covariance: unknown estimator kind");
}

}  // namespace pcaretain
