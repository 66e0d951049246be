#ifndef PCARETAIN_COVARIANCE_HPP
#define PCARETAIN_COVARIANCE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "pcaretain/symmetric_matrix.hpp"

namespace pcaretain {

// n observations (rows) of p variables (columns), row-major, all finite.
class DataMatrix {
 public:
  DataMatrix(std::size_t rows, std::size_t cols, std::vector<double> data,
             std::vector<std::string> labels = {});

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  const std::vector<double>& data() const { return data_; }
  const std::vector<std::string>& labels() const { return labels_; }

  std::vector<double> column_means() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
  std::vector<std::string> labels_;
};

enum class EstimatorKind { Mle, Unbiased, LedoitWolf, Pdc, Spdc };

std::string estimator_name(EstimatorKind kind);
EstimatorKind estimator_from_name(const std::string& name);

struct LedoitWolfResult {
  SymmetricMatrix sigma;
  double shrinkage = 0.0;
  bool degenerate = false;  // all-constant data: zero matrix, shrinkage 1
};

struct SpdcResult {
  SymmetricMatrix sigma;
  std::vector<std::size_t> zero_variance_columns;
};

// S = (1/n) * sum (x_i - mean)(x_i - mean)^T
SymmetricMatrix mle_covariance(const DataMatrix& x);

// S_u = n/(n-1) * S_mle
SymmetricMatrix unbiased_covariance(const DataMatrix& x);

// Shrinkage toward the scaled identity with a plug-in optimal intensity.
LedoitWolfResult ledoit_wolf(const DataMatrix& x);

// S_pdc = 1/(2 n (n-1)) * sum over ordered pairs (x_i - x_j)(x_i - x_j)^T.
// Algebraically equal to the unbiased estimator.
SymmetricMatrix pdc_covariance(const DataMatrix& x);

// Standardize columns by the pairwise-differences scale, shrink the resulting
// correlation-scale matrix toward the identity, rescale back.
SpdcResult spdc_covariance(const DataMatrix& x, double shrinkage = 0.1);

// Dispatch on kind; spdc_shrinkage applies to Spdc only.
SymmetricMatrix estimate_covariance(const DataMatrix& x, EstimatorKind kind,
                                    double spdc_shrinkage = 0.1);

}  // namespace pcaretain

#endif
