#include "pcaretain/pca.hpp"

#include <algorithm>
#include <string>

#include "pcaretain/errors.hpp"

namespace pcaretain {

PcaResult pca_from_covariance(const SymmetricMatrix& sigma) {
  PcaResult result;
  result.spectrum = eigen_decompose(sigma);
  const std::size_t p = result.spectrum.values.size();

  double total = 0.0;
  for (double v : result.spectrum.values) total += std::max(v, 0.0);
  if (total <= 0.0) throw DegeneracyError("pca_from_covariance: degenerate covariance (total variance <= 0)");

  result.total_variance = total;
  result.explained_ratio.resize(p);
  result.cumulative_ratio.resize(p);
  double running = 0.0;
  for (std::size_t k = 0; k < p; ++k) {
    result.explained_ratio[k] = std::max(result.spectrum.values[k], 0.0) / total;
    running += result.explained_ratio[k];
    result.cumulative_ratio[k] = running;
  }
  return result;
}

DataMatrix project_scores(const DataMatrix& x, const PcaResult& result, std::size_t k) {
  const std::size_t p = result.spectrum.dim;
  if (x.cols() != p) {
    throw DataError("project_scores: data has " + std::to_string(x.cols()) +
                    " columns, result expects " + std::to_string(p));
  }
  if (k < 1 || k > p) {
    throw DataError("project_scores: k = " + std::to_string(k) +
                    " out of range [1, " + std::to_string(p) + "]");
  }

  const std::vector<double> mean = x.column_means();
  const std::size_t n = x.rows();
  std::vector<double> scores(n * k, 0.0);
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t comp = 0; comp < k; ++comp) {
      double s = 0.0;
      for (std::size_t j = 0; j < p; ++j)
        s += (x(row, j) - mean[j]) * result.spectrum.vector_entry(j, comp);
      scores[row * k + comp] = s;
    }
  }
  std::vector<std::string> labels(k);
  for (std::size_t comp = 0; comp < k; ++comp) labels[comp] = "PC-" + std::to_string(comp + 1);
  return DataMatrix(n, k, std::move(scores), std::move(labels));
}

}  // namespace pcaretain
