#ifndef PCARETAIN_PCA_HPP
#define PCARETAIN_PCA_HPP

#include <cstddef>
#include <vector>

#include "pcaretain/covariance.hpp"
#include "pcaretain/symmetric_matrix.hpp"

namespace pcaretain {

// Spectrum plus explained-variance accounting. Negative eigenvalues (noise
// from indefinite estimates) stay raw in `spectrum` but are floored at zero
// for the ratio columns, so ratios live in [0, 1].
struct PcaResult {
  EigenSpectrum spectrum;
  std::vector<double> explained_ratio;
  std::vector<double> cumulative_ratio;
  double total_variance = 0.0;
};

PcaResult pca_from_covariance(const SymmetricMatrix& sigma);

// Centered data projected onto the first k eigenvectors; columns PC-1..PC-k.
DataMatrix project_scores(const DataMatrix& x, const PcaResult& result, std::size_t k);

}  // namespace pcaretain

#endif
