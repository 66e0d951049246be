#ifndef PCARETAIN_SYMMETRIC_MATRIX_HPP
#define PCARETAIN_SYMMETRIC_MATRIX_HPP

#include <cstddef>
#include <vector>

namespace pcaretain {

// Dense real symmetric matrix. The constructor symmetrizes its input as
// (A + A^T)/2 and remembers whether that moved any entry by more than 1e-12.
// Instances are immutable after construction.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(std::size_t dim);
  SymmetricMatrix(std::size_t dim, std::vector<double> row_major);

  static SymmetricMatrix identity(std::size_t dim);
  static SymmetricMatrix diagonal(const std::vector<double>& diag);

  std::size_t dim() const { return dim_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * dim_ + j];
  }
  const std::vector<double>& entries() const { return entries_; }

  double trace() const;
  double max_abs() const;
  double frobenius_norm() const;

  // True when symmetrization changed some entry by more than 1e-12.
  bool was_symmetrized() const { return symmetrized_; }

 private:
  std::size_t dim_;
  std::vector<double> entries_;
  bool symmetrized_ = false;
};

// Eigenvalues sorted descending with paired orthonormal eigenvectors.
// vector_entry(i, k) is component i of the eigenvector for values[k]; the
// sign of each vector is fixed so its largest-magnitude entry is positive
// (ties broken by lowest index).
struct EigenSpectrum {
  std::vector<double> values;
  std::vector<double> vectors;  // row-major p x p, column k <-> values[k]
  std::size_t dim = 0;

  double vector_entry(std::size_t i, std::size_t k) const {
    return vectors[i * dim + k];
  }
};

// Full spectrum via cyclic Jacobi rotations. Sweeps until the off-diagonal
// Frobenius norm falls below 1e-12 * ||A||_F, at most 100 sweeps.
EigenSpectrum eigen_decompose(const SymmetricMatrix& a);

// Symmetric PSD square root B with B*B ~= A. Eigenvalues in
// [-1e-10 * |lambda_max|, 0) are clamped to zero; anything lower is rejected.
SymmetricMatrix psd_sqrt(const SymmetricMatrix& a);

}  // namespace pcaretain

#endif
