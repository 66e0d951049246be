#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"
#include "pcaretain/errors.hpp"
#include "pcaretain/simulation.hpp"
#include "pcaretain/symmetric_matrix.hpp"

using namespace pcaretain;

namespace {

// Characteristic polynomial of a 3x3 symmetric matrix, evaluated directly.
double char_poly(const SymmetricMatrix& a, double lambda) {
  const double m00 = a(0, 0) - lambda, m11 = a(1, 1) - lambda, m22 = a(2, 2) - lambda;
  return m00 * (m11 * m22 - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * m22 - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - m11 * a(2, 0));
}

// Root-finding oracle: scan for sign changes, bisect each bracket to 1e-12.
std::vector<double> char_poly_roots(const SymmetricMatrix& a) {
  double bound = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < 3; ++j) row += std::abs(a(i, j));
    bound = std::max(bound, row);
  }
  bound += 1.0;

  std::vector<double> roots;
  const int steps = 20000;
  double prev_x = -bound, prev_f = char_poly(a, prev_x);
  for (int s = 1; s <= steps; ++s) {
    const double x = -bound + 2.0 * bound * s / steps;
    const double f = char_poly(a, x);
    if ((prev_f < 0.0 && f > 0.0) || (prev_f > 0.0 && f < 0.0)) {
      double lo = prev_x, hi = x, flo = prev_f;
      for (int iter = 0; iter < 100; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double fm = char_poly(a, mid);
        if ((flo < 0.0) == (fm < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_x = x;
    prev_f = f;
  }
  std::sort(roots.rbegin(), roots.rend());
  return roots;
}

double reconstruction_error(const SymmetricMatrix& a, const EigenSpectrum& s) {
  const std::size_t p = a.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      double v = 0.0;
      for (std::size_t k = 0; k < p; ++k)
        v += s.vector_entry(i, k) * s.values[k] * s.vector_entry(j, k);
      worst = std::max(worst, std::abs(v - a(i, j)));
    }
  }
  return worst;
}

double orthonormality_error(const EigenSpectrum& s) {
  const std::size_t p = s.dim;
  double worst = 0.0;
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = 0; b < p; ++b) {
      double dot = 0.0;
      for (std::size_t i = 0; i < p; ++i) dot += s.vector_entry(i, a) * s.vector_entry(i, b);
      worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("identity matrix has a flat unit spectrum") {
  const EigenSpectrum s = eigen_decompose(SymmetricMatrix::identity(4));
  for (double v : s.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(orthonormality_error(s) <= 1e-10);
}

TEST_CASE("diagonal matrix is returned as-is with axis eigenvectors") {
  const EigenSpectrum s = eigen_decompose(SymmetricMatrix::diagonal({4.0, 1.0}));
  CHECK(s.values[0] == doctest::Approx(4.0));
  CHECK(s.values[1] == doctest::Approx(1.0));
  CHECK(s.vector_entry(0, 0) == doctest::Approx(1.0));
  CHECK(s.vector_entry(1, 0) == doctest::Approx(0.0));
  CHECK(s.vector_entry(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("3x3 eigenvalues match the characteristic-polynomial root oracle") {
  const SymmetricMatrix a = testutil::random_symmetric(42, 3);
  const EigenSpectrum s = eigen_decompose(a);
  const std::vector<double> roots = char_poly_roots(a);
  REQUIRE(roots.size() == 3);
  for (std::size_t k = 0; k < 3; ++k)
    CHECK(std::abs(s.values[k] - roots[k]) <= 1e-9);
}

TEST_CASE("spectrum invariants hold over random matrices") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL, 6ULL, 7ULL, 8ULL}) {
    const std::size_t p = 2 + seed % 9;
    const SymmetricMatrix a = testutil::random_symmetric(seed, p, 3.0);
    const EigenSpectrum s = eigen_decompose(a);

    for (std::size_t k = 0; k + 1 < p; ++k) CHECK(s.values[k] >= s.values[k + 1]);
    CHECK(orthonormality_error(s) <= 1e-10);
    CHECK(reconstruction_error(a, s) <= 1e-8 * (1.0 + a.max_abs()));

    double sum = 0.0;
    for (double v : s.values) sum += v;
    CHECK(std::abs(sum - a.trace()) <= 1e-8 * (1.0 + std::abs(a.trace())));
  }
}

TEST_CASE("eigen_decompose is scale-equivariant") {
  const SymmetricMatrix a = testutil::random_symmetric(11, 5);
  const double c = 3.75;
  std::vector<double> scaled = a.entries();
  for (double& v : scaled) v *= c;
  const EigenSpectrum s1 = eigen_decompose(a);
  const EigenSpectrum s2 = eigen_decompose(SymmetricMatrix(5, std::move(scaled)));
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(s2.values[k] ==
          doctest::Approx(c * s1.values[k]).epsilon(1e-10));
  }
}

TEST_CASE("eigen_decompose is deterministic and fixes vector signs") {
  const SymmetricMatrix a = testutil::random_symmetric(21, 6);
  const EigenSpectrum s1 = eigen_decompose(a);
  const EigenSpectrum s2 = eigen_decompose(a);
  CHECK(s1.values == s2.values);
  CHECK(s1.vectors == s2.vectors);

  // Largest-magnitude entry of each eigenvector is positive.
  for (std::size_t k = 0; k < 6; ++k) {
    double best = 0.0;
    for (std::size_t i = 0; i < 6; ++i)
      if (std::abs(s1.vector_entry(i, k)) > std::abs(best)) best = s1.vector_entry(i, k);
    CHECK(best > 0.0);
  }

  // Magnitude tie: the lowest index wins. Eigenvector of [[0,1],[1,0]] for
  // eigenvalue -1 is (1,-1)/sqrt(2) under that rule.
  const EigenSpectrum flip = eigen_decompose(SymmetricMatrix(2, {0.0, 1.0, 1.0, 0.0}));
  CHECK(flip.values[1] == doctest::Approx(-1.0));
  CHECK(flip.vector_entry(0, 1) > 0.0);
  CHECK(flip.vector_entry(1, 1) < 0.0);
}

TEST_CASE("non-finite entries are rejected with the offending index") {
  std::vector<double> bad = {1.0, 0.0, 0.0, std::nan("")};
  CHECK_THROWS_WITH_AS(eigen_decompose(SymmetricMatrix(2, std::move(bad))),
                       doctest::Contains("(1, 1)"), DataError);
}

TEST_CASE("constructor symmetrizes and flags meaningful asymmetry") {
  const SymmetricMatrix clean(2, {1.0, 0.5, 0.5, 2.0});
  CHECK_FALSE(clean.was_symmetrized());

  const SymmetricMatrix skew(2, {1.0, 0.5, 0.7, 2.0});
  CHECK(skew.was_symmetrized());
  CHECK(skew(0, 1) == doctest::Approx(0.6));
  CHECK(skew(1, 0) == doctest::Approx(0.6));

  CHECK_THROWS_AS(SymmetricMatrix(0), DataError);
}

TEST_CASE("psd_sqrt of simple matrices") {
  const SymmetricMatrix i3 = psd_sqrt(SymmetricMatrix::identity(3));
  CHECK(testutil::max_abs_diff(i3, SymmetricMatrix::identity(3)) <= 1e-12);

  const SymmetricMatrix d = psd_sqrt(SymmetricMatrix::diagonal({9.0, 4.0}));
  CHECK(d(0, 0) == doctest::Approx(3.0));
  CHECK(d(1, 1) == doctest::Approx(2.0));
  CHECK(d(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("psd_sqrt multiplies back to the population covariance") {
  const PopulationSpec spec = default_population();
  const SymmetricMatrix b = psd_sqrt(spec.sigma);
  const std::size_t p = b.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      double v = 0.0;
      for (std::size_t k = 0; k < p; ++k) v += b(i, k) * b(k, j);
      worst = std::max(worst, std::abs(v - spec.sigma(i, j)));
    }
  }
  CHECK(worst <= 1e-8 * (1.0 + spec.sigma.max_abs()));
}

TEST_CASE("psd_sqrt shares eigenvectors with its input") {
  const SymmetricMatrix a = testutil::random_symmetric(33, 4);
  // Shift to be comfortably positive definite so eigenvalues are distinct and > 0.
  std::vector<double> shifted = a.entries();
  const EigenSpectrum sa = eigen_decompose(a);
  const double shift = std::abs(sa.values.back()) + 2.0;
  for (std::size_t i = 0; i < 4; ++i) shifted[i * 4 + i] += shift;
  const SymmetricMatrix pd(4, std::move(shifted));

  const EigenSpectrum orig = eigen_decompose(pd);
  const EigenSpectrum root = eigen_decompose(psd_sqrt(pd));
  for (std::size_t k = 0; k < 4; ++k) {
    double dot = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
      dot += orig.vector_entry(i, k) * root.vector_entry(i, k);
    CHECK(std::abs(std::abs(dot) - 1.0) <= 1e-6);
    CHECK(root.values[k] == doctest::Approx(std::sqrt(orig.values[k])).epsilon(1e-9));
  }
}

TEST_CASE("psd_sqrt rejects indefinite matrices") {
  CHECK_THROWS_WITH_AS(psd_sqrt(SymmetricMatrix::diagonal({2.0, -0.5})),
                       doctest::Contains("not positive semi-definite"), DegeneracyError);
  // A tiny negative eigenvalue inside the tolerance is clamped instead.
  const double eps = -1e-12;
  const SymmetricMatrix near = psd_sqrt(SymmetricMatrix::diagonal({1.0, eps}));
  CHECK(near(1, 1) == doctest::Approx(0.0));
}
