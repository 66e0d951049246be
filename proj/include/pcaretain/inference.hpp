#ifndef PCARETAIN_INFERENCE_HPP
#define PCARETAIN_INFERENCE_HPP

#include <string>
#include <vector>

namespace pcaretain {

// One-way variance decomposition and the F test on it.
struct AnovaTable {
  double ss_groups = 0.0;
  double ss_error = 0.0;
  double ss_total = 0.0;
  int df_groups = 0;
  int df_error = 0;
  int df_total = 0;
  double ms_groups = 0.0;
  double ms_error = 0.0;
  double f_stat = 0.0;
  double p_value = 1.0;
  bool degenerate = false;  // zero within-group variance: F reported as +inf
};

struct TukeyComparison {
  std::string group_a;
  std::string group_b;
  double mean_diff = 0.0;
  double ci_lower = 0.0;
  double ci_upper = 0.0;
  double p_value = 1.0;
  bool significant = false;
  bool p_floored = false;  // true when the computed p fell below 1e-12
};

// I_x(a, b) by continued fraction, switching to the symmetric form when
// x > (a+1)/(a+b+2). Absolute error <= 1e-12.
double regularized_incomplete_beta(double x, double a, double b);

// Upper tail P(F > f) for df1, df2 degrees of freedom.
double f_sf(double f, int df1, int df2);

// Upper tail P(T > t) for Student's t; used by the k = 2 range reduction.
double t_sf(double t, double df);

AnovaTable anova_oneway(const std::vector<std::vector<double>>& groups);

// Upper tail of the studentized range: outer integral over the scaled chi
// density of the pooled sd, inner over the range CDF of k standard normals.
// Gauss-Legendre panels sized for absolute error <= 1e-6.
double studentized_range_sf(double q, int k, int df);

// q with studentized_range_sf(q, k, df) == alpha, found by bisection.
double studentized_range_critical(double alpha, int k, int df);

// All-pairs comparisons at the given family-wise level. Unequal group sizes
// use the Tukey-Kramer harmonic adjustment.
std::vector<TukeyComparison> tukey_hsd(const std::vector<std::string>& labels,
                                       const std::vector<std::vector<double>>& groups,
                                       double alpha = 0.05);

}  // namespace pcaretain

#endif
