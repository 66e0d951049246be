#ifndef PCARETAIN_RETENTION_HPP
#define PCARETAIN_RETENTION_HPP

#include <string>
#include <vector>

#include "pcaretain/pca.hpp"
#include "pcaretain/symmetric_matrix.hpp"

namespace pcaretain {

struct CriteriaConfig {
  double kgc_threshold = 1.0;  // eigenvalue cutoff
  double cv_threshold = 0.80;  // cumulative-variance cutoff, in (0, 1]
};

// Per-criterion retained counts plus the evidence they were read from.
struct RetentionDecision {
  int kgc = 0;
  int scree = 0;
  int cumvar = 0;
  double threshold_used = 0.0;   // cumulative-variance threshold
  double kgc_threshold = 0.0;
  std::vector<double> gaps;      // consecutive eigenvalue drops
};

// Bars, cumulative line, and the cutoff location for a Pareto chart.
struct ParetoData {
  std::vector<std::string> component_ids;  // PC-1 .. PC-p
  std::vector<double> individual_percent;
  std::vector<double> cumulative_percent;
  double cutoff_percent = 0.0;
  int cutoff_index = 0;
};

// Count of eigenvalues strictly greater than the threshold.
int kaiser_guttman(const EigenSpectrum& spectrum, double threshold = 1.0);

// 1-based position of the largest consecutive drop; ties -> smallest index.
int scree_largest_drop(const EigenSpectrum& spectrum);

// Smallest k whose cumulative explained-variance ratio reaches the threshold.
int cumulative_variance_rule(const PcaResult& result, double threshold = 0.80);

RetentionDecision decide_all(const PcaResult& result, const CriteriaConfig& config = {});

ParetoData pareto_data(const PcaResult& result, double cutoff);

}  // namespace pcaretain

#endif
