#ifndef PCARETAIN_SIMULATION_HPP
#define PCARETAIN_SIMULATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pcaretain/covariance.hpp"
#include "pcaretain/retention.hpp"
#include "pcaretain/symmetric_matrix.hpp"

namespace pcaretain {

inline constexpr std::uint64_t kDefaultMasterSeed = 42;
inline constexpr std::uint64_t kDefaultRotationSeed = 7;

// Zero-mean multivariate normal population: sigma = Q diag(spectrum) Q^T for
// a seeded random orthogonal Q.
struct PopulationSpec {
  std::size_t p = 0;
  std::vector<double> mean;
  std::vector<double> spectrum;  // descending, all >= 0
  std::uint64_t rotation_seed = kDefaultRotationSeed;
  SymmetricMatrix sigma{1};

  static PopulationSpec from_spectrum(std::vector<double> spectrum,
                                      std::uint64_t rotation_seed = kDefaultRotationSeed,
                                      std::vector<double> mean = {});
};

// p = 10 population whose leading four cumulative-variance ratios are
// 39.06 / 60.75 / 75.81 / 83.58 percent, with exactly 8 eigenvalues above 1
// and the largest spectral gap at position 1.
PopulationSpec default_population();

// Rows are mean + B z with B the PSD square root of sigma and z standard
// normal from a seeded generator; identical (spec, n, seed) give identical bytes.
DataMatrix sample_mvn(const PopulationSpec& spec, std::size_t n, std::uint64_t seed);

struct ExperimentGrid {
  std::vector<int> sample_sizes = {2, 3, 4, 5, 10, 15, 20, 30, 40, 50, 100};
  int replications = 100;
  std::vector<EstimatorKind> estimators = {EstimatorKind::Mle};
  CriteriaConfig criteria;
  std::uint64_t master_seed = kDefaultMasterSeed;
  double spdc_shrinkage = 0.1;
};

// Retained counts across replications for one (n, estimator) cell.
struct CellCounts {
  int n = 0;
  EstimatorKind estimator = EstimatorKind::Mle;
  std::vector<int> replication;  // indices of the successful replications
  std::vector<int> kgc;
  std::vector<int> scree;
  std::vector<int> cumvar;
  int failed_replications = 0;
  std::string note;
};

struct CellSummary {
  int mode = 0;
  double mean = 0.0;
  double stddev = 0.0;
};

struct ExperimentResult {
  std::size_t p = 0;
  ExperimentGrid grid;
  RetentionDecision population;        // decided on the population sigma
  std::vector<CellCounts> cells;       // sample-size-major, estimator-minor

  const CellCounts& cell(int n, EstimatorKind estimator) const;
};

// Modal count with ties broken toward the smaller value.
CellSummary summarize(const std::vector<int>& counts);

// Full (n x estimator x replication) cross. Cell seeds derive from
// (master_seed, n, replication), so results do not depend on schedule.
ExperimentResult run_grid(const ExperimentGrid& grid, const PopulationSpec& spec);

// Cumulative-variance comparison across estimators in the n < p regime.
struct EstimatorComparisonRow {
  std::string estimator;       // "population", "mle", "lw", "spdc"
  int n = 0;                   // 0 for the population reference
  std::vector<double> cumulative_percent;  // PC-1..PC-4, averaged over reps
  double mean_retained = 0.0;  // cumulative-variance rule at the threshold
};

struct EstimatorComparison {
  double cv_threshold = 0.80;
  int replications = 100;
  std::vector<EstimatorComparisonRow> rows;
};

EstimatorComparison compare_estimators(const PopulationSpec& spec,
                                       const std::vector<int>& n_values,
                                       int replications = 100,
                                       std::uint64_t seed = kDefaultMasterSeed,
                                       double cv_threshold = 0.80,
                                       double spdc_shrinkage = 0.1);

}  // namespace pcaretain

#endif
