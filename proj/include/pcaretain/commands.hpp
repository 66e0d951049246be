#ifndef PCARETAIN_COMMANDS_HPP
#define PCARETAIN_COMMANDS_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pcaretain/csv.hpp"
#include "pcaretain/inference.hpp"
#include "pcaretain/pareto_svg.hpp"
#include "pcaretain/simulation.hpp"

namespace pcaretain {

// Every command validates its full configuration up front and reports all
// problems in one aggregated DataError before any computation starts.

struct SimulateConfig {
  ExperimentGrid grid;
  std::uint64_t rotation_seed = kDefaultRotationSeed;
  std::vector<double> spectrum;  // empty: default population
  std::filesystem::path out_dir = ".";
};

struct SimulateOutputs {
  std::filesystem::path table_csv;       // modal retained counts per (n, estimator)
  std::filesystem::path raw_counts_csv;  // every replication
  std::filesystem::path manifest_json;
  ExperimentResult result;
};

SimulateOutputs cmd_simulate(const SimulateConfig& config);

struct AnovaConfig {
  std::filesystem::path input;
  std::vector<std::string> columns;  // empty: every column is a group
  double alpha = 0.05;
  std::filesystem::path out_dir = ".";
};

struct AnovaOutputs {
  std::filesystem::path anova_csv;
  std::filesystem::path tukey_csv;
  std::filesystem::path report_txt;
  std::filesystem::path manifest_json;
  AnovaTable table;
  std::vector<TukeyComparison> comparisons;
};

AnovaOutputs cmd_anova(const AnovaConfig& config);

struct RetainConfig {
  std::filesystem::path input;
  Orientation orientation = Orientation::RowsAreObservations;
  bool has_header = true;
  std::vector<EstimatorKind> estimators = {EstimatorKind::Mle, EstimatorKind::LedoitWolf,
                                           EstimatorKind::Spdc};
  CriteriaConfig criteria;
  double spdc_shrinkage = 0.1;
  std::filesystem::path out_dir = ".";
};

struct RetainOutputs {
  std::filesystem::path cumulative_csv;
  std::filesystem::path decisions_csv;
  std::filesystem::path manifest_json;
  std::vector<std::pair<EstimatorKind, RetentionDecision>> decisions;
  std::vector<std::size_t> constant_columns;
  std::size_t n = 0;
  std::size_t p = 0;
};

RetainOutputs cmd_retain(const RetainConfig& config);

struct ParetoConfig {
  std::optional<std::filesystem::path> input;  // absent: default population
  Orientation orientation = Orientation::RowsAreObservations;
  bool has_header = true;
  EstimatorKind estimator = EstimatorKind::Mle;
  double spdc_shrinkage = 0.1;
  double cutoff = 0.80;
  std::filesystem::path out_svg = "pareto.svg";
};

ParetoData cmd_pareto(const ParetoConfig& config);

struct CompareConfig {
  std::vector<int> n_values = {5, 6, 7};
  int replications = 100;
  std::uint64_t seed = kDefaultMasterSeed;
  std::uint64_t rotation_seed = kDefaultRotationSeed;
  std::vector<double> spectrum;  // empty: default population
  double cv_threshold = 0.80;
  double spdc_shrinkage = 0.1;
  std::filesystem::path out_dir = ".";
};

struct CompareOutputs {
  std::filesystem::path table_csv;
  std::filesystem::path manifest_json;
  EstimatorComparison comparison;
};

CompareOutputs cmd_compare_estimators(const CompareConfig& config);

}  // namespace pcaretain

#endif
