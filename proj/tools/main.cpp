#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pcaretain/commands.hpp"
#include "pcaretain/errors.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitDegenerate = 3;

pcaretain::Orientation parse_orientation(const std::string& text) {
  if (text == "rows" || text == "rows-are-observations")
    return pcaretain::Orientation::RowsAreObservations;
  if (text == "cols" || text == "columns" || text == "rows-are-variables")
    return pcaretain::Orientation::RowsAreVariables;
  throw pcaretain::DataError("unknown orientation '" + text +
                             "' (expected rows or cols)");
}

std::vector<pcaretain::EstimatorKind> parse_estimators(const std::vector<std::string>& names) {
  std::vector<pcaretain::EstimatorKind> kinds;
  for (const auto& name : names) kinds.push_back(pcaretain::estimator_from_name(name));
  return kinds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Principal-component retention criteria under multiple covariance estimators"};
  app.set_version_flag("--version", "pcaretain 0.1.0");
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand(
      "simulate", "Run the retention-criteria grid over a seeded normal population");
  std::uint64_t sim_seed = pcaretain::kDefaultMasterSeed;
  std::uint64_t sim_rotation = pcaretain::kDefaultRotationSeed;
  std::vector<int> sim_n_grid;
  int sim_reps = 100;
  std::vector<std::string> sim_estimators = {"mle"};
  double sim_kgc = 1.0, sim_cv = 0.80, sim_spdc = 0.1;
  std::vector<double> sim_spectrum;
  std::string sim_out = "simulate-out";
  simulate->add_option("--seed", sim_seed, "Master seed for the replication grid");
  simulate->add_option("--rotation-seed", sim_rotation, "Seed of the population rotation");
  simulate->add_option("--n-grid", sim_n_grid, "Sample sizes (default 2..100 grid)")
      ->delimiter(',');
  simulate->add_option("--reps", sim_reps, "Replications per sample size");
  simulate->add_option("--estimator", sim_estimators,
                       "Covariance estimators: mle, unbiased, lw, pdc, spdc")
      ->delimiter(',');
  simulate->add_option("--kgc-threshold", sim_kgc, "Eigenvalue cutoff");
  simulate->add_option("--threshold", sim_cv, "Cumulative-variance cutoff in (0, 1]");
  simulate->add_option("--spdc-shrinkage", sim_spdc, "Shrinkage intensity for spdc");
  simulate->add_option("--spectrum", sim_spectrum, "Population eigenvalues (descending)")
      ->delimiter(',');
  simulate->add_option("--out", sim_out, "Output directory");

  // anova
  auto* anova = app.add_subcommand(
      "anova", "One-way ANOVA plus Tukey HSD over group columns of a CSV");
  std::string anova_input;
  std::vector<std::string> anova_columns;
  double anova_alpha = 0.05;
  std::string anova_out = "anova-out";
  anova->add_option("--input", anova_input, "CSV whose columns are groups")->required();
  anova->add_option("--columns", anova_columns, "Column names to use as groups")
      ->delimiter(',');
  anova->add_option("--alpha", anova_alpha, "Significance level");
  anova->add_option("--out", anova_out, "Output directory");

  // retain
  auto* retain = app.add_subcommand(
      "retain", "Retention criteria for a dataset under selected estimators");
  std::string retain_input, retain_orientation = "rows", retain_out = "retain-out";
  bool retain_no_header = false;
  std::vector<std::string> retain_estimators = {"mle", "lw", "spdc"};
  double retain_kgc = 1.0, retain_cv = 0.80, retain_spdc = 0.1;
  retain->add_option("--input", retain_input, "Dataset CSV")->required();
  retain->add_option("--orientation", retain_orientation,
                     "rows (observations) or cols (variables)");
  retain->add_flag("--no-header", retain_no_header, "The CSV has no header row");
  retain->add_option("--estimator", retain_estimators, "Estimators to apply")
      ->delimiter(',');
  retain->add_option("--kgc-threshold", retain_kgc, "Eigenvalue cutoff");
  retain->add_option("--threshold", retain_cv, "Cumulative-variance cutoff in (0, 1]");
  retain->add_option("--spdc-shrinkage", retain_spdc, "Shrinkage intensity for spdc");
  retain->add_option("--out", retain_out, "Output directory");

  // pareto
  auto* pareto = app.add_subcommand("pareto", "Emit a Pareto chart SVG");
  std::string pareto_input, pareto_orientation = "rows", pareto_estimator = "mle";
  std::string pareto_out = "pareto.svg";
  bool pareto_population = false, pareto_no_header = false;
  double pareto_cutoff = 0.80, pareto_spdc = 0.1;
  pareto->add_option("--input", pareto_input, "Dataset CSV");
  pareto->add_flag("--population", pareto_population, "Chart the built-in population");
  pareto->add_option("--orientation", pareto_orientation,
                     "rows (observations) or cols (variables)");
  pareto->add_flag("--no-header", pareto_no_header, "The CSV has no header row");
  pareto->add_option("--estimator", pareto_estimator, "Covariance estimator");
  pareto->add_option("--threshold", pareto_cutoff, "Cumulative-variance cutoff in (0, 1]");
  pareto->add_option("--spdc-shrinkage", pareto_spdc, "Shrinkage intensity for spdc");
  pareto->add_option("--out", pareto_out, "Output SVG path");

  // compare-estimators
  auto* compare = app.add_subcommand(
      "compare-estimators", "Cumulative variance across estimators when n < p");
  std::vector<int> cmp_n_grid = {5, 6, 7};
  int cmp_reps = 100;
  std::uint64_t cmp_seed = pcaretain::kDefaultMasterSeed;
  std::uint64_t cmp_rotation = pcaretain::kDefaultRotationSeed;
  double cmp_cv = 0.80, cmp_spdc = 0.1;
  std::vector<double> cmp_spectrum;
  std::string cmp_out = "compare-out";
  compare->add_option("--n-grid", cmp_n_grid, "Sample sizes")->delimiter(',');
  compare->add_option("--reps", cmp_reps, "Replications per sample size");
  compare->add_option("--seed", cmp_seed, "Master seed");
  compare->add_option("--rotation-seed", cmp_rotation, "Seed of the population rotation");
  compare->add_option("--threshold", cmp_cv, "Cumulative-variance cutoff in (0, 1]");
  compare->add_option("--spdc-shrinkage", cmp_spdc, "Shrinkage intensity for spdc");
  compare->add_option("--spectrum", cmp_spectrum, "Population eigenvalues (descending)")
      ->delimiter(',');
  compare->add_option("--out", cmp_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (simulate->parsed()) {
      pcaretain::SimulateConfig config;
      if (!sim_n_grid.empty()) config.grid.sample_sizes = sim_n_grid;
      config.grid.replications = sim_reps;
      config.grid.estimators = parse_estimators(sim_estimators);
      config.grid.criteria.kgc_threshold = sim_kgc;
      config.grid.criteria.cv_threshold = sim_cv;
      config.grid.master_seed = sim_seed;
      config.grid.spdc_shrinkage = sim_spdc;
      config.rotation_seed = sim_rotation;
      config.spectrum = sim_spectrum;
      config.out_dir = sim_out;
      const auto outputs = pcaretain::cmd_simulate(config);
      std::cout << "wrote " << outputs.table_csv.string() << ", "
                << outputs.raw_counts_csv.string() << ", "
                << outputs.manifest_json.string() << '\n';
    } else if (anova->parsed()) {
      pcaretain::AnovaConfig config;
      config.input = anova_input;
      config.columns = anova_columns;
      config.alpha = anova_alpha;
      config.out_dir = anova_out;
      const auto outputs = pcaretain::cmd_anova(config);
      std::cout << "F = " << outputs.table.f_stat << ", p = " << outputs.table.p_value
                << "; wrote " << outputs.report_txt.string() << '\n';
      if (outputs.table.degenerate) return kExitDegenerate;
    } else if (retain->parsed()) {
      pcaretain::RetainConfig config;
      config.input = retain_input;
      config.orientation = parse_orientation(retain_orientation);
      config.has_header = !retain_no_header;
      config.estimators = parse_estimators(retain_estimators);
      config.criteria.kgc_threshold = retain_kgc;
      config.criteria.cv_threshold = retain_cv;
      config.spdc_shrinkage = retain_spdc;
      config.out_dir = retain_out;
      const auto outputs = pcaretain::cmd_retain(config);
      std::cout << "dataset: n = " << outputs.n << ", p = " << outputs.p << '\n';
      if (!outputs.constant_columns.empty()) {
        std::cout << "note: " << outputs.constant_columns.size()
                  << " constant column(s) detected\n";
      }
      for (const auto& [kind, decision] : outputs.decisions) {
        std::cout << pcaretain::estimator_name(kind) << ": kgc = " << decision.kgc
                  << ", scree = " << decision.scree << ", cumvar = " << decision.cumvar
                  << '\n';
      }
    } else if (pareto->parsed()) {
      if (pareto_input.empty() && !pareto_population) {
        std::cerr << "pareto: provide --input FILE or --population\n";
        return kExitUsage;
      }
      pcaretain::ParetoConfig config;
      if (!pareto_input.empty()) config.input = pareto_input;
      config.orientation = parse_orientation(pareto_orientation);
      config.has_header = !pareto_no_header;
      config.estimator = pcaretain::estimator_from_name(pareto_estimator);
      config.spdc_shrinkage = pareto_spdc;
      config.cutoff = pareto_cutoff;
      config.out_svg = pareto_out;
      const auto data = pcaretain::cmd_pareto(config);
      std::cout << "retain " << data.cutoff_index << " components at "
                << data.cutoff_percent << "%; wrote " << pareto_out << '\n';
    } else if (compare->parsed()) {
      pcaretain::CompareConfig config;
      config.n_values = cmp_n_grid;
      config.replications = cmp_reps;
      config.seed = cmp_seed;
      config.rotation_seed = cmp_rotation;
      config.cv_threshold = cmp_cv;
      config.spdc_shrinkage = cmp_spdc;
      config.spectrum = cmp_spectrum;
      config.out_dir = cmp_out;
      const auto outputs = pcaretain::cmd_compare_estimators(config);
      std::cout << "wrote " << outputs.table_csv.string() << '\n';
    }
  } catch (const pcaretain::DegeneracyError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const pcaretain::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
