#include "pcaretain/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <thread>

#include "pcaretain/errors.hpp"
#include "pcaretain/pca.hpp"
#include "pcaretain/rng.hpp"

namespace pcaretain {

namespace {

// Seeded Haar-ish orthogonal matrix: Gaussian fill + modified Gram-Schmidt,
// diagonal signs fixed positive.
std::vector<double> random_orthogonal(std::size_t p, std::uint64_t seed) {
  rng::GaussianStream gauss(seed);
  std::vector<double> q(p * p);
  for (double& v : q) v = gauss.next();

  for (std::size_t col = 0; col < p; ++col) {
    for (std::size_t prev = 0; prev < col; ++prev) {
      double dot = 0.0;
      for (std::size_t i = 0; i < p; ++i) dot += q[i * p + col] * q[i * p + prev];
      for (std::size_t i = 0; i < p; ++i) q[i * p + col] -= dot * q[i * p + prev];
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < p; ++i) norm += q[i * p + col] * q[i * p + col];
    norm = std::sqrt(norm);
    if (norm < 1e-12) {
      throw DegeneracyError("random_orthogonal: degenerate column during orthogonalization");
    }
    double sign = q[col * p + col] < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < p; ++i) q[i * p + col] *= sign / norm;
  }
  return q;
}

DataMatrix sample_with_root(const std::vector<double>& mean, const SymmetricMatrix& root,
                            std::size_t n, std::uint64_t seed) {
  const std::size_t p = root.dim();
  rng::GaussianStream gauss(seed);
  std::vector<double> rows(n * p);
  std::vector<double> z(p);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < p; ++j) z[j] = gauss.next();
    for (std::size_t i = 0; i < p; ++i) {
      double v = mean[i];
      for (std::size_t j = 0; j < p; ++j) v += root(i, j) * z[j];
      rows[k * p + i] = v;
    }
  }
  return DataMatrix(n, p, std::move(rows));
}

}  // namespace

PopulationSpec PopulationSpec::from_spectrum(std::vector<double> spectrum,
                                             std::uint64_t rotation_seed,
                                             std::vector<double> mean) {
  const std::size_t p = spectrum.size();
  if (p == 0) throw DataError("PopulationSpec: spectrum must be nonempty");
  for (std::size_t i = 0; i < p; ++i) {
    if (!(spectrum[i] >= 0.0))
      throw DataError("PopulationSpec: spectrum entries must be >= 0");
    if (i + 1 < p && spectrum[i] < spectrum[i + 1])
      throw DataError("PopulationSpec: spectrum must be sorted descending");
  }
  if (mean.empty()) mean.assign(p, 0.0);
  if (mean.size() != p) throw DataError("PopulationSpec: mean length must equal p");

  const std::vector<double> q = random_orthogonal(p, rotation_seed);
  std::vector<double> sigma(p * p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i; j < p; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < p; ++k) s += q[i * p + k] * spectrum[k] * q[j * p + k];
      sigma[i * p + j] = s;
      sigma[j * p + i] = s;
    }
  }

  PopulationSpec spec;
  spec.p = p;
  spec.mean = std::move(mean);
  spec.spectrum = std::move(spectrum);
  spec.rotation_seed = rotation_seed;
  spec.sigma = SymmetricMatrix(p, std::move(sigma));
  return spec;
}

PopulationSpec default_population() {
  // Leading ratios pin the first four eigenvalues relative to the trace; the
  // tail keeps exactly eight eigenvalues above 1 with the largest gap first.
  const std::vector<double> ratios = {0.3906, 0.2169, 0.1506, 0.0777};
  const std::vector<double> tail = {3.25, 3.00, 2.75, 2.50, 0.35, 0.30};

  double tail_sum = 0.0;
  for (double v : tail) tail_sum += v;
  double ratio_sum = 0.0;
  for (double r : ratios) ratio_sum += r;
  const double trace = tail_sum / (1.0 - ratio_sum);

  std::vector<double> spectrum;
  spectrum.reserve(ratios.size() + tail.size());
  for (double r : ratios) spectrum.push_back(r * trace);
  for (double v : tail) spectrum.push_back(v);
  return PopulationSpec::from_spectrum(std::move(spectrum), kDefaultRotationSeed);
}

DataMatrix sample_mvn(const PopulationSpec& spec, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw DataError("sample_mvn: n must be >= 1");
  return sample_with_root(spec.mean, psd_sqrt(spec.sigma), n, seed);
}

CellSummary summarize(const std::vector<int>& counts) {
  CellSummary summary;
  if (counts.empty()) return summary;

  std::map<int, int> freq;
  for (int c : counts) ++freq[c];
  int best = 0;
  for (const auto& [value, count] : freq) {
    if (count > best) {  // map iterates ascending: ties keep the smaller value
      best = count;
      summary.mode = value;
    }
  }
  double mean = 0.0;
  for (int c : counts) mean += c;
  mean /= static_cast<double>(counts.size());
  double var = 0.0;
  for (int c : counts) var += (c - mean) * (c - mean);
  summary.mean = mean;
  summary.stddev = counts.size() > 1 ? std::sqrt(var / (counts.size() - 1)) : 0.0;
  return summary;
}

const CellCounts& ExperimentResult::cell(int n, EstimatorKind estimator) const {
  for (const auto& c : cells)
    if (c.n == n && c.estimator == estimator) return c;
  throw DataError("ExperimentResult: no cell for n = " + std::to_string(n) +
                  ", estimator " + estimator_name(estimator));
}

ExperimentResult run_grid(const ExperimentGrid& grid, const PopulationSpec& spec) {
  if (grid.replications < 1) throw DataError("run_grid: replications must be >= 1");
  if (grid.sample_sizes.empty()) throw DataError("run_grid: sample_sizes must be nonempty");
  for (int n : grid.sample_sizes)
    if (n < 2) throw DataError("run_grid: sample sizes must be >= 2");
  if (grid.estimators.empty()) throw DataError("run_grid: estimators must be nonempty");

  ExperimentResult result;
  result.p = spec.p;
  result.grid = grid;
  result.population = decide_all(pca_from_covariance(spec.sigma), grid.criteria);

  const SymmetricMatrix root = psd_sqrt(spec.sigma);

  auto run_one_n = [&](int n) {
    std::vector<CellCounts> row(grid.estimators.size());
    for (std::size_t e = 0; e < grid.estimators.size(); ++e) {
      row[e].n = n;
      row[e].estimator = grid.estimators[e];
    }
    for (int rep = 0; rep < grid.replications; ++rep) {
      const std::uint64_t seed = rng::derive_seed(
          grid.master_seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(rep));
      const DataMatrix sample =
          sample_with_root(spec.mean, root, static_cast<std::size_t>(n), seed);
      for (std::size_t e = 0; e < grid.estimators.size(); ++e) {
        try {
          const SymmetricMatrix sigma =
              estimate_covariance(sample, grid.estimators[e], grid.spdc_shrinkage);
          const RetentionDecision decision =
              decide_all(pca_from_covariance(sigma), grid.criteria);
          row[e].replication.push_back(rep);
          row[e].kgc.push_back(decision.kgc);
          row[e].scree.push_back(decision.scree);
          row[e].cumvar.push_back(decision.cumvar);
        } catch (const std::exception& ex) {
          ++row[e].failed_replications;
          if (row[e].note.empty()) row[e].note = ex.what();
        }
      }
    }
    return row;
  };

  // Cells are independent (counter-derived seeds), so sample sizes fan out.
  std::vector<std::future<std::vector<CellCounts>>> futures;
  futures.reserve(grid.sample_sizes.size());
  for (int n : grid.sample_sizes)
    futures.push_back(std::async(std::launch::async, run_one_n, n));
  for (auto& f : futures) {
    auto row = f.get();
    for (auto& cell : row) result.cells.push_back(std::move(cell));
  }
  return result;
}

EstimatorComparison compare_estimators(const PopulationSpec& spec,
                                       const std::vector<int>& n_values,
                                       int replications, std::uint64_t seed,
                                       double cv_threshold, double spdc_shrinkage) {
  if (n_values.empty()) throw DataError("compare_estimators: n_values must be nonempty");
  if (replications < 1) throw DataError("compare_estimators: replications must be >= 1");

  const std::size_t lead = std::min<std::size_t>(4, spec.p);
  EstimatorComparison comparison;
  comparison.cv_threshold = cv_threshold;
  comparison.replications = replications;

  const PcaResult population_pca = pca_from_covariance(spec.sigma);
  EstimatorComparisonRow pop_row;
  pop_row.estimator = "population";
  pop_row.n = 0;
  for (std::size_t k = 0; k < lead; ++k)
    pop_row.cumulative_percent.push_back(100.0 * population_pca.cumulative_ratio[k]);
  pop_row.mean_retained = cumulative_variance_rule(population_pca, cv_threshold);
  comparison.rows.push_back(std::move(pop_row));

  const SymmetricMatrix root = psd_sqrt(spec.sigma);
  const std::vector<EstimatorKind> kinds = {EstimatorKind::Mle, EstimatorKind::LedoitWolf,
                                            EstimatorKind::Spdc};
  for (int n : n_values) {
    if (n < 2) throw DataError("compare_estimators: sample sizes must be >= 2");
    std::vector<std::vector<double>> cum_sums(kinds.size(), std::vector<double>(lead, 0.0));
    std::vector<double> retained_sums(kinds.size(), 0.0);
    for (int rep = 0; rep < replications; ++rep) {
      const std::uint64_t cell_seed = rng::derive_seed(
          seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(rep));
      const DataMatrix sample =
          sample_with_root(spec.mean, root, static_cast<std::size_t>(n), cell_seed);
      for (std::size_t e = 0; e < kinds.size(); ++e) {
        const PcaResult pca = pca_from_covariance(
            estimate_covariance(sample, kinds[e], spdc_shrinkage));
        for (std::size_t k = 0; k < lead; ++k)
          cum_sums[e][k] += 100.0 * pca.cumulative_ratio[k];
        retained_sums[e] += cumulative_variance_rule(pca, cv_threshold);
      }
    }
    for (std::size_t e = 0; e < kinds.size(); ++e) {
      EstimatorComparisonRow row;
      row.estimator = estimator_name(kinds[e]);
      row.n = n;
      for (std::size_t k = 0; k < lead; ++k)
        row.cumulative_percent.push_back(cum_sums[e][k] / replications);
      row.mean_retained = retained_sums[e] / replications;
      comparison.rows.push_back(std::move(row));
    }
  }
  return comparison;
}

}  // namespace pcaretain
