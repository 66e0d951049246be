#include "pcaretain/retention.hpp"

#include <string>

#include "pcaretain/errors.hpp"

namespace pcaretain {

namespace {
// Guard against representation drift when ratios hit the threshold exactly.
constexpr double kRatioSlack = 1e-12;
}  // namespace

int kaiser_guttman(const EigenSpectrum& spectrum, double threshold) {
  int count = 0;
  for (double v : spectrum.values)
    if (v > threshold) ++count;
  return count;
}

int scree_largest_drop(const EigenSpectrum& spectrum) {
  const std::size_t p = spectrum.values.size();
  if (p < 2) throw DataError("scree_largest_drop: need at least 2 components");
  std::size_t arg = 0;
  double best = spectrum.values[0] - spectrum.values[1];
  for (std::size_t i = 1; i + 1 < p; ++i) {
    const double gap = spectrum.values[i] - spectrum.values[i + 1];
    if (gap > best) {
      best = gap;
      arg = i;
    }
  }
  return static_cast<int>(arg) + 1;
}

int cumulative_variance_rule(const PcaResult& result, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw DataError("cumulative_variance_rule: threshold must be in (0, 1], got " +
                    std::to_string(threshold));
  }
  const std::size_t p = result.cumulative_ratio.size();
  for (std::size_t k = 0; k < p; ++k) {
    if (result.cumulative_ratio[k] + kRatioSlack >= threshold)
      return static_cast<int>(k) + 1;
  }
  return static_cast<int>(p);
}

RetentionDecision decide_all(const PcaResult& result, const CriteriaConfig& config) {
  RetentionDecision decision;
  decision.kgc = kaiser_guttman(result.spectrum, config.kgc_threshold);
  decision.scree = scree_largest_drop(result.spectrum);
  decision.cumvar = cumulative_variance_rule(result, config.cv_threshold);
  decision.threshold_used = config.cv_threshold;
  decision.kgc_threshold = config.kgc_threshold;
  const std::size_t p = result.spectrum.values.size();
  decision.gaps.resize(p - 1);
  for (std::size_t i = 0; i + 1 < p; ++i)
    decision.gaps[i] = result.spectrum.values[i] - result.spectrum.values[i + 1];
  return decision;
}

ParetoData pareto_data(const PcaResult& result, double cutoff) {
  if (!(cutoff > 0.0 && cutoff <= 1.0)) {
    throw DataError("pareto_data: cutoff must be in (0, 1], got " + std::to_string(cutoff));
  }
  const std::size_t p = result.explained_ratio.size();
  ParetoData data;
  data.component_ids.resize(p);
  data.individual_percent.resize(p);
  data.cumulative_percent.resize(p);
  for (std::size_t k = 0; k < p; ++k) {
    data.component_ids[k] = "PC-" + std::to_string(k + 1);
    data.individual_percent[k] = 100.0 * result.explained_ratio[k];
    data.cumulative_percent[k] = 100.0 * result.cumulative_ratio[k];
  }
  data.cutoff_percent = 100.0 * cutoff;
  data.cutoff_index = cumulative_variance_rule(result, cutoff);
  return data;
}

}  // namespace pcaretain
