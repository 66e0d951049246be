#include "pcaretain/inference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "pcaretain/errors.hpp"

namespace pcaretain {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPFloor = 1e-12;

// Continued fraction for the incomplete beta (modified Lentz).
double beta_cf(double x, double a, double b) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

double std_normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi); }
double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// 12-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 12> kGlNodes = {
    -0.9815606342467192, -0.9041172563704749, -0.7699026741943047,
    -0.5873179542866175, -0.3678314989981802, -0.1252334085114689,
    0.1252334085114689,  0.3678314989981802,  0.5873179542866175,
    0.7699026741943047,  0.9041172563704749,  0.9815606342467192};
constexpr std::array<double, 12> kGlWeights = {
    0.0471753363865118, 0.1069393259953184, 0.1600783285433462,
    0.2031674267230659, 0.2334925365383548, 0.2491470458134028,
    0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
    0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

constexpr int kInnerPanels = 18;   // z in [-9, 9]
constexpr int kOuterPanels = 30;

struct RangeCdfGrid {
  // Fixed z grid with precomputed pdf/cdf values, reused across outer nodes.
  std::array<double, kInnerPanels * 12> z, weight, pdf, cdf;

  RangeCdfGrid() {
    const double lo = -9.0, hi = 9.0;
    const double width = (hi - lo) / kInnerPanels;
    int idx = 0;
    for (int panel = 0; panel < kInnerPanels; ++panel) {
      const double a = lo + panel * width;
      const double mid = a + 0.5 * width;
      for (int node = 0; node < 12; ++node, ++idx) {
        z[idx] = mid + 0.5 * width * kGlNodes[node];
        weight[idx] = 0.5 * width * kGlWeights[node];
        pdf[idx] = std_normal_pdf(z[idx]);
        cdf[idx] = std_normal_cdf(z[idx]);
      }
    }
  }

  // CDF of the range of k iid standard normals at w.
  double operator()(double w, int k) const {
    if (w <= 0.0) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      const double inner = cdf[i] - std_normal_cdf(z[i] - w);
      if (inner <= 0.0) continue;
      total += weight[i] * pdf[i] * std::pow(inner, k - 1);
    }
    return std::min(1.0, k * total);
  }
};

}  // namespace

double regularized_incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DataError("regularized_incomplete_beta: a and b must be positive");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DataError("regularized_incomplete_beta: x must be in [0, 1], got " +
                    std::to_string(x));
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                a * std::log(x) + b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(x, a, b) / a;
  }
  return 1.0 - front * beta_cf(1.0 - x, b, a) / b;
}

double f_sf(double f, int df1, int df2) {
  if (df1 < 1 || df2 < 1) throw DataError("f_sf: degrees of freedom must be >= 1");
  if (!(f >= 0.0)) throw DataError("f_sf: f must be >= 0");
  if (std::isinf(f)) return 0.0;
  const double x = df2 / (df2 + df1 * f);
  return regularized_incomplete_beta(x, 0.5 * df2, 0.5 * df1);
}

double t_sf(double t, double df) {
  if (!(df > 0.0)) throw DataError("t_sf: df must be positive");
  if (t < 0.0) return 1.0 - t_sf(-t, df);
  const double x = df / (df + t * t);
  return 0.5 * regularized_incomplete_beta(x, 0.5 * df, 0.5);
}

AnovaTable anova_oneway(const std::vector<std::vector<double>>& groups) {
  const std::size_t k = groups.size();
  if (k < 2) throw DataError("anova_oneway: need at least 2 groups");
  std::size_t total_n = 0;
  bool any_multi = false;
  for (std::size_t g = 0; g < k; ++g) {
    if (groups[g].empty())
      throw DataError("anova_oneway: group " + std::to_string(g) + " is empty");
    total_n += groups[g].size();
    any_multi = any_multi || groups[g].size() >= 2;
  }
  if (!any_multi)
    throw DataError("anova_oneway: need at least one group with >= 2 observations");

  double grand_sum = 0.0;
  for (const auto& g : groups)
    for (double v : g) grand_sum += v;
  const double grand_mean = grand_sum / static_cast<double>(total_n);

  AnovaTable table;
  for (const auto& g : groups) {
    double mean = 0.0;
    for (double v : g) mean += v;
    mean /= static_cast<double>(g.size());
    table.ss_groups += static_cast<double>(g.size()) * (mean - grand_mean) * (mean - grand_mean);
    for (double v : g) table.ss_error += (v - mean) * (v - mean);
  }
  table.ss_total = table.ss_groups + table.ss_error;
  table.df_groups = static_cast<int>(k) - 1;
  table.df_error = static_cast<int>(total_n - k);
  table.df_total = static_cast<int>(total_n) - 1;
  table.ms_groups = table.ss_groups / table.df_groups;
  table.ms_error = table.ss_error / table.df_error;

  if (table.ms_error == 0.0) {
    table.degenerate = true;
    if (table.ms_groups == 0.0) {
      table.f_stat = 0.0;  // every observation identical
      table.p_value = 1.0;
    } else {
      table.f_stat = std::numeric_limits<double>::infinity();
      table.p_value = 0.0;
    }
    return table;
  }
  table.f_stat = table.ms_groups / table.ms_error;
  table.p_value = f_sf(table.f_stat, table.df_groups, table.df_error);
  return table;
}

double studentized_range_sf(double q, int k, int df) {
  if (k < 2) throw DataError("studentized_range_sf: k must be >= 2");
  if (df < 1) throw DataError("studentized_range_sf: df must be >= 1");
  if (!(q >= 0.0)) throw DataError("studentized_range_sf: q must be >= 0");
  if (q == 0.0) return 1.0;

  static const RangeCdfGrid range_cdf;

  // s = pooled sd / sigma; density 2 (nu/2)^(nu/2) / Gamma(nu/2) s^(nu-1) e^(-nu s^2 / 2).
  const double nu = df;
  const double log_norm = 0.5 * nu * std::log(0.5 * nu) + std::log(2.0) - std::lgamma(0.5 * nu);
  const double spread = 14.0 / std::sqrt(2.0 * nu);
  const double s_lo = std::max(0.0, 1.0 - spread);
  const double s_hi = 1.0 + spread;
  const double width = (s_hi - s_lo) / kOuterPanels;

  double cdf = 0.0;
  for (int panel = 0; panel < kOuterPanels; ++panel) {
    const double a = s_lo + panel * width;
    const double mid = a + 0.5 * width;
    for (int node = 0; node < 12; ++node) {
      const double s = mid + 0.5 * width * kGlNodes[node];
      if (s <= 0.0) continue;
      const double log_density = log_norm + (nu - 1.0) * std::log(s) - 0.5 * nu * s * s;
      cdf += 0.5 * width * kGlWeights[node] * std::exp(log_density) * range_cdf(q * s, k);
    }
  }
  return std::clamp(1.0 - cdf, 0.0, 1.0);
}

double studentized_range_critical(double alpha, int k, int df) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DataError("studentized_range_critical: alpha must be in (0, 1)");
  }
  double lo = 0.0, hi = 100.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-10; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (studentized_range_sf(mid, k, df) > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<TukeyComparison> tukey_hsd(const std::vector<std::string>& labels,
                                       const std::vector<std::vector<double>>& groups,
                                       double alpha) {
  if (groups.size() < 2) throw DataError("tukey_hsd: need at least 2 groups");
  if (labels.size() != groups.size())
    throw DataError("tukey_hsd: label count does not match group count");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DataError("tukey_hsd: alpha must be in (0, 1)");

  const AnovaTable anova = anova_oneway(groups);
  const int k = static_cast<int>(groups.size());
  const double q_crit = studentized_range_critical(alpha, k, anova.df_error);

  std::vector<double> means(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    double m = 0.0;
    for (double v : groups[g]) m += v;
    means[g] = m / static_cast<double>(groups[g].size());
  }

  std::vector<TukeyComparison> out;
  for (std::size_t a = 0; a < groups.size(); ++a) {
    for (std::size_t b = a + 1; b < groups.size(); ++b) {
      const double na = static_cast<double>(groups[a].size());
      const double nb = static_cast<double>(groups[b].size());
      // Tukey-Kramer standard error; reduces to sqrt(ms/n) for equal sizes.
      const double se = std::sqrt(0.5 * anova.ms_error * (1.0 / na + 1.0 / nb));

      TukeyComparison cmp;
      cmp.group_a = labels[a];
      cmp.group_b = labels[b];
      cmp.mean_diff = means[a] - means[b];
      cmp.ci_lower = cmp.mean_diff - q_crit * se;
      cmp.ci_upper = cmp.mean_diff + q_crit * se;
      if (anova.degenerate || se == 0.0) {
        cmp.p_value = cmp.mean_diff == 0.0 ? 1.0 : 0.0;
        cmp.p_floored = cmp.mean_diff != 0.0;
      } else {
        cmp.p_value = studentized_range_sf(std::abs(cmp.mean_diff) / se, k, anova.df_error);
        if (cmp.p_value < kPFloor) {
          cmp.p_value = 0.0;
          cmp.p_floored = true;
        }
      }
      cmp.significant = cmp.p_value < alpha;
      out.push_back(std::move(cmp));
    }
  }
  return out;
}

}  // namespace pcaretain
