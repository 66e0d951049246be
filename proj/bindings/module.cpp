#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "pcaretain/commands.hpp"
#include "pcaretain/covariance.hpp"
#include "pcaretain/errors.hpp"
#include "pcaretain/inference.hpp"
#include "pcaretain/pareto_svg.hpp"
#include "pcaretain/pca.hpp"
#include "pcaretain/retention.hpp"
#include "pcaretain/simulation.hpp"
#include "pcaretain/symmetric_matrix.hpp"

namespace py = pybind11;
using namespace pcaretain;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

SymmetricMatrix to_symmetric(const DoubleArray& a) {
  const auto buf = a.request();
  if (buf.ndim != 2 || buf.shape[0] != buf.shape[1]) {
    throw DataError("expected a square 2-D array");
  }
  const auto dim = static_cast<std::size_t>(buf.shape[0]);
  const double* ptr = static_cast<const double*>(buf.ptr);
  return SymmetricMatrix(dim, std::vector<double>(ptr, ptr + dim * dim));
}

DataMatrix to_data(const DoubleArray& a) {
  const auto buf = a.request();
  if (buf.ndim != 2) throw DataError("expected a 2-D array of observations x variables");
  const auto rows = static_cast<std::size_t>(buf.shape[0]);
  const auto cols = static_cast<std::size_t>(buf.shape[1]);
  const double* ptr = static_cast<const double*>(buf.ptr);
  return DataMatrix(rows, cols, std::vector<double>(ptr, ptr + rows * cols));
}

py::array_t<double> matrix_array(const SymmetricMatrix& m) {
  py::array_t<double> out({m.dim(), m.dim()});
  std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
  return out;
}

py::array_t<double> data_array(const DataMatrix& m) {
  py::array_t<double> out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

py::array_t<double> vector_array(const std::vector<double>& v) {
  py::array_t<double> out(py::array::ShapeContainer{static_cast<py::ssize_t>(v.size())});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

std::vector<std::vector<double>> to_groups(const std::vector<DoubleArray>& arrays) {
  std::vector<std::vector<double>> groups;
  groups.reserve(arrays.size());
  for (const auto& a : arrays) {
    const auto buf = a.request();
    if (buf.ndim != 1) throw DataError("groups must be 1-D arrays");
    const double* ptr = static_cast<const double*>(buf.ptr);
    groups.emplace_back(ptr, ptr + buf.shape[0]);
  }
  return groups;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Retention criteria for principal components under multiple covariance "
            "estimators";

  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<DegeneracyError>(m, "DegeneracyError", PyExc_ArithmeticError);

  py::class_<EigenSpectrum>(m, "EigenSpectrum")
      .def_property_readonly("values", [](const EigenSpectrum& s) { return vector_array(s.values); })
      .def_property_readonly("vectors", [](const EigenSpectrum& s) {
        py::array_t<double> out({s.dim, s.dim});
        std::copy(s.vectors.begin(), s.vectors.end(), out.mutable_data());
        return out;
      });

  py::class_<PcaResult>(m, "PcaResult")
      .def_property_readonly("spectrum", [](const PcaResult& r) { return r.spectrum; })
      .def_property_readonly("values",
                             [](const PcaResult& r) { return vector_array(r.spectrum.values); })
      .def_property_readonly(
          "explained_ratio", [](const PcaResult& r) { return vector_array(r.explained_ratio); })
      .def_property_readonly(
          "cumulative_ratio", [](const PcaResult& r) { return vector_array(r.cumulative_ratio); })
      .def_readonly("total_variance", &PcaResult::total_variance);

  py::class_<RetentionDecision>(m, "RetentionDecision")
      .def_readonly("kgc", &RetentionDecision::kgc)
      .def_readonly("scree", &RetentionDecision::scree)
      .def_readonly("cumvar", &RetentionDecision::cumvar)
      .def_readonly("threshold_used", &RetentionDecision::threshold_used)
      .def_readonly("kgc_threshold", &RetentionDecision::kgc_threshold)
      .def_property_readonly("gaps",
                             [](const RetentionDecision& d) { return vector_array(d.gaps); })
      .def("__repr__", [](const RetentionDecision& d) {
        return "RetentionDecision(kgc=" + std::to_string(d.kgc) +
               ", scree=" + std::to_string(d.scree) +
               ", cumvar=" + std::to_string(d.cumvar) + ")";
      });

  py::class_<ParetoData>(m, "ParetoData")
      .def_readonly("component_ids", &ParetoData::component_ids)
      .def_property_readonly(
          "individual_percent",
          [](const ParetoData& d) { return vector_array(d.individual_percent); })
      .def_property_readonly(
          "cumulative_percent",
          [](const ParetoData& d) { return vector_array(d.cumulative_percent); })
      .def_readonly("cutoff_percent", &ParetoData::cutoff_percent)
      .def_readonly("cutoff_index", &ParetoData::cutoff_index);

  py::class_<AnovaTable>(m, "AnovaTable")
      .def_readonly("ss_groups", &AnovaTable::ss_groups)
      .def_readonly("ss_error", &AnovaTable::ss_error)
      .def_readonly("ss_total", &AnovaTable::ss_total)
      .def_readonly("df_groups", &AnovaTable::df_groups)
      .def_readonly("df_error", &AnovaTable::df_error)
      .def_readonly("df_total", &AnovaTable::df_total)
      .def_readonly("ms_groups", &AnovaTable::ms_groups)
      .def_readonly("ms_error", &AnovaTable::ms_error)
      .def_readonly("f_stat", &AnovaTable::f_stat)
      .def_readonly("p_value", &AnovaTable::p_value)
      .def_readonly("degenerate", &AnovaTable::degenerate);

  py::class_<TukeyComparison>(m, "TukeyComparison")
      .def_readonly("group_a", &TukeyComparison::group_a)
      .def_readonly("group_b", &TukeyComparison::group_b)
      .def_readonly("mean_diff", &TukeyComparison::mean_diff)
      .def_readonly("ci_lower", &TukeyComparison::ci_lower)
      .def_readonly("ci_upper", &TukeyComparison::ci_upper)
      .def_readonly("p_value", &TukeyComparison::p_value)
      .def_readonly("significant", &TukeyComparison::significant)
      .def_readonly("p_floored", &TukeyComparison::p_floored);

  py::class_<PopulationSpec>(m, "PopulationSpec")
      .def_readonly("p", &PopulationSpec::p)
      .def_property_readonly("mean",
                             [](const PopulationSpec& s) { return vector_array(s.mean); })
      .def_property_readonly("spectrum",
                             [](const PopulationSpec& s) { return vector_array(s.spectrum); })
      .def_readonly("rotation_seed", &PopulationSpec::rotation_seed)
      .def_property_readonly("sigma",
                             [](const PopulationSpec& s) { return matrix_array(s.sigma); });

  // matrix operations
  m.def("eigen_decompose",
        [](const DoubleArray& a) { return eigen_decompose(to_symmetric(a)); },
        py::arg("a"), "Full symmetric eigendecomposition, eigenvalues descending");
  m.def("psd_sqrt",
        [](const DoubleArray& a) { return matrix_array(psd_sqrt(to_symmetric(a))); },
        py::arg("a"));

  // covariance estimators
  m.def("mle_covariance",
        [](const DoubleArray& x) { return matrix_array(mle_covariance(to_data(x))); },
        py::arg("x"));
  m.def("unbiased_covariance",
        [](const DoubleArray& x) { return matrix_array(unbiased_covariance(to_data(x))); },
        py::arg("x"));
  m.def("ledoit_wolf",
        [](const DoubleArray& x) {
          const LedoitWolfResult result = ledoit_wolf(to_data(x));
          return py::make_tuple(matrix_array(result.sigma), result.shrinkage,
                                result.degenerate);
        },
        py::arg("x"), "Returns (sigma, shrinkage, degenerate)");
  m.def("pdc_covariance",
        [](const DoubleArray& x) { return matrix_array(pdc_covariance(to_data(x))); },
        py::arg("x"));
  m.def("spdc_covariance",
        [](const DoubleArray& x, double shrinkage) {
          return matrix_array(spdc_covariance(to_data(x), shrinkage).sigma);
        },
        py::arg("x"), py::arg("shrinkage") = 0.1);

  // pca + retention
  m.def("pca_from_covariance",
        [](const DoubleArray& sigma) { return pca_from_covariance(to_symmetric(sigma)); },
        py::arg("sigma"));
  m.def("project_scores",
        [](const DoubleArray& x, const PcaResult& result, std::size_t k) {
          return data_array(project_scores(to_data(x), result, k));
        },
        py::arg("x"), py::arg("result"), py::arg("k"));
  m.def("kaiser_guttman",
        [](const PcaResult& r, double threshold) { return kaiser_guttman(r.spectrum, threshold); },
        py::arg("result"), py::arg("threshold") = 1.0);
  m.def("scree_largest_drop",
        [](const PcaResult& r) { return scree_largest_drop(r.spectrum); }, py::arg("result"));
  m.def("cumulative_variance_rule", &cumulative_variance_rule, py::arg("result"),
        py::arg("threshold") = 0.80);
  m.def("decide_all",
        [](const PcaResult& r, double kgc_threshold, double cv_threshold) {
          return decide_all(r, CriteriaConfig{kgc_threshold, cv_threshold});
        },
        py::arg("result"), py::arg("kgc_threshold") = 1.0, py::arg("cv_threshold") = 0.80);
  m.def("pareto_data", &pareto_data, py::arg("result"), py::arg("cutoff") = 0.80);
  m.def("render_pareto_svg", &render_pareto_svg, py::arg("data"));

  // inference
  m.def("regularized_incomplete_beta", &regularized_incomplete_beta, py::arg("x"),
        py::arg("a"), py::arg("b"));
  m.def("f_sf", &f_sf, py::arg("f"), py::arg("df1"), py::arg("df2"));
  m.def("t_sf", &t_sf, py::arg("t"), py::arg("df"));
  m.def("anova_oneway",
        [](const std::vector<DoubleArray>& groups) { return anova_oneway(to_groups(groups)); },
        py::arg("groups"));
  m.def("studentized_range_sf", &studentized_range_sf, py::arg("q"), py::arg("k"),
        py::arg("df"));
  m.def("studentized_range_critical", &studentized_range_critical, py::arg("alpha"),
        py::arg("k"), py::arg("df"));
  m.def("tukey_hsd",
        [](const std::vector<std::string>& labels, const std::vector<DoubleArray>& groups,
           double alpha) { return tukey_hsd(labels, to_groups(groups), alpha); },
        py::arg("labels"), py::arg("groups"), py::arg("alpha") = 0.05);

  // simulation
  m.def("default_population", &default_population);
  m.def("population_from_spectrum",
        [](const DoubleArray& spectrum, std::uint64_t rotation_seed) {
          const auto buf = spectrum.request();
          if (buf.ndim != 1) throw DataError("spectrum must be 1-D");
          const double* ptr = static_cast<const double*>(buf.ptr);
          return PopulationSpec::from_spectrum(
              std::vector<double>(ptr, ptr + buf.shape[0]), rotation_seed);
        },
        py::arg("spectrum"), py::arg("rotation_seed") = kDefaultRotationSeed);
  m.def("sample_mvn",
        [](const PopulationSpec& spec, std::size_t n, std::uint64_t seed) {
          return data_array(sample_mvn(spec, n, seed));
        },
        py::arg("spec"), py::arg("n"), py::arg("seed"));
  m.def("run_grid",
        [](const PopulationSpec& spec, const std::vector<int>& sample_sizes,
           int replications, const std::vector<std::string>& estimators,
           std::uint64_t master_seed, double kgc_threshold, double cv_threshold,
           double spdc_shrinkage) {
          ExperimentGrid grid;
          if (!sample_sizes.empty()) grid.sample_sizes = sample_sizes;
          grid.replications = replications;
          grid.estimators.clear();
          for (const auto& name : estimators)
            grid.estimators.push_back(estimator_from_name(name));
          grid.master_seed = master_seed;
          grid.criteria = CriteriaConfig{kgc_threshold, cv_threshold};
          grid.spdc_shrinkage = spdc_shrinkage;
          const ExperimentResult result = run_grid(grid, spec);

          py::list rows;
          for (const auto& cell : result.cells) {
            py::dict row;
            row["estimator"] = estimator_name(cell.estimator);
            row["n"] = cell.n;
            row["kgc"] = cell.kgc;
            row["scree"] = cell.scree;
            row["cumvar"] = cell.cumvar;
            row["kgc_mode"] = summarize(cell.kgc).mode;
            row["scree_mode"] = summarize(cell.scree).mode;
            row["cumvar_mode"] = summarize(cell.cumvar).mode;
            row["failed"] = cell.failed_replications;
            rows.append(std::move(row));
          }
          py::dict out;
          out["p"] = result.p;
          out["population"] = py::make_tuple(result.population.kgc, result.population.scree,
                                             result.population.cumvar);
          out["cells"] = std::move(rows);
          return out;
        },
        py::arg("spec"), py::arg("sample_sizes") = std::vector<int>{},
        py::arg("replications") = 100,
        py::arg("estimators") = std::vector<std::string>{"mle"},
        py::arg("master_seed") = kDefaultMasterSeed, py::arg("kgc_threshold") = 1.0,
        py::arg("cv_threshold") = 0.80, py::arg("spdc_shrinkage") = 0.1);

  m.attr("DEFAULT_MASTER_SEED") = kDefaultMasterSeed;
  m.attr("DEFAULT_ROTATION_SEED") = kDefaultRotationSeed;
  m.attr("__version__") = "0.1.0";
}
