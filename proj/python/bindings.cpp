// Python bindings for the core pipelines.

#include <limits>

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nnrank/applications.hpp"
#include "nnrank/basis.hpp"
#include "nnrank/errors.hpp"
#include "nnrank/generators.hpp"
#include "nnrank/io.hpp"

namespace py = pybind11;

namespace {

nnrank::Tensor make_tensor(const std::vector<int>& alpha, const std::vector<int>& n,
                           py::array_t<double, py::array::c_style | py::array::forcecast> data) {
  nnrank::Shape shape(alpha, n);
  if (static_cast<std::size_t>(data.size()) != shape.entry_count()) {
    throw nnrank::InputError("tensor data has " + std::to_string(data.size()) +
                             " entries, shape needs " + std::to_string(shape.entry_count()));
  }
  return nnrank::Tensor(std::move(shape),
                        std::vector<double>(data.data(), data.data() + data.size()));
}

py::array_t<double> tensor_array(const nnrank::Tensor& a) {
  std::vector<py::ssize_t> dims;
  for (int d : a.shape().slot_dims()) dims.push_back(d);
  py::array_t<double> out(dims);
  std::copy(a.entries().begin(), a.entries().end(), out.mutable_data());
  return out;
}

nnrank::PipelineOptions pipeline(double tol, int max_iters, const std::string& odd_mode,
                                 bool reduce_linear) {
  nnrank::PipelineOptions o;
  o.solver.tol = tol;
  o.solver.max_iters = max_iters;
  if (odd_mode == "square") {
    o.odd_copositivity = nnrank::OddCopositivity::kSquare;
  } else if (odd_mode == "lift") {
    o.odd_copositivity = nnrank::OddCopositivity::kLift;
  } else {
    throw nnrank::InputError("odd_mode must be 'square' or 'lift'");
  }
  o.reduce_linear = reduce_linear;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Best nonnegative rank-one approximation and copositivity via DNN relaxations";

  py::register_exception<nnrank::InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<nnrank::SizeLimitError>(m, "SizeLimitError", PyExc_ValueError);
  py::register_exception<nnrank::SolverError>(m, "SolverError", PyExc_RuntimeError);

  const nnrank::SolverOptions defaults = nnrank::PipelineOptions::default_solver();

  py::class_<nnrank::Tensor>(m, "Tensor")
      .def(py::init(&make_tensor), py::arg("alpha"), py::arg("n"), py::arg("data"),
           "Partially symmetric tensor; data is row-major over all index slots.")
      .def_property_readonly("alpha", [](const nnrank::Tensor& a) { return a.shape().alpha; })
      .def_property_readonly("n", [](const nnrank::Tensor& a) { return a.shape().n; })
      .def("to_numpy", &tensor_array)
      .def("is_partially_symmetric", &nnrank::Tensor::is_partially_symmetric,
           py::arg("tol") = 1e-12)
      .def("norm", [](const nnrank::Tensor& a) { return nnrank::hs_norm(a); })
      .def("evaluate", [](const nnrank::Tensor& a, const nnrank::GroupedVector& x) {
        return nnrank::eval_multiform(a, x);
      }, py::arg("x"), "<A, x^alpha> for one vector per group.")
      .def("__neg__", [](const nnrank::Tensor& a) { return -a; })
      .def("__mul__", [](const nnrank::Tensor& a, double c) { return c * a; })
      .def("__rmul__", [](const nnrank::Tensor& a, double c) { return c * a; });

  py::class_<nnrank::ExtractionResult>(m, "ExtractionResult")
      .def_readonly("x_star", &nnrank::ExtractionResult::x_star)
      .def_readonly("lambda_", &nnrank::ExtractionResult::lambda)
      .def_readonly("f_app", &nnrank::ExtractionResult::f_app)
      .def_readonly("f_dnn", &nnrank::ExtractionResult::f_dnn)
      .def_readonly("sigma2", &nnrank::ExtractionResult::sigma2)
      .def_readonly("tight", &nnrank::ExtractionResult::tight)
      .def_readonly("apperr", &nnrank::ExtractionResult::apperr)
      .def_readonly("apperrnm", &nnrank::ExtractionResult::apperrnm)
      .def_readonly("zero_tensor", &nnrank::ExtractionResult::zero_tensor);

  py::class_<nnrank::SolverSummary>(m, "SolverSummary")
      .def_property_readonly("status", [](const nnrank::SolverSummary& s) {
        return std::string(nnrank::to_string(s.status));
      })
      .def_readonly("iters", &nnrank::SolverSummary::iters)
      .def_readonly("dim", &nnrank::SolverSummary::dim)
      .def_readonly("relaxed_value", &nnrank::SolverSummary::relaxed_value)
      .def_readonly("lifted", &nnrank::SolverSummary::lifted)
      .def_readonly("squared", &nnrank::SolverSummary::squared)
      .def_readonly("reduced", &nnrank::SolverSummary::reduced)
      .def_readonly("rank_one_certificate", &nnrank::SolverSummary::rank_one_certificate);

  py::class_<nnrank::ApproxReport>(m, "ApproxReport")
      .def_readonly("extraction", &nnrank::ApproxReport::extraction)
      .def_readonly("lambda_", &nnrank::ApproxReport::lambda)
      .def_readonly("best_tensor_norm_sq", &nnrank::ApproxReport::best_tensor_norm_sq)
      .def_property_readonly("wall_time", [](const nnrank::ApproxReport& r) {
        return r.wall_time.count();
      })
      .def_readonly("solver", &nnrank::ApproxReport::solver);

  py::class_<nnrank::CopositivityVerdict>(m, "CopositivityVerdict")
      .def_property_readonly("verdict", [](const nnrank::CopositivityVerdict& v) {
        return std::string(nnrank::to_string(v.verdict));
      })
      .def_readonly("f_dnn", &nnrank::CopositivityVerdict::f_dnn)
      .def_readonly("f_app", &nnrank::CopositivityVerdict::f_app)
      .def_readonly("x_star", &nnrank::CopositivityVerdict::x_star)
      .def_readonly("extraction", &nnrank::CopositivityVerdict::extraction)
      .def_readonly("diagnostics", &nnrank::CopositivityVerdict::diagnostics)
      .def_property_readonly("wall_time", [](const nnrank::CopositivityVerdict& v) {
        return v.wall_time.count();
      })
      .def_readonly("solver", &nnrank::CopositivityVerdict::solver);

  py::class_<nnrank::BoundInfo>(m, "BoundInfo")
      .def_readonly("delta", &nnrank::BoundInfo::delta)
      .def_readonly("constant", &nnrank::BoundInfo::constant)
      .def_readonly("bound", &nnrank::BoundInfo::bound)
      .def_readonly("sqrt_lambda_min", &nnrank::BoundInfo::sqrt_lambda_min);

  py::class_<nnrank::OracleResult>(m, "OracleResult")
      .def_readonly("value", &nnrank::OracleResult::value)
      .def_readonly("x", &nnrank::OracleResult::x)
      .def_readonly("grid_points", &nnrank::OracleResult::grid_points);

  m.def(
      "best_nonneg_rank_one",
      [](const nnrank::Tensor& a, double tol, int max_iters, bool reduce_linear) {
        const auto o = pipeline(tol, max_iters, "square", reduce_linear);
        py::gil_scoped_release release;
        return nnrank::best_nonneg_rank_one(a, o);
      },
      py::arg("tensor"), py::arg("tol") = defaults.tol, py::arg("max_iters") = defaults.max_iters,
      py::arg("reduce_linear") = false);

  m.def(
      "test_copositivity",
      [](const nnrank::Tensor& a, double tol, int max_iters, const std::string& odd_mode) {
        const auto o = pipeline(tol, max_iters, odd_mode, false);
        py::gil_scoped_release release;
        return nnrank::test_copositivity(a, o);
      },
      py::arg("tensor"), py::arg("tol") = defaults.tol, py::arg("max_iters") = defaults.max_iters,
      py::arg("odd_mode") = "square");

  m.def("theta_matrix", &nnrank::theta_matrix, py::arg("n"), py::arg("degree"),
        py::arg("samples") = nnrank::kThetaSamples, py::arg("seed") = nnrank::kThetaSeed);
  m.def(
      "bound_info",
      [](const std::vector<int>& alpha, const std::vector<int>& n, std::int64_t samples,
         std::uint64_t seed) { return nnrank::bound_info(nnrank::Shape(alpha, n), samples, seed); },
      py::arg("alpha"), py::arg("n"), py::arg("samples") = nnrank::kThetaSamples,
      py::arg("seed") = nnrank::kThetaSeed);
  m.def("brute_force_min", &nnrank::brute_force_min, py::arg("tensor"), py::arg("grid_per_dim"));
  m.def(
      "count_constraints",
      [](const std::vector<int>& n, const std::vector<int>& tau) {
        nnrank::BasisOptions o;
        o.materialize_classes = false;
        o.max_dim = std::numeric_limits<std::size_t>::max();
        return nnrank::count_constraints(nnrank::MomentBasis(n, tau, o));
      },
      py::arg("n"), py::arg("tau"));

  m.def(
      "generate",
      [](const std::string& spec, std::uint64_t seed, std::uint64_t index) {
        return nnrank::generate(nnrank::parse_generator(spec), seed, index);
      },
      py::arg("spec"), py::arg("seed") = 0, py::arg("index") = 0);
  m.def("generator_families", &nnrank::generator_families);
  m.def("parse_tensor", &nnrank::parse_tensor_text, py::arg("text"));
  m.def("serialize_tensor", &nnrank::serialize_tensor, py::arg("tensor"));
  m.def("tensor_from_json", &nnrank::tensor_from_json, py::arg("text"));
  m.def("tensor_to_json", &nnrank::tensor_to_json, py::arg("tensor"));
  m.def(
      "report_json",
      [](const nnrank::ApproxReport& r, const nnrank::Tensor& a) { return nnrank::report_json(r, a); },
      py::arg("report"), py::arg("tensor"));
  m.def(
      "report_json", [](const nnrank::CopositivityVerdict& v) { return nnrank::report_json(v); },
      py::arg("verdict"));
}
