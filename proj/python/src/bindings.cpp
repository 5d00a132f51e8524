#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mchart/fixed_rank.hpp"
#include "mchart/optimizer.hpp"
#include "mchart/verify.hpp"

namespace py = pybind11;
using namespace mchart;

namespace {

py::tuple coords_tuple(const FixedRankCoords& c) { return py::make_tuple(c.X, c.Y, c.H); }

py::dict trace_dict(const OptimizerTrace& t) {
  py::list records;
  for (const auto& r : t.records) {
    py::dict d;
    d["iter"] = r.iter;
    d["f"] = r.f;
    d["grad_norm"] = r.grad_norm;
    d["step"] = r.step;
    d["boundary_sigma_ratio"] = r.boundary_sigma_ratio;
    records.append(d);
  }
  py::dict out;
  out["records"] = records;
  out["iterations"] = t.iterations();
  out["stop_reason"] = to_string(t.stop_reason);
  out["converged"] = t.converged;
  return out;
}

verify::Report run_suite(const std::string& suite, const verify::Dims& dims, std::uint64_t seed, int trials) {
  verify::validate_dims(dims);
  if (suite == "grassmann") return verify::grassmann_suite(dims, seed, trials);
  if (suite == "stiefel") return verify::stiefel_suite(dims, seed, trials);
  if (suite == "fixedrank") return verify::fixed_rank_suite(dims, seed, trials);
  if (suite == "all") return verify::all_suites(dims, seed, trials);
  throw py::value_error("suite must be grassmann, stiefel, fixedrank or all");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Charts, transitions and tangent maps on Grassmann, Stiefel and fixed-rank manifolds";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());
  py::register_exception<RankDeficient>(m, "RankDeficient", base.ptr());
  py::register_exception<RankMismatch>(m, "RankMismatch", base.ptr());
  py::register_exception<OutOfChartDomain>(m, "OutOfChartDomain", base.ptr());
  py::register_exception<SingularFactor>(m, "SingularFactor", base.ptr());
  py::register_exception<LineSearchFailed>(m, "LineSearchFailed", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  // Numerics.
  m.def("pseudo_inverse", &pseudo_inverse, py::arg("Z"));
  m.def("orthogonal_complement", &orthogonal_complement, py::arg("Z"));
  m.def("numerical_rank", [](const Matrix& A, double tol) { return numerical_rank(A, tol).numerical_rank; },
        py::arg("A"), py::arg("tol_rel") = kRankTol);
  m.def("factor_rank_r", [](const Matrix& A, Index r) {
    const RankFactors f = factor_rank_r(A, r);
    return py::make_tuple(f.U, f.G, f.V);
  }, py::arg("A"), py::arg("r"));
  m.def("random_full_rank", &random_full_rank, py::arg("k"), py::arg("r"), py::arg("seed"));
  m.def("random_rank_r", &random_rank_r, py::arg("n"), py::arg("m"), py::arg("r"), py::arg("seed"));

  // Grassmann.
  py::class_<Subspace>(m, "Subspace")
      .def(py::init<Matrix>(), py::arg("representative"))
      .def_property_readonly("representative", &Subspace::representative)
      .def("projector", &Subspace::projector)
      .def("distance", &Subspace::distance)
      .def("approx_equal", &Subspace::approx_equal, py::arg("other"), py::arg("tol") = 1e-8);

  py::class_<GrassmannChart>(m, "GrassmannChart")
      .def(py::init<Matrix>(), py::arg("center"))
      .def_property_readonly("center", &GrassmannChart::center)
      .def_property_readonly("complement", &GrassmannChart::complement)
      .def_property_readonly("coordinate_dim", &GrassmannChart::coordinate_dim);

  auto g = m.def_submodule("grassmann");
  g.def("in_domain", &grassmann::in_domain);
  g.def("chart_apply", &grassmann::chart_apply);
  g.def("chart_inverse", &grassmann::chart_inverse);
  g.def("transition", &grassmann::transition);
  g.def("cross_section_point", &grassmann::cross_section_point);
  g.def("lie_exp", &grassmann::lie_exp);
  g.def("gamma", &grassmann::gamma);
  g.def("group_op", &grassmann::group_op);
  g.def("group_inverse", &grassmann::group_inverse);

  // Stiefel.
  py::class_<StiefelChart>(m, "StiefelChart")
      .def(py::init<Matrix>(), py::arg("center"))
      .def_property_readonly("center", &StiefelChart::center)
      .def_property_readonly("complement", &StiefelChart::complement)
      .def_property_readonly("coordinate_dim", &StiefelChart::coordinate_dim);

  auto s = m.def_submodule("stiefel");
  s.def("in_domain", &stiefel::in_domain);
  s.def("xi_apply", [](const StiefelChart& c, const Matrix& W) {
    const StiefelCoords x = stiefel::xi_apply(c, W);
    return py::make_tuple(x.X, x.G);
  });
  s.def("xi_inverse", [](const StiefelChart& c, const Matrix& X, const Matrix& G) {
    return stiefel::xi_inverse(c, {X, G});
  });
  s.def("tangent_push", [](const StiefelChart& c, const Matrix& Xd, const Matrix& Gd) {
    return stiefel::tangent_push(c, {Xd, Gd});
  });
  s.def("tangent_pull", [](const StiefelChart& c, const Matrix& Zd) {
    const StiefelTangent t = stiefel::tangent_pull(c, Zd);
    return py::make_tuple(t.X, t.G);
  });
  s.def("group_op", &stiefel::group_op);

  // Fixed rank.
  py::class_<RankRPoint>(m, "RankRPoint")
      .def(py::init<Matrix, Matrix, Matrix>(), py::arg("U"), py::arg("G"), py::arg("V"))
      .def_static("from_matrix", &RankRPoint::from_matrix, py::arg("A"), py::arg("r"))
      .def_property_readonly("U", &RankRPoint::U)
      .def_property_readonly("G", &RankRPoint::G)
      .def_property_readonly("V", &RankRPoint::V)
      .def_property_readonly("rank", &RankRPoint::rank)
      .def("matrix", &RankRPoint::matrix);

  py::class_<FixedRankChart>(m, "FixedRankChart")
      .def(py::init<Matrix, Matrix>(), py::arg("U"), py::arg("V"))
      .def(py::init([](const RankRPoint& p) { return fixed_rank::make_chart(p); }), py::arg("point"))
      .def_property_readonly("U", &FixedRankChart::U)
      .def_property_readonly("V", &FixedRankChart::V)
      .def_property_readonly("U_perp", &FixedRankChart::U_perp)
      .def_property_readonly("V_perp", &FixedRankChart::V_perp)
      .def_property_readonly("coordinate_dim", &FixedRankChart::coordinate_dim);

  auto f = m.def_submodule("fixed_rank");
  f.def("boundary_ratio", &fixed_rank::boundary_ratio);
  f.def("theta_apply", [](const FixedRankChart& c, const Matrix& A) {
    const FixedRankCoords x = fixed_rank::theta_apply(c, A);
    return py::make_tuple(x.X, x.Y, x.H, x.near_boundary);
  }, "Returns (X, Y, H, near_boundary).");
  f.def("theta_inverse", [](const FixedRankChart& c, const Matrix& X, const Matrix& Y, const Matrix& H) {
    return fixed_rank::theta_inverse(c, {X, Y, H});
  });
  f.def("transition", [](const FixedRankChart& from, const FixedRankChart& to, const Matrix& X, const Matrix& Y,
                         const Matrix& H) { return coords_tuple(fixed_rank::transition(from, to, {X, Y, H})); });
  f.def("tangent_push", [](const FixedRankChart& c, const Matrix& G, const Matrix& Xd, const Matrix& Yd,
                           const Matrix& Hd) { return fixed_rank::tangent_push(c, G, {Xd, Yd, Hd}); });
  f.def("tangent_pull", [](const FixedRankChart& c, const Matrix& G, const Matrix& Zd) {
    const FixedRankTangent t = fixed_rank::tangent_pull(c, G, Zd);
    return py::make_tuple(t.X, t.Y, t.H);
  });
  f.def("group_op", &fixed_rank::group_op);
  f.def("group_identity", &fixed_rank::group_identity);

  // Optimizer.
  py::class_<OptimizerConfig>(m, "OptimizerConfig")
      .def(py::init<>())
      .def_readwrite("max_iters", &OptimizerConfig::max_iters)
      .def_readwrite("grad_tol", &OptimizerConfig::grad_tol)
      .def_readwrite("armijo_c", &OptimizerConfig::armijo_c)
      .def_readwrite("backtrack_factor", &OptimizerConfig::backtrack_factor)
      .def_readwrite("initial_step", &OptimizerConfig::initial_step)
      .def_readwrite("max_backtracks", &OptimizerConfig::max_backtracks)
      .def_readwrite("recenter_every", &OptimizerConfig::recenter_every);

  m.def("minimize", [](const RankRPoint& start, std::function<double(const Matrix&)> value,
                       std::function<Matrix(const Matrix&)> gradient, const OptimizerConfig& cfg) {
    const Objective obj{std::move(value), std::move(gradient)};
    MinimizeResult res = [&] {
      py::gil_scoped_release release;
      return optimizer::minimize(start, obj, cfg);
    }();
    return py::make_tuple(res.point, trace_dict(res.trace));
  }, py::arg("start"), py::arg("value"), py::arg("gradient"), py::arg("config") = OptimizerConfig{},
        "Chart-based gradient descent on a rank-r start. Returns (RankRPoint, trace).");

  m.def("low_rank_approx", [](const Matrix& A, Index r, std::uint64_t seed, const OptimizerConfig& cfg) {
    MinimizeResult res = [&] {
      py::gil_scoped_release release;
      return optimizer::minimize(optimizer::sketched_start(A, r, seed), least_squares_objective(A), cfg);
    }();
    return py::make_tuple(res.point.matrix(), trace_dict(res.trace));
  }, py::arg("A"), py::arg("r"), py::arg("seed") = 0, py::arg("config") = OptimizerConfig{},
        "Minimises 1/2 ||W - A||^2 over rank-r W. Returns (W, trace).");

  // Verification suites.
  m.def("verify_json", [](const std::string& suite, Index n, Index mm, Index k, Index r, std::uint64_t seed,
                          int trials) {
    const verify::Report report = run_suite(suite, {n, mm, k, r}, seed, trials);
    return report.to_json().dump();
  }, py::arg("suite") = "all", py::arg("n") = 20, py::arg("m") = 15, py::arg("k") = 12, py::arg("r") = 3,
        py::arg("seed") = 0, py::arg("trials") = 100);
}
