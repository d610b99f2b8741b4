#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coneslice/embedding.hpp"
#include "coneslice/errors.hpp"
#include "coneslice/flrw.hpp"
#include "coneslice/group.hpp"
#include "coneslice/report.hpp"
#include "coneslice/slice.hpp"

namespace py = pybind11;
using namespace coneslice;

namespace {

AmbientVector vec(const Eigen::VectorXd& y) { return AmbientVector(y); }

std::vector<AmbientVector> vecs(const std::vector<Eigen::VectorXd>& ys) {
  std::vector<AmbientVector> out;
  out.reserve(ys.size());
  for (const auto& y : ys) out.emplace_back(y);
  return out;
}

std::string report_json(const VerificationReport& r) { return dump_json(to_json(r)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Null-cone slices, Weyl rescalings and the SO(2,n) conformal action";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ContractViolation>(m, "ContractViolation", error.ptr());
  py::register_exception<OutOfDomain>(m, "OutOfDomain", error.ptr());
  py::register_exception<DifferentiationFailure>(m, "DifferentiationFailure", error.ptr());
  py::register_exception<Inconclusive>(m, "Inconclusive", error.ptr());
  py::register_exception<ProjectionUndefined>(m, "ProjectionUndefined", error.ptr());
  py::register_exception<DegeneratePoint>(m, "DegeneratePoint", error.ptr());
  py::register_exception<DegenerateMetric>(m, "DegenerateMetric", error.ptr());
  py::register_exception<ConformalBoundary>(m, "ConformalBoundary", error.ptr());
  py::register_exception<DomainExhausted>(m, "DomainExhausted", error.ptr());

  m.def("inner", [](const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    return inner(vec(u), vec(v), Signature(static_cast<int>(u.size()) - 2));
  }, py::arg("u"), py::arg("v"));
  m.def("cone_constraint", [](const Eigen::VectorXd& y) {
    return cone_constraint(vec(y), Signature(static_cast<int>(y.size()) - 2));
  }, py::arg("y"));

  py::class_<HomogeneousFn>(m, "HomogeneousFn")
      .def_property_readonly("name", &HomogeneousFn::name)
      .def_property_readonly("degree", &HomogeneousFn::degree)
      .def_property_readonly("dim", &HomogeneousFn::dim)
      .def("__call__", [](const HomogeneousFn& f, const Eigen::VectorXd& y) { return f.eval(vec(y)); })
      .def("differential", [](const HomogeneousFn& f, const Eigen::VectorXd& y) {
        return Eigen::VectorXd(f.differential(vec(y)).coords());
      })
      .def("contains", [](const HomogeneousFn& f, const Eigen::VectorXd& y) { return f.contains(vec(y)); })
      .def("__repr__", [](const HomogeneousFn& f) { return "<HomogeneousFn " + f.name() + ">"; });

  m.def("de_sitter_function", &de_sitter_function, py::arg("n"), py::arg("H") = 1.0);
  m.def("anti_de_sitter_function", &anti_de_sitter_function, py::arg("n"), py::arg("H") = 1.0);
  m.def("null_slice_function", &null_slice_function, py::arg("n"), py::arg("H") = 1.0);
  m.def("compose_k", &compose_k, py::arg("f"), py::arg("l"));
  m.def("check_homogeneity", &check_homogeneity, py::arg("f"), py::arg("samples") = 1000,
        py::arg("seed") = 0);
  m.def("euler_residual", [](const HomogeneousFn& f, const Eigen::VectorXd& y) { return euler_residual(f, vec(y)); });

  m.def("ray_project", [](const Eigen::VectorXd& y, const HomogeneousFn& h) {
    return Eigen::VectorXd(ray_project(vec(y), h).y().coords());
  }, py::arg("y"), py::arg("h"));
  m.def("tangent_basis", [](const Eigen::VectorXd& y, const HomogeneousFn& h) {
    std::vector<Eigen::VectorXd> out;
    for (const auto& v : tangent_basis(SlicePoint(vec(y), h))) out.push_back(v.coords());
    return out;
  }, py::arg("y"), py::arg("h"));
  m.def("induced_metric", [](const Eigen::VectorXd& y, const HomogeneousFn& h,
                             const std::vector<Eigen::VectorXd>& basis) {
    return induced_metric(SlicePoint(vec(y), h), vecs(basis)).G;
  }, py::arg("y"), py::arg("h"), py::arg("basis"));

  py::class_<SliceChart>(m, "SliceChart")
      .def_property_readonly("name", &SliceChart::name)
      .def_property_readonly("n", &SliceChart::n)
      .def_property_readonly("slice", &SliceChart::slice)
      .def("contains", &SliceChart::contains)
      .def("point", [](const SliceChart& c, const Eigen::VectorXd& x) {
        return Eigen::VectorXd(c.point(x).y().coords());
      })
      .def("tangents", [](const SliceChart& c, const Eigen::VectorXd& x) {
        std::vector<Eigen::VectorXd> out;
        for (const auto& v : c.tangents(x)) out.push_back(v.coords());
        return out;
      })
      .def("metric", [](const SliceChart& c, const Eigen::VectorXd& x) { return c.metric(x).G; });

  m.def("ds_graph_chart", &ds_graph_chart, py::arg("n"), py::arg("H") = 1.0, py::arg("branch") = 1);
  m.def("minkowski_null_chart", &minkowski_null_chart, py::arg("n"), py::arg("H") = 1.0);
  m.def("scalar_curvature", &scalar_curvature, py::arg("chart"), py::arg("x"));

  py::class_<Deformation>(m, "Deformation")
      .def(py::init<HomogeneousFn, HomogeneousFn>(), py::arg("f"), py::arg("l"))
      .def_property_readonly("f", &Deformation::f)
      .def_property_readonly("l", &Deformation::l)
      .def_property_readonly("k", &Deformation::k);
  m.def("lambda_map", [](const Deformation& d, const Eigen::VectorXd& y) {
    return Eigen::VectorXd(lambda_map(d, SlicePoint(vec(y), d.f())).y().coords());
  }, py::arg("deformation"), py::arg("y"));
  m.def("lambda_pushforward", [](const Deformation& d, const Eigen::VectorXd& y, const Eigen::VectorXd& v) {
    return Eigen::VectorXd(lambda_pushforward(d, SlicePoint(vec(y), d.f()), vec(v)).coords());
  }, py::arg("deformation"), py::arg("y"), py::arg("v"));
  m.def("weyl_residual", [](const Deformation& d, const Eigen::VectorXd& y, const Eigen::VectorXd& u,
                            const Eigen::VectorXd& v) {
    return weyl_residual(d, SlicePoint(vec(y), d.f()), vec(u), vec(v));
  }, py::arg("deformation"), py::arg("y"), py::arg("u"), py::arg("v"));

  m.def("algebra_basis", [](int n) {
    std::vector<Eigen::MatrixXd> out;
    for (const auto& b : algebra_basis(n)) out.push_back(b.matrix());
    return out;
  }, py::arg("n"));
  m.def("exponential", [](const Eigen::MatrixXd& x) {
    const Signature sig(static_cast<int>(x.rows()) - 2);
    return exponential(AlgebraElement(x, sig)).matrix();
  }, py::arg("x"));
  m.def("random_algebra_element", [](int n, double rho, std::uint64_t seed) {
    Engine rng(seed);
    return random_algebra_element(n, rho, rng).matrix();
  }, py::arg("n"), py::arg("rho") = 0.5, py::arg("seed") = 0);

  auto group = [](const Eigen::MatrixXd& a) { return GroupElement(a, Signature(static_cast<int>(a.rows()) - 2)); };
  m.def("act_on_slice", [group](const Eigen::MatrixXd& a, const Eigen::VectorXd& y, const HomogeneousFn& k) {
    return Eigen::VectorXd(act_on_slice(group(a), SlicePoint(vec(y), k), k).y().coords());
  }, py::arg("alpha"), py::arg("y"), py::arg("k"));
  m.def("tangent_action", [group](const Eigen::MatrixXd& a, const Eigen::VectorXd& y, const Eigen::VectorXd& v,
                                  const HomogeneousFn& k) {
    return Eigen::VectorXd(tangent_action(group(a), SlicePoint(vec(y), k), vec(v), k).coords());
  }, py::arg("alpha"), py::arg("y"), py::arg("v"), py::arg("k"));
  m.def("conformal_factor", [group](const Eigen::MatrixXd& a, const Eigen::VectorXd& y, const HomogeneousFn& k) {
    return conformal_factor(group(a), SlicePoint(vec(y), k), k);
  }, py::arg("alpha"), py::arg("y"), py::arg("k"));

  py::class_<FlrwSpace>(m, "FlrwSpace")
      .def_property_readonly("sigma_chart", [](const FlrwSpace& s) { return s.sigma_chart; })
      .def_property_readonly("w_chart", [](const FlrwSpace& s) { return s.w_chart; })
      .def_property_readonly("deformation", [](const FlrwSpace& s) { return s.deformation; })
      .def_property_readonly("f", [](const FlrwSpace& s) { return s.base.f; })
      .def_property_readonly("l", &FlrwSpace::l)
      .def_property_readonly("k", &FlrwSpace::k)
      .def("metric_residual", &flrw_metric_residual, py::arg("x"));
  m.def("build_flrw", [](const std::string& scale_factor, int n, double H) {
    return build_flrw(parse_scale_factor(scale_factor, n, H), n, H);
  }, py::arg("scale_factor"), py::arg("n"), py::arg("H") = 1.0);

  m.def("osculating_slice", [](const HomogeneousFn& k, const Eigen::VectorXd& y) {
    const OsculatingResult r = osculating_slice(k, SlicePoint(vec(y), k));
    py::dict d;
    d["classification"] = to_string(r.classification);
    d["normSq"] = r.norm_sq;
    d["K"] = Eigen::VectorXd(r.K.coords());
    d["f_local"] = r.f_local;
    return d;
  }, py::arg("k"), py::arg("y"));

  m.def("_deformation_campaign", [](const Deformation& d, const SliceChart& chart, int trials, std::uint64_t seed,
                                    double tolerance, int threads) {
    py::gil_scoped_release release;
    return report_json(deformation_campaign(d, chart, {trials, seed, tolerance, threads}));
  });
  m.def("_group_campaign", [](const HomogeneousFn& k, const SliceChart& chart, int trials, std::uint64_t seed,
                              double tolerance, int threads, double rho) {
    py::gil_scoped_release release;
    GroupCampaignOptions options;
    options.trials = trials;
    options.seed = seed;
    options.tolerance = tolerance;
    options.threads = threads;
    options.rho = rho;
    return report_json(group_campaign(k, chart, options));
  });
}
