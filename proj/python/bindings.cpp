// bindings.cpp — Python module over the core library
#include "weyl/herglotz.hpp"
#include "weyl/jcdot.hpp"
#include "weyl/models1d.hpp"
#include "weyl/oracle.hpp"
#include "weyl/spectral_integral.hpp"
#include "weyl/tensor.hpp"
#include "weyl/triplet.hpp"
#include "weyl/validation.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace weyl;

namespace {

BoundaryCondition bc_from(const py::object& o) {
  if (py::isinstance<py::str>(o)) {
    auto s = o.cast<std::string>();
    if (s == "theta0") return BoundaryCondition::theta0();
    if (s == "theta1") return BoundaryCondition::theta1();
    throw DomainError("boundary condition must be 'theta0', 'theta1' or a Hermitian matrix");
  }
  if (py::isinstance<py::float_>(o) || py::isinstance<py::int_>(o))
    return BoundaryCondition::op(CMat::Constant(1, 1, o.cast<double>()));
  return BoundaryCondition::op(o.cast<CMat>());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Boundary triplets, Weyl functions and Krein resolvent corrections";

  auto base = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PoleError>(m, "PoleError", base.ptr());
  py::register_exception<SingularError>(m, "SingularError", PyExc_ArithmeticError);
  py::register_exception<NotPositiveError>(m, "NotPositiveError", PyExc_ArithmeticError);
  py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_RuntimeError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_NotImplementedError);
  py::register_exception<MomentDivergence>(m, "MomentDivergence", PyExc_ArithmeticError);

  // scalar coefficients
  m.def("sqrt_cut", &sqrt_cut, py::arg("z"));
  m.def("m_schrodinger_halfline", &m_schrodinger_halfline, py::arg("z"), py::arg("v") = 0.0);
  m.def("m_interval", &m_interval, py::arg("z"), py::arg("v"), py::arg("d"), py::arg("branch"));
  m.def("dirac_k", &dirac_k, py::arg("z"), py::arg("c"));
  m.def("dirac_k1", &dirac_k1, py::arg("z"), py::arg("c"));
  m.def("m_dirac_halfline", &m_dirac_halfline, py::arg("z"), py::arg("c"));
  m.def("m_dirac_interval", &m_dirac_interval, py::arg("z"), py::arg("c"), py::arg("d"), py::arg("branch"));

  py::class_<HerglotzScalar>(m, "HerglotzScalar")
      .def_readonly("name", &HerglotzScalar::name)
      .def_readonly("singular_set", &HerglotzScalar::singular_set)
      .def("__call__", [](const HerglotzScalar& h, cplx z) { return h(z); })
      .def("symmetry_residual", [](const HerglotzScalar& h, cplx z) { return symmetry_residual(h, z); });
  m.def("herglotz_catalogue", &herglotz_catalogue);

  // triplets
  py::class_<BoundaryTriplet>(m, "BoundaryTriplet")
      .def_readonly("label", &BoundaryTriplet::label)
      .def_readonly("normalized", &BoundaryTriplet::normalized)
      .def_property_readonly("dim", &BoundaryTriplet::dim)
      .def("weyl", [](const BoundaryTriplet& t, cplx z) { return t.weyl(z); }, py::arg("z"))
      .def("identity_residual", [](const BoundaryTriplet& t, cplx z, cplx w) { return herglotz_identity_residual(t, z, w); },
           py::arg("z"), py::arg("zeta"));

  py::class_<KreinCorrection>(m, "KreinCorrection")
      .def_readonly("zero", &KreinCorrection::zero)
      .def_readonly("core", &KreinCorrection::core)
      .def("dense", &KreinCorrection::dense)
      .def("kernel", &KreinCorrection::kernel, py::arg("px"), py::arg("x"), py::arg("py"), py::arg("y"));

  m.def("krein_correction",
        [](const BoundaryTriplet& t, const py::object& bc, cplx z) { return krein_correction(t, bc_from(bc), z); },
        py::arg("triplet"), py::arg("bc"), py::arg("z"),
        "bc is 'theta0', 'theta1', a real number or a Hermitian matrix");
  m.def("normalize", &normalize);
  m.def("direct_sum_normalized", &direct_sum_normalized);
  m.def("regularize_at_real_point", &regularize_at_real_point, py::arg("triplets"), py::arg("a"));

  m.def("build_triplet", [](const std::string& family, double v, double a, double b, double c, double v_l, double v_r) {
        auto f = parse_family(family);
        if (!f) throw DomainError("unknown model family '" + family + "'");
        ModelSpec s;
        s.family = *f;
        s.v = v;
        s.a = a;
        s.b = b;
        s.c = c;
        s.v_l = v_l;
        s.v_r = v_r;
        s.validate();
        return build_triplet(s);
      },
      py::arg("family"), py::arg("v") = 0.0, py::arg("a") = 0.0, py::arg("b") = 0.0, py::arg("c") = 1.0,
      py::arg("v_l") = 0.0, py::arg("v_r") = 0.0);

  // spectral measures and tensors
  py::class_<SpectralMeasurePP>(m, "SpectralMeasure")
      .def_static("integers", &SpectralMeasurePP::integers, py::arg("lo"), py::arg("hi"))
      .def_static("from_points", &SpectralMeasurePP::from_points)
      .def_property_readonly("total_dim", &SpectralMeasurePP::total_dim);
  m.def("tensor_raw", [](const BoundaryTriplet& t, const SpectralMeasurePP& mu) { return tensor_raw(t, mu).assembled; });
  m.def("tensor_normalized",
        [](const BoundaryTriplet& t, const SpectralMeasurePP& mu) { return tensor_normalized(t, mu).assembled; });
  m.def("tensor_positive", [](const BoundaryTriplet& t, const SpectralMeasurePP& mu, double a) {
    return tensor_positive(t, mu, a).assembled;
  });

  // dense toys and finite differences
  py::class_<DenseToyTriplet>(m, "DenseToyTriplet")
      .def_readonly("n", &DenseToyTriplet::n)
      .def_readonly("d", &DenseToyTriplet::d)
      .def_readonly("seed", &DenseToyTriplet::seed)
      .def_readonly("A0", &DenseToyTriplet::A0)
      .def_readonly("G", &DenseToyTriplet::G)
      .def_readonly("E", &DenseToyTriplet::E)
      .def("gamma", &DenseToyTriplet::gamma)
      .def("weyl", &DenseToyTriplet::weyl)
      .def("direct_resolvent_difference", &DenseToyTriplet::direct_resolvent_difference, py::arg("B"), py::arg("z"))
      .def("to_triplet", &DenseToyTriplet::to_triplet);
  m.def("make_dense_toy", &make_dense_toy, py::arg("n"), py::arg("d"), py::arg("seed"));

  m.def("fd_m_function", [](double h, double L, double v, cplx z) { return fd_m_function(FDGrid{h, L, v}, z); },
        py::arg("h"), py::arg("L"), py::arg("v"), py::arg("z"));
  m.def("fd_resolvent_difference",
        [](double h, double L, double v, double theta, cplx z, const std::vector<double>& xs,
           const std::vector<double>& ys) { return fd_resolvent_difference(FDGrid{h, L, v}, theta, z, xs, ys); },
        py::arg("h"), py::arg("L"), py::arg("v"), py::arg("theta"), py::arg("z"), py::arg("xs"), py::arg("ys"));
  m.def("analytic_robin_difference", &analytic_robin_difference, py::arg("v"), py::arg("theta"), py::arg("z"),
        py::arg("xs"), py::arg("ys"));

  // dot model
  py::class_<JCModel>(m, "JCModel")
      .def_static("make", &JCModel::make, py::arg("N"), py::arg("alpha"), py::arg("beta"), py::arg("gamma"),
                  py::arg("tau"), py::arg("v_l") = 0.0, py::arg("v_r") = 0.0)
      .def_property_readonly("dim", &JCModel::dim)
      .def_readonly("v_l", &JCModel::v_l)
      .def_readonly("v_r", &JCModel::v_r)
      .def_readonly("tau", &JCModel::tau);
  py::class_<BCEquivalence>(m, "BCEquivalence")
      .def_readonly("identity_residual", &BCEquivalence::identity_residual)
      .def_readonly("kernel_dim_raw", &BCEquivalence::kernel_dim_raw)
      .def_readonly("kernel_dim_tilde", &BCEquivalence::kernel_dim_tilde)
      .def_readonly("kernels_equal", &BCEquivalence::kernels_equal);
  m.def("build_CJC", &build_CJC);
  m.def("build_CJC_eigen", &build_CJC_eigen);
  m.def("build_tilde_CJC", &build_tilde_CJC);
  m.def("build_tilde_T", &build_tilde_T);
  m.def("build_R_Q", [](const JCModel& j) {
    RQ r = build_R_Q(j);
    return py::make_tuple(r.R, r.Q);
  });
  m.def("boundary_condition_equivalence", &boundary_condition_equivalence, py::arg("model"), py::arg("tol") = 1e-10);
  m.def("weyl_S", &weyl_S, py::arg("model"), py::arg("z"));
  m.def("dot_resolvent_correction", &dot_resolvent_correction, py::arg("model"), py::arg("z"), py::arg("x"),
        py::arg("y"));
  m.def("spectrum_CJC", &spectrum_CJC);
  m.def("spectrum_tilde_CJC", &spectrum_tilde_CJC);

  m.def("run_validation_suite", [](std::uint64_t seed) {
        py::list out;
        for (const auto& c : run_validation_suite(seed)) {
          py::dict d;
          d["name"] = c.name;
          d["value"] = c.value;
          d["threshold"] = c.threshold;
          d["passed"] = c.passed;
          d["detail"] = c.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("seed") = 1);
}
