#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <optional>

#include "fuzzygb/sweep.hpp"

namespace py = pybind11;
using namespace fuzzygb;

namespace {

// Matrices cross the boundary as complex numpy arrays.
CMatrix to_cmatrix(const Eigen::MatrixXcd& m) { return CMatrix(m); }
Eigen::MatrixXcd to_numpy(const CMatrix& m) { return m.eigen(); }

std::vector<Eigen::MatrixXcd> to_numpy(const std::vector<CMatrix>& ms) {
  std::vector<Eigen::MatrixXcd> out;
  for (const auto& m : ms) out.push_back(m.eigen());
  return out;
}

FourierMode mode(std::pair<int, int> m) { return {m.first, m.second}; }

EmbeddingSet make_embedding(const std::vector<Eigen::MatrixXcd>& coords, double hbar,
                            const std::optional<std::vector<std::vector<Eigen::MatrixXcd>>>& normals,
                            const Tolerances& tol) {
  std::vector<CMatrix> xs(coords.begin(), coords.end());
  std::optional<EmbeddingSet::NormalList> ns;
  if (normals) {
    ns.emplace();
    for (const auto& nv : *normals) ns->emplace_back(nv.begin(), nv.end());
  }
  return EmbeddingSet(std::move(xs), hbar, std::move(ns), tol);
}

HbarChoice hbar_choice(const py::object& value) {
  if (py::isinstance<py::str>(value)) return HbarChoice::parse(value.cast<std::string>());
  const double v = value.cast<double>();
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("hbar must be 'rule', 'calibrate' or a positive number");
  return {HbarMode::Explicit, v};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Matrix regularizations of surfaces and their discrete Gauss-Bonnet theorem";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ShapeError>(m, "ShapeError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ArgumentError>(m, "ArgumentError", base.ptr());
  py::register_exception<NumericError>(m, "NumericError", base.ptr());
  py::register_exception<CertificationError>(m, "CertificationError", base.ptr());
  py::register_exception<DefinitenessError>(m, "DefinitenessError", base.ptr());
  py::register_exception<ConditioningError>(m, "ConditioningError", base.ptr());
  py::register_exception<AdmissibilityError>(m, "AdmissibilityError", base.ptr());
  py::register_exception<ClosureError>(m, "ClosureError", base.ptr());
  py::register_exception<ConstructionError>(m, "ConstructionError", base.ptr());
  py::register_exception<ConsistencyError>(m, "ConsistencyError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  py::class_<Tolerances>(m, "Tolerances")
      .def(py::init<>())
      .def_readwrite("herm", &Tolerances::herm)
      .def_readwrite("eig", &Tolerances::eig)
      .def_readwrite("psd", &Tolerances::psd)
      .def_readwrite("closure", &Tolerances::closure)
      .def_readwrite("commutation", &Tolerances::commutation)
      .def_readwrite("diagonal", &Tolerances::diagonal)
      .def("scaled", &Tolerances::scaled);

  // linear algebra
  m.def("commutator", [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return to_numpy(commutator(to_cmatrix(a), to_cmatrix(b)));
  });
  m.def("operator_norm", [](const Eigen::MatrixXcd& a) { return operator_norm(to_cmatrix(a)); });
  m.def(
      "hermitian_eigenvalues",
      [](const Eigen::MatrixXcd& a, const Tolerances& tol) { return hermitian_eigenvalues(to_cmatrix(a), tol); },
      py::arg("a"), py::arg("tol") = Tolerances{});
  m.def(
      "hermitian_sqrt",
      [](const Eigen::MatrixXcd& a, const Tolerances& tol) { return to_numpy(hermitian_sqrt(to_cmatrix(a), tol)); },
      py::arg("a"), py::arg("tol") = Tolerances{});

  // regularization
  m.def("sphere_hbar", [](Index n) { return HbarRule::sphere().value(n); });
  m.def("torus_hbar", [](Index n) { return HbarRule::torus().value(n); });
  m.def("clock_shift", [](Index n) {
    const auto [g, h] = clock_shift(n);
    return py::make_tuple(to_numpy(g), to_numpy(h));
  });
  m.def("torus_quantize", [](std::pair<int, int> mo, Index n) { return to_numpy(torus_quantize(mode(mo), n)); });
  m.def("torus_bracket_defect",
        [](std::pair<int, int> a, std::pair<int, int> b, Index n) { return torus_bracket_defect(mode(a), mode(b), n); });
  m.def("torus_product_defect",
        [](std::pair<int, int> a, std::pair<int, int> b, Index n) { return torus_product_defect(mode(a), mode(b), n); });
  m.def("trace_functional",
        [](const Eigen::MatrixXcd& a, double hbar) { return trace_functional(to_cmatrix(a), hbar); });
  m.def("unitality_defect", [](const Eigen::MatrixXcd& a) { return unitality_defect(to_cmatrix(a)); });
  m.def("pad_nonunital", [](const Eigen::MatrixXcd& a) { return to_numpy(pad_nonunital(to_cmatrix(a))); });

  // surfaces
  py::enum_<SurfaceKind>(m, "SurfaceKind")
      .value("ROUND_SPHERE", SurfaceKind::RoundSphere)
      .value("CLIFFORD_TORUS", SurfaceKind::CliffordTorus)
      .value("AXISYMMETRIC", SurfaceKind::Axisymmetric);

  py::class_<SurfaceSpec>(m, "SurfaceSpec")
      .def_static("round_sphere", &SurfaceSpec::round_sphere)
      .def_static("clifford_torus", &SurfaceSpec::clifford_torus)
      .def_static(
          "axisymmetric",
          [](const std::vector<double>& fsq, std::optional<std::pair<double, double>> domain) {
            std::optional<Interval> d;
            if (domain) d = Interval{domain->first, domain->second};
            return SurfaceSpec::axisymmetric(RealPolynomial(fsq), d);
          },
          py::arg("fsq"), py::arg("domain") = py::none(),
          "f^2 as ascending coefficients; the domain defaults to the two real roots")
      .def_property_readonly("kind", &SurfaceSpec::kind)
      .def_property_readonly("fsq", [](const SurfaceSpec& s) { return s.fsq().coefficients(); })
      .def_property_readonly("domain", [](const SurfaceSpec& s) {
        return std::pair{s.domain().lower, s.domain().upper};
      });

  py::class_<EmbeddingSet>(m, "EmbeddingSet")
      .def(py::init(&make_embedding), py::arg("coordinates"), py::arg("hbar"), py::arg("normals") = py::none(),
           py::arg("tol") = Tolerances{})
      .def_property_readonly("ambient_dim", &EmbeddingSet::ambient_dim)
      .def_property_readonly("N", &EmbeddingSet::N)
      .def_property_readonly("hbar", &EmbeddingSet::hbar)
      .def_property_readonly("coordinates", [](const EmbeddingSet& e) { return to_numpy(e.coordinates()); })
      .def_property_readonly("normals",
                             [](const EmbeddingSet& e) -> py::object {
                               if (!e.has_normals()) return py::none();
                               py::list out;
                               for (const auto& nv : e.normals()) out.append(to_numpy(nv));
                               return out;
                             })
      .def("conjugated", [](const EmbeddingSet& e, const Eigen::MatrixXcd& u) { return e.conjugated(to_cmatrix(u)); });

  py::class_<AxisymRepresentation>(m, "AxisymRepresentation")
      .def_readonly("N", &AxisymRepresentation::N)
      .def_readonly("hbar", &AxisymRepresentation::hbar)
      .def_readonly("z", &AxisymRepresentation::z)
      .def_readonly("Q", &AxisymRepresentation::Q)
      .def_readonly("w_squared", &AxisymRepresentation::w_squared)
      .def_readonly("closure_residual", &AxisymRepresentation::closure_residual)
      .def_property_readonly("Z", [](const AxisymRepresentation& r) { return to_numpy(r.Z); })
      .def_property_readonly("W", [](const AxisymRepresentation& r) { return to_numpy(r.W); });

  m.def("su2_generators", [](Index n) {
    const auto s = su2_generators(n);
    return py::make_tuple(to_numpy(s[0]), to_numpy(s[1]), to_numpy(s[2]));
  });
  m.def("sphere_embedding", &sphere_embedding);
  m.def("torus_embedding", &torus_embedding);
  m.def("axisym_representation", &axisym_representation, py::arg("spec"), py::arg("N"), py::arg("hbar"),
        py::arg("tol") = Tolerances{});
  m.def("axisym_embedding", &axisym_embedding, py::arg("rep"), py::arg("tol") = Tolerances{});
  m.def("fhat_squared", [](const AxisymRepresentation& r) { return to_numpy(fhat_squared(r)); });
  m.def("casimir_defect", &casimir_defect, py::arg("rep"), py::arg("tol") = Tolerances{});
  m.def("calibrate_hbar", &calibrate_hbar, py::arg("spec"), py::arg("N"), py::arg("tol") = Tolerances{});

  // curvature
  py::enum_<CurvatureRoute>(m, "CurvatureRoute")
      .value("NORMALS", CurvatureRoute::Normals)
      .value("EPSILON_R3", CurvatureRoute::EpsilonR3)
      .value("AXISYMMETRIC", CurvatureRoute::Axisymmetric);

  py::class_<CurvatureReport>(m, "CurvatureReport")
      .def_readonly("N", &CurvatureReport::N)
      .def_readonly("hbar", &CurvatureReport::hbar)
      .def_readonly("chi_hat", &CurvatureReport::chi_hat)
      .def_readonly("chi_imag_residual", &CurvatureReport::chi_imag_residual)
      .def_readonly("K_hermiticity", &CurvatureReport::K_hermiticity)
      .def_readonly("gamma_hermiticity", &CurvatureReport::gamma_hermiticity)
      .def_readonly("gamma_min_eigenvalue", &CurvatureReport::gamma_min_eigenvalue)
      .def_property_readonly("K_hat", [](const CurvatureReport& r) { return to_numpy(r.K_hat); })
      .def_property_readonly("gamma_sq", [](const CurvatureReport& r) { return to_numpy(r.gamma_sq); });

  py::class_<ClassicalAxisymGeometry>(m, "ClassicalAxisymGeometry")
      .def_readonly("chi_classical", &ClassicalAxisymGeometry::chi_classical)
      .def_property_readonly("domain", [](const ClassicalAxisymGeometry& g) {
        return std::pair{g.domain.lower, g.domain.upper};
      })
      .def("K", [](const ClassicalAxisymGeometry& g, double z) { return g.K(z); })
      .def("sqrt_g", [](const ClassicalAxisymGeometry& g, double z) { return g.sqrt_g(z); })
      .def("antiderivative", &ClassicalAxisymGeometry::antiderivative)
      .def("gauss_bonnet_integral", &ClassicalAxisymGeometry::gauss_bonnet_integral, py::arg("tolerance") = 1e-12);

  m.def(
      "gamma_sq_from_embedding",
      [](const EmbeddingSet& e, const Tolerances& tol) { return to_numpy(gamma_sq_from_embedding(e, tol)); },
      py::arg("e"), py::arg("tol") = Tolerances{});
  m.def(
      "discrete_K",
      [](const EmbeddingSet& e, const Eigen::MatrixXcd& gamma_sq, const Tolerances& tol) {
        return to_numpy(discrete_K(e, to_cmatrix(gamma_sq), std::nullopt, tol));
      },
      py::arg("e"), py::arg("gamma_sq"), py::arg("tol") = Tolerances{});
  m.def(
      "discrete_K_r3",
      [](const EmbeddingSet& e, const Eigen::MatrixXcd& gamma_sq, const Tolerances& tol) {
        return to_numpy(discrete_K_r3(e, to_cmatrix(gamma_sq), tol));
      },
      py::arg("e"), py::arg("gamma_sq"), py::arg("tol") = Tolerances{});
  m.def(
      "axisym_K", [](const AxisymRepresentation& r, const Tolerances& tol) { return to_numpy(axisym_K(r, tol)); },
      py::arg("rep"), py::arg("tol") = Tolerances{});
  m.def(
      "euler_characteristic",
      [](const Eigen::MatrixXcd& k, const Eigen::MatrixXcd& g, double hbar, const Tolerances& tol) {
        return euler_characteristic(to_cmatrix(k), to_cmatrix(g), hbar, tol).value;
      },
      py::arg("K_hat"), py::arg("gamma_sq"), py::arg("hbar"), py::arg("tol") = Tolerances{});
  m.def("classical_axisym", &classical_axisym);
  m.def("curvature_report", py::overload_cast<const EmbeddingSet&, CurvatureRoute, const Tolerances&>(&curvature_report),
        py::arg("e"), py::arg("route") = CurvatureRoute::Normals, py::arg("tol") = Tolerances{});
  m.def("curvature_report", py::overload_cast<const AxisymRepresentation&, const Tolerances&>(&curvature_report),
        py::arg("rep"), py::arg("tol") = Tolerances{});

  // sweeps
  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("N", &SweepRow::N)
      .def_readonly("hbar", &SweepRow::hbar)
      .def_readonly("chi_hat", &SweepRow::chi_hat)
      .def_readonly("abs_err", &SweepRow::abs_err)
      .def_readonly("runtime_ms", &SweepRow::runtime_ms)
      .def("__repr__", [](const SweepRow& r) {
        return "SweepRow(N=" + std::to_string(r.N) + ", chi_hat=" + std::to_string(r.chi_hat) + ")";
      });

  py::class_<RowFailure>(m, "RowFailure")
      .def_readonly("N", &RowFailure::N)
      .def_readonly("reason", &RowFailure::reason)
      .def_readonly("exit_code", &RowFailure::exit_code);

  py::class_<ConvergenceTable>(m, "ConvergenceTable")
      .def_readonly("surface", &ConvergenceTable::surface)
      .def_readonly("chi_classical", &ConvergenceTable::chi_classical)
      .def_readonly("rows", &ConvergenceTable::rows)
      .def_readonly("fitted_rate", &ConvergenceTable::fitted_rate)
      .def_readonly("failures", &ConvergenceTable::failures)
      .def("all_ok", &ConvergenceTable::all_ok)
      .def("to_csv", [](const ConvergenceTable& t) { return to_csv(t); })
      .def("to_json", [](const ConvergenceTable& t) { return to_json(t); });

  m.def(
      "run_sweep",
      [](const SurfaceSpec& surface, const std::vector<int>& n_list, const py::object& hbar, bool record_runtime,
         const Tolerances& tol) {
        SweepConfig cfg;
        cfg.surface = surface;
        cfg.n_list = n_list;
        cfg.hbar = hbar_choice(hbar);
        cfg.record_runtime = record_runtime;
        return run_sweep(cfg, tol);
      },
      py::arg("surface"), py::arg("n_list"), py::arg("hbar") = "rule", py::arg("record_runtime") = true,
      py::arg("tol") = Tolerances{});
  m.def("parse_csv", &parse_csv);

  py::class_<AxiomDefectReport>(m, "AxiomDefectReport")
      .def_readonly("N", &AxiomDefectReport::N)
      .def_readonly("product_defect", &AxiomDefectReport::product_defect)
      .def_readonly("bracket_defect", &AxiomDefectReport::bracket_defect)
      .def_readonly("trace_defect", &AxiomDefectReport::trace_defect)
      .def_readonly("unitality_defect", &AxiomDefectReport::unitality_defect);

  py::class_<AxiomCheckResult>(m, "AxiomCheckResult")
      .def_readonly("mode_cutoff", &AxiomCheckResult::mode_cutoff)
      .def_readonly("reports", &AxiomCheckResult::reports)
      .def_readonly("bracket_rate", &AxiomCheckResult::bracket_rate)
      .def_readonly("product_rate", &AxiomCheckResult::product_rate)
      .def_readonly("trace_rate", &AxiomCheckResult::trace_rate)
      .def("to_csv", [](const AxiomCheckResult& r) { return to_csv(r); })
      .def("to_json", [](const AxiomCheckResult& r) { return to_json(r); });

  m.def("run_axiom_check", [](const std::vector<int>& n_list, int cutoff) { return run_axiom_check(n_list, cutoff); },
        py::arg("n_list"), py::arg("mode_cutoff") = 3);
}
