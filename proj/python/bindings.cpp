#include <optional>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sobolev/discrepancy.hpp"
#include "sobolev/embeddings.hpp"
#include "sobolev/errors.hpp"
#include "sobolev/feature_map.hpp"
#include "sobolev/io.hpp"
#include "sobolev/oracle1d.hpp"
#include "sobolev/transport.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace sobolev;

namespace {

// Accepts (N, d) arrays; 1-D arrays are read as N points in R^1.
SampleSet as_samples(const Eigen::MatrixXd& points) { return SampleSet(points); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Kernel Sobolev discrepancy with finite random feature maps";

  auto base = py::register_exception<Error>(m, "SobolevError", PyExc_ValueError);
  py::register_exception<InvalidParameter>(m, "InvalidParameter", base.ptr());
  py::register_exception<ShapeError>(m, "ShapeError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<SingularGramian>(m, "SingularGramian", base.ptr());
  py::register_exception<DegenerateWitness>(m, "DegenerateWitness", base.ptr());
  py::register_exception<DegenerateDirection>(m, "DegenerateDirection", base.ptr());
  py::register_exception<UnsupportedDimension>(m, "UnsupportedDimension", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  py::class_<FeatureMap>(m, "FeatureMap")
      .def(py::init<Eigen::MatrixXd, Eigen::VectorXd, double, double>(), "frequencies"_a, "phases"_a,
           "window_scale"_a, "amplitude"_a)
      .def_property_readonly("dim_input", &FeatureMap::dim_input)
      .def_property_readonly("dim_feature", &FeatureMap::dim_feature)
      .def_property_readonly("frequencies", &FeatureMap::frequencies)
      .def_property_readonly("phases", &FeatureMap::phases)
      .def_property_readonly("window_scale", &FeatureMap::window_scale)
      .def_property_readonly("amplitude", &FeatureMap::amplitude)
      .def("evaluate", [](const FeatureMap& fm, const Eigen::VectorXd& x) { return fm.evaluate(x); }, "x"_a)
      .def("jacobian", [](const FeatureMap& fm, const Eigen::VectorXd& x) { return fm.jacobian(x); }, "x"_a)
      .def("to_json", [](const FeatureMap& fm) { return io::feature_map_to_json(fm); })
      .def_static("from_json", &io::feature_map_from_json, "text"_a)
      .def("__eq__", [](const FeatureMap& a, const FeatureMap& b) { return a == b; });

  m.def(
      "make_feature_map",
      [](int d, int m_, double bandwidth, double window_scale, std::uint64_t seed, std::optional<double> amplitude) {
        return make_feature_map(FeatureMapParams{d, m_, bandwidth, window_scale, seed, amplitude});
      },
      "d"_a, "m"_a, "bandwidth"_a = 1.0, "window_scale"_a = 5.0, "seed"_a = 0, "amplitude"_a = py::none());

  m.def("mean_embedding",
        [](const FeatureMap& fm, const Eigen::MatrixXd& pts) { return mean_embedding(fm, as_samples(pts)); },
        "fm"_a, "points"_a);
  m.def("derivative_gramian",
        [](const FeatureMap& fm, const Eigen::MatrixXd& pts) { return derivative_gramian(fm, as_samples(pts)); },
        "fm"_a, "points"_a);
  m.def("mean_difference", &mean_difference, "mu_p"_a, "mu_q"_a);

  py::class_<WitnessSolution>(m, "WitnessSolution")
      .def_readonly("coeffs", &WitnessSolution::coeffs)
      .def_readonly("lambda_", &WitnessSolution::lambda)
      .def_readonly("value", &WitnessSolution::value)
      .def_readonly("kinetic", &WitnessSolution::kinetic)
      .def_readonly("penalty", &WitnessSolution::penalty)
      .def("to_json", [](const WitnessSolution& w) { return io::witness_solution_to_json(w); });

  m.def("solve_witness", &solve_witness, "gramian"_a, "delta"_a, "lam"_a);
  m.def("discrepancy_value", &discrepancy_value, "gramian"_a, "delta"_a, "lam"_a);
  m.def("objective", &objective, "gramian"_a, "delta"_a, "u"_a, "lam"_a);
  m.def("witness_function", &witness_function, "solution"_a);
  m.def("evaluate_witness", [](const FeatureMap& fm, const Eigen::VectorXd& c, const Eigen::VectorXd& x) {
    return evaluate_witness(fm, c, x);
  }, "fm"_a, "coeffs"_a, "x"_a);
  m.def("velocity_field", [](const FeatureMap& fm, const Eigen::VectorXd& c, const Eigen::VectorXd& x) {
    return velocity_field(fm, c, x);
  }, "fm"_a, "coeffs"_a, "x"_a);

  py::class_<Spectrum>(m, "Spectrum")
      .def_readonly("eigenvalues", &Spectrum::eigenvalues)
      .def_readonly("eigenvectors", &Spectrum::eigenvectors);
  py::class_<TransportDecomposition>(m, "TransportDecomposition")
      .def_readonly("coefficients", &TransportDecomposition::coefficients)
      .def_readonly("raw_alignments", &TransportDecomposition::raw_alignments)
      .def_readonly("lambda_", &TransportDecomposition::lambda);

  m.def("spectral_decomposition", &spectral_decomposition, "gramian"_a);
  m.def("transport_coefficients", &transport_coefficients, "spectrum"_a, "delta"_a, "lam"_a);
  m.def("principal_direction", [](const FeatureMap& fm, const Spectrum& s, int j, const Eigen::VectorXd& x) {
    return principal_direction(fm, s, j, x);
  }, "fm"_a, "spectrum"_a, "j"_a, "x"_a);
  m.def("filtered_velocity",
        [](const FeatureMap& fm, const Spectrum& s, const Eigen::VectorXd& delta, double lam, const Eigen::VectorXd& x) {
          return filtered_velocity(fm, s, delta, lam, x);
        },
        "fm"_a, "spectrum"_a, "delta"_a, "lam"_a, "x"_a);

  py::class_<GridDensity>(m, "GridDensity")
      .def(py::init(&GridDensity::make), "grid"_a, "p"_a, "q"_a, "a"_a = py::none(), "b"_a = py::none())
      .def_property_readonly("grid", &GridDensity::grid)
      .def_property_readonly("p", &GridDensity::p)
      .def_property_readonly("q", &GridDensity::q)
      .def_property_readonly("a", &GridDensity::lower_bound)
      .def_property_readonly("b", &GridDensity::upper_bound)
      .def("swapped", &GridDensity::swapped);

  py::class_<BoundsCheck>(m, "BoundsCheck")
      .def_readonly("s", &BoundsCheck::s)
      .def_readonly("w2", &BoundsCheck::w2)
      .def_readonly("lower_ok", &BoundsCheck::lower_ok)
      .def_readonly("upper_ok", &BoundsCheck::upper_ok);

  m.def("quadrature_embedding", [](const FeatureMap& fm, const GridDensity& g, const std::string& which) {
    if (which != "p" && which != "q") throw InvalidParameter("which must be 'p' or 'q'");
    auto e = quadrature_embedding(fm, g, which == "p" ? DensitySide::p : DensitySide::q);
    return py::make_tuple(e.mu, e.gramian);
  }, "fm"_a, "density"_a, "which"_a);
  m.def("sobolev_1d", &sobolev_1d, "density"_a);
  m.def("wasserstein2_1d", &wasserstein2_1d, "density"_a);
  m.def("advection_potential_1d", &advection_potential_1d, "density"_a);
  m.def("pde_residual", &pde_residual, "density"_a, "u"_a);
  m.def("check_bounds", &check_bounds, "density"_a, "tol"_a = 1e-4);
}
