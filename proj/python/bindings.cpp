#include <cmath>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "faithful/criteria.hpp"
#include "faithful/harness.hpp"
#include "faithful/seesaw.hpp"
#include "faithful/solver.hpp"
#include "faithful/witness.hpp"

namespace py = pybind11;
using namespace faithful;

namespace {

// Density matrices cross the boundary as square complex arrays on C^d (x) C^d.
BipartiteState as_state(const ComplexMatrix& rho) {
  const auto n = rho.rows();
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (rho.cols() != n || static_cast<Eigen::Index>(d) * d != n)
    throw py::value_error("rho must be a square d^2 x d^2 matrix");
  return BipartiteState(rho, {d, d});
}

py::dict sdp_dict(const SdpSolution& s) {
  py::dict out;
  out["optimum"] = s.optimum;
  out["upper_bound"] = s.upper_bound;
  out["purity"] = s.purity;
  out["iterations"] = s.iterations;
  out["converged"] = s.converged;
  out["chi"] = s.chi;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Faithfulness of bipartite quantum states";

  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_ValueError);

  m.def("sample", [](const std::string& measure, int d, std::uint64_t seed, std::uint64_t index) {
        return sample({parse_measure(measure), d, seed, index}).rho();
      },
      py::arg("measure"), py::arg("d"), py::arg("seed"), py::arg("index"),
      "Density matrix number `index` of the stream `seed` (measure 'bures' or 'hs').");
  m.def("isotropic", [](int d, double p) { return isotropic(d, p).rho(); }, py::arg("d"), py::arg("p"));
  m.def("werner_qubit", [](double p) { return werner_qubit(p).rho(); }, py::arg("p"));
  m.def("max_entangled", &max_entangled, py::arg("d"));

  m.def("x_operator", [](const ComplexMatrix& rho) { return x_operator(as_state(rho)); }, py::arg("rho"));
  m.def("ppt_min_eigenvalue", [](const ComplexMatrix& rho) { return ppt_check(as_state(rho)).value; },
        py::arg("rho"));
  m.def("ccnr_norm", [](const ComplexMatrix& rho) { return ccnr_check(as_state(rho)).value; },
        py::arg("rho"));

  m.def("sdp_max_overlap",
        [](const ComplexMatrix& rho, double tol, int max_iterations) {
          SdpOptions opts;
          opts.tolerance = tol;
          opts.max_iterations = max_iterations;
          return sdp_dict(sdp_max_overlap(as_state(rho), opts));
        },
        py::arg("rho"), py::arg("tol") = 1e-7, py::arg("max_iterations") = 50000,
        "max Tr(rho chi) over chi >= 0 with both marginals 1/d.");

  m.def("max_singlet_fraction",
        [](const ComplexMatrix& rho, int restarts, std::uint64_t seed) {
          SeesawOptions opts;
          opts.restarts = restarts;
          opts.seed = seed;
          const SeesawResult r = max_singlet_fraction(as_state(rho), opts);
          return py::make_tuple(r.best_value, r.unitary);
        },
        py::arg("rho"), py::arg("restarts") = 0, py::arg("seed") = 0,
        "See-saw lower bound on the best maximally entangled overlap; returns (value, V).");

  m.def("classify_json",
        [](const ComplexMatrix& rho, int seesaw_restarts, bool full_certificates) {
          ClassifyConfig cfg;
          cfg.seesaw.restarts = seesaw_restarts;
          cfg.full_certificates = full_certificates;
          const BipartiteState state = as_state(rho);
          py::gil_scoped_release release;
          return report_json(classify(state, cfg));
        },
        py::arg("rho"), py::arg("seesaw_restarts") = 50, py::arg("full_certificates") = false);

  m.def("run_table",
        [](const std::string& measure, int d, std::size_t n, std::uint64_t seed, int workers) {
          TableRow row;
          {
            py::gil_scoped_release release;
            row = run_table(parse_measure(measure), d, n, seed, workers);
          }
          py::dict counts;
          for (const auto c : kAllCategories)
            counts[py::str(std::string(to_string(c)))] = row.counts[static_cast<std::size_t>(c)];
          return counts;
        },
        py::arg("measure"), py::arg("d"), py::arg("n"), py::arg("seed"), py::arg("workers") = 1,
        "Verdict counts over n samples.");

  m.def("obs4_detectable",
        [](const RealVector& s, int level) {
          const Obs4Result r = obs4_detectable(s, level);
          return py::make_tuple(r.detectable, r.margin);
        },
        py::arg("s"), py::arg("level"));
  m.def("obs5_counterexample",
        [](const RealVector& s, int level) {
          const Obs5Result r = obs5_counterexample(s, level);
          py::dict out;
          out["epsilon"] = r.epsilon;
          out["x"] = r.x;
          out["overlap"] = r.overlap;
          out["beta"] = r.beta;
          out["detected_by_target"] = r.detected_by_target;
          out["undetected_by_max_entangled"] = r.undetected_by_max_entangled;
          return out;
        },
        py::arg("s"), py::arg("level"));
  m.def("rfw_decomposition",
        [](const RealVector& s) {
          const RfwDecomposition r = verify_rfw_decomposition(s);
          py::dict out;
          out["z"] = r.z;
          out["off_diagonal_mass"] = r.off_diagonal_mass;
          out["min_eigenvalue"] = r.min_eigenvalue;
          out["weights"] = lhv_weights(r.schmidt).probabilities;
          return out;
        },
        py::arg("s"));
}
