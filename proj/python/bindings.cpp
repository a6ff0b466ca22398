#include "antimap/channels.hpp"
#include "antimap/cli.hpp"
#include "antimap/cv.hpp"
#include "antimap/dilation.hpp"
#include "antimap/transpose.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace antimap;

namespace {

ChoiOperator as_choi(const Matrix& r, int dim_in, int dim_out) { return ChoiOperator{dim_in, dim_out, r}; }

int square_dim(const Matrix& r) {
  const auto d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(r.rows()))));
  if (r.rows() != r.cols() || d * d != r.rows()) {
    throw DimensionError("Choi operator must be d^2 x d^2");
  }
  return d;
}

std::string run_json(const std::string& command, int dim, int cutoff, const std::string& seed,
                     double tolerance, int samples, std::uint64_t rng_seed,
                     const std::vector<std::string>& emit) {
  cli::RunConfig cfg;
  if (command == "finite") cfg.command = cli::Command::Finite;
  else if (command == "dilate") cfg.command = cli::Command::Dilate;
  else if (command == "cv") cfg.command = cli::Command::Cv;
  else if (command == "verify") cfg.command = cli::Command::Verify;
  else throw cli::UsageError("unknown command: " + command);
  cfg.dim = dim;
  cfg.cutoff = cutoff;
  cfg.seed_spec = seed;
  cfg.tolerance = tolerance;
  cfg.samples = samples;
  cfg.rng_seed = rng_seed;
  cfg.emit = std::set<std::string>(emit.begin(), emit.end());
  Report rep;
  {
    py::gil_scoped_release release;
    rep = cli::run(cfg);
  }
  return rep.to_json(false).dump();
}

}  // namespace

PYBIND11_MODULE(_antimap, m) {
  m.doc() = "Optimal physical transposition maps";

  // linalg
  m.def("swap_operator", &swap_operator, py::arg("d"));
  m.def("partial_trace",
        [](const Matrix& a, int d1, int d2, int keep) {
          if (keep != 0 && keep != 1) throw std::invalid_argument("keep must be 0 or 1");
          // keep = 0 traces out the second factor
          return partial_trace(a, d1, d2, keep == 0 ? Subsystem::Second : Subsystem::First);
        },
        py::arg("m"), py::arg("d1"), py::arg("d2"), py::arg("keep") = 0);
  m.def("haar_random_state", &haar_random_state, py::arg("d"), py::arg("rng_seed"));
  m.def("haar_random_unitary", &haar_random_unitary, py::arg("d"), py::arg("rng_seed"));

  // channels
  m.def("apply_choi",
        [](const Matrix& r, const Matrix& rho, int dim_out) {
          const int din = static_cast<int>(rho.rows());
          return apply_choi(as_choi(r, din, dim_out < 0 ? din : dim_out), rho);
        },
        py::arg("choi"), py::arg("rho"), py::arg("dim_out") = -1);
  m.def("average_transpose_fidelity",
        [](const Matrix& r, double tol) {
          const int d = square_dim(r);
          return average_transpose_fidelity(as_choi(r, d, d), tol);
        },
        py::arg("choi"), py::arg("tol") = kDefaultTol);
  m.def("random_tp_channel", [](int d, std::uint64_t seed) { return random_tp_channel(d, seed).matrix; },
        py::arg("d"), py::arg("rng_seed"));

  // finite-dimensional transposition
  m.def("optimal_map", &optimal_map, py::arg("d"), py::arg("rho"), py::arg("tol") = kDefaultTol);
  m.def("optimal_fidelity", &optimal_fidelity, py::arg("d"));
  m.def("optimal_choi", [](int d) { return optimal_choi(d).matrix; }, py::arg("d"));
  m.def("kraus_operators", [](int d) { return kraus_set(d).operators; }, py::arg("d"));
  m.def("stinespring_isometry", [](int d) { return stinespring(d).v; }, py::arg("d"));
  m.def("cloning_map", &cloning_map, py::arg("d"), py::arg("rho"));
  m.def("clone_fidelity", &clone_fidelity, py::arg("d"), py::arg("psi"));

  // dilation
  m.def("build_unitary",
        [](int d) {
          const UnitaryDilation dil = build_unitary(d);
          return py::make_tuple(dil.u, dil.phi);
        },
        py::arg("d"));
  m.def("transpose_via_dilation", py::overload_cast<int, const Matrix&>(&transpose_via_dilation),
        py::arg("d"), py::arg("rho"));
  m.def("clone_via_dilation", py::overload_cast<int, const Matrix&>(&clone_via_dilation), py::arg("d"),
        py::arg("rho"));
  m.def("reference_qubit_unitary", &reference_qubit_unitary);

  // continuous variables
  m.def("cv_optimal",
        [](const std::string& seed, int cutoff) {
          const FockSpace space(cutoff);
          const CVSeed s = make_seed(parse_seed(seed), space);
          const CVOptimalMap map = optimal_chi(s, space);
          py::dict out;
          out["fidelity"] = map.fidelity();
          out["direct_fidelity"] = cv_fidelity(s, map);
          out["lambda_max"] = map.lambda_max;
          out["spectral_gap"] = map.spectral_gap;
          out["chi"] = map.chi;
          out["seed_leakage"] = s.leakage;
          out["warnings"] = map.warnings;
          return out;
        },
        py::arg("seed") = "vacuum", py::arg("cutoff") = 20);

  // full command reports
  m.def("run_json", &run_json, py::arg("command"), py::arg("dim") = 2, py::arg("cutoff") = 20,
        py::arg("seed") = "vacuum", py::arg("tolerance") = kDefaultTol, py::arg("samples") = 50,
        py::arg("rng_seed") = 1, py::arg("emit") = std::vector<std::string>{});
}
