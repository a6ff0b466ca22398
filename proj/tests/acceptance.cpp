// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned here.

#include "antimap/channels.hpp"
#include "antimap/cli.hpp"
#include "antimap/cv.hpp"
#include "antimap/dilation.hpp"
#include "antimap/transpose.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace antimap;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const std::string& what, bool pass, const std::string& detail) {
  std::printf("%s %2d  %-52s %s\n", pass ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

void run(int id, const std::string& what, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    const auto [pass, detail] = body();
    report(id, what, pass, detail);
  } catch (const std::exception& e) {
    report(id, what, false, std::string("exception: ") + e.what());
  }
}

constexpr double kFidelityTol = 1e-12;
constexpr double kMapTol = 1e-10;
constexpr double kPhiTol = 1e-15;
constexpr double kUnitarityTol = 1e-12;
constexpr double kCloneTol = 1e-10;
constexpr double kBoundSlack = 1e-12;
constexpr double kVacuumTol = 1e-8;
constexpr double kCoherentTol = 1e-3;
constexpr double kMonotoneSlack = 1e-12;
constexpr double kRayleighTol = 1e-10;

}  // namespace

int main() {
  run(1, "fidelity 2/(d+1), d = 1..8", [] {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (int d = 1; d <= 8; ++d) {
      worst = std::max(worst, std::abs(average_transpose_fidelity(optimal_choi(d)) - 2.0 / (d + 1)));
      worst = std::max(worst, std::abs(optimize_covariant(d).fidelity() - 2.0 / (d + 1)));
    }
    const double t = seconds_since(t0);
    return std::pair{worst <= kFidelityTol && t < 1.0, fmt("err %.2e, %.3f s", worst, t)};
  });

  run(2, "Choi action equals (I + rho^T)/(d+1)", [] {
    double worst = 0.0;
    for (int d = 1; d <= 6; ++d) {
      const ChoiOperator r = optimal_choi(d);
      for (int s = 0; s < 100; ++s) {
        const Matrix rho = haar_random_state(d, stream_seed(1000 + d, s));
        const Matrix closed = (identity(d) + rho.transpose()) / (d + 1.0);
        worst = std::max(worst, frobenius_distance(apply_choi(r, rho), closed));
      }
    }
    return std::pair{worst <= kMapTol, fmt("max residual %.2e", worst)};
  });

  run(3, "Choi, Kraus, Stinespring, dilation agree", [] {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (int d = 2; d <= 4; ++d) {
      const OptimalTransposeMachine m = optimal_machine(d);
      const UnitaryDilation dil = build_unitary(d);
      for (int s = 0; s < 50; ++s) {
        const Matrix rho = haar_random_state(d, stream_seed(2000 + d, s));
        const Matrix ref = optimal_map(d, rho);
        for (const Matrix& out : {apply_choi(m.choi, rho), m.kraus.apply(rho), m.isometry.apply(rho),
                                  transpose_via_dilation(dil, rho)}) {
          worst = std::max(worst, frobenius_distance(out, ref));
        }
      }
    }
    const double t = seconds_since(t0);
    return std::pair{worst <= kMapTol && t < 30.0, fmt("max residual %.2e, %.2f s", worst, t)};
  });

  run(4, "qubit dilation matches the reference matrix", [] {
    const UnitaryDilation dil = build_unitary(2);
    const bool exact = (dil.u - reference_qubit_unitary()).cwiseAbs().maxCoeff() == 0.0;
    Vector phi(4);
    phi << std::sqrt(2.0 / 3.0), 1.0 / std::sqrt(6.0), 1.0 / std::sqrt(6.0), 0.0;
    const double phi_err = (dil.phi - phi).cwiseAbs().maxCoeff();
    return std::pair{exact && phi_err <= kPhiTol,
                     std::string(exact ? "U exact" : "U mismatch") + fmt(", phi err %.2e", phi_err)};
  });

  run(5, "dilation unitarity, d = 2..5", [] {
    double worst = 0.0;
    for (int d = 2; d <= 5; ++d) {
      const Matrix u = build_unitary(d).u;
      worst = std::max(worst, frobenius_distance(u.adjoint() * u, identity(d * d * d)));
    }
    return std::pair{worst <= kUnitarityTol, fmt("max ||U^dag U - I|| %.2e", worst)};
  });

  run(6, "co-realized cloner fidelity (d+3)/(2(d+1))", [] {
    double fid_err = 0.0;
    double sym_err = 0.0;
    for (int d = 2; d <= 5; ++d) {
      const UnitaryDilation dil = build_unitary(d);
      for (int s = 0; s < 10; ++s) {
        const Vector psi = haar_random_vector(d, stream_seed(3000 + d, s));
        const Matrix c = clone_via_dilation(dil, psi * psi.adjoint());
        const Matrix a = partial_trace(c, d, d, Subsystem::Second);
        const Matrix b = partial_trace(c, d, d, Subsystem::First);
        const double f = (psi.adjoint() * a * psi)(0, 0).real();
        fid_err = std::max(fid_err, std::abs(f - (d + 3.0) / (2.0 * (d + 1))));
        sym_err = std::max(sym_err, frobenius_distance(a, b));
      }
    }
    return std::pair{fid_err <= kCloneTol && sym_err <= kCloneTol,
                     fmt("fidelity err %.2e, clone asymmetry %.2e", fid_err, sym_err)};
  });

  run(7, "no channel beats 2/(d+1); segment maximum at c_A = 0", [] {
    double excess = -1.0;
    for (int d = 2; d <= 4; ++d) {
      for (int s = 0; s < 100; ++s) {
        const ChoiOperator r = random_tp_channel(d, stream_seed(4000 + d, s));
        excess = std::max(excess, average_transpose_fidelity(r) - 2.0 / (d + 1));
      }
    }
    bool at_zero = true;
    for (int d = 2; d <= 4; ++d) {
      const int points = 10000;
      double best = -1.0, best_ca = -1.0;
      for (int k = 0; k <= points; ++k) {
        const double ca = (2.0 / (d - 1)) * k / points;
        const double f = covariant_candidate(d, ca).fidelity();
        if (f > best) {
          best = f;
          best_ca = ca;
        }
      }
      at_zero = at_zero && best_ca == 0.0;
    }
    return std::pair{excess <= kBoundSlack && at_zero,
                     fmt("max F - 2/(d+1) = %.3e", excess) + (at_zero ? ", grid max at 0" : ", grid max off 0")};
  });

  run(8, "CV fidelity 1/2 and monotone in the cutoff", [] {
    const auto fid = [](const char* spec, int n) {
      const FockSpace space(n);
      return optimal_chi(make_seed(parse_seed(spec), space), space).fidelity();
    };
    const double vac = std::abs(fid("vacuum", 20) - 0.5);
    const double c2 = std::abs(fid("coherent:0.2,0", 20) - 0.5);
    const double c4 = std::abs(fid("coherent:0.4,0", 20) - 0.5);
    bool monotone = true;
    double t25 = 0.0;
    for (const char* spec : {"vacuum", "coherent:0.4,0", "squeezed:0.2"}) {
      double prev = -1.0;
      for (int n : {10, 15, 20, 25}) {
        const auto t0 = Clock::now();
        const double f = fid(spec, n);
        if (n == 25) t25 = std::max(t25, seconds_since(t0));
        monotone = monotone && f >= prev - kMonotoneSlack;
        prev = f;
      }
    }
    const bool pass = vac <= kVacuumTol && c2 <= kCoherentTol && c4 <= kCoherentTol && monotone && t25 < 60.0;
    return std::pair{pass, fmt("vacuum err %.1e, coherent err %.1e", vac, std::max(c2, c4)) +
                               (monotone ? ", monotone" : ", NOT monotone") + fmt(", N=25 %.2f s", t25)};
  });

  run(9, "optimal ancilla attains lambda_max/2", [] {
    const FockSpace space(12);
    double beaten = -1.0;
    double rayleigh = 0.0;
    for (const char* spec : {"vacuum", "coherent:0.3,0", "squeezed:0.2"}) {
      const CVSeed seed = make_seed(parse_seed(spec), space);
      const CVOptimalMap best = optimal_chi(seed, space);
      rayleigh = std::max(rayleigh, std::abs(cv_fidelity(seed, best) - best.fidelity()));
      for (int s = 0; s < 20; ++s) {
        const Vector xi = haar_random_vector(space.cutoff, stream_seed(5000, s));
        beaten = std::max(beaten, cv_fidelity(seed, map_from_chi(xi, space)) - best.fidelity());
      }
    }
    return std::pair{beaten <= kRayleighTol && rayleigh <= kRayleighTol,
                     fmt("max random excess %.2e, Rayleigh err %.2e", beaten, rayleigh)};
  });

  run(10, "verify output is reproducible", [] {
    cli::RunConfig cfg;
    cfg.command = cli::Command::Verify;
    const Report a = cli::run(cfg);
    const Report b = cli::run(cfg);
    const bool same = a.to_json(false).dump() == b.to_json(false).dump();
    return std::pair{same && a.all_pass(), std::string(same ? "identical" : "differs") +
                                               (a.all_pass() ? ", all checks pass" : ", checks failing")};
  });

  std::printf("%d failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}
