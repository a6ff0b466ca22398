#include "antimap/cli.hpp"

#include "antimap/channels.hpp"
#include "antimap/cv.hpp"
#include "antimap/dilation.hpp"
#include "antimap/parallel.hpp"
#include "antimap/transpose.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

namespace antimap::cli {

namespace {

// Covariance residuals in the `cv` command are evaluated at this displacement.
constexpr double kCovarianceAlpha = 0.3;

// Truncation-limited CV checks are compared against tolerance times these.
constexpr double kScaleCvTrace = 1e4;
constexpr double kScaleCvCovariance = 1e4;
constexpr double kScaleCvCoherent = 1e2;

const char* command_name(Command c) {
  switch (c) {
    case Command::Finite: return "finite";
    case Command::Dilate: return "dilate";
    case Command::Cv: return "cv";
    case Command::Verify: return "verify";
  }
  return "finite";
}

nlohmann::json config_echo(const RunConfig& cfg) {
  nlohmann::json j;
  j["command"] = command_name(cfg.command);
  j["dim"] = cfg.dim;
  j["cutoff"] = cfg.cutoff;
  j["seed"] = cfg.seed_spec;
  j["tolerance"] = cfg.tolerance;
  j["samples"] = cfg.samples;
  j["rng_seed"] = cfg.rng_seed;
  j["emit"] = cfg.emit;
  j["format"] = cfg.output_format == OutputFormat::Json ? "json" : "csv";
  j["strict"] = cfg.strict;
  return j;
}

template <typename Fn>
double max_over_samples(int samples, std::uint64_t rng_seed, Fn&& fn) {
  const auto vals = parallel_map(static_cast<std::size_t>(samples),
                                 [&](std::size_t s) { return fn(stream_seed(rng_seed, s)); });
  double worst = 0.0;
  for (double v : vals) worst = std::max(worst, v);
  return worst;
}

double transpose_fidelity(const Matrix& rho, const Matrix& out) {
  return (rho.transpose() * out).trace().real();
}

bool emits(const RunConfig& cfg, const char* what) { return cfg.emit.count(what) > 0; }

// Finite-dimension checks shared by `finite` and `verify`.
void finite_checks(Report& rep, int d, const RunConfig& cfg, const std::string& prefix) {
  const double tol = cfg.tolerance;
  const double f_opt = optimal_fidelity(d);
  const OptimalTransposeMachine machine = optimal_machine(d);
  const CovariantParams params = optimize_covariant(d);
  const auto [ps, pa] = sym_antisym_projectors(d);
  const std::uint64_t seed = stream_seed(cfg.rng_seed, static_cast<std::uint64_t>(d));

  rep.check(prefix + "covariant_optimum_error", std::abs(params.c_sym - f_opt), tol);
  rep.check(prefix + "covariant_constraint", params.constraint_residual(), tol);
  rep.check(prefix + "kraus_completeness", machine.kraus.completeness_residual(), tol);
  rep.check(prefix + "isometry_residual", machine.isometry.isometry_residual(), tol);
  rep.check(prefix + "choi_from_kraus_residual",
            frobenius_distance(choi_from_kraus(machine.kraus).matrix, machine.choi.matrix), tol);
  rep.check(prefix + "choi_tp_residual", tp_residual(machine.choi), tol);
  rep.check(prefix + "choi_cp_violation", std::max(0.0, -min_choi_eigenvalue(machine.choi)), tol);
  rep.check(prefix + "projector_identities",
            std::max({(ps * ps - ps).norm(), (pa * pa - pa).norm(), (ps * pa).norm(),
                      (ps + pa - identity(d * d)).norm()}),
            tol);
  rep.check(prefix + "covariance_residual",
            transpose_covariance_residual(machine.choi, std::min(cfg.samples, 20), seed), tol);

  rep.check(prefix + "closed_form_vs_choi", max_over_samples(cfg.samples, seed, [&](std::uint64_t s) {
              const Matrix rho = haar_random_state(d, s);
              return frobenius_distance(apply_choi(machine.choi, rho), optimal_map(d, rho));
            }),
            tol);
  rep.check(prefix + "closed_form_vs_kraus", max_over_samples(cfg.samples, seed, [&](std::uint64_t s) {
              const Matrix rho = haar_random_state(d, s);
              return frobenius_distance(machine.kraus.apply(rho), optimal_map(d, rho));
            }),
            tol);
  rep.check(prefix + "anticlone_residual", anticlone_equivalence_check(d, cfg.samples, seed), tol);
  rep.check(prefix + "fidelity_universality", max_over_samples(cfg.samples, seed, [&](std::uint64_t s) {
              const Matrix rho = haar_random_state(d, s);
              return std::abs(transpose_fidelity(rho, optimal_map(d, rho)) - f_opt);
            }),
            tol);
  const double clone_target = (d + 3.0) / (2.0 * (d + 1.0));
  rep.check(prefix + "clone_fidelity_error", max_over_samples(cfg.samples, seed, [&](std::uint64_t s) {
              return std::abs(clone_fidelity(d, haar_random_vector(d, s)) - clone_target);
            }),
            tol);
  rep.check(prefix + "clone_vs_werner", max_over_samples(cfg.samples, seed, [&](std::uint64_t s) {
              const Matrix rho = haar_random_state(d, s);
              return frobenius_distance(machine.isometry.complementary(rho), cloning_map(d, rho));
            }),
            tol);
  rep.check(prefix + "clone_reduced_symmetry", max_over_samples(cfg.samples, seed, [&](std::uint64_t s) {
              const Matrix c = cloning_map(d, haar_random_state(d, s));
              return frobenius_distance(partial_trace(c, d, d, Subsystem::First),
                                        partial_trace(c, d, d, Subsystem::Second));
            }),
            tol);
}

void dilation_checks(Report& rep, const UnitaryDilation& dil, const RunConfig& cfg,
                     const std::string& prefix) {
  const int d = dil.d;
  const double tol = cfg.tolerance;
  const auto n = dil.u.rows();
  const std::uint64_t seed = stream_seed(cfg.rng_seed, 1000u + static_cast<std::uint64_t>(d));
  const StinespringIsometry iso = stinespring(d);
  const auto [ps, pa] = sym_antisym_projectors(d);

  rep.check(prefix + "unitarity", (dil.u.adjoint() * dil.u - Matrix::Identity(n, n)).norm(), tol);
  rep.check(prefix + "co_unitarity", (dil.u * dil.u.adjoint() - Matrix::Identity(n, n)).norm(), tol);
  rep.check(prefix + "ancilla_norm", std::abs(dil.phi.norm() - 1.0), tol);
  rep.check(prefix + "ancilla_antisymmetric_part", (pa * dil.phi).norm(), tol);
  rep.check(prefix + "transpose_agreement", max_over_samples(cfg.samples, seed, [&](std::uint64_t s) {
              const Matrix rho = haar_random_state(d, s);
              return frobenius_distance(transpose_via_dilation(dil, rho), optimal_map(d, rho));
            }),
            tol);
  rep.check(prefix + "clone_agreement", max_over_samples(cfg.samples, seed, [&](std::uint64_t s) {
              const Matrix rho = haar_random_state(d, s);
              return frobenius_distance(clone_via_dilation(dil, rho), cloning_map(d, rho));
            }),
            tol);
  rep.check(prefix + "extends_isometry", max_over_samples(cfg.samples, seed, [&](std::uint64_t s) {
              const Matrix rho = haar_random_state(d, s);
              return frobenius_distance(dilated_output(dil, rho), iso.v * rho * iso.v.adjoint());
            }),
            tol);
}

void golden_checks(Report& rep, const UnitaryDilation& dil, const RunConfig& cfg, const std::string& prefix) {
  const Matrix ref = reference_qubit_unitary();
  const auto mismatched = (dil.u.array() != ref.array()).count();
  rep.check(prefix + "golden_unitary_mismatched_entries", static_cast<double>(mismatched), 0.0);
  Vector phi_ref(4);
  phi_ref << 2.0, 1.0, 1.0, 0.0;
  phi_ref /= std::sqrt(6.0);
  rep.check(prefix + "golden_ancilla_deviation", (dil.phi - phi_ref).cwiseAbs().maxCoeff(),
            std::max(cfg.tolerance, 1e-15));
  rep.values["golden_match"] = mismatched == 0;
}

struct CvOutcome {
  CVSeed seed;
  CVOptimalMap map;
  double direct_fidelity = 0.0;
};

CvOutcome cv_solve(const SeedSpec& spec, const FockSpace& space) {
  CvOutcome out{make_seed(spec, space), {}, 0.0};
  out.map = optimal_chi(out.seed, space);
  out.direct_fidelity = cv_fidelity(out.seed, out.map);
  return out;
}

SeedSpec parse_seed_or_usage(const std::string& text) {
  try {
    return parse_seed(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

}  // namespace

void RunConfig::validate() const {
  if (!(tolerance > 0.0)) throw UsageError("--tolerance must be > 0");
  if (samples < 1) throw UsageError("--samples must be >= 1");
  if (dim < 1) throw UsageError("--dim must be >= 1");
  if (cutoff < 2) throw UsageError("--cutoff must be >= 2");
  if (command == Command::Dilate && dim < 2) throw UsageError("dilate requires --dim >= 2");
  static const std::set<std::string> known{"choi", "kraus", "isometry", "unitary", "ancilla", "chi"};
  for (const auto& e : emit) {
    if (!known.count(e)) throw UsageError("unknown --emit value: " + e);
  }
}

Report run_finite(const RunConfig& cfg) {
  cfg.validate();
  const int d = cfg.dim;
  Report rep;
  rep.command = "finite";
  rep.config = config_echo(cfg);
  rep.fidelity("optimal", optimal_fidelity(d));
  rep.fidelity("covariant_maximum", optimize_covariant(d).fidelity());
  rep.fidelity("clone", (d + 3.0) / (2.0 * (d + 1.0)));
  const auto fids = parallel_map(static_cast<std::size_t>(cfg.samples), [&](std::size_t s) {
    const Matrix rho = haar_random_state(d, stream_seed(cfg.rng_seed, s));
    return transpose_fidelity(rho, optimal_map(d, rho));
  });
  rep.fidelity("sampled_min", *std::min_element(fids.begin(), fids.end()));
  rep.fidelity("sampled_max", *std::max_element(fids.begin(), fids.end()));

  finite_checks(rep, d, cfg, "");

  const OptimalTransposeMachine machine = optimal_machine(d);
  rep.values["kraus_count"] = machine.kraus.operators.size();
  rep.values["c_sym"] = optimize_covariant(d).c_sym;
  rep.values["c_antisym"] = optimize_covariant(d).c_antisym;
  if (emits(cfg, "choi")) rep.payloads["choi"] = matrix_to_json(machine.choi.matrix);
  if (emits(cfg, "kraus")) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& k : machine.kraus.operators) list.push_back(matrix_to_json(k));
    rep.payloads["kraus"] = std::move(list);
  }
  if (emits(cfg, "isometry")) rep.payloads["isometry"] = matrix_to_json(machine.isometry.v);
  rep.finalize();
  return rep;
}

Report run_dilate(const RunConfig& cfg) {
  cfg.validate();
  const int d = cfg.dim;
  Report rep;
  rep.command = "dilate";
  rep.config = config_echo(cfg);
  const UnitaryDilation dil = build_unitary(d);
  rep.fidelity("optimal", optimal_fidelity(d));
  dilation_checks(rep, dil, cfg, "");
  if (d == 2) golden_checks(rep, dil, cfg, "");
  rep.values["unitarity_residual"] = (dil.u.adjoint() * dil.u - Matrix::Identity(dil.u.rows(), dil.u.cols())).norm();
  if (emits(cfg, "unitary")) rep.payloads["unitary"] = matrix_to_json(dil.u);
  if (emits(cfg, "ancilla")) rep.payloads["ancilla"] = vector_to_json(dil.phi);
  if (emits(cfg, "isometry")) rep.payloads["isometry"] = matrix_to_json(stinespring(d).v);
  rep.finalize();
  return rep;
}

Report run_cv(const RunConfig& cfg) {
  cfg.validate();
  const SeedSpec spec = parse_seed_or_usage(cfg.seed_spec);
  const FockSpace space(cfg.cutoff);
  Report rep;
  rep.command = "cv";
  rep.config = config_echo(cfg);

  const CvOutcome cv = cv_solve(spec, space);
  rep.fidelity("optimal", cv.map.fidelity());
  rep.fidelity("direct", cv.direct_fidelity);

  const Matrix red = reduced_seed_operator(cv.seed, space);
  const Matrix out = cv_apply(cv.map, cv.seed.rho);
  const double out_leak = std::abs(1.0 - out.trace().real());
  const double cov = covariance_residual_cv(cv.map, cv.seed, kCovarianceAlpha);

  rep.values["seed"] = seed_label(spec);
  rep.values["lambda_max"] = cv.map.lambda_max;
  rep.values["spectral_gap"] = cv.map.spectral_gap;
  rep.values["seed_leakage"] = cv.seed.leakage;
  rep.values["output_leakage"] = out_leak;
  rep.values["output_cutoff"] = cv.map.out_cutoff;
  rep.values["covariance_alpha"] = kCovarianceAlpha;
  rep.values["covariance_residual"] = cov;

  const double tol = cfg.tolerance;
  rep.check("rayleigh_identity", std::abs(cv.direct_fidelity - cv.map.fidelity()), tol);
  rep.check("chi_eigen_residual", (red * cv.map.chi - cv.map.lambda_max * cv.map.chi).norm(), tol);
  rep.check("tp_low_block", low_block_tp_residual(cv.map, space.cutoff / 2), tol * kScaleCvTrace);
  rep.check("output_positivity_violation",
            std::max(0.0, -herm_eig(out, 1e-8).eigenvalues(out.rows() - 1)), tol * kScaleCvTrace);

  for (const auto& w : cv.map.warnings) rep.warnings.push_back(w);
  if (cv.seed.leakage > space.tol_leak) {
    rep.warnings.push_back("seed leakage " + nlohmann::json(cv.seed.leakage).dump() +
                           " exceeds tol_leak " + nlohmann::json(space.tol_leak).dump());
  }
  if (out_leak > space.tol_leak) {
    rep.warnings.push_back("output leakage " + nlohmann::json(out_leak).dump() + " exceeds tol_leak " +
                           nlohmann::json(space.tol_leak).dump());
  }
  if (emits(cfg, "chi")) rep.payloads["chi"] = vector_to_json(cv.map.chi);
  if (emits(cfg, "choi")) rep.payloads["choi"] = matrix_to_json(cv.map.choi().matrix);
  rep.finalize();
  return rep;
}

Report run_verify(const RunConfig& cfg) {
  cfg.validate();
  Report rep;
  rep.command = "verify";
  rep.config = config_echo(cfg);
  const double tol = cfg.tolerance;

  for (int d = 1; d <= 6; ++d) {
    const std::string prefix = "finite.d" + std::to_string(d) + ".";
    finite_checks(rep, d, cfg, prefix);
    rep.check(prefix + "optimality_bound", max_over_samples(cfg.samples, stream_seed(cfg.rng_seed, 77u + d),
                                                            [&](std::uint64_t s) {
                                                              const ChoiOperator r = random_tp_channel(d, s);
                                                              return std::max(0.0, average_transpose_fidelity(r, 1e-8) -
                                                                                       optimal_fidelity(d));
                                                            }),
              tol);
    rep.fidelity("finite.d" + std::to_string(d), optimal_fidelity(d));
    if (d >= 2) {
      const UnitaryDilation dil = build_unitary(d);
      const std::string dprefix = "dilation.d" + std::to_string(d) + ".";
      dilation_checks(rep, dil, cfg, dprefix);
      if (d == 2) golden_checks(rep, dil, cfg, dprefix);
    }
  }

  const FockSpace space(15);
  const std::vector<std::pair<std::string, SeedSpec>> seeds{
      {"vacuum", parse_seed("vacuum")},
      {"coherent_0.2", parse_seed("coherent:0.2,0")},
      {"squeezed_0.2", parse_seed("squeezed:0.2")},
  };
  for (const auto& [label, spec] : seeds) {
    const CvOutcome cv = cv_solve(spec, space);
    const std::string prefix = "cv." + label + ".";
    rep.fidelity("cv." + label, cv.map.fidelity());
    rep.check(prefix + "rayleigh_identity", std::abs(cv.direct_fidelity - cv.map.fidelity()), tol);
    if (spec.kind != SeedKind::Squeezed) {
      rep.check(prefix + "fidelity_error", std::abs(cv.map.fidelity() - 0.5),
                spec.kind == SeedKind::Vacuum ? tol : tol * kScaleCvCoherent);
    }
    if (spec.kind == SeedKind::Vacuum) {
      rep.check(prefix + "tp_low_block", low_block_tp_residual(cv.map, space.cutoff / 2), tol * kScaleCvTrace);
      rep.check(prefix + "covariance_residual", covariance_residual_cv(cv.map, cv.seed, kCovarianceAlpha),
                tol * kScaleCvCovariance);
    }
  }
  const Matrix bs = beam_splitter(space.cutoff);
  const Matrix num = number_operator(space.cutoff);
  const Matrix total = kron(num, identity(space.cutoff)) + kron(identity(space.cutoff), num);
  rep.check("cv.beam_splitter.unitarity", (bs.adjoint() * bs - identity(static_cast<int>(bs.rows()))).norm(), tol);
  rep.check("cv.beam_splitter.number_conservation", (bs * total - total * bs).norm(), tol);

  rep.finalize();
  return rep;
}

Report run(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Finite: return run_finite(cfg);
    case Command::Dilate: return run_dilate(cfg);
    case Command::Cv: return run_cv(cfg);
    case Command::Verify: return run_verify(cfg);
  }
  throw UsageError("unknown command");
}

int exit_code(const Report& report, const RunConfig& cfg) {
  if (!report.all_pass()) return kExitVerificationFailed;
  if (cfg.strict && !report.warnings.empty()) return kExitVerificationFailed;
  return kExitOk;
}

std::string render(const Report& report, OutputFormat format, bool include_timing) {
  if (format == OutputFormat::Csv) return report.to_csv(include_timing);
  return report.to_json(include_timing).dump(2) + "\n";
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal physical approximations of the transposition map"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::vector<std::string> emit;
  std::string format = "json";
  std::string out_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tolerance", cfg.tolerance, "Residual threshold for checks");
    sub->add_option("--samples", cfg.samples, "Haar samples per sampled check");
    sub->add_option("--rng-seed", cfg.rng_seed, "Base seed for all random streams");
    sub->add_option("--emit", emit, "Matrix payloads to include")
        ->check(CLI::IsMember({"choi", "kraus", "isometry", "unitary", "ancilla", "chi"}));
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", out_path, "Write the report here instead of stdout");
    sub->add_flag("--strict", cfg.strict, "Treat warnings as failures");
    sub->add_option("--dim", cfg.dim, "Hilbert space dimension");
    sub->add_option("--cutoff", cfg.cutoff, "Fock cutoff");
    sub->add_option("--seed", cfg.seed_spec, "CV seed: vacuum | coherent:<re>,<im> | squeezed:<r>");
  };
  auto* finite = app.add_subcommand("finite", "Optimal transposition in finite dimension");
  auto* dilate = app.add_subcommand("dilate", "Unitary dilation and ancilla state");
  auto* cv = app.add_subcommand("cv", "Continuous-variable transposition at a Fock cutoff");
  auto* verify = app.add_subcommand("verify", "Run the full verification suite");
  for (auto* sub : {finite, dilate, cv, verify}) add_common(sub);

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (finite->parsed()) cfg.command = Command::Finite;
  if (dilate->parsed()) cfg.command = Command::Dilate;
  if (cv->parsed()) cfg.command = Command::Cv;
  if (verify->parsed()) cfg.command = Command::Verify;
  cfg.emit = std::set<std::string>(emit.begin(), emit.end());
  cfg.output_format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  if (!out_path.empty()) cfg.output_path = out_path;

  Report report;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    report = run(cfg);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerificationFailed;
  }
  report.wall_clock_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  const std::string text = render(report, cfg.output_format);
  if (cfg.output_path) {
    std::ofstream file(*cfg.output_path);
    if (!file) {
      err << "error: cannot open " << *cfg.output_path << "\n";
      return kExitUsage;
    }
    file << text;
  } else {
    out << text;
  }
  for (const auto& c : report.checks) {
    if (!c.pass) err << "FAILED " << c.name << ": " << c.value << " > " << c.threshold << "\n";
  }
  for (const auto& w : report.warnings) err << "warning: " << w << "\n";
  return exit_code(report, cfg);
}

}  // namespace antimap::cli
