#include "antimap/transpose.hpp"

#include "antimap/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace antimap {

namespace {

void require_dim(int d, const char* what) {
  if (d < 1) throw DimensionError(std::string(what) + ": d must be >= 1");
}

void require_operator(int d, const Matrix& rho, const char* what) {
  if (rho.rows() != d || rho.cols() != d) {
    throw DimensionError(std::string(what) + ": expected a " + std::to_string(d) + "x" +
                         std::to_string(d) + " operator");
  }
}

}  // namespace

double CovariantParams::constraint_residual() const {
  return std::abs(c_sym * (d + 1) / 2.0 + c_antisym * (d - 1) / 2.0 - 1.0);
}

ChoiOperator CovariantParams::choi() const {
  const auto [ps, pa] = sym_antisym_projectors(d);
  return ChoiOperator{d, d, c_sym * ps + c_antisym * pa};
}

CovariantParams covariant_candidate(int d, double c_antisym) {
  require_dim(d, "covariant_candidate");
  if (d == 1) {
    // No antisymmetric subspace; the constraint reads c_S = 1.
    if (c_antisym != 0.0) throw std::domain_error("covariant_candidate: c_A must be 0 for d = 1");
    return {1, 1.0, 0.0};
  }
  const double upper = 2.0 / (d - 1);
  if (c_antisym < 0.0 || c_antisym > upper) {
    throw std::domain_error("covariant_candidate: c_A outside the feasible segment");
  }
  const double c_sym = std::max(0.0, (2.0 - c_antisym * (d - 1)) / (d + 1));
  return {d, c_sym, c_antisym};
}

CovariantParams optimize_covariant(int d) {
  require_dim(d, "optimize_covariant");
  // The fidelity c_S is linear on the one-dimensional feasible segment, so
  // its maximum sits on one of the two endpoints.
  std::vector<CovariantParams> vertices{covariant_candidate(d, 0.0)};
  if (d > 1) vertices.push_back(covariant_candidate(d, 2.0 / (d - 1)));
  const auto best = std::max_element(
      vertices.begin(), vertices.end(),
      [](const CovariantParams& a, const CovariantParams& b) { return a.fidelity() < b.fidelity(); });
  const CovariantParams opt = *best;
  if (std::abs(opt.c_sym - 2.0 / (d + 1)) > 1e-14 || opt.c_antisym != 0.0) {
    throw std::logic_error("optimize_covariant: optimum deviates from c_S = 2/(d+1), c_A = 0");
  }
  return opt;
}

Matrix optimal_map(int d, const Matrix& rho, double tol) {
  require_dim(d, "optimal_map");
  require_operator(d, rho, "optimal_map");
  if (std::abs(rho.trace() - 1.0) > tol) {
    throw std::invalid_argument("optimal_map: input must have unit trace");
  }
  return (identity(d) + rho.transpose()) / (d + 1.0);
}

double optimal_fidelity(int d) {
  require_dim(d, "optimal_fidelity");
  return 2.0 / (d + 1.0);
}

ChoiOperator optimal_choi(int d) {
  require_dim(d, "optimal_choi");
  return ChoiOperator{d, d, (2.0 / (d + 1.0)) * sym_antisym_projectors(d).first};
}

KrausSet kraus_set(int d) {
  require_dim(d, "kraus_set");
  const double norm = 1.0 / std::sqrt(2.0 * (d + 1));
  KrausSet k;
  k.operators.reserve(static_cast<std::size_t>(d) * d);
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      Matrix op = Matrix::Zero(d, d);
      op(m, n) += norm;
      op(n, m) += norm;
      k.operators.push_back(std::move(op));
    }
  }
  return k;
}

StinespringIsometry stinespring(int d) {
  require_dim(d, "stinespring");
  const KrausSet k = kraus_set(d);
  const int anc = d * d;
  StinespringIsometry iso;
  iso.dim_out = d;
  iso.anc_dims = {d, d};
  iso.v = Matrix::Zero(static_cast<Eigen::Index>(d) * anc, d);
  for (int mn = 0; mn < anc; ++mn) {
    const Matrix& op = k.operators[mn];
    for (int i = 0; i < d; ++i) {
      iso.v.row(static_cast<Eigen::Index>(i) * anc + mn) = op.row(i);
    }
  }
  return iso;
}

Matrix cloning_map(int d, const Matrix& rho) {
  require_dim(d, "cloning_map");
  require_operator(d, rho, "cloning_map");
  const Matrix ps = sym_antisym_projectors(d).first;
  return (2.0 / (d + 1.0)) * ps * kron(identity(d), rho) * ps;
}

double clone_fidelity(int d, const Vector& psi) {
  if (psi.size() != d) throw DimensionError("clone_fidelity: state dimension mismatch");
  const Matrix rho = psi * psi.adjoint();
  const Matrix single = partial_trace(cloning_map(d, rho), d, d, Subsystem::Second);
  return (psi.adjoint() * single * psi)(0, 0).real();
}

double anticlone_equivalence_check(int d, int samples, std::uint64_t rng_seed) {
  require_dim(d, "anticlone_equivalence_check");
  const StinespringIsometry iso = stinespring(d);
  const auto residuals =
      parallel_map(static_cast<std::size_t>(std::max(samples, 0)), [&](std::size_t s) {
        const Matrix rho = haar_random_state(d, stream_seed(rng_seed, s));
        return (optimal_map(d, rho) - iso.apply(rho)).norm();
      });
  double worst = 0.0;
  for (double r : residuals) worst = std::max(worst, r);
  return worst;
}

OptimalTransposeMachine optimal_machine(int d) {
  require_dim(d, "optimal_machine");
  return {d, optimal_choi(d), kraus_set(d), stinespring(d)};
}

}  // namespace antimap
