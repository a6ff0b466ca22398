#pragma once

#include "antimap/linalg.hpp"

#include <cstdint>
#include <vector>

namespace antimap {

/// Thrown when a Choi operator has an eigenvalue below -tol.
class NotCompletelyPositiveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an operation requires a trace-preserving channel.
class NotTracePreservingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Choi operator R = (M (x) I)|I>><<I| on H_out (x) H_in. The map acts as
/// M(rho) = Tr_2[(I (x) rho^T) R].
struct ChoiOperator {
  int dim_in = 0;
  int dim_out = 0;
  Matrix matrix;
};

/// Kraus operators, each dim_out x dim_in.
struct KrausSet {
  std::vector<Matrix> operators;

  int dim_in() const { return operators.empty() ? 0 : static_cast<int>(operators.front().cols()); }
  int dim_out() const { return operators.empty() ? 0 : static_cast<int>(operators.front().rows()); }

  /// || sum_k K_k^dag K_k - I ||_F
  double completeness_residual() const;

  /// sum_k K_k rho K_k^dag
  Matrix apply(const Matrix& rho) const;
};

/// Isometry V: H_in -> H_out (x) H_anc_1 (x) ... with the ancilla factors in
/// `anc_dims` (output system slowest in the flattened index).
struct StinespringIsometry {
  Matrix v;
  int dim_out = 0;
  std::vector<int> anc_dims;

  int dim_in() const { return static_cast<int>(v.cols()); }
  int anc_dim() const;

  /// || V^dag V - I ||_F
  double isometry_residual() const;

  /// Tr_anc[V rho V^dag]
  Matrix apply(const Matrix& rho) const;

  /// Tr_out[V rho V^dag], an operator on the ancilla.
  Matrix complementary(const Matrix& rho) const;
};

ChoiOperator choi_from_kraus(const KrausSet& k);

/// Kraus operators from the spectral decomposition of the Choi operator,
/// one per eigenvalue above `tol`.
KrausSet kraus_from_choi(const ChoiOperator& r, double tol = kDefaultTol);

Matrix apply_choi(const ChoiOperator& r, const Matrix& rho);

bool is_cp(const ChoiOperator& r, double tol = kDefaultTol);
bool is_tp(const ChoiOperator& r, double tol = kDefaultTol);

/// Smallest eigenvalue of the Choi matrix.
double min_choi_eigenvalue(const ChoiOperator& r);

/// || Tr_1[R] - I ||_F
double tp_residual(const ChoiOperator& r);

/// Largest || (U* (x) U*) R (U^T (x) U^T) - R ||_F over Haar-random U.
double transpose_covariance_residual(const ChoiOperator& r, int samples,
                                     std::uint64_t rng_seed);

/// Haar average of Tr[rho^T M(rho)] over pure states,
/// 2/(d(d+1)) Tr[R P_S].
double average_transpose_fidelity(const ChoiOperator& r, double tol = kDefaultTol);

/// Random trace-preserving channel on C^d, obtained by tracing out a d^2
/// dimensional ancilla from a Haar-random isometry.
ChoiOperator random_tp_channel(int d, std::uint64_t rng_seed);

}  // namespace antimap
