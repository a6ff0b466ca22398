#pragma once

#include "antimap/channels.hpp"
#include "antimap/linalg.hpp"

#include <cstdint>

namespace antimap {

/// Parameters of an SU(d)-covariant transposition candidate
/// R = c_S P_S + c_A P_A. Trace preservation forces
/// c_S (d+1)/2 + c_A (d-1)/2 = 1.
struct CovariantParams {
  int d = 0;
  double c_sym = 0.0;
  double c_antisym = 0.0;

  /// Deviation from the trace-preservation constraint.
  double constraint_residual() const;

  /// Pure-state transposition fidelity of the candidate (equals c_S).
  double fidelity() const { return c_sym; }

  ChoiOperator choi() const;
};

/// Feasible covariant candidate for a given c_A, or throws if c_A lies
/// outside [0, 2/(d-1)]. For d = 1 only c_A = 0 is accepted.
CovariantParams covariant_candidate(int d, double c_antisym);

/// Maximizes the fidelity over the feasible covariant segment.
CovariantParams optimize_covariant(int d);

/// (I + rho^T)/(d + 1)
Matrix optimal_map(int d, const Matrix& rho, double tol = kDefaultTol);

/// 2/(d + 1)
double optimal_fidelity(int d);

/// The optimal Choi operator (2/(d+1)) P_S.
ChoiOperator optimal_choi(int d);

/// M_mn = (|m><n| + |n><m|)/sqrt(2(d+1)) over all ordered pairs (m, n),
/// stored at index m*d + n.
KrausSet kraus_set(int d);

/// V = sum_mn M_mn (x) |m n>, a d^3 x d isometry with ancilla dims {d, d}.
StinespringIsometry stinespring(int d);

/// Werner form of the optimal 1 -> 2 cloner, (2/(d+1)) P_S (I (x) rho) P_S.
Matrix cloning_map(int d, const Matrix& rho);

/// <psi| Tr_2[C(|psi><psi|)] |psi>, fidelity of the first clone.
double clone_fidelity(int d, const Vector& psi);

/// Largest || (I + rho^T)/(d+1) - Tr_23[V rho V^dag] ||_F over Haar samples.
double anticlone_equivalence_check(int d, int samples, std::uint64_t rng_seed);

/// Bundle of the optimal machine in all three representations.
struct OptimalTransposeMachine {
  int d = 0;
  ChoiOperator choi;
  KrausSet kraus;
  StinespringIsometry isometry;
};

OptimalTransposeMachine optimal_machine(int d);

}  // namespace antimap
