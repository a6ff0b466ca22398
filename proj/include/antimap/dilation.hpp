#pragma once

#include "antimap/linalg.hpp"

namespace antimap {

/// Which of the three isometry families a member belongs to.
enum class FamilyKind { Diagonal, Symmetric, Antisymmetric };

/// One member of the isometry families used to dilate the optimal
/// transposition. Each member maps H into H (x) H (x) H (a d^3 x d matrix),
/// with basis |a b c> at index a*d^2 + b*d + c and k (+) p = (k + p) mod d.
///
///   Diagonal:       V_pp    = sum_k |k, k+p, k+p><k+p|
///   Symmetric:      V^S_pq  = 1/sqrt2 sum_k |k>(|k+p, k+q> + |k+q, k+p>)<k+q|
///   Antisymmetric:  V^A_pq  = 1/sqrt2 sum_k |k>(|k+p, k+q> - |k+q, k+p>)<k+q|
///
/// Off-diagonal kinds require p < q.
struct IsometryFamily {
  int d = 0;
  FamilyKind kind = FamilyKind::Diagonal;
  int p = 0;
  int q = 0;
  Matrix matrix;
};

IsometryFamily build_family(int d, FamilyKind kind, int p, int q);

/// Unitary on H^(x)3 together with the fixed ancilla state that realizes
/// the optimal transposition on system 1 and the optimal 1 -> 2 cloner on
/// systems 2 and 3.
struct UnitaryDilation {
  int d = 0;
  Matrix u;    // d^3 x d^3
  Vector phi;  // ancilla on H (x) H
};

/// Totally symmetric ancilla sqrt(2/(d+1)) P_S sum_r |0>|r>.
Vector ancilla_state(int d);

/// U = sum_p V_pp (x) <pp| + sum_{p<q} V^S_pq (x) (<pq| + <qp|)/sqrt2
///                        + sum_{p<q} V^A_pq (x) (<pq| - <qp|)/sqrt2,
/// the bras acting on the two ancilla systems. Requires d >= 2.
UnitaryDilation build_unitary(int d);

/// U (rho (x) |phi><phi|) U^dag on H^(x)3.
Matrix dilated_output(const UnitaryDilation& dil, const Matrix& rho);

/// Tr_23 of the dilated output.
Matrix transpose_via_dilation(const UnitaryDilation& dil, const Matrix& rho);
Matrix transpose_via_dilation(int d, const Matrix& rho);

/// Tr_1 of the dilated output, an operator on H (x) H.
Matrix clone_via_dilation(const UnitaryDilation& dil, const Matrix& rho);
Matrix clone_via_dilation(int d, const Matrix& rho);

/// The d = 2 unitary in its published 0/1 form, for golden comparisons.
Matrix reference_qubit_unitary();

}  // namespace antimap
