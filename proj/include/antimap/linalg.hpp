#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace antimap {

using complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Default absolute tolerance for floating point equality checks.
inline constexpr double kDefaultTol = 1e-10;

/// Thrown when operand shapes are inconsistent with the requested operation.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an operation that requires a Hermitian operand receives a
/// matrix that is not Hermitian within tolerance.
class NotHermitianError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Subsystem { First, Second };

/// Vector in H1 (x) H2 whose amplitude at pair (i, j) sits at index i*d2 + j.
struct BipartiteVector {
  int d1 = 0;
  int d2 = 0;
  Vector amplitudes;

  /// Un-flattens back into the d1 x d2 operator it represents.
  Matrix to_matrix() const;
};

/// Eigen-decomposition of a Hermitian matrix, eigenvalues in descending order.
struct HermitianSpectrum {
  RealVector eigenvalues;
  Matrix eigenvectors;  // columns, orthonormal
};

Matrix identity(int d);

Matrix kron(const Matrix& a, const Matrix& b);

/// Partial trace of an operator on H1 (x) H2. Tracing `Subsystem::First`
/// leaves a d2 x d2 operator, tracing `Subsystem::Second` a d1 x d1 one.
Matrix partial_trace(const Matrix& m, int d1, int d2, Subsystem which);

/// Double-ket |A>> = sum_ij A_ij |i>|j>.
BipartiteVector dket(const Matrix& a);

/// Inverse of dket for a raw amplitude vector.
Matrix unflatten(const Vector& amplitudes, int d1, int d2);

/// Swap E on H (x) H: E|phi>|psi> = |psi>|phi>.
Matrix swap_operator(int d);

/// Projectors (P_S, P_A) = ((I + E)/2, (I - E)/2).
std::pair<Matrix, Matrix> sym_antisym_projectors(int d);

/// Rank-1 density matrix of a Haar-random pure state.
Matrix haar_random_state(int d, std::uint64_t rng_seed);

/// Haar-random unit vector in C^d.
Vector haar_random_vector(int d, std::uint64_t rng_seed);

/// Haar-random d x d unitary (QR of a Ginibre matrix with phase fix).
Matrix haar_random_unitary(int d, std::uint64_t rng_seed);

HermitianSpectrum herm_eig(const Matrix& m, double tol = kDefaultTol);

Matrix matrix_exp(const Matrix& m);

bool is_hermitian(const Matrix& m, double tol = kDefaultTol);

/// Frobenius norm of the difference.
double frobenius_distance(const Matrix& a, const Matrix& b);

/// Trace norm of a Hermitian matrix.
double trace_norm_hermitian(const Matrix& m);

/// Deterministic per-sample seed derived from (base seed, sample index), so
/// sampled streams are independent of evaluation order.
std::uint64_t stream_seed(std::uint64_t base, std::uint64_t index);

}  // namespace antimap
