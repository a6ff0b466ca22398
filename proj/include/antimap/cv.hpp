#pragma once

#include "antimap/channels.hpp"
#include "antimap/linalg.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace antimap {

/// Thrown when a Fock cutoff is too small for the requested operator.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Truncated single-mode Fock space |0> ... |N-1>.
///
/// Maps built in this context take inputs on the first `cutoff` levels and
/// produce outputs on `output_cutoff()` levels. The optimal CV map adds about
/// one photon of noise, so its output needs more room than its input for
/// trace preservation to converge.
struct FockSpace {
  int cutoff = 20;
  double tol_leak = 1e-6;
  int out_cutoff = 0;  // 0 selects 3 * cutoff

  explicit FockSpace(int n, double leak = 1e-6, int out = 0);

  int output_cutoff() const { return out_cutoff > 0 ? out_cutoff : 3 * cutoff; }
};

/// (a, a^dag) truncated to N levels.
std::pair<Matrix, Matrix> ladder(int n);

/// a^dag a on N levels.
Matrix number_operator(int n);

/// exp(alpha a^dag - alpha* a) with the generator truncated to N levels.
Matrix displacement(complex alpha, int n);

/// Same, but throws TruncationError when the coherent-state leakage exceeds
/// the space's tolerance.
Matrix displacement(complex alpha, const FockSpace& space);

/// Weight of the ideal coherent state |alpha> above the cutoff,
/// 1 - sum_{n<N} e^{-|alpha|^2} |alpha|^{2n}/n!.
double coherent_leakage(complex alpha, int n);

/// exp((r/2)(a^2 - a^dag^2)) with the generator truncated to N levels.
Matrix squeezing(double r, int n);
Matrix squeezing(double r, const FockSpace& space);

/// Weight of the ideal squeezed vacuum above the cutoff.
double squeezed_vacuum_leakage(double r, int n);

/// Two-mode 50/50 beam splitter exp[pi/4 (a^dag b - a b^dag)] with the
/// generator truncated to N levels per mode (N^2 x N^2, basis |i>|j> at
/// i*N + j).
Matrix beam_splitter(int n);

/// Photon-number resolved beam splitter. The generator preserves the total
/// photon number n, so the operator splits into exact (n+1) x (n+1) blocks
/// on the states |k, n-k>, k = 0..n. Blocks are computed on demand.
class BeamSplitter {
 public:
  BeamSplitter() = default;

  /// Block for total photon number n, indexed by the first-mode count k.
  const Eigen::MatrixXd& block(int n);

  /// Applies V (or V^dag) to a two-mode vector given on an na x nb grid and
  /// returns the result on an out_na x out_nb grid. Components outside the
  /// output grid are dropped.
  Vector apply(const Vector& psi, int na, int nb, int out_na, int out_nb, bool adjoint = false);

  /// V |a_index>|b_index> restricted to the out_na x out_nb grid.
  Vector apply_basis(int a_index, int b_index, int out_na, int out_nb, bool adjoint = false);

 private:
  std::map<int, Eigen::MatrixXd> blocks_;
};

enum class SeedKind { Vacuum, Coherent, Squeezed, Custom };

struct SeedSpec {
  SeedKind kind = SeedKind::Vacuum;
  complex alpha{0.0, 0.0};
  double r = 0.0;
};

/// Parses `vacuum`, `coherent:<re>,<im>` or `squeezed:<r>`. Throws
/// std::invalid_argument on anything else.
SeedSpec parse_seed(const std::string& spec);

std::string seed_label(const SeedSpec& spec);

/// Reference state whose displacement orbit the CV map serves.
struct CVSeed {
  SeedSpec spec;
  Matrix rho;            // cutoff x cutoff, Fock basis
  double leakage = 0.0;  // ideal-state weight lost to truncation
};

CVSeed make_seed(const SeedSpec& spec, const FockSpace& space);

/// Wraps an arbitrary density matrix as a seed.
CVSeed custom_seed(const Matrix& rho);

/// Tr_2[V^dag (rho^T (x) rho^T) V], kept on the first `cutoff` levels of
/// mode 1. Mode 2 is traced exactly.
Matrix reduced_seed_operator(const CVSeed& seed, const FockSpace& space);

/// The optimal CV transposition map for a seed, R = 1/2 V(|chi><chi| (x) I)V^dag,
/// stored through its Kraus operators: K_m is V|chi>|m> / sqrt2 read as an
/// (output_cutoff x cutoff) operator, so that R = sum_m |K_m>><<K_m|.
struct CVOptimalMap {
  int cutoff = 0;
  int out_cutoff = 0;
  Vector chi;
  double lambda_max = 0.0;
  double spectral_gap = 0.0;
  std::vector<std::string> warnings;
  KrausSet kraus;

  /// 1/2 lambda_max, the fidelity reached on the seed's orbit.
  double fidelity() const { return 0.5 * lambda_max; }

  /// Choi operator on (output mode) x (input mode), assembled on demand.
  ChoiOperator choi() const;
};

/// Builds the covariant map for an arbitrary unit vector chi on the input
/// cutoff. Used for the optimum and for suboptimal candidates alike.
CVOptimalMap map_from_chi(const Vector& chi, const FockSpace& space);

/// Top eigenvector of the reduced seed operator and the map it generates.
/// A degenerate top eigenvalue is resolved by projecting the lowest Fock
/// state with nonzero overlap onto the top eigenspace, and noted in
/// `warnings`.
CVOptimalMap optimal_chi(const CVSeed& seed, const FockSpace& space,
                         double degeneracy_tol = 1e-9);

/// Tr[(rho^T (x) rho^T) R] evaluated through the Choi operator.
double cv_fidelity(const CVSeed& seed, const CVOptimalMap& map);

/// M(sigma) = 1/2 Tr_2[(I (x) sigma^T) V(|chi><chi| (x) I)V^dag]; returns an
/// output_cutoff x output_cutoff operator.
Matrix cv_apply(const CVOptimalMap& map, const Matrix& sigma);

/// Trace norm of M(D rho D^dag) - D* M(rho) D^T at the given seed.
double covariance_residual_cv(const CVOptimalMap& map, const CVSeed& seed, complex alpha);

/// || Tr_1[R] - I ||_F restricted to input levels below n_low.
double low_block_tp_residual(const CVOptimalMap& map, int n_low);

}  // namespace antimap
