#include "antimap/channels.hpp"

#include "antimap/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace antimap {

namespace {

void check_choi_shape(const ChoiOperator& r) {
  const Eigen::Index n = static_cast<Eigen::Index>(r.dim_in) * r.dim_out;
  if (r.dim_in < 1 || r.dim_out < 1 || r.matrix.rows() != n || r.matrix.cols() != n) {
    throw DimensionError("ChoiOperator: matrix shape does not match dim_out*dim_in");
  }
}

double cp_tolerance(const ChoiOperator& r, double tol) {
  return tol * std::max(r.dim_in, r.dim_out);
}

}  // namespace

double KrausSet::completeness_residual() const {
  const int d = dim_in();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& k : operators) sum += k.adjoint() * k;
  return (sum - identity(d)).norm();
}

Matrix KrausSet::apply(const Matrix& rho) const {
  if (operators.empty()) throw DimensionError("KrausSet::apply: empty Kraus set");
  if (rho.rows() != dim_in() || rho.cols() != dim_in()) {
    throw DimensionError("KrausSet::apply: input dimension mismatch");
  }
  Matrix out = Matrix::Zero(dim_out(), dim_out());
  for (const auto& k : operators) out += k * rho * k.adjoint();
  return out;
}

int StinespringIsometry::anc_dim() const {
  return std::accumulate(anc_dims.begin(), anc_dims.end(), 1, std::multiplies<>());
}

double StinespringIsometry::isometry_residual() const {
  return (v.adjoint() * v - identity(dim_in())).norm();
}

Matrix StinespringIsometry::apply(const Matrix& rho) const {
  const Matrix big = v * rho * v.adjoint();
  return partial_trace(big, dim_out, anc_dim(), Subsystem::Second);
}

Matrix StinespringIsometry::complementary(const Matrix& rho) const {
  const Matrix big = v * rho * v.adjoint();
  return partial_trace(big, dim_out, anc_dim(), Subsystem::First);
}

ChoiOperator choi_from_kraus(const KrausSet& k) {
  if (k.operators.empty()) throw DimensionError("choi_from_kraus: empty Kraus set");
  const auto rows = k.operators.front().rows();
  const auto cols = k.operators.front().cols();
  ChoiOperator r;
  r.dim_out = static_cast<int>(rows);
  r.dim_in = static_cast<int>(cols);
  r.matrix = Matrix::Zero(rows * cols, rows * cols);
  for (const auto& op : k.operators) {
    if (op.rows() != rows || op.cols() != cols) {
      throw DimensionError("choi_from_kraus: Kraus operators have inconsistent shapes");
    }
    const Vector v = dket(op).amplitudes;
    r.matrix.noalias() += v * v.adjoint();
  }
  return r;
}

KrausSet kraus_from_choi(const ChoiOperator& r, double tol) {
  check_choi_shape(r);
  const HermitianSpectrum spec = herm_eig(r.matrix, tol);
  const double lmin = spec.eigenvalues(spec.eigenvalues.size() - 1);
  if (lmin < -cp_tolerance(r, tol)) {
    throw NotCompletelyPositiveError("kraus_from_choi: Choi operator has eigenvalue " +
                                     std::to_string(lmin));
  }
  KrausSet out;
  for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
    const double lambda = spec.eigenvalues(k);
    if (lambda <= tol) break;
    out.operators.push_back(std::sqrt(lambda) *
                            unflatten(spec.eigenvectors.col(k), r.dim_out, r.dim_in));
  }
  if (out.operators.empty()) {
    out.operators.push_back(Matrix::Zero(r.dim_out, r.dim_in));
  }
  return out;
}

Matrix apply_choi(const ChoiOperator& r, const Matrix& rho) {
  check_choi_shape(r);
  if (rho.rows() != r.dim_in || rho.cols() != r.dim_in) {
    throw DimensionError("apply_choi: input must be dim_in x dim_in");
  }
  const int din = r.dim_in;
  const int dout = r.dim_out;
  // out[i, i'] = sum_{j,k} rho[k, j] R[(i, k), (i', j)]
  Matrix out = Matrix::Zero(dout, dout);
  for (int i = 0; i < dout; ++i) {
    for (int ip = 0; ip < dout; ++ip) {
      const auto block = r.matrix.block(static_cast<Eigen::Index>(i) * din,
                                        static_cast<Eigen::Index>(ip) * din, din, din);
      out(i, ip) = (rho.array() * block.array()).sum();
    }
  }
  return out;
}

double min_choi_eigenvalue(const ChoiOperator& r) {
  check_choi_shape(r);
  const auto spec = herm_eig(r.matrix, 1e-8);
  return spec.eigenvalues(spec.eigenvalues.size() - 1);
}

bool is_cp(const ChoiOperator& r, double tol) {
  return min_choi_eigenvalue(r) >= -cp_tolerance(r, tol);
}

double tp_residual(const ChoiOperator& r) {
  check_choi_shape(r);
  const Matrix reduced = partial_trace(r.matrix, r.dim_out, r.dim_in, Subsystem::First);
  return (reduced - identity(r.dim_in)).norm();
}

bool is_tp(const ChoiOperator& r, double tol) { return tp_residual(r) <= tol; }

double transpose_covariance_residual(const ChoiOperator& r, int samples,
                                     std::uint64_t rng_seed) {
  check_choi_shape(r);
  if (r.dim_in != r.dim_out) {
    throw DimensionError("transpose_covariance_residual: map must be on a single space");
  }
  const int d = r.dim_in;
  const auto residuals = parallel_map(static_cast<std::size_t>(std::max(samples, 0)),
                                      [&](std::size_t s) {
                                        const Matrix u = haar_random_unitary(d, stream_seed(rng_seed, s));
                                        const Matrix uc = u.conjugate();
                                        const Matrix w = kron(uc, uc);
                                        return (w * r.matrix * w.adjoint() - r.matrix).norm();
                                      });
  double worst = 0.0;
  for (double v : residuals) worst = std::max(worst, v);
  return worst;
}

double average_transpose_fidelity(const ChoiOperator& r, double tol) {
  check_choi_shape(r);
  if (r.dim_in != r.dim_out) {
    throw DimensionError("average_transpose_fidelity: map must be on a single space");
  }
  if (!is_tp(r, tol)) {
    throw NotTracePreservingError("average_transpose_fidelity: channel is not trace preserving");
  }
  const int d = r.dim_in;
  const Matrix ps = sym_antisym_projectors(d).first;
  const double overlap = (r.matrix * ps).trace().real();
  return 2.0 / (d * (d + 1.0)) * overlap;
}

ChoiOperator random_tp_channel(int d, std::uint64_t rng_seed) {
  if (d < 1) throw DimensionError("random_tp_channel: d must be >= 1");
  const int anc = d * d;
  const Matrix u = haar_random_unitary(d * anc, rng_seed);
  const Matrix v = u.leftCols(d);
  KrausSet k;
  k.operators.reserve(anc);
  for (int a = 0; a < anc; ++a) {
    Matrix op(d, d);
    for (int i = 0; i < d; ++i) op.row(i) = v.row(static_cast<Eigen::Index>(i) * anc + a);
    k.operators.push_back(std::move(op));
  }
  return choi_from_kraus(k);
}

}  // namespace antimap
