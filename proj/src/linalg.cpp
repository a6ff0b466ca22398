#include "antimap/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <random>

namespace antimap {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": matrix must be square, got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
}

Vector gaussian_vector(int d, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(d);
  for (int i = 0; i < d; ++i) {
    const double re = normal(gen);
    const double im = normal(gen);
    v(i) = complex(re, im);
  }
  return v;
}

}  // namespace

Matrix BipartiteVector::to_matrix() const { return unflatten(amplitudes, d1, d2); }

Matrix identity(int d) { return Matrix::Identity(d, d); }

Matrix kron(const Matrix& a, const Matrix& b) {
  const Eigen::Index rb = b.rows();
  const Eigen::Index cb = b.cols();
  Matrix out(a.rows() * rb, a.cols() * cb);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& m, int d1, int d2, Subsystem which) {
  const Eigen::Index n = static_cast<Eigen::Index>(d1) * d2;
  if (d1 < 1 || d2 < 1 || m.rows() != n || m.cols() != n) {
    throw DimensionError("partial_trace: expected a " + std::to_string(n) +
                         "x" + std::to_string(n) + " matrix, got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
  if (which == Subsystem::First) {
    Matrix out = Matrix::Zero(d2, d2);
    for (int k = 0; k < d1; ++k) {
      out += m.block(static_cast<Eigen::Index>(k) * d2,
                     static_cast<Eigen::Index>(k) * d2, d2, d2);
    }
    return out;
  }
  Matrix out(d1, d1);
  for (int i = 0; i < d1; ++i) {
    for (int j = 0; j < d1; ++j) {
      out(i, j) = m.block(static_cast<Eigen::Index>(i) * d2,
                          static_cast<Eigen::Index>(j) * d2, d2, d2)
                      .trace();
    }
  }
  return out;
}

BipartiteVector dket(const Matrix& a) {
  BipartiteVector v;
  v.d1 = static_cast<int>(a.rows());
  v.d2 = static_cast<int>(a.cols());
  v.amplitudes.resize(a.size());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      v.amplitudes(i * a.cols() + j) = a(i, j);
    }
  }
  return v;
}

Matrix unflatten(const Vector& amplitudes, int d1, int d2) {
  if (amplitudes.size() != static_cast<Eigen::Index>(d1) * d2) {
    throw DimensionError("unflatten: amplitude count does not match d1*d2");
  }
  Matrix a(d1, d2);
  for (int i = 0; i < d1; ++i) {
    for (int j = 0; j < d2; ++j) {
      a(i, j) = amplitudes(static_cast<Eigen::Index>(i) * d2 + j);
    }
  }
  return a;
}

Matrix swap_operator(int d) {
  if (d < 1) throw DimensionError("swap_operator: d must be >= 1");
  Matrix e = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      e(j * d + i, i * d + j) = 1.0;
    }
  }
  return e;
}

std::pair<Matrix, Matrix> sym_antisym_projectors(int d) {
  const Matrix e = swap_operator(d);
  const Matrix id = identity(d * d);
  return {0.5 * (id + e), 0.5 * (id - e)};
}

Vector haar_random_vector(int d, std::uint64_t rng_seed) {
  if (d < 1) throw DimensionError("haar_random_vector: d must be >= 1");
  std::mt19937_64 gen(rng_seed);
  Vector v = gaussian_vector(d, gen);
  // A Gaussian draw is nonzero with probability one.
  return v / v.norm();
}

Matrix haar_random_state(int d, std::uint64_t rng_seed) {
  const Vector v = haar_random_vector(d, rng_seed);
  return v * v.adjoint();
}

Matrix haar_random_unitary(int d, std::uint64_t rng_seed) {
  if (d < 1) throw DimensionError("haar_random_unitary: d must be >= 1");
  std::mt19937_64 gen(rng_seed);
  Matrix z(d, d);
  for (int j = 0; j < d; ++j) z.col(j) = gaussian_vector(d, gen);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * identity(d);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phases of R's diagonal so Q is Haar distributed.
  for (int j = 0; j < d; ++j) {
    const complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0.0) q.col(j) *= rjj / mag;
  }
  return q;
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).norm() <= tol;
}

HermitianSpectrum herm_eig(const Matrix& m, double tol) {
  require_square(m, "herm_eig");
  const double scale = std::max(1.0, m.norm());
  if (!is_hermitian(m, tol * scale)) {
    throw NotHermitianError("herm_eig: input is not Hermitian within tolerance");
  }
  const Matrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm);
  HermitianSpectrum spec;
  spec.eigenvalues = solver.eigenvalues().reverse();
  spec.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return spec;
}

Matrix matrix_exp(const Matrix& m) {
  require_square(m, "matrix_exp");
  return m.exp();
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("frobenius_distance: shape mismatch");
  }
  return (a - b).norm();
}

double trace_norm_hermitian(const Matrix& m) {
  return herm_eig(m, 1e-8).eigenvalues.cwiseAbs().sum();
}

std::uint64_t stream_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 over a combination of both words.
  std::uint64_t z = base * 0x9E3779B97F4A7C15ULL + index + 0x632BE59BD9B4E019ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace antimap
