#include <doctest.h>

#include "antimap/linalg.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace antimap;

TEST_CASE("kron matches the four-loop oracle") {
  for (int seed = 0; seed < 5; ++seed) {
    const Matrix a = oracle::random_matrix(2 + seed % 2, 3, 10 + seed);
    const Matrix b = oracle::random_matrix(3, 1 + seed % 3, 20 + seed);
    CHECK(frobenius_distance(kron(a, b), oracle::kron_loops(a, b)) < 1e-14);
  }
}

TEST_CASE("partial traces of a product state") {
  const Matrix a = haar_random_state(3, 1);
  const Matrix b = haar_random_state(2, 2);
  const Matrix ab = kron(a, b);
  CHECK(frobenius_distance(partial_trace(ab, 3, 2, Subsystem::Second), a) < 1e-14);
  CHECK(frobenius_distance(partial_trace(ab, 3, 2, Subsystem::First), b) < 1e-14);
  CHECK_THROWS_AS(partial_trace(ab, 2, 2, Subsystem::First), DimensionError);
}

TEST_CASE("dket flattening and unflatten are inverse") {
  const Matrix a = oracle::random_matrix(3, 2, 7);
  const BipartiteVector v = dket(a);
  CHECK(v.d1 == 3);
  CHECK(v.d2 == 2);
  // (i,j) -> i*d2 + j
  CHECK(std::abs(v.amplitudes(1 * 2 + 1) - a(1, 1)) < 1e-15);
  CHECK(std::abs(v.amplitudes(2 * 2 + 0) - a(2, 0)) < 1e-15);
  CHECK(frobenius_distance(v.to_matrix(), a) < 1e-15);
  CHECK(frobenius_distance(unflatten(v.amplitudes, 3, 2), a) < 1e-15);
  CHECK_THROWS_AS(unflatten(v.amplitudes, 2, 2), DimensionError);
}

TEST_CASE("swap operator transposes double kets") {
  for (int d = 1; d <= 4; ++d) {
    const Matrix e = swap_operator(d);
    // Tr E = d, summed over basis pairs
    complex tr = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) tr += e(i * d + j, i * d + j);
    CHECK(std::abs(tr - complex(d, 0)) < 1e-14);
    const Matrix a = oracle::random_matrix(d, d, 30 + d);
    const Matrix at = a.transpose();
    CHECK((e * dket(a).amplitudes - dket(at).amplitudes).norm() < 1e-14);
    CHECK(frobenius_distance(e * e, identity(d * d)) < 1e-14);
  }
}

TEST_CASE("symmetric and antisymmetric projectors") {
  for (int d = 1; d <= 5; ++d) {
    const auto [ps, pa] = sym_antisym_projectors(d);
    CHECK(std::abs(ps.trace().real() - d * (d + 1) / 2.0) < 1e-12);
    CHECK(std::abs(pa.trace().real() - d * (d - 1) / 2.0) < 1e-12);
    CHECK(frobenius_distance(ps * ps, ps) < 1e-13);
    CHECK((ps * pa).norm() < 1e-13);
    CHECK(frobenius_distance(ps + pa, identity(d * d)) < 1e-13);
  }
}

TEST_CASE("herm_eig of the qubit swap") {
  const Matrix e = swap_operator(2);
  // det(E - x I) vanishes at +1 and -1, Tr E = 2 fixes multiplicities 3 and 1
  CHECK(std::abs(oracle::char_poly(e, 1.0)) < 1e-14);
  CHECK(std::abs(oracle::char_poly(e, -1.0)) < 1e-14);
  const auto spec = herm_eig(e);
  const double frozen[4] = {1.0, 1.0, 1.0, -1.0};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(spec.eigenvalues(i) - frozen[i]) < 1e-12);
}

TEST_CASE("herm_eig reconstructs random Hermitian matrices") {
  for (int seed = 0; seed < 10; ++seed) {
    const int n = 2 + seed % 5;
    const Matrix a = oracle::random_matrix(n, n, 100 + seed);
    const Matrix h = a + a.adjoint();
    const auto spec = herm_eig(h);
    for (int i = 0; i + 1 < n; ++i) CHECK(spec.eigenvalues(i) >= spec.eigenvalues(i + 1));
    for (int i = 0; i < n; ++i) CHECK(std::abs(oracle::char_poly(h, spec.eigenvalues(i))) < 1e-8 * std::pow(h.norm(), n));
    const Matrix rec = spec.eigenvectors * spec.eigenvalues.cast<complex>().asDiagonal() *
                       spec.eigenvectors.adjoint();
    CHECK(frobenius_distance(rec, h) < 1e-12);
    CHECK(std::abs(spec.eigenvalues.sum() - h.trace().real()) < 1e-12);
  }
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(herm_eig(bad), NotHermitianError);
}

TEST_CASE("matrix_exp agrees with the Taylor oracle") {
  for (int seed = 0; seed < 6; ++seed) {
    const int n = 2 + seed;
    const Matrix g = 2.0 * oracle::random_anti_hermitian(n, 200 + seed);
    const Matrix u = matrix_exp(g);
    CHECK(frobenius_distance(u, oracle::exp_taylor(g)) < 1e-11);
    CHECK(frobenius_distance(u.adjoint() * u, identity(n)) < 1e-12);
  }
}

TEST_CASE("Haar samples") {
  for (int d = 1; d <= 6; ++d) {
    const Matrix u = haar_random_unitary(d, 5 + d);
    CHECK(frobenius_distance(u.adjoint() * u, identity(d)) < 1e-12);
    const Matrix rho = haar_random_state(d, 9 + d);
    CHECK(std::abs(rho.trace() - complex(1.0, 0.0)) < 1e-13);
    CHECK(frobenius_distance(rho * rho, rho) < 1e-13);
  }
  // same seed, same sample
  CHECK(frobenius_distance(haar_random_unitary(4, 77), haar_random_unitary(4, 77)) == 0.0);
  CHECK(frobenius_distance(haar_random_unitary(4, 77), haar_random_unitary(4, 78)) > 0.1);
}

TEST_CASE("Haar first moment is maximally mixed") {
  const int d = 3;
  const int n = 20000;
  Matrix mean = Matrix::Zero(d, d);
  for (int k = 0; k < n; ++k) mean += haar_random_state(d, stream_seed(42, k));
  mean /= static_cast<double>(n);
  CHECK(frobenius_distance(mean, identity(d) / d) < 2e-2);
}

TEST_CASE("trace norm and stream seeds") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 0.5;
  m(1, 1) = -1.5;
  CHECK(std::abs(trace_norm_hermitian(m) - 2.0) < 1e-14);
  CHECK(stream_seed(1, 0) != stream_seed(1, 1));
  CHECK(stream_seed(1, 0) != stream_seed(2, 0));
  CHECK(stream_seed(3, 4) == stream_seed(3, 4));
}
