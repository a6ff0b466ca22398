#include "antimap/dilation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace antimap {

namespace {

Eigen::Index triple(int d, int a, int b, int c) {
  return (static_cast<Eigen::Index>(a) * d + b) * d + c;
}

void require_operator(int d, const Matrix& rho, const char* what) {
  if (rho.rows() != d || rho.cols() != d) {
    throw DimensionError(std::string(what) + ": expected a " + std::to_string(d) + "x" +
                         std::to_string(d) + " operator");
  }
}

// Unnormalized +-1 pattern of a family member; the off-diagonal kinds carry
// an overall 1/sqrt2 that callers apply.
Matrix family_pattern(int d, FamilyKind kind, int p, int q) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d) * d * d, d);
  for (int k = 0; k < d; ++k) {
    const int kp = (k + p) % d;
    const int kq = (k + q) % d;
    switch (kind) {
      case FamilyKind::Diagonal:
        m(triple(d, k, kp, kp), kp) = 1.0;
        break;
      case FamilyKind::Symmetric:
        m(triple(d, k, kp, kq), kq) += 1.0;
        m(triple(d, k, kq, kp), kq) += 1.0;
        break;
      case FamilyKind::Antisymmetric:
        m(triple(d, k, kp, kq), kq) += 1.0;
        m(triple(d, k, kq, kp), kq) -= 1.0;
        break;
    }
  }
  return m;
}

void check_family_indices(int d, FamilyKind kind, int p, int q) {
  if (d < 1) throw DimensionError("build_family: d must be >= 1");
  if (p < 0 || p >= d || q < 0 || q >= d) {
    throw std::out_of_range("build_family: index out of range");
  }
  if (kind == FamilyKind::Diagonal && p != q) {
    throw std::invalid_argument("build_family: diagonal members need p == q");
  }
  if (kind != FamilyKind::Diagonal && p >= q) {
    throw std::invalid_argument("build_family: off-diagonal members need p < q");
  }
}

}  // namespace

IsometryFamily build_family(int d, FamilyKind kind, int p, int q) {
  check_family_indices(d, kind, p, q);
  Matrix m = family_pattern(d, kind, p, q);
  if (kind != FamilyKind::Diagonal) m *= 1.0 / std::sqrt(2.0);
  return {d, kind, p, q, std::move(m)};
}

Vector ancilla_state(int d) {
  if (d < 2) throw DimensionError("ancilla_state: d must be >= 2");
  const Matrix ps = sym_antisym_projectors(d).first;
  Vector seed = Vector::Zero(d * d);
  for (int r = 0; r < d; ++r) seed(r) = 1.0;  // |0>|r>
  return std::sqrt(2.0 / (d + 1)) * (ps * seed);
}

UnitaryDilation build_unitary(int d) {
  if (d < 2) throw DimensionError("build_unitary: d must be >= 2");
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d * d;
  Matrix u = Matrix::Zero(n, n);
  // Column (j, a, b) of U is sum over members of V|j> times the ancilla bra
  // coefficient <bra|a b>. The off-diagonal terms carry 1/sqrt2 from the
  // member and 1/sqrt2 from the bra, applied together as an exact 1/2.
  auto add = [&](const Matrix& v, int a, int b, double coeff) {
    for (int j = 0; j < d; ++j) u.col(triple(d, j, a, b)) += coeff * v.col(j);
  };
  for (int p = 0; p < d; ++p) {
    add(family_pattern(d, FamilyKind::Diagonal, p, p), p, p, 1.0);
  }
  for (int p = 0; p < d; ++p) {
    for (int q = p + 1; q < d; ++q) {
      const Matrix vs = family_pattern(d, FamilyKind::Symmetric, p, q);
      const Matrix va = family_pattern(d, FamilyKind::Antisymmetric, p, q);
      add(vs, p, q, 0.5);
      add(vs, q, p, 0.5);
      add(va, p, q, 0.5);
      add(va, q, p, -0.5);
    }
  }
  return {d, std::move(u), ancilla_state(d)};
}

Matrix dilated_output(const UnitaryDilation& dil, const Matrix& rho) {
  require_operator(dil.d, rho, "dilated_output");
  const Matrix anc = dil.phi * dil.phi.adjoint();
  return dil.u * kron(rho, anc) * dil.u.adjoint();
}

Matrix transpose_via_dilation(const UnitaryDilation& dil, const Matrix& rho) {
  const int d = dil.d;
  return partial_trace(dilated_output(dil, rho), d, d * d, Subsystem::Second);
}

Matrix transpose_via_dilation(int d, const Matrix& rho) {
  return transpose_via_dilation(build_unitary(d), rho);
}

Matrix clone_via_dilation(const UnitaryDilation& dil, const Matrix& rho) {
  const int d = dil.d;
  return partial_trace(dilated_output(dil, rho), d, d * d, Subsystem::First);
}

Matrix clone_via_dilation(int d, const Matrix& rho) {
  return clone_via_dilation(build_unitary(d), rho);
}

Matrix reference_qubit_unitary() {
  // Row-major 0/1 pattern, basis |abc> -> 4a + 2b + c.
  static constexpr int kOnes[8] = {0, 5, 6, 7, 3, 2, 1, 4};
  Matrix u = Matrix::Zero(8, 8);
  for (int row = 0; row < 8; ++row) u(row, kOnes[row]) = 1.0;
  return u;
}

}  // namespace antimap
