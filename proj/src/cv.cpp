#include "antimap/cv.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace antimap {

namespace {

void require_cutoff(int n, const char* what) {
  if (n < 2) throw DimensionError(std::string(what) + ": cutoff must be >= 2");
}

double parse_double(const std::string& text, const std::string& spec) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw std::invalid_argument("invalid seed specification: " + spec);
  }
  return value;
}

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

FockSpace::FockSpace(int n, double leak, int out) : cutoff(n), tol_leak(leak), out_cutoff(out) {
  require_cutoff(n, "FockSpace");
  if (!(leak > 0.0)) throw std::invalid_argument("FockSpace: tol_leak must be positive");
  if (out != 0 && out < n) {
    throw DimensionError("FockSpace: output cutoff must not be smaller than the input cutoff");
  }
}

std::pair<Matrix, Matrix> ladder(int n) {
  require_cutoff(n, "ladder");
  Matrix a = Matrix::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  Matrix a_dag = a.adjoint();
  return {std::move(a), std::move(a_dag)};
}

Matrix number_operator(int n) {
  require_cutoff(n, "number_operator");
  Matrix num = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) num(k, k) = k;
  return num;
}

Matrix displacement(complex alpha, int n) {
  const auto [a, a_dag] = ladder(n);
  return matrix_exp(alpha * a_dag - std::conj(alpha) * a);
}

Matrix displacement(complex alpha, const FockSpace& space) {
  const double leak = coherent_leakage(alpha, space.cutoff);
  if (leak > space.tol_leak) {
    throw TruncationError("displacement: cutoff " + std::to_string(space.cutoff) +
                          " leaks " + std::to_string(leak) + " of the coherent state");
  }
  return displacement(alpha, space.cutoff);
}

double coherent_leakage(complex alpha, int n) {
  const double mean = std::norm(alpha);
  if (mean == 0.0) return 0.0;
  // Poisson tail, summed upward from the cutoff until terms stop mattering.
  double tail = 0.0;
  for (int k = n;; ++k) {
    const double term = std::exp(-mean + k * std::log(mean) - std::lgamma(k + 1.0));
    tail += term;
    if (k > mean && term < 1e-18 * std::max(tail, 1e-300)) break;
    if (k > n + 100000) break;
  }
  return tail;
}

Matrix squeezing(double r, int n) {
  const auto [a, a_dag] = ladder(n);
  return matrix_exp((r / 2.0) * (a * a - a_dag * a_dag));
}

Matrix squeezing(double r, const FockSpace& space) {
  const double leak = squeezed_vacuum_leakage(r, space.cutoff);
  if (leak > space.tol_leak) {
    throw TruncationError("squeezing: cutoff " + std::to_string(space.cutoff) + " leaks " +
                          std::to_string(leak) + " of the squeezed vacuum");
  }
  return squeezing(r, space.cutoff);
}

double squeezed_vacuum_leakage(double r, int n) {
  if (r == 0.0) return 0.0;
  // |<2k|S(r)|0>|^2 = tanh(r)^{2k} (2k)! / (4^k (k!)^2) / cosh(r)
  const double t2 = std::tanh(r) * std::tanh(r);
  double tail = 0.0;
  for (int k = (n + 1) / 2;; ++k) {
    const double log_term = k * std::log(t2) + std::lgamma(2.0 * k + 1.0) -
                            k * std::log(4.0) - 2.0 * std::lgamma(k + 1.0) -
                            std::log(std::cosh(r));
    const double term = std::exp(log_term);
    tail += term;
    if (term < 1e-18 * std::max(tail, 1e-300)) break;
    if (k > n + 1000000) break;
  }
  return tail;
}

Matrix beam_splitter(int n) {
  const auto [a, a_dag] = ladder(n);
  const Matrix gen = kron(a_dag, a) - kron(a, a_dag);
  return matrix_exp((std::numbers::pi / 4.0) * gen);
}

const Eigen::MatrixXd& BeamSplitter::block(int n) {
  if (n < 0) throw std::out_of_range("BeamSplitter::block: negative photon number");
  auto it = blocks_.find(n);
  if (it != blocks_.end()) return it->second;
  // States |k, n-k>; a^dag b raises k, a b^dag lowers it.
  Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int k = 0; k < n; ++k) {
    const double amp = std::sqrt(static_cast<double>(k + 1) * (n - k));
    gen(k + 1, k) = amp;
    gen(k, k + 1) = -amp;
  }
  Eigen::MatrixXd v = ((std::numbers::pi / 4.0) * gen).exp();
  return blocks_.emplace(n, std::move(v)).first->second;
}

Vector BeamSplitter::apply(const Vector& psi, int na, int nb, int out_na, int out_nb,
                           bool adjoint) {
  if (psi.size() != static_cast<Eigen::Index>(na) * nb) {
    throw DimensionError("BeamSplitter::apply: vector does not match the grid");
  }
  Vector out = Vector::Zero(static_cast<Eigen::Index>(out_na) * out_nb);
  const int n_max = (na - 1) + (nb - 1);
  for (int n = 0; n <= n_max; ++n) {
    const int k_lo = std::max(0, n - (nb - 1));
    const int k_hi = std::min(n, na - 1);
    Vector in_block = Vector::Zero(n + 1);
    bool any = false;
    for (int k = k_lo; k <= k_hi; ++k) {
      const complex c = psi(static_cast<Eigen::Index>(k) * nb + (n - k));
      if (c != 0.0) {
        in_block(k) = c;
        any = true;
      }
    }
    if (!any) continue;
    const Eigen::MatrixXd& b = block(n);
    const Vector out_block =
        adjoint ? Vector(b.transpose().cast<complex>() * in_block) : Vector(b.cast<complex>() * in_block);
    const int ko_lo = std::max(0, n - (out_nb - 1));
    const int ko_hi = std::min(n, out_na - 1);
    for (int k = ko_lo; k <= ko_hi; ++k) {
      out(static_cast<Eigen::Index>(k) * out_nb + (n - k)) += out_block(k);
    }
  }
  return out;
}

Vector BeamSplitter::apply_basis(int a_index, int b_index, int out_na, int out_nb, bool adjoint) {
  const int n = a_index + b_index;
  const Eigen::MatrixXd& b = block(n);
  Vector out = Vector::Zero(static_cast<Eigen::Index>(out_na) * out_nb);
  const int ko_lo = std::max(0, n - (out_nb - 1));
  const int ko_hi = std::min(n, out_na - 1);
  for (int k = ko_lo; k <= ko_hi; ++k) {
    out(static_cast<Eigen::Index>(k) * out_nb + (n - k)) =
        adjoint ? b(a_index, k) : b(k, a_index);
  }
  return out;
}

SeedSpec parse_seed(const std::string& spec) {
  SeedSpec out;
  if (spec == "vacuum") {
    out.kind = SeedKind::Vacuum;
    return out;
  }
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("invalid seed specification: " + spec);
  const std::string head = spec.substr(0, colon);
  const std::string body = spec.substr(colon + 1);
  if (head == "coherent") {
    const auto comma = body.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("invalid seed specification: " + spec);
    }
    out.kind = SeedKind::Coherent;
    out.alpha = complex(parse_double(body.substr(0, comma), spec),
                        parse_double(body.substr(comma + 1), spec));
    return out;
  }
  if (head == "squeezed") {
    out.kind = SeedKind::Squeezed;
    out.r = parse_double(body, spec);
    return out;
  }
  throw std::invalid_argument("invalid seed specification: " + spec);
}

std::string seed_label(const SeedSpec& spec) {
  switch (spec.kind) {
    case SeedKind::Vacuum:
      return "vacuum";
    case SeedKind::Coherent:
      return "coherent:" + shortest(spec.alpha.real()) + "," + shortest(spec.alpha.imag());
    case SeedKind::Squeezed:
      return "squeezed:" + shortest(spec.r);
    case SeedKind::Custom:
      return "custom";
  }
  return "custom";
}

CVSeed make_seed(const SeedSpec& spec, const FockSpace& space) {
  const int n = space.cutoff;
  Vector psi = Vector::Zero(n);
  psi(0) = 1.0;
  CVSeed seed;
  seed.spec = spec;
  switch (spec.kind) {
    case SeedKind::Vacuum:
      break;
    case SeedKind::Coherent:
      psi = displacement(spec.alpha, n) * psi;
      seed.leakage = coherent_leakage(spec.alpha, n);
      break;
    case SeedKind::Squeezed:
      psi = squeezing(spec.r, n) * psi;
      seed.leakage = squeezed_vacuum_leakage(spec.r, n);
      break;
    case SeedKind::Custom:
      throw std::invalid_argument("make_seed: use custom_seed for explicit density matrices");
  }
  seed.rho = psi * psi.adjoint();
  return seed;
}

CVSeed custom_seed(const Matrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() < 2) {
    throw DimensionError("custom_seed: expected a square operator on at least two levels");
  }
  CVSeed seed;
  seed.spec.kind = SeedKind::Custom;
  seed.rho = rho;
  seed.leakage = std::abs(1.0 - rho.trace().real());
  return seed;
}

Matrix reduced_seed_operator(const CVSeed& seed, const FockSpace& space) {
  const int n = space.cutoff;
  if (seed.rho.rows() != n || seed.rho.cols() != n) {
    throw DimensionError("reduced_seed_operator: seed does not match the cutoff");
  }
  const HermitianSpectrum spec = herm_eig(seed.rho.transpose(), 1e-8);
  const double top = std::max(spec.eigenvalues(0), 0.0);
  // V^dag |i, j> stays in the block i + j <= 2n - 2, so mode 2 is traced
  // exactly on 2n - 1 levels.
  const int nb_out = 2 * n - 1;
  BeamSplitter bs;
  Matrix red = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
    const double pk = spec.eigenvalues(k);
    if (pk <= 1e-15 * top) continue;
    for (Eigen::Index l = 0; l < spec.eigenvalues.size(); ++l) {
      const double pl = spec.eigenvalues(l);
      if (pl <= 1e-15 * top) continue;
      const Vector prod = kron(spec.eigenvectors.col(k), spec.eigenvectors.col(l));
      const Vector y = bs.apply(prod, n, n, n, nb_out, /*adjoint=*/true);
      const Matrix y_mat = unflatten(y, n, nb_out);  // rows: mode 1, cols: mode 2
      red.noalias() += (pk * pl) * (y_mat * y_mat.adjoint());
    }
  }
  return red;
}

ChoiOperator CVOptimalMap::choi() const { return choi_from_kraus(kraus); }

CVOptimalMap map_from_chi(const Vector& chi, const FockSpace& space) {
  const int n = space.cutoff;
  const int w = space.output_cutoff();
  if (chi.size() != n) throw DimensionError("map_from_chi: chi does not match the cutoff");
  CVOptimalMap map;
  map.cutoff = n;
  map.out_cutoff = w;
  map.chi = chi / chi.norm();
  BeamSplitter bs;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  // V|chi>|m> has total photon number >= m; with the output grid w x n it
  // is empty once m > (w - 1) + (n - 1).
  const int m_max = (w - 1) + (n - 1);
  map.kraus.operators.reserve(m_max + 1);
  for (int m = 0; m <= m_max; ++m) {
    Vector wm = Vector::Zero(static_cast<Eigen::Index>(w) * n);
    for (int c = 0; c < n; ++c) {
      if (map.chi(c) == 0.0) continue;
      wm += map.chi(c) * bs.apply_basis(c, m, w, n);
    }
    map.kraus.operators.push_back(inv_sqrt2 * unflatten(wm, w, n));
  }
  return map;
}

CVOptimalMap optimal_chi(const CVSeed& seed, const FockSpace& space, double degeneracy_tol) {
  const Matrix red = reduced_seed_operator(seed, space);
  const HermitianSpectrum spec = herm_eig(red, 1e-8);
  const int n = space.cutoff;
  const double lambda = spec.eigenvalues(0);
  const double gap = n > 1 ? lambda - spec.eigenvalues(1) : lambda;

  // Top eigenspace; more than one column only when the maximum is degenerate.
  Eigen::Index dim = 1;
  while (dim < spec.eigenvalues.size() && lambda - spec.eigenvalues(dim) < degeneracy_tol) ++dim;
  const Matrix top = spec.eigenvectors.leftCols(dim);

  // Deterministic representative: projection of the lowest Fock state with
  // a nonvanishing overlap. This also fixes the global phase.
  Vector chi;
  for (int k = 0; k < n; ++k) {
    const Vector proj = top * top.row(k).adjoint();
    if (proj.norm() > 1e-6) {
      chi = proj / proj.norm();
      break;
    }
  }
  if (chi.size() == 0) chi = top.col(0);

  CVOptimalMap map = map_from_chi(chi, space);
  map.lambda_max = lambda;
  map.spectral_gap = gap;
  if (dim > 1) {
    map.warnings.push_back("degenerate top eigenvalue (multiplicity " + std::to_string(dim) +
                           "), chi chosen by lowest-index Fock overlap");
  }
  return map;
}

double cv_fidelity(const CVSeed& seed, const CVOptimalMap& map) {
  const int n = map.cutoff;
  if (seed.rho.rows() != n || seed.rho.cols() != n) {
    throw DimensionError("cv_fidelity: seed does not match the map's cutoff");
  }
  const Matrix rt = seed.rho.transpose();
  const Matrix target = kron(rt, rt);
  // Tr[(rho^T (x) rho^T) R] with R = sum_m |K_m>><<K_m| restricted to the
  // n x n corner where rho^T (x) rho^T lives.
  double f = 0.0;
  for (const Matrix& k : map.kraus.operators) {
    const Vector v = dket(k.topRows(n)).amplitudes;
    f += (v.adjoint() * target * v)(0, 0).real();
  }
  return f;
}

Matrix cv_apply(const CVOptimalMap& map, const Matrix& sigma) {
  if (sigma.rows() != map.cutoff || sigma.cols() != map.cutoff) {
    throw DimensionError("cv_apply: input does not match the map's cutoff");
  }
  return map.kraus.apply(sigma);
}

double covariance_residual_cv(const CVOptimalMap& map, const CVSeed& seed, complex alpha) {
  const int n = map.cutoff;
  if (seed.rho.rows() != n) throw DimensionError("covariance_residual_cv: seed/cutoff mismatch");
  if (alpha == 0.0) return 0.0;
  const Matrix d_in = displacement(alpha, n);
  const Matrix d_out = displacement(alpha, map.out_cutoff);
  const Matrix lhs = cv_apply(map, d_in * seed.rho * d_in.adjoint());
  const Matrix rhs = d_out.conjugate() * cv_apply(map, seed.rho) * d_out.transpose();
  const Matrix diff = lhs - rhs;
  return trace_norm_hermitian(0.5 * (diff + diff.adjoint()));
}

double low_block_tp_residual(const CVOptimalMap& map, int n_low) {
  const int n = std::clamp(n_low, 1, map.cutoff);
  // Tr_1[|K>><<K|] = K^T K*
  Matrix reduced = Matrix::Zero(n, n);
  for (const Matrix& k : map.kraus.operators) {
    const auto cols = k.leftCols(n);
    reduced.noalias() += cols.transpose() * cols.conjugate();
  }
  return (reduced - identity(n)).norm();
}

}  // namespace antimap
