#pragma once

// Dense complex linear algebra for finite-dimensional quantum information:
// tensor products, partial operations on multipartite operators, entropies
// and norms. Subsystems are indexed from zero in the order given by a dims
// list; the first subsystem is the most significant digit of a basis index.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include "sqz/errors.hpp"

namespace sqz {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Dims = std::vector<int>;

namespace tol {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kPsd = 1e-9;
inline constexpr double kTrace = 1e-9;
inline constexpr double kEntropyFloor = 1e-12;
}  // namespace tol

inline int dim_product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

inline double max_abs(const CMat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline CMat hermitian_part(const CMat& m) { return 0.5 * (m + m.adjoint()); }

inline bool is_finite(const CMat& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    if (!std::isfinite(m.data()[i].real()) || !std::isfinite(m.data()[i].imag())) return false;
  }
  return true;
}

// (a⊗b)[(i·rb+k),(j·cb+l)] = a[i,j]·b[k,l]
inline CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline CMat kron(std::initializer_list<CMat> factors) {
  CMat out = CMat::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

namespace detail {

inline void check_square_dims(const CMat& m, const Dims& dims, const char* what) {
  if (m.rows() != m.cols())
    throw DimensionError(std::string(what) + ": matrix is not square");
  for (int d : dims)
    if (d < 1) throw DimensionError(std::string(what) + ": subsystem dimension < 1");
  if (dim_product(dims) != m.rows())
    throw DimensionError(std::string(what) + ": product of dims " + std::to_string(dim_product(dims)) +
                         " != matrix dimension " + std::to_string(m.rows()));
}

// Digits of every basis index, most significant subsystem first.
inline std::vector<Dims> index_digits(const Dims& dims) {
  const int n = dim_product(dims);
  std::vector<Dims> out(n, Dims(dims.size()));
  for (int i = 0; i < n; ++i) {
    int r = i;
    for (int s = static_cast<int>(dims.size()) - 1; s >= 0; --s) {
      out[i][s] = r % dims[s];
      r /= dims[s];
    }
  }
  return out;
}

// Split each full index into (kept index, traced index).
inline void split_indices(const Dims& dims, const std::vector<int>& keep, std::vector<int>& kept_idx,
                          std::vector<int>& traced_idx) {
  std::vector<bool> is_kept(dims.size(), false);
  for (int k : keep) {
    if (k < 0 || k >= static_cast<int>(dims.size()))
      throw DimensionError("subsystem index " + std::to_string(k) + " out of range");
    if (is_kept[k]) throw DimensionError("duplicate subsystem index " + std::to_string(k));
    is_kept[k] = true;
  }
  const auto digits = index_digits(dims);
  const int n = static_cast<int>(digits.size());
  kept_idx.assign(n, 0);
  traced_idx.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    int ki = 0, ti = 0;
    for (std::size_t s = 0; s < dims.size(); ++s) {
      if (is_kept[s])
        ki = ki * dims[s] + digits[i][s];
      else
        ti = ti * dims[s] + digits[i][s];
    }
    kept_idx[i] = ki;
    traced_idx[i] = ti;
  }
}

inline int kept_dim(const Dims& dims, std::vector<int> keep) {
  int d = 1;
  for (int k : keep) d *= dims.at(k);
  return d;
}

}  // namespace detail

/// Trace out every subsystem not listed in `keep`; the kept subsystems stay in
/// ascending index order.
inline CMat partial_trace(const CMat& m, const Dims& dims, std::vector<int> keep) {
  detail::check_square_dims(m, dims, "partial_trace");
  std::sort(keep.begin(), keep.end());
  std::vector<int> ki, ti;
  detail::split_indices(dims, keep, ki, ti);
  const int r = detail::kept_dim(dims, keep);
  CMat out = CMat::Zero(r, r);
  const int n = static_cast<int>(m.rows());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (ti[i] == ti[j]) out(ki[i], ki[j]) += m(i, j);
  return out;
}

/// Adjoint of partial_trace: m acts on the kept subsystems and the identity is
/// placed on all others.
inline CMat expand_identity(const CMat& m, const Dims& dims, std::vector<int> keep) {
  std::sort(keep.begin(), keep.end());
  const int r = detail::kept_dim(dims, keep);
  if (m.rows() != r || m.cols() != r)
    throw DimensionError("expand_identity: operand dimension does not match kept subsystems");
  std::vector<int> ki, ti;
  detail::split_indices(dims, keep, ki, ti);
  const int n = dim_product(dims);
  CMat out = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (ti[i] == ti[j]) out(i, j) = m(ki[i], ki[j]);
  return out;
}

inline CMat partial_transpose(const CMat& m, const Dims& dims, int sys) {
  detail::check_square_dims(m, dims, "partial_transpose");
  if (sys < 0 || sys >= static_cast<int>(dims.size()))
    throw DimensionError("partial_transpose: subsystem index out of range");
  int stride = 1;
  for (int s = static_cast<int>(dims.size()) - 1; s > sys; --s) stride *= dims[s];
  const int d = dims[sys];
  const int n = static_cast<int>(m.rows());
  CMat out(n, n);
  for (int i = 0; i < n; ++i) {
    const int di = (i / stride) % d;
    for (int j = 0; j < n; ++j) {
      const int dj = (j / stride) % d;
      out(i + (dj - di) * stride, j + (di - dj) * stride) = m(i, j);
    }
  }
  return out;
}

/// Reorder subsystems: subsystem perm[k] of the input becomes subsystem k of
/// the output.
inline CMat permute_systems(const CMat& m, const Dims& dims, const std::vector<int>& perm) {
  detail::check_square_dims(m, dims, "permute_systems");
  if (perm.size() != dims.size()) throw DimensionError("permute_systems: permutation size");
  Dims new_dims(dims.size());
  for (std::size_t k = 0; k < perm.size(); ++k) new_dims[k] = dims.at(perm[k]);
  const auto digits = detail::index_digits(dims);
  const int n = static_cast<int>(m.rows());
  std::vector<int> target(n);
  for (int i = 0; i < n; ++i) {
    int t = 0;
    for (std::size_t k = 0; k < perm.size(); ++k) t = t * new_dims[k] + digits[i][perm[k]];
    target[i] = t;
  }
  CMat out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(target[i], target[j]) = m(i, j);
  return out;
}

/// Permutation matrix implementing the same reordering as permute_systems on
/// vectors: permute_systems(m) == P m P†.
inline CMat permutation_operator(const Dims& dims, const std::vector<int>& perm) {
  if (perm.size() != dims.size()) throw DimensionError("permutation_operator: permutation size");
  Dims new_dims(dims.size());
  for (std::size_t k = 0; k < perm.size(); ++k) new_dims[k] = dims.at(perm[k]);
  const auto digits = detail::index_digits(dims);
  const int n = dim_product(dims);
  CMat p = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    int t = 0;
    for (std::size_t k = 0; k < perm.size(); ++k) t = t * new_dims[k] + digits[i][perm[k]];
    p(t, i) = 1.0;
  }
  return p;
}

/// P|i⟩|j⟩ = |j⟩|i⟩ on C^d ⊗ C^d.
inline CMat swap_operator(int d) {
  if (d < 1) throw DimensionError("swap_operator: d < 1");
  CMat p = CMat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) p(j * d + i, i * d + j) = 1.0;
  return p;
}

struct Spectrum {
  RVec eigenvalues;  // descending
  CMat eigenvectors;  // columns
};

/// Eigendecomposition of the Hermitian part (M+M†)/2.
inline Spectrum hermitian_eig(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(m));
  const Eigen::Index n = m.rows();
  Spectrum s{RVec(n), CMat(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    s.eigenvalues(k) = es.eigenvalues()(n - 1 - k);
    s.eigenvectors.col(k) = es.eigenvectors().col(n - 1 - k);
  }
  return s;
}

inline double min_eigenvalue(const CMat& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

inline double max_eigenvalue(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(m.rows() - 1);
}

/// Shannon entropy (bits) of a probability-like list. Entries in [-1e-9, 0]
/// are treated as zero, anything more negative is rejected.
inline double entropy_of_spectrum(const RVec& values) {
  double s = 0.0;
  for (double v : values) {
    if (v < -tol::kPsd) throw DomainError("entropy: negative eigenvalue " + std::to_string(v));
    if (v > tol::kEntropyFloor) s -= v * std::log2(v);
  }
  return std::max(s, 0.0);
}

/// Von Neumann entropy (bits) of a PSD operator given as a raw matrix.
inline double entropy_bits(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return entropy_of_spectrum(es.eigenvalues());
}

/// Hermitian, PSD, unit-trace operator together with its subsystem structure.
class DensityOperator {
 public:
  DensityOperator() = default;

  DensityOperator(CMat matrix, Dims dims) : matrix_(std::move(matrix)), dims_(std::move(dims)) {
    validate();
  }

  /// Single-system operator.
  explicit DensityOperator(CMat matrix) : DensityOperator(matrix, Dims{static_cast<int>(matrix.rows())}) {}

  /// Clip negative eigenvalues, symmetrize and renormalize. For operators that
  /// come out of a numerical solver and are only approximately states.
  static DensityOperator project(const CMat& m, Dims dims) {
    auto sp = hermitian_eig(m);
    RVec lam = sp.eigenvalues.cwiseMax(0.0);
    const double t = lam.sum();
    if (!(t > 0.0)) throw DomainError("DensityOperator::project: operator has no positive part");
    CMat out = sp.eigenvectors * (lam / t).asDiagonal() * sp.eigenvectors.adjoint();
    return DensityOperator(hermitian_part(out), std::move(dims));
  }

  const CMat& matrix() const { return matrix_; }
  const Dims& dims() const { return dims_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

  DensityOperator with_dims(Dims dims) const { return DensityOperator(matrix_, std::move(dims)); }

  DensityOperator marginal(std::vector<int> keep) const {
    std::sort(keep.begin(), keep.end());
    Dims kd;
    for (int k : keep) kd.push_back(dims_.at(k));
    return DensityOperator::project(partial_trace(matrix_, dims_, keep), kd);
  }

 private:
  void validate() const {
    detail::check_square_dims(matrix_, dims_, "DensityOperator");
    if (!is_finite(matrix_)) throw DomainError("DensityOperator: non-finite entry");
    if (max_abs(matrix_ - matrix_.adjoint()) > tol::kHermitian)
      throw DomainError("DensityOperator: not Hermitian");
    if (std::abs(matrix_.trace() - cplx(1.0)) > tol::kTrace)
      throw DomainError("DensityOperator: trace " + std::to_string(matrix_.trace().real()) + " != 1");
    if (min_eigenvalue(matrix_) < -tol::kPsd) throw DomainError("DensityOperator: not positive semidefinite");
  }

  CMat matrix_;
  Dims dims_;
};

inline DensityOperator kron(const DensityOperator& a, const DensityOperator& b) {
  Dims d = a.dims();
  d.insert(d.end(), b.dims().begin(), b.dims().end());
  return DensityOperator(kron(a.matrix(), b.matrix()), d);
}

inline double von_neumann_entropy(const DensityOperator& rho) { return entropy_of_spectrum(hermitian_eig(rho.matrix()).eigenvalues); }

/// Binary entropy h(p) and the bosonic entropy g(p) = (1+p)·h(p/(1+p)).
struct EntropyScalars {
  double h;
  double g;
};

inline double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binary_entropy: p outside [0,1]");
  auto term = [](double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; };
  return term(p) + term(1.0 - p);
}

inline double bosonic_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("bosonic_entropy: p outside [0,1]");
  return (1.0 + p) * binary_entropy(p / (1.0 + p));
}

inline EntropyScalars entropy_scalars(double p) { return {binary_entropy(p), bosonic_entropy(p)}; }

inline void require_bipartite(const DensityOperator& rho, const char* what) {
  if (rho.dims().size() != 2) throw DimensionError(std::string(what) + ": state must declare a bipartition (dA, dB)");
}

/// I_c(A⟩B) = S(B) − S(AB), in bits.
inline double coherent_information(const DensityOperator& rho) {
  require_bipartite(rho, "coherent_information");
  const double s_b = entropy_bits(partial_trace(rho.matrix(), rho.dims(), {1}));
  return s_b - von_neumann_entropy(rho);
}

inline double trace_norm(const CMat& m) {
  if (m.rows() != m.cols()) throw DimensionError("trace_norm: matrix is not square");
  Eigen::JacobiSVD<CMat> svd(m);
  return svd.singularValues().sum();
}

/// Purification |φ⟩ on system ⊗ reference with reference dimension rank(ρ).
struct Purification {
  CVec vector;
  int system_dim = 0;
  int reference_dim = 0;

  CMat projector() const { return vector * vector.adjoint(); }
};

inline Purification purify(const DensityOperator& rho, double rank_tol = 1e-12) {
  const auto sp = hermitian_eig(rho.matrix());
  const int d = rho.dim();
  int r = 0;
  while (r < d && sp.eigenvalues(r) > rank_tol) ++r;
  r = std::max(r, 1);
  Purification p;
  p.system_dim = d;
  p.reference_dim = r;
  p.vector = CVec::Zero(d * r);
  for (int k = 0; k < r; ++k) {
    const double w = std::sqrt(std::max(sp.eigenvalues(k), 0.0));
    for (int i = 0; i < d; ++i) p.vector(i * r + k) = w * sp.eigenvectors(i, k);
  }
  return p;
}

/// Φ_d = (1/d) Σ |ii⟩⟨jj|.
inline DensityOperator maximally_entangled(int d) {
  CVec v = CVec::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return DensityOperator(v * v.adjoint(), Dims{d, d});
}

inline DensityOperator maximally_mixed(const Dims& dims) {
  const int n = dim_product(dims);
  return DensityOperator(CMat::Identity(n, n) / static_cast<double>(n), dims);
}

inline DensityOperator pure_state(const CVec& psi, Dims dims) {
  CVec v = psi / psi.norm();
  return DensityOperator(v * v.adjoint(), std::move(dims));
}

inline CVec basis_vector(int d, int i) {
  CVec v = CVec::Zero(d);
  v(i) = 1.0;
  return v;
}

/// F·Φ_d + (1−F)·(I−Φ_d)/(d²−1).
inline DensityOperator isotropic_state(int d, double fidelity) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) throw DomainError("isotropic_state: fidelity outside [0,1]");
  const CMat phi = maximally_entangled(d).matrix();
  const int n = d * d;
  CMat m = fidelity * phi + (1.0 - fidelity) * (CMat::Identity(n, n) - phi) / static_cast<double>(n - 1);
  return DensityOperator(m, Dims{d, d});
}

}  // namespace sqz
