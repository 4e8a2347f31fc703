#pragma once

// Quantum channels in Kraus and (unnormalized) Choi form.
//
// Choi convention: J = Σ_ij |i⟩⟨j| ⊗ N(|i⟩⟨j|), input system first, tr J = d_in.
// A Kraus operator K (d_out × d_in) contributes vec(K)vec(K)† with
// vec(K)[i·d_out + b] = K[b, i].

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/QR>

#include "sqz/qmat.hpp"
#include "sqz/random.hpp"

namespace sqz {

namespace tol {
inline constexpr double kKraus = 1e-10;
inline constexpr double kChoiRank = 1e-9;
}  // namespace tol

class KrausChannel {
 public:
  KrausChannel() = default;

  KrausChannel(int d_in, int d_out, std::vector<CMat> ops) : d_in_(d_in), d_out_(d_out), ops_(std::move(ops)) {
    if (d_in < 1 || d_out < 1) throw DimensionError("KrausChannel: dimensions must be positive");
    if (ops_.empty()) throw DomainError("KrausChannel: no Kraus operators");
    CMat sum = CMat::Zero(d_in, d_in);
    for (const auto& k : ops_) {
      if (k.rows() != d_out || k.cols() != d_in) throw DimensionError("KrausChannel: operator has wrong shape");
      sum += k.adjoint() * k;
    }
    if (max_abs(sum - CMat::Identity(d_in, d_in)) > tol::kKraus)
      throw DomainError("KrausChannel: Kraus operators are not complete");
  }

  int input_dim() const { return d_in_; }
  int output_dim() const { return d_out_; }
  const std::vector<CMat>& ops() const { return ops_; }
  int rank() const { return static_cast<int>(ops_.size()); }

  CMat apply(const CMat& rho) const {
    if (rho.rows() != d_in_) throw DimensionError("KrausChannel::apply: input dimension");
    CMat out = CMat::Zero(d_out_, d_out_);
    for (const auto& k : ops_) out += k * rho * k.adjoint();
    return out;
  }

 private:
  int d_in_ = 1;
  int d_out_ = 1;
  std::vector<CMat> ops_;
};

class ChoiMatrix {
 public:
  ChoiMatrix() = default;

  ChoiMatrix(int d_in, int d_out, CMat j) : d_in_(d_in), d_out_(d_out), j_(std::move(j)) {
    if (d_in < 1 || d_out < 1) throw DimensionError("ChoiMatrix: dimensions must be positive");
    if (j_.rows() != d_in * d_out || j_.cols() != d_in * d_out) throw DimensionError("ChoiMatrix: matrix size");
    if (!is_finite(j_)) throw DomainError("ChoiMatrix: non-finite entry");
    if (max_abs(j_ - j_.adjoint()) > tol::kHermitian) throw DomainError("ChoiMatrix: not Hermitian");
    if (min_eigenvalue(j_) < -tol::kPsd) throw DomainError("ChoiMatrix: not completely positive");
    if (max_abs(partial_trace(j_, {d_in, d_out}, {0}) - CMat::Identity(d_in, d_in)) > tol::kTrace)
      throw DomainError("ChoiMatrix: not trace preserving");
  }

  /// Closest CPTP Choi matrix in a simple sense: clip negative eigenvalues, then
  /// restore tr_B J = I by J ↦ (X^{-1/2} ⊗ I) J (X^{-1/2} ⊗ I) with X = tr_B J.
  /// Meant for operators that come out of a solver and are CPTP up to noise.
  static ChoiMatrix nearest(const CMat& m, int d_in, int d_out) {
    auto sp = hermitian_eig(m);
    const RVec lam = sp.eigenvalues.cwiseMax(0.0);
    CMat j = sp.eigenvectors * lam.asDiagonal() * sp.eigenvectors.adjoint();
    const auto xs = hermitian_eig(partial_trace(j, {d_in, d_out}, {0}));
    if (xs.eigenvalues.minCoeff() <= 0.0) throw DomainError("ChoiMatrix::nearest: marginal is singular");
    const CMat s = xs.eigenvectors * xs.eigenvalues.cwiseSqrt().cwiseInverse().asDiagonal() * xs.eigenvectors.adjoint();
    const CMat big = kron(s, CMat::Identity(d_out, d_out));
    return ChoiMatrix(d_in, d_out, hermitian_part(big * j * big));
  }

  int input_dim() const { return d_in_; }
  int output_dim() const { return d_out_; }
  const CMat& matrix() const { return j_; }
  Dims dims() const { return {d_in_, d_out_}; }

  /// J/d_in as a bipartite state.
  DensityOperator normalized_state() const {
    return DensityOperator(j_ / static_cast<double>(d_in_), dims());
  }

 private:
  int d_in_ = 1;
  int d_out_ = 1;
  CMat j_ = CMat::Identity(1, 1);
};

struct PauliParams {
  double p0, p1, p2, p3;

  PauliParams(double a, double b, double c, double d) : p0(a), p1(b), p2(c), p3(d) {
    for (double p : {a, b, c, d})
      if (!(p >= 0.0)) throw DomainError("PauliParams: negative probability");
    if (std::abs(a + b + c + d - 1.0) > 1e-12) throw DomainError("PauliParams: probabilities do not sum to 1");
  }

  std::array<double, 4> as_array() const { return {p0, p1, p2, p3}; }
};

inline CMat pauli_matrix(int k) {
  CMat m = CMat::Zero(2, 2);
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw DomainError("pauli_matrix: index must be 0..3");
  }
  return m;
}

inline ChoiMatrix choi_from_kraus(const KrausChannel& k) {
  const int da = k.input_dim(), db = k.output_dim();
  CMat j = CMat::Zero(da * db, da * db);
  for (const auto& op : k.ops()) {
    CVec v(da * db);
    for (int i = 0; i < da; ++i)
      for (int b = 0; b < db; ++b) v(i * db + b) = op(b, i);
    j += v * v.adjoint();
  }
  return ChoiMatrix(da, db, hermitian_part(j));
}

inline KrausChannel kraus_from_choi(const ChoiMatrix& j) {
  const int da = j.input_dim(), db = j.output_dim();
  const auto sp = hermitian_eig(j.matrix());
  std::vector<CMat> ops;
  for (int k = 0; k < sp.eigenvalues.size(); ++k) {
    if (sp.eigenvalues(k) <= tol::kChoiRank) break;
    const double w = std::sqrt(sp.eigenvalues(k));
    CMat op(db, da);
    for (int i = 0; i < da; ++i)
      for (int b = 0; b < db; ++b) op(b, i) = w * sp.eigenvectors(i * db + b, k);
    ops.push_back(op);
  }
  // Truncation can leave completeness slightly off; absorb it into the operators.
  CMat sum = CMat::Zero(da, da);
  for (const auto& op : ops) sum += op.adjoint() * op;
  const auto ss = hermitian_eig(sum);
  const CMat fix = ss.eigenvectors * ss.eigenvalues.cwiseSqrt().cwiseInverse().asDiagonal() * ss.eigenvectors.adjoint();
  for (auto& op : ops) op = op * fix;
  return KrausChannel(da, db, std::move(ops));
}

/// Complementary channel to an environment of dimension rank(K):
/// (N^c(ρ))_{mn} = tr[K_n† K_m ρ], Kraus operators F_j[m, a] = K_m[j, a].
inline KrausChannel complementary(const KrausChannel& k) {
  const int r = k.rank(), da = k.input_dim(), db = k.output_dim();
  std::vector<CMat> ops;
  for (int j = 0; j < db; ++j) {
    CMat f(r, da);
    for (int m = 0; m < r; ++m) f.row(m) = k.ops()[m].row(j);
    ops.push_back(f);
  }
  return KrausChannel(da, r, std::move(ops));
}

/// tr_A[(ρᵀ ⊗ I) J] for an arbitrary (not necessarily state) operator.
inline CMat apply_choi(const CMat& j, int d_in, int d_out, const CMat& rho) {
  if (rho.rows() != d_in || rho.cols() != d_in) throw DimensionError("apply: input dimension mismatch");
  return partial_trace(kron(rho.transpose(), CMat::Identity(d_out, d_out)) * j, {d_in, d_out}, {1});
}

inline DensityOperator apply(const ChoiMatrix& j, const DensityOperator& rho) {
  if (rho.dim() != j.input_dim()) throw DimensionError("apply: input dimension mismatch");
  return DensityOperator::project(apply_choi(j.matrix(), j.input_dim(), j.output_dim(), rho.matrix()),
                                  Dims{j.output_dim()});
}

/// Link product of raw Choi operators: J1 (A→B) followed by J2 (B→C).
inline CMat compose_choi(const CMat& j2, const CMat& j1, int da, int db, int dc) {
  if (j1.rows() != da * db || j2.rows() != db * dc) throw DimensionError("compose: dimension mismatch");
  CMat out = CMat::Zero(da * dc, da * dc);
  for (int a = 0; a < da; ++a)
    for (int a2 = 0; a2 < da; ++a2)
      for (int b = 0; b < db; ++b)
        for (int b2 = 0; b2 < db; ++b2) {
          const cplx w = j1(a * db + b, a2 * db + b2);
          if (w == cplx(0.0)) continue;
          for (int c = 0; c < dc; ++c)
            for (int c2 = 0; c2 < dc; ++c2) out(a * dc + c, a2 * dc + c2) += w * j2(b * dc + c, b2 * dc + c2);
        }
  return out;
}

/// Choi of j2 ∘ j1.
inline ChoiMatrix compose(const ChoiMatrix& j2, const ChoiMatrix& j1) {
  if (j1.output_dim() != j2.input_dim()) throw DimensionError("compose: dimension mismatch");
  return ChoiMatrix(j1.input_dim(), j2.output_dim(),
                    hermitian_part(compose_choi(j2.matrix(), j1.matrix(), j1.input_dim(), j1.output_dim(),
                                                j2.output_dim())));
}

/// Weyl operator X^a Z^b on C^d.
inline CMat weyl(int d, int a, int b) {
  CMat x = CMat::Zero(d, d), z = CMat::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    x((j + 1) % d, j) = 1.0;
    z(j, j) = std::polar(1.0, 2.0 * M_PI * j / d);
  }
  CMat out = CMat::Identity(d, d);
  for (int i = 0; i < a; ++i) out = out * x;
  for (int i = 0; i < b; ++i) out = out * z;
  return out;
}

/// ρ ↦ (1−p)ρ + p·I/d via a Weyl twirl.
inline KrausChannel depolarizing(int d, double p) {
  if (d < 1) throw DimensionError("depolarizing: d < 1");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("depolarizing: p outside [0,1]");
  const double dd = static_cast<double>(d) * d;
  std::vector<CMat> ops;
  ops.push_back(std::sqrt(1.0 - p + p / dd) * CMat::Identity(d, d));
  if (p > 0.0)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        if (a || b) ops.push_back(std::sqrt(p / dd) * weyl(d, a, b));
  return KrausChannel(d, d, std::move(ops));
}

inline KrausChannel amplitude_damping(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw DomainError("amplitude_damping: gamma outside [0,1]");
  CMat k0 = CMat::Zero(2, 2), k1 = CMat::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  k1(0, 1) = std::sqrt(gamma);
  return KrausChannel(2, 2, {k0, k1});
}

/// Multilevel amplitude damping; rates(j, i) = γ_{ji} is the decay |j⟩ → |i⟩, i < j.
inline KrausChannel mad_channel(int d, const Eigen::MatrixXd& rates) {
  if (d < 2) throw DimensionError("mad_channel: d < 2");
  if (rates.rows() != d || rates.cols() != d) throw DimensionError("mad_channel: rate matrix must be d x d");
  std::vector<CMat> ops;
  CMat k0 = CMat::Zero(d, d);
  k0(0, 0) = 1.0;
  for (int j = 0; j < d; ++j) {
    double xi = 0.0;
    for (int i = 0; i < d; ++i) {
      const double g = rates(j, i);
      if (i >= j) {
        if (g != 0.0) throw DomainError("mad_channel: rates must be strictly lower triangular");
        continue;
      }
      if (!(g >= 0.0 && g <= 1.0)) throw DomainError("mad_channel: rate outside [0,1]");
      xi += g;
      if (g > 0.0) {
        CMat k = CMat::Zero(d, d);
        k(i, j) = std::sqrt(g);
        ops.push_back(k);
      }
    }
    if (xi > 1.0 + 1e-12) throw DomainError("mad_channel: total decay rate of a level exceeds 1");
    if (j > 0) k0(j, j) = std::sqrt(std::max(0.0, 1.0 - xi));
  }
  ops.insert(ops.begin(), k0);
  return KrausChannel(d, d, std::move(ops));
}

inline KrausChannel pauli(const PauliParams& p, bool covariant = false) {
  if (covariant && std::abs(p.p1 - p.p2) > 1e-12) throw DomainError("pauli: covariant channel needs p1 = p2");
  const auto pa = p.as_array();
  std::vector<CMat> ops;
  for (int k = 0; k < 4; ++k) ops.push_back(std::sqrt(pa[k]) * pauli_matrix(k));
  return KrausChannel(2, 2, std::move(ops));
}

/// Λ_cov with p1 = p2 = (1 − p0 − p3)/2.
inline KrausChannel covariant_pauli(double p0, double p3) {
  const double p1 = 0.5 * (1.0 - p0 - p3);
  return pauli(PauliParams(p0, p1, p1, p3), true);
}

inline KrausChannel mixed_unitary(const std::vector<CMat>& unitaries, const std::vector<double>& probs) {
  if (unitaries.empty() || unitaries.size() != probs.size())
    throw DimensionError("mixed_unitary: need one probability per unitary");
  const int d = static_cast<int>(unitaries[0].rows());
  double total = 0.0;
  std::vector<CMat> ops;
  for (std::size_t i = 0; i < unitaries.size(); ++i) {
    const CMat& u = unitaries[i];
    if (u.rows() != d || u.cols() != d) throw DimensionError("mixed_unitary: unitaries must share a dimension");
    if (max_abs(u.adjoint() * u - CMat::Identity(d, d)) > 1e-10) throw DomainError("mixed_unitary: matrix is not unitary");
    if (!(probs[i] >= 0.0)) throw DomainError("mixed_unitary: negative probability");
    total += probs[i];
    ops.push_back(std::sqrt(probs[i]) * u);
  }
  if (std::abs(total - 1.0) > 1e-10) throw DomainError("mixed_unitary: probabilities do not sum to 1");
  return KrausChannel(d, d, std::move(ops));
}

inline KrausChannel unitary_channel(const CMat& u) { return mixed_unitary({u}, {1.0}); }

/// Haar unitary from the QR decomposition of a Ginibre matrix, with the phases
/// of R's diagonal moved into Q.
inline CMat haar_unitary(int d, SplitMix64& rng) {
  if (d < 1) throw DimensionError("haar_unitary: d < 1");
  const CMat g = ginibre(d, d, rng);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ() * CMat::Identity(d, d);
  const CMat r = qr.matrixQR();
  for (int k = 0; k < d; ++k) {
    const double a = std::abs(r(k, k));
    if (a > 0.0) q.col(k) *= r(k, k) / a;
  }
  return q;
}

inline CMat haar_unitary(int d, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return haar_unitary(d, rng);
}

/// GG†/tr(GG†) with G a (dA·dB) × rank Ginibre matrix.
inline DensityOperator hs_random_state(int da, int db, int rank, std::uint64_t seed) {
  const int n = da * db;
  if (rank < 1 || rank > n) throw DomainError("hs_random_state: rank outside [1, dA·dB]");
  SplitMix64 rng(seed);
  const CMat g = ginibre(n, rank, rng);
  const CMat m = g * g.adjoint();
  return DensityOperator(hermitian_part(m / m.trace().real()), Dims{da, db});
}

/// Channel with `n_kraus` operators cut from a Haar isometry C^{d_in} → C^{n_kraus·d_out}.
inline KrausChannel random_channel(int d_in, int d_out, int n_kraus, std::uint64_t seed) {
  const int big = d_out * n_kraus;
  if (big < d_in) throw DimensionError("random_channel: isometry needs n_kraus·d_out ≥ d_in");
  const CMat u = haar_unitary(big, seed);
  std::vector<CMat> ops;
  for (int k = 0; k < n_kraus; ++k) ops.push_back(u.block(k * d_out, 0, d_out, d_in));
  return KrausChannel(d_in, d_out, std::move(ops));
}

/// (N_A ⊗ N_B)(Φ_d).
inline DensityOperator noisy_mes(const ChoiMatrix& na, const ChoiMatrix& nb) {
  const int d = na.input_dim();
  if (nb.input_dim() != d) throw DimensionError("noisy_mes: channels must share an input dimension");
  const auto ka = kraus_from_choi(na), kb = kraus_from_choi(nb);
  const CMat phi = maximally_entangled(d).matrix();
  const int oa = na.output_dim(), ob = nb.output_dim();
  CMat out = CMat::Zero(oa * ob, oa * ob);
  for (const auto& a : ka.ops())
    for (const auto& b : kb.ops()) {
      const CMat k = kron(a, b);
      out += k * phi * k.adjoint();
    }
  return DensityOperator::project(out, Dims{oa, ob});
}

inline ChoiMatrix identity_choi(int d) { return choi_from_kraus(KrausChannel(d, d, {CMat::Identity(d, d)})); }

}  // namespace sqz
