#pragma once

// Channel-level quantities: ADG squeezing of a channel, the qubit Q_sqz bound,
// closed forms for Pauli channels, diamond-norm ε-(anti-)degradability and the
// continuity bounds built on it.
//
// Choi matrices are unnormalized (tr J = d_in). The squeezing program runs on the
// Choi state J/d_A so that tr[M J/d_A] = 1 − free_weight.

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include "sqz/state_bounds.hpp"

namespace sqz {

namespace tol {
/// Degradability of the squeezed qubit channel: accepted / flagged marginal / error.
inline constexpr double kDegradable = 1e-6;
inline constexpr double kDegradableMarginal = 1e-4;
}  // namespace tol

struct ChannelSqueezeResult {
  double free_weight = 0.0;
  std::optional<ChoiMatrix> squeezed_channel;
  std::optional<ChoiMatrix> adg_channel;
  std::map<std::string, CMat> dual_certificate;  // M, N, K on AB; R on A
  CMat support;
  CMat extension_face;
  sdp::SolveStatus status = sdp::SolveStatus::NumericalFailure;
  double primal_objective = 0.0;  // tr Γ^S on the Choi state
  double dual_objective = 0.0;
  double max_residual = 0.0;
};

/// max weight of an anti-degradable N′ with weight·J^{N′} ≤ J^N, together with
/// the squeezed channel S = (N − w N′)/(1 − w).
inline ChannelSqueezeResult squeeze_channel_adg(const ChoiMatrix& n, const sdp::ToleranceSet& tol = {}) {
  const int da = n.input_dim(), db = n.output_dim();
  const CMat state = n.matrix() / static_cast<double>(da);
  auto core = detail::adg_core(state, da, db, true, tol);
  ChannelSqueezeResult r;
  r.status = core.status;
  r.max_residual = core.residual;
  r.dual_objective = core.dual;
  r.support = core.support;
  r.extension_face = core.face;
  if (core.status != sdp::SolveStatus::Optimal) return r;
  r.dual_certificate = std::move(core.cert);
  r.primal_objective = core.omega.trace().real();
  const double w = detail::snap_weight(core.tau.trace().real());
  r.free_weight = w;
  if (w == 0.0) {
    r.squeezed_channel = n;
  } else {
    r.adg_channel = ChoiMatrix::nearest(core.tau * (da / core.tau.trace().real()), da, db);
    if (w < 1.0) r.squeezed_channel = ChoiMatrix::nearest(core.omega * (da / core.omega.trace().real()), da, db);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Pauli channels

namespace detail {

inline double pauli_weight_formula(const PauliParams& p) {
  const double s1 = std::sqrt(p.p1), s2 = std::sqrt(p.p2), s3 = std::sqrt(p.p3);
  return (s1 + s2) * (s1 + s2) + (s2 + s3) * (s2 + s3) + (s1 + s3) * (s1 + s3);
}

inline void require_dominant(const PauliParams& p, const char* what) {
  if (p.p0 < std::max({p.p1, p.p2, p.p3})) throw DomainError(std::string(what) + ": p0 must dominate p1, p2, p3");
}

}  // namespace detail

/// (√p₁+√p₂)² + (√p₂+√p₃)² + (√p₁+√p₃)²; values ≥ 1 mean anti-degradable.
inline double pauli_adg_weight_raw(const PauliParams& p) {
  detail::require_dominant(p, "pauli_adg_weight");
  return detail::pauli_weight_formula(p);
}

inline double pauli_adg_weight(const PauliParams& p) { return std::min(pauli_adg_weight_raw(p), 1.0); }

inline double no_cloning_bound(const PauliParams& p) { return std::max(0.0, 1.0 - detail::pauli_weight_formula(p)); }

/// 3p₀ + p₃ − √(8(p₃ − p₀p₃ − p₃²)) − 2 for p₁ = p₂ = (1 − p₀ − p₃)/2, clamped at 0.
inline double covariant_pauli_qsqz(double p0, double p3) {
  const double p1 = 0.5 * (1.0 - p0 - p3);
  if (!(p0 >= 0.0 && p3 >= 0.0 && p1 >= -1e-15)) throw DomainError("covariant_pauli_qsqz: invalid simplex point");
  if (p0 < std::max(p1, p3)) throw DomainError("covariant_pauli_qsqz: p0 must dominate");
  const double v = 3.0 * p0 + p3 - std::sqrt(std::max(0.0, 8.0 * (p3 - p0 * p3 - p3 * p3))) - 2.0;
  return std::max(0.0, v);
}

inline double pauli_hashing_raw(const PauliParams& p) {
  double h = 0.0;
  for (double x : p.as_array())
    if (x > 0.0) h -= x * std::log2(x);
  return 1.0 - h;
}

inline double pauli_hashing(const PauliParams& p) { return std::max(0.0, pauli_hashing_raw(p)); }

/// Pauli probabilities p_k = ⟨Φ_k|J/2|Φ_k⟩ with Φ_k = (I ⊗ σ_k)Φ_2, or nothing
/// when the Choi state is not diagonal in that basis.
inline std::optional<PauliParams> pauli_params_from_choi(const ChoiMatrix& n, double tol = 1e-9) {
  if (n.input_dim() != 2 || n.output_dim() != 2) return std::nullopt;
  const CMat phi = maximally_entangled(2).matrix();
  CMat bell(4, 4);
  const CVec v = phi.col(0) * std::sqrt(2.0);  // |Φ_2⟩ up to phase
  for (int k = 0; k < 4; ++k) bell.col(k) = kron(CMat::Identity(2, 2), pauli_matrix(k)) * v;
  const CMat d = bell.adjoint() * (n.matrix() / 2.0) * bell;
  if (max_abs(d - CMat(d.diagonal().asDiagonal())) > tol) return std::nullopt;
  std::array<double, 4> p{};
  for (int k = 0; k < 4; ++k) p[k] = std::max(0.0, d(k, k).real());
  const double t = p[0] + p[1] + p[2] + p[3];
  return PauliParams(p[0] / t, p[1] / t, p[2] / t, std::max(0.0, 1.0 - (p[0] + p[1] + p[2]) / t));
}

/// Closed-form dual point (M, N = K = −M/2, R = 0) for the channel squeezing
/// program of a Pauli channel with all pᵢ > 0 and p₀ dominant.
inline std::map<std::string, CMat> pauli_dual_certificate(const PauliParams& p) {
  detail::require_dominant(p, "pauli_dual_certificate");
  if (!(p.p1 > 0.0 && p.p2 > 0.0 && p.p3 > 0.0)) throw DomainError("pauli_dual_certificate: needs p1, p2, p3 > 0");
  const double s1 = std::sqrt(p.p1), s2 = std::sqrt(p.p2), s3 = std::sqrt(p.p3);
  const double eta = -(s1 + s2) / (2.0 * s3);
  const double xi = -(s1 + s3) / (2.0 * s2) - (s2 + s3) / (2.0 * s1) - 1.0;
  const double zeta = (s1 + s3) / (2.0 * s2) - (s2 + s3) / (2.0 * s1);
  CMat m = CMat::Zero(4, 4);
  m(0, 0) = m(3, 3) = eta;
  m(0, 3) = m(3, 0) = 1.0 - eta;
  m(1, 1) = m(2, 2) = xi;
  m(1, 2) = m(2, 1) = zeta;
  return {{"M", m}, {"N", -0.5 * m}, {"K", -0.5 * m}, {"R", CMat::Zero(2, 2)}};
}

/// Largest violation of the channel dual constraints by (M, N, K, R) on the
/// Choi state of a d_A → d_B channel (0 when feasible).
inline double channel_dual_violation(const std::map<std::string, CMat>& c, int da, int db) {
  const CMat& m = c.at("M");
  const CMat& n = c.at("N");
  const CMat& k = c.at("K");
  const CMat& r = c.at("R");
  const int nn = da * db;
  const CMat c1 = (1.0 - r.trace().real() / da) * CMat::Identity(nn, nn) + kron(r, CMat::Identity(db, db)) - m;
  const CMat c2 = -(m + n + k);
  const Dims abe{da, db, db};
  const CMat c3 = expand_identity(n, abe, {0, 1}) + expand_identity(k, abe, {0, 2});
  double v = 0.0;
  for (const CMat* x : {&c1, &c2, &c3}) v = std::max(v, -min_eigenvalue(hermitian_part(*x)));
  return v;
}

// ---------------------------------------------------------------------------
// Diamond norm and ε-(anti-)degradability

namespace detail {

inline void require_trace_annihilating(const CMat& j, int din, int dout, const char* what) {
  if (j.rows() != din * dout || j.cols() != din * dout) throw DimensionError(std::string(what) + ": Choi size");
  if (max_abs(j - j.adjoint()) > 1e-9) throw DomainError(std::string(what) + ": Choi difference is not Hermitian");
  if (max_abs(partial_trace(j, Dims{din, dout}, {0})) > 1e-8)
    throw DomainError(std::string(what) + ": map is not a difference of trace-preserving maps");
}

/// J_D ↦ J(D ∘ S) for a fixed channel S: A → Y given by Kraus operators, with D: Y → X.
/// Block k of the stacked isometry is K_kᵀ ⊗ I_X.
inline sdp::LinearMap link_after(const KrausChannel& s, int dx) {
  const int da = s.input_dim(), dy = s.output_dim(), nk = s.rank();
  CMat big(nk * da * dx, dy * dx);
  for (int k = 0; k < nk; ++k)
    big.block(k * da * dx, 0, da * dx, dy * dx) = kron(s.ops()[k].transpose(), CMat::Identity(dx, dx));
  sdp::LinearMap m(dy * dx);
  m.conjugate(big).partial_trace(Dims{nk, da * dx}, {1});
  return m;
}

inline KrausChannel minimal_kraus(const KrausChannel& n) { return kraus_from_choi(choi_from_kraus(n)); }

}  // namespace detail

/// ½‖Δ‖_⋄ for Δ = difference of two trace-preserving maps (Choi J_Δ), as
///   max Re tr[J_Δ W]  s.t.  0 ⪯ W ⪯ ρ ⊗ I,  tr ρ = 1.
inline DistanceResult diamond_norm_half(const CMat& j_delta, int din, int dout, const sdp::ToleranceSet& tol = {}) {
  detail::require_trace_annihilating(j_delta, din, dout, "diamond_norm_half");
  const int n = din * dout;
  if (max_abs(j_delta) == 0.0) return {0.0, sdp::SolveStatus::Optimal, 0.0};
  sdp::SdpProblem p;
  const int w = p.add_variable("W", n);
  const int s = p.add_variable("slack", n);
  const int r = p.add_variable("rho", din);
  p.set_sense(sdp::Sense::Maximize);
  p.set_objective(w, hermitian_part(j_delta));
  sdp::LinearMap lift(din);
  lift.tensor_identity_right(dout).scale(-1.0);
  p.add_constraint("cap", {{w, sdp::LinearMap(n)}, {s, sdp::LinearMap(n)}, {r, lift}}, CMat::Zero(n, n));
  sdp::LinearMap tr(din);
  tr.partial_trace(Dims{din}, {});
  p.add_constraint("norm", {{r, tr}}, CMat::Identity(1, 1));
  const auto sol = sdp::solve(p, tol);
  return {std::max(0.0, sol.primal_value), sol.status, sol.max_residual};
}

inline DistanceResult diamond_norm_half(const ChoiMatrix& a, const ChoiMatrix& b, const sdp::ToleranceSet& tol = {}) {
  if (a.input_dim() != b.input_dim() || a.output_dim() != b.output_dim())
    throw DimensionError("diamond_norm_half: channels differ in dimension");
  return diamond_norm_half(CMat(a.matrix() - b.matrix()), a.input_dim(), a.output_dim(), tol);
}

/// max over `samples` Haar-random pure inputs on A ⊗ A′ of ½‖(Δ ⊗ id)(ψ)‖₁; a lower
/// bound on ½‖Δ‖_⋄.
inline double diamond_norm_half_sampled(const CMat& j_delta, int din, int dout, int samples, std::uint64_t seed) {
  detail::require_trace_annihilating(j_delta, din, dout, "diamond_norm_half_sampled");
  SplitMix64 rng(seed);
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    // |ψ⟩ = (G ⊗ I)Σ|ii⟩ with tr G†G = 1, so (id ⊗ Δ)(ψ) = (G ⊗ I) J (G† ⊗ I).
    CMat g = ginibre(din, din, rng);
    g /= std::sqrt((g.adjoint() * g).trace().real());
    const CMat big = kron(g, CMat::Identity(dout, dout));
    best = std::max(best, 0.5 * trace_norm(big * j_delta * big.adjoint()));
  }
  return best;
}

enum class DegradeDirection { Degradable, AntiDegradable };

struct EpsDegradability {
  double epsilon = 0.0;
  ChoiMatrix witness_map;
  DegradeDirection direction = DegradeDirection::Degradable;
  sdp::SolveStatus status = sdp::SolveStatus::NumericalFailure;
  int env_dim = 0;
};

namespace detail {

/// min over CPTP D: Y → X of ½‖T − D∘S‖_⋄ for channels T: A → X and S: A → Y, by
///   min μ  s.t.  Z ⪰ J(T) − J(D∘S),  μ I_A ⪰ tr_X Z,  Z, D ⪰ 0,  tr_X J_D = I_Y.
inline EpsDegradability eps_core(const KrausChannel& target, const KrausChannel& source, const sdp::ToleranceSet& tol) {
  const int da = target.input_dim(), dx = target.output_dim(), dy = source.output_dim();
  const int n = da * dx;
  sdp::SdpProblem p;
  const int d = p.add_variable("D", dy * dx);
  const int z = p.add_variable("Z", n);
  const int pp = p.add_variable("Z_minus_J", n);
  const int q = p.add_variable("cap_slack", da);
  const int mu = p.add_variable("mu", 1, sdp::Cone::FreeHermitian);
  p.set_objective(mu, CMat::Identity(1, 1));
  sdp::LinearMap tp(dy * dx);
  tp.partial_trace(Dims{dy, dx}, {0});
  p.add_constraint("tp", {{d, tp}}, CMat::Identity(dy, dy));
  p.add_constraint("dom", {{z, sdp::LinearMap(n)}, {pp, scaled_identity(n, -1.0)}, {d, link_after(source, dx)}},
                   choi_from_kraus(target).matrix());
  sdp::LinearMap mui(1);
  mui.trace_times_identity(da);
  sdp::LinearMap trx(n);
  trx.partial_trace(Dims{da, dx}, {0}).scale(-1.0);
  p.add_constraint("cap", {{mu, mui}, {z, trx}, {q, scaled_identity(da, -1.0)}}, CMat::Zero(da, da));
  const auto sol = sdp::solve(p, tol);
  EpsDegradability out;
  out.status = sol.status;
  if (sol.status != sdp::SolveStatus::Optimal) {
    out.epsilon = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.epsilon = std::clamp(sol.primal_value, 0.0, 1.0);
  out.witness_map = ChoiMatrix::nearest(sol.value("D"), dy, dx);
  return out;
}

}  // namespace detail

/// ε = min_D ½‖N^c − D∘N‖_⋄ with D: B → E.
inline EpsDegradability eps_degradable(const KrausChannel& n, const sdp::ToleranceSet& tol = {}) {
  const auto nm = detail::minimal_kraus(n);
  auto r = detail::eps_core(complementary(nm), nm, tol);
  r.direction = DegradeDirection::Degradable;
  r.env_dim = nm.rank();
  return r;
}

/// ε = min_A ½‖N − A∘N^c‖_⋄ with A: E → B.
inline EpsDegradability eps_antidegradable(const KrausChannel& n, const sdp::ToleranceSet& tol = {}) {
  const auto nm = detail::minimal_kraus(n);
  auto r = detail::eps_core(nm, complementary(nm), tol);
  r.direction = DegradeDirection::AntiDegradable;
  r.env_dim = nm.rank();
  return r;
}

// ---------------------------------------------------------------------------
// Capacity bounds

struct DiagonalOptimum {
  double value = 0.0;
  double argmax = 0.5;
};

/// max over p ∈ [0,1] of H(S(ρ_p)) − H(S^c(ρ_p)), ρ_p = diag(p, 1 − p): a 101-point
/// grid followed by golden-section search around the best grid point.
inline DiagonalOptimum q1_degradable_diag(const ChoiMatrix& s, double tol_value = 1e-9) {
  if (s.input_dim() != 2) throw DimensionError("q1_degradable_diag: qubit input required");
  const auto k = kraus_from_choi(s);
  const auto kc = complementary(k);
  auto ic = [&](double p) {
    CMat rho = CMat::Zero(2, 2);
    rho(0, 0) = p;
    rho(1, 1) = 1.0 - p;
    return entropy_bits(k.apply(rho)) - entropy_bits(kc.apply(rho));
  };
  const int grid = 100;
  int best = 0;
  double best_v = ic(0.0);
  for (int i = 1; i <= grid; ++i) {
    const double v = ic(static_cast<double>(i) / grid);
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  double lo = std::max(0, best - 1) / static_cast<double>(grid);
  double hi = std::min(grid, best + 1) / static_cast<double>(grid);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = ic(x1), f2 = ic(x2);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = ic(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = ic(x1);
    }
    if (std::abs(f1 - f2) < tol_value * 1e-3 && hi - lo < 1e-6) break;
  }
  DiagonalOptimum out{best_v, best / static_cast<double>(grid)};
  const double mid = 0.5 * (lo + hi), fm = ic(mid);
  if (fm > out.value) out = {fm, mid};
  return out;
}

namespace detail {

inline std::string channel_digest(const ChoiMatrix& n, const std::string& extra) {
  Digest d;
  d.add(n.matrix());
  d.add(n.input_dim());
  d.add(n.output_dim());
  d.add(extra);
  return d.hex();
}

inline BoundReport channel_report(const std::string& name, const ChoiMatrix& n, double tolerance) {
  BoundReport r;
  r.bound_name = name;
  r.tolerance = tolerance;
  r.inputs_digest = channel_digest(n, name);
  return r;
}

/// ε log(d − 1), reading 0·log 0 as 0.
inline double eps_log_minus_one(double eps, int d) { return d > 1 && eps > 0.0 ? eps * std::log2(d - 1.0) : 0.0; }

}  // namespace detail

struct QsqzResult {
  BoundReport report;
  double free_weight = 0.0;
  double degradability_eps = 0.0;  // of the squeezed channel
  DiagonalOptimum q1;
};

/// [1 − w]·max_p I_c(ρ_p, S) for a qubit channel with ADG-squeezed channel S, after
/// checking that S is degradable.
inline QsqzResult q_sqz_qubit_detail(const ChoiMatrix& n, const sdp::ToleranceSet& tol = {}) {
  Stopwatch sw;
  QsqzResult out;
  out.report = detail::channel_report("qsqz", n, tol.gap);
  auto& r = out.report;
  if (n.input_dim() != 2 || n.output_dim() != 2) {
    r.status = status::kNotApplicable;
    r.value = std::numeric_limits<double>::quiet_NaN();
    r.runtime_ms = sw.ms();
    return out;
  }
  const auto sq = squeeze_channel_adg(n, tol);
  if (sq.status != sdp::SolveStatus::Optimal) {
    r.status = sdp::to_string(sq.status);
    r.value = std::numeric_limits<double>::quiet_NaN();
    r.runtime_ms = sw.ms();
    return out;
  }
  out.free_weight = sq.free_weight;
  if (sq.free_weight >= 1.0) {
    r.status = status::kOptimal;
    r.value = 0.0;
    r.runtime_ms = sw.ms();
    return out;
  }
  const ChoiMatrix& s = *sq.squeezed_channel;
  const auto deg = eps_degradable(kraus_from_choi(s), tol);
  out.degradability_eps = deg.epsilon;
  out.q1 = q1_degradable_diag(s);
  r.value = (1.0 - sq.free_weight) * std::max(0.0, out.q1.value);
  if (deg.status != sdp::SolveStatus::Optimal || deg.epsilon > tol::kDegradableMarginal)
    r.status = status::kError;
  else if (deg.epsilon > tol::kDegradable)
    r.status = status::kMarginal;
  else
    r.status = status::kOptimal;
  r.runtime_ms = sw.ms();
  return out;
}

inline BoundReport q_sqz_qubit(const ChoiMatrix& n, const sdp::ToleranceSet& tol = {}) {
  return q_sqz_qubit_detail(n, tol).report;
}

/// ε log(|B| − 1) + 2ε log|B| + h(ε) + g(ε).
inline double conti_adg_formula(double eps, int db) {
  eps = std::clamp(eps, 0.0, 1.0);
  return detail::eps_log_minus_one(eps, db) + 2.0 * eps * std::log2(db) + binary_entropy(eps) + bosonic_entropy(eps);
}

/// ε log(d_E − 1) + h(ε) + 2ε log d_E + g(ε), the additive part of the ε-degradable bound.
inline double conti_deg_penalty(double eps, int de) {
  eps = std::clamp(eps, 0.0, 1.0);
  return detail::eps_log_minus_one(eps, de) + binary_entropy(eps) + 2.0 * eps * std::log2(de) + bosonic_entropy(eps);
}

inline BoundReport q_conti_adg(const KrausChannel& n, const sdp::ToleranceSet& tol = {}) {
  Stopwatch sw;
  const auto choi = choi_from_kraus(n);
  auto r = detail::channel_report("conti-adg", choi, tol.gap);
  const auto e = eps_antidegradable(n, tol);
  if (e.status == sdp::SolveStatus::Optimal) {
    r.value = conti_adg_formula(e.epsilon, n.output_dim());
    r.status = status::kOptimal;
  } else {
    r.value = std::numeric_limits<double>::quiet_NaN();
    r.status = sdp::to_string(e.status);
  }
  r.runtime_ms = sw.ms();
  return r;
}

/// Q^(1)(N) + penalty(ε) for qubit channels. Q^(1) is evaluated over diagonal inputs,
/// which is exact only for degradable channels; when ε > tol::kDegradable the value
/// is reported with status "marginal".
inline BoundReport q_conti_deg(const KrausChannel& n, const sdp::ToleranceSet& tol = {}) {
  Stopwatch sw;
  const auto choi = choi_from_kraus(n);
  auto r = detail::channel_report("conti-deg", choi, tol.gap);
  if (n.input_dim() != 2 || n.output_dim() != 2) {
    r.value = std::numeric_limits<double>::quiet_NaN();
    r.status = status::kNotApplicable;
    r.runtime_ms = sw.ms();
    return r;
  }
  const auto e = eps_degradable(n, tol);
  if (e.status != sdp::SolveStatus::Optimal) {
    r.value = std::numeric_limits<double>::quiet_NaN();
    r.status = sdp::to_string(e.status);
    r.runtime_ms = sw.ms();
    return r;
  }
  const double eps = e.epsilon <= tol::kDegradable ? 0.0 : e.epsilon;
  r.value = std::max(0.0, q1_degradable_diag(choi).value) + conti_deg_penalty(eps, e.env_dim);
  r.status = eps == 0.0 ? status::kOptimal : status::kMarginal;
  r.runtime_ms = sw.ms();
  return r;
}

namespace detail {

inline BoundReport analytic_report(const std::string& name, const ChoiMatrix& n, double value) {
  Stopwatch sw;
  auto r = channel_report(name, n, 0.0);
  r.value = value;
  r.status = status::kAnalytic;
  r.runtime_ms = sw.ms();
  return r;
}

}  // namespace detail

inline BoundReport no_cloning_report(const PauliParams& p) {
  return detail::analytic_report("nocloning", choi_from_kraus(pauli(p)), no_cloning_bound(p));
}

inline BoundReport pauli_hashing_report(const PauliParams& p) {
  return detail::analytic_report("hashing", choi_from_kraus(pauli(p)), pauli_hashing(p));
}

inline BoundReport covariant_pauli_report(double p0, double p3) {
  return detail::analytic_report("covpauli", choi_from_kraus(covariant_pauli(p0, p3)), covariant_pauli_qsqz(p0, p3));
}

}  // namespace sqz
