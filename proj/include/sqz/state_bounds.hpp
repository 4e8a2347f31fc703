#pragma once

// State-level quantities: ADG / PPT squeezing, the Ê_rev bounds built on them,
// anti-degradability tests, set and map distances with their continuity bounds.
//
// A state ρ_AB is anti-degradable iff it has a symmetric extension τ_ABE with
// E ≅ B, i.e. tr_E τ_ABE = tr_B τ_ABE = ρ_AB (the latter read on A⊗E).

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include "sqz/channels.hpp"
#include "sqz/report.hpp"
#include "sqz/sdp/solver.hpp"

namespace sqz {

enum class FreeSet { ADG, PPT };

inline const char* to_string(FreeSet f) { return f == FreeSet::ADG ? "adg" : "ppt"; }

namespace tol {
/// Free weights within this distance of 0 or 1 are snapped.
inline constexpr double kSnap = 1e-7;
/// Spectral terms below this weight are dropped from Σλ S(B).
inline constexpr double kSpectral = 1e-10;
}  // namespace tol

struct SqueezeResult {
  double free_weight = 0.0;
  double r_max = std::numeric_limits<double>::infinity();
  std::optional<DensityOperator> free_part;
  std::optional<DensityOperator> squeezed;
  std::map<std::string, CMat> dual_certificate;
  // Isometries onto the faces the program was posed on: the support of ρ and, for
  // ADG, the subspace of admissible extensions. Identities when ρ has full rank;
  // dual feasibility of the certificate holds after compressing to these.
  CMat support;
  CMat extension_face;
  sdp::SolveStatus status = sdp::SolveStatus::NumericalFailure;
  double primal_objective = 0.0;  // tr ω before snapping
  double dual_objective = 0.0;
  double max_residual = 0.0;
};

namespace detail {

inline void require_two_qubits(const DensityOperator& rho, const char* what) {
  require_bipartite(rho, what);
  if (rho.dims()[0] != 2 || rho.dims()[1] != 2) throw DimensionError(std::string(what) + ": needs a two-qubit state");
}

/// τ_ABE ↦ tr_E τ_ABE and τ_ABE ↦ tr_B τ_ABE (on A⊗E), extension system last.
inline sdp::LinearMap trace_out_e(int da, int db, double scale = 1.0) {
  sdp::LinearMap m(da * db * db);
  m.partial_trace(Dims{da, db, db}, {0, 1}).scale(scale);
  return m;
}
inline sdp::LinearMap trace_out_b(int da, int db, double scale = 1.0) {
  sdp::LinearMap m(da * db * db);
  m.partial_trace(Dims{da, db, db}, {0, 2}).scale(scale);
  return m;
}

inline sdp::LinearMap scaled_identity(int n, double s) {
  sdp::LinearMap m(n);
  if (s != 1.0) m.scale(s);
  return m;
}

/// Orthonormal basis of the support of a PSD matrix (all of C^n when full rank).
inline CMat support_basis(const CMat& m, double rank_tol = 1e-12) {
  const auto sp = hermitian_eig(m);
  const double top = std::max(1.0, std::abs(sp.eigenvalues(0)));
  int r = 0;
  while (r < sp.eigenvalues.size() && sp.eigenvalues(r) > rank_tol * top) ++r;
  if (r == m.rows()) return CMat::Identity(m.rows(), m.cols());
  return sp.eigenvectors.leftCols(r);
}

/// Basis of (S ⊗ C^{d_B}) ∩ swap_{BE}(S ⊗ C^{d_B}) inside A⊗B⊗E, the subspace that
/// carries every symmetric extension of an operator supported on S = range(v).
/// May have zero columns.
inline CMat extension_face(const CMat& v, int da, int db) {
  const int n = da * db;
  if (v.cols() == n) return CMat::Identity(n * db, n * db);
  const CMat pi = kron(v * v.adjoint(), CMat::Identity(db, db));
  const CMat swap = permutation_operator(Dims{da, db, db}, {0, 2, 1});
  const auto sp = hermitian_eig(hermitian_part(pi + swap * pi * swap.adjoint()));
  int w = 0;
  while (w < sp.eigenvalues.size() && sp.eigenvalues(w) > 2.0 - 1e-8) ++w;
  return sp.eigenvectors.leftCols(w);
}

/// X ↦ V X V† (identity when V is square).
inline sdp::LinearMap lift(const CMat& v) {
  sdp::LinearMap m(static_cast<int>(v.cols()));
  if (v.rows() != v.cols()) m.conjugate(v);
  return m;
}

/// X ↦ V† X V.
inline sdp::LinearMap& compress(sdp::LinearMap& m, const CMat& v) {
  if (v.rows() != v.cols()) m.conjugate(v.adjoint());
  return m;
}

/// T' ↦ V† tr_E(W T' W†) V  or  V† tr_B(W T' W†) V.
inline sdp::LinearMap face_marginal(const CMat& v, const CMat& w, int da, int db, bool trace_e, double scale) {
  sdp::LinearMap m = lift(w);
  m.partial_trace(Dims{da, db, db}, trace_e ? std::vector<int>{0, 1} : std::vector<int>{0, 2});
  compress(m, v).scale(scale);
  return m;
}

inline CMat lift_matrix(const CMat& v, const CMat& x) { return v.rows() == v.cols() ? x : CMat(v * x * v.adjoint()); }

/// Solution of min tr ω s.t. ω + τ = X, τ has a symmetric extension on B, optionally
/// with tr_B ω = tr ω / d_A · I_A (the channel version, multiplier R).
struct AdgCore {
  sdp::SolveStatus status = sdp::SolveStatus::NumericalFailure;
  CMat omega, tau;
  std::map<std::string, CMat> cert;
  CMat support, face;
  double primal = 0.0, dual = 0.0, residual = 0.0;
};

/// For rank-deficient X the program is posed on its support S (ω, τ) and on the
/// face of extensions supported in (S⊗E) ∩ swap(S⊗E); without this the dual
/// optimum is not attained and the interior-point iterates stall. The certificate
/// is the reduced one, lifted by zero-padding outside S.
inline AdgCore adg_core(const CMat& x, int da, int db, bool channel, const sdp::ToleranceSet& tol) {
  const int n = da * db;
  AdgCore out;
  out.support = support_basis(x);
  out.face = extension_face(out.support, da, db);
  const CMat& v = out.support;
  const int r = static_cast<int>(v.cols());

  if (out.face.cols() == 0) {
    // Only τ = 0 has a symmetric extension on this support.
    const CMat p = v * v.adjoint();
    out.status = sdp::SolveStatus::Optimal;
    out.omega = x;
    out.tau = CMat::Zero(n, n);
    out.cert = {{"M", p}, {"N", -p}, {"K", CMat::Zero(n, n)}};
    if (channel) out.cert["R"] = CMat::Zero(da, da);
    out.primal = out.dual = x.trace().real();
    return out;
  }

  sdp::SdpProblem p;
  const int w = p.add_variable("omega", r);
  const int t = p.add_variable("tau", r);
  const int e = p.add_variable("tau_abe", static_cast<int>(out.face.cols()));
  p.set_objective(w, CMat::Identity(r, r));
  p.add_constraint("M", {{w, sdp::LinearMap(r)}, {t, sdp::LinearMap(r)}}, lift_matrix(v.adjoint(), x));
  p.add_constraint("N", {{t, sdp::LinearMap(r)}, {e, face_marginal(v, out.face, da, db, true, -1.0)}},
                   CMat::Zero(r, r));
  p.add_constraint("K", {{t, sdp::LinearMap(r)}, {e, face_marginal(v, out.face, da, db, false, -1.0)}},
                   CMat::Zero(r, r));
  if (channel) {
    // tr ω / d_A · I_A − tr_B ω = 0, written so its multiplier is R.
    sdp::LinearMap tr = lift(v);
    tr.trace_times_identity(da).scale(1.0 / da);
    sdp::LinearMap trb = lift(v);
    trb.partial_trace(Dims{da, db}, {0}).scale(-1.0);
    p.add_constraint("R", {{w, tr}, {w, trb}}, CMat::Zero(da, da));
  }
  const auto sol = sdp::solve(p, tol);
  out.status = sol.status;
  out.residual = sol.max_residual;
  out.primal = sol.primal_value;
  out.dual = sol.dual_value;
  if (sol.status != sdp::SolveStatus::Optimal) return out;
  out.omega = lift_matrix(v, sol.value("omega"));
  out.tau = lift_matrix(v, sol.value("tau"));
  for (const char* k : {"M", "N", "K"}) out.cert[k] = lift_matrix(v, sol.dual(k));
  if (channel) out.cert["R"] = sol.dual("R");
  return out;
}

/// Free weight from tr τ, snapped to {0, 1} within tol::kSnap.
inline double snap_weight(double w) {
  if (w < tol::kSnap) return 0.0;
  if (w > 1.0 - tol::kSnap) return 1.0;
  return w;
}

/// Fills weight, r_max and the two normalized parts from ρ = ω + τ.
inline void set_parts(SqueezeResult& r, const DensityOperator& rho, const CMat& omega, const CMat& tau) {
  r.primal_objective = omega.trace().real();
  const double w = snap_weight(tau.trace().real());
  r.free_weight = w;
  if (w == 0.0) {
    r.squeezed = rho;
    return;
  }
  r.r_max = -std::log2(w);
  r.free_part = DensityOperator::project(tau, rho.dims());
  if (w < 1.0) r.squeezed = DensityOperator::project(omega, rho.dims());
}

}  // namespace detail

/// max{tr τ : τ ≤ ρ, τ anti-degradable} via
///   min tr ω  s.t.  ω + τ = ρ,  τ = tr_E τ_ABE = tr_B τ_ABE,  ω, τ, τ_ABE ⪰ 0.
/// Multipliers M, N, K of the three equalities form the dual certificate.
inline SqueezeResult squeeze_adg(const DensityOperator& rho, const sdp::ToleranceSet& tol = {}) {
  require_bipartite(rho, "squeeze_adg");
  auto core = detail::adg_core(rho.matrix(), rho.dims()[0], rho.dims()[1], false, tol);
  SqueezeResult r;
  r.status = core.status;
  r.max_residual = core.residual;
  r.dual_objective = core.dual;
  r.support = core.support;
  r.extension_face = core.face;
  if (core.status != sdp::SolveStatus::Optimal) {
    r.squeezed = rho;
    return r;
  }
  r.dual_certificate = std::move(core.cert);
  detail::set_parts(r, rho, core.omega, core.tau);
  return r;
}

/// Same as squeeze_adg with the free set replaced by PPT states: τ^{T_B} = Z ⪰ 0.
inline SqueezeResult squeeze_ppt(const DensityOperator& rho, const sdp::ToleranceSet& tol = {}) {
  require_bipartite(rho, "squeeze_ppt");
  const int da = rho.dims()[0], db = rho.dims()[1], n = da * db;
  const CMat v = detail::support_basis(rho.matrix());
  const int r = static_cast<int>(v.cols());
  sdp::SdpProblem p;
  const int w = p.add_variable("omega", r);
  const int t = p.add_variable("tau", r);
  const int z = p.add_variable("tau_pt", n);
  p.set_objective(w, CMat::Identity(r, r));
  p.add_constraint("M", {{w, sdp::LinearMap(r)}, {t, sdp::LinearMap(r)}}, detail::lift_matrix(v.adjoint(), rho.matrix()));
  sdp::LinearMap pt = detail::lift(v);
  pt.partial_transpose(Dims{da, db}, 1).scale(-1.0);
  p.add_constraint("N", {{z, sdp::LinearMap(n)}, {t, pt}}, CMat::Zero(n, n));
  const auto sol = sdp::solve(p, tol);
  SqueezeResult out;
  out.status = sol.status;
  out.max_residual = sol.max_residual;
  out.dual_objective = sol.dual_value;
  out.support = v;
  if (sol.status != sdp::SolveStatus::Optimal) {
    out.squeezed = rho;
    return out;
  }
  const CMat omega = detail::lift_matrix(v, sol.value("omega"));
  const CMat tau = detail::lift_matrix(v, sol.value("tau"));
  out.dual_certificate["M"] = detail::lift_matrix(v, sol.dual("M"));
  out.dual_certificate["N"] = sol.dual("N");
  detail::set_parts(out, rho, omega, tau);
  return out;
}

inline SqueezeResult squeeze(const DensityOperator& rho, FreeSet f, const sdp::ToleranceSet& tol = {}) {
  return f == FreeSet::ADG ? squeeze_adg(rho, tol) : squeeze_ppt(rho, tol);
}

/// Σ_i λ_i S(B)_{ψ_i} over the spectral decomposition of ω (eigenbasis as returned
/// by the eigensolver inside degenerate eigenspaces).
inline double spectral_entanglement(const DensityOperator& omega) {
  require_bipartite(omega, "spectral_entanglement");
  const auto sp = hermitian_eig(omega.matrix());
  double s = 0.0;
  for (int i = 0; i < sp.eigenvalues.size(); ++i) {
    const double lam = sp.eigenvalues(i);
    if (lam < tol::kSpectral) continue;
    const CVec psi = sp.eigenvectors.col(i);
    s += lam * entropy_bits(partial_trace(psi * psi.adjoint(), omega.dims(), {1}));
  }
  return s;
}

/// Entanglement of formation of a two-qubit state from its concurrence.
inline double entanglement_of_formation_2q(const DensityOperator& rho) {
  detail::require_two_qubits(rho, "entanglement_of_formation_2q");
  const CMat yy = kron(pauli_matrix(2), pauli_matrix(2));
  const CMat tilde = yy * rho.matrix().conjugate() * yy;
  Eigen::ComplexEigenSolver<CMat> es(rho.matrix() * tilde);
  std::vector<double> l;
  for (int i = 0; i < 4; ++i) l.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i).real())));
  std::sort(l.begin(), l.end(), std::greater<>());
  const double c = std::max(0.0, l[0] - l[1] - l[2] - l[3]);
  const double x = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c)));
  return binary_entropy(std::min(1.0, x));
}

namespace detail {

inline std::string squeeze_status(const SqueezeResult& s) {
  return s.status == sdp::SolveStatus::Optimal ? status::kOptimal : std::string(sdp::to_string(s.status));
}

inline std::string state_digest(const DensityOperator& rho, const std::string& extra) {
  Digest d;
  d.add(rho.matrix());
  for (int k : rho.dims()) d.add(k);
  d.add(extra);
  return d.hex();
}

}  // namespace detail

/// (1 − W)·Σλ S(B) over the squeezed state; Ê_rev^u for ADG, Ê_rev^npt for PPT.
inline BoundReport e_rev_u_hat(const DensityOperator& rho, FreeSet f = FreeSet::ADG,
                               const sdp::ToleranceSet& tol = {}) {
  Stopwatch sw;
  BoundReport r;
  r.bound_name = f == FreeSet::ADG ? "erev-u-hat" : "erev-npt-hat";
  r.tolerance = tol.gap;
  r.inputs_digest = detail::state_digest(rho, r.bound_name);
  const auto s = squeeze(rho, f, tol);
  r.status = detail::squeeze_status(s);
  if (s.status == sdp::SolveStatus::Optimal)
    r.value = s.free_weight >= 1.0 ? 0.0 : (1.0 - s.free_weight) * spectral_entanglement(*s.squeezed);
  else
    r.value = std::numeric_limits<double>::quiet_NaN();
  r.runtime_ms = sw.ms();
  return r;
}

/// (1 − W)·E_F(ω) with the exact two-qubit entanglement of formation.
inline BoundReport e_rev_u(const DensityOperator& rho, FreeSet f = FreeSet::ADG, const sdp::ToleranceSet& tol = {}) {
  detail::require_two_qubits(rho, "e_rev_u");
  Stopwatch sw;
  BoundReport r;
  r.bound_name = f == FreeSet::ADG ? "erev-u" : "erev-npt";
  r.tolerance = tol.gap;
  r.inputs_digest = detail::state_digest(rho, r.bound_name);
  const auto s = squeeze(rho, f, tol);
  r.status = detail::squeeze_status(s);
  if (s.status == sdp::SolveStatus::Optimal)
    r.value = s.free_weight >= 1.0 ? 0.0 : (1.0 - s.free_weight) * entanglement_of_formation_2q(*s.squeezed);
  else
    r.value = std::numeric_limits<double>::quiet_NaN();
  r.runtime_ms = sw.ms();
  return r;
}

struct AdgTest {
  bool adg = false;
  double margin = 0.0;
};

/// Tr ρ_B² ≥ Tr ρ² − 4√det ρ, with margin = LHS − RHS.
inline AdgTest is_adg_two_qubit(const DensityOperator& rho) {
  detail::require_two_qubits(rho, "is_adg_two_qubit");
  const CMat rb = partial_trace(rho.matrix(), rho.dims(), {1});
  const double lhs = (rb * rb).trace().real();
  const double purity = (rho.matrix() * rho.matrix()).trace().real();
  const RVec ev = hermitian_eig(rho.matrix()).eigenvalues;
  double det = 1.0;
  for (int i = 0; i < 4; ++i) det *= std::max(0.0, ev(i));
  AdgTest t;
  t.margin = lhs - (purity - 4.0 * std::sqrt(det));
  t.adg = t.margin >= 0.0;
  return t;
}

/// Whether ρ has a symmetric extension on B: feasibility of
/// {τ_ABE ⪰ 0, tr_E τ_ABE = tr_B τ_ABE = ρ}.
inline bool is_adg_general(const DensityOperator& rho, const sdp::ToleranceSet& tol = {}) {
  require_bipartite(rho, "is_adg_general");
  const int da = rho.dims()[0], db = rho.dims()[1];
  const CMat v = detail::support_basis(rho.matrix());
  const CMat wf = detail::extension_face(v, da, db);
  if (wf.cols() == 0) return false;
  const CMat rho_r = detail::lift_matrix(v.adjoint(), rho.matrix());
  sdp::SdpProblem p;
  const int e = p.add_variable("tau_abe", static_cast<int>(wf.cols()));
  p.add_constraint("E", {{e, detail::face_marginal(v, wf, da, db, true, 1.0)}}, rho_r);
  p.add_constraint("B", {{e, detail::face_marginal(v, wf, da, db, false, 1.0)}}, rho_r);
  const auto sol = sdp::solve(p, tol);
  if (sol.status == sdp::SolveStatus::Optimal) return true;
  if (sol.status == sdp::SolveStatus::PrimalInfeasible) return false;
  throw DomainError(std::string("is_adg_general: solver returned ") + sdp::to_string(sol.status));
}

struct DistanceResult {
  double value = 0.0;
  sdp::SolveStatus status = sdp::SolveStatus::NumericalFailure;
  double max_residual = 0.0;
};

/// min ½‖ρ − σ‖₁ over anti-degradable σ, with ρ − σ = P − Q.
inline DistanceResult d_set(const DensityOperator& rho, const sdp::ToleranceSet& tol = {}) {
  require_bipartite(rho, "d_set");
  const int da = rho.dims()[0], db = rho.dims()[1], n = da * db;
  sdp::SdpProblem p;
  const int pp = p.add_variable("P", n);
  const int qq = p.add_variable("Q", n);
  const int s = p.add_variable("sigma_abe", n * db);
  p.set_objective(pp, 0.5 * CMat::Identity(n, n));
  p.set_objective(qq, 0.5 * CMat::Identity(n, n));
  p.add_constraint("split",
                   {{pp, sdp::LinearMap(n)}, {qq, detail::scaled_identity(n, -1.0)}, {s, detail::trace_out_e(da, db)}},
                   rho.matrix());
  p.add_constraint("sym", {{s, detail::trace_out_e(da, db)}, {s, detail::trace_out_b(da, db, -1.0)}},
                   CMat::Zero(n, n));
  sdp::LinearMap tr(n * db);
  tr.partial_trace(Dims{n * db}, {});
  p.add_constraint("norm", {{s, tr}}, CMat::Identity(1, 1));
  const auto sol = sdp::solve(p, tol);
  return {std::clamp(sol.primal_value, 0.0, 1.0), sol.status, sol.max_residual};
}

/// ρ_AE ↦ D(ρ_AE) as a linear map of the Choi matrix of D: E → B, where E is the
/// purifying system of dimension `rank`. With |φ⟩ = Σ φ_{(a,b),k}|a b k⟩ and
/// V_b[a,k] = φ_{(a,b),k}, the map is J ↦ Σ_b (V_b ⊗ I_B) J (V_b ⊗ I_B)†.
inline sdp::LinearMap map_distance_link(const Purification& pur, int da, int db) {
  const int r = pur.reference_dim;
  CMat big = CMat::Zero(db * da * db, r * db);
  for (int b = 0; b < db; ++b) {
    CMat vb(da, r);
    for (int a = 0; a < da; ++a)
      for (int k = 0; k < r; ++k) vb(a, k) = pur.vector((a * db + b) * r + k);
    big.block(b * da * db, 0, da * db, r * db) = kron(vb, CMat::Identity(db, db));
  }
  sdp::LinearMap m(r * db);
  m.conjugate(big).partial_trace(Dims{db, da * db}, {1});
  return m;
}

/// min over CPTP D: E → B of ½‖ρ_AB − D(ρ_AE)‖₁ using the eigen-purification.
inline DistanceResult d_map(const DensityOperator& rho, const Purification& pur, const sdp::ToleranceSet& tol = {}) {
  require_bipartite(rho, "d_map");
  const int da = rho.dims()[0], db = rho.dims()[1], n = da * db, r = pur.reference_dim;
  sdp::SdpProblem p;
  const int pp = p.add_variable("P", n);
  const int qq = p.add_variable("Q", n);
  const int j = p.add_variable("J", r * db);
  p.set_objective(pp, 0.5 * CMat::Identity(n, n));
  p.set_objective(qq, 0.5 * CMat::Identity(n, n));
  p.add_constraint(
      "split", {{pp, sdp::LinearMap(n)}, {qq, detail::scaled_identity(n, -1.0)}, {j, map_distance_link(pur, da, db)}},
      rho.matrix());
  sdp::LinearMap trb(r * db);
  trb.partial_trace(Dims{r, db}, {0});
  p.add_constraint("tp", {{j, trb}}, CMat::Identity(r, r));
  const auto sol = sdp::solve(p, tol);
  return {std::clamp(sol.primal_value, 0.0, 1.0), sol.status, sol.max_residual};
}

inline DistanceResult d_map(const DensityOperator& rho, const sdp::ToleranceSet& tol = {}) {
  return d_map(rho, purify(rho), tol);
}

namespace detail {

inline BoundReport distance_report(const std::string& name, const DensityOperator& rho, const DistanceResult& d,
                                   double value, const sdp::ToleranceSet& tol, const Stopwatch& sw) {
  BoundReport r;
  r.bound_name = name;
  r.tolerance = tol.gap;
  r.inputs_digest = state_digest(rho, name);
  r.status = d.status == sdp::SolveStatus::Optimal ? status::kOptimal : std::string(sdp::to_string(d.status));
  r.value = d.status == sdp::SolveStatus::Optimal ? value : std::numeric_limits<double>::quiet_NaN();
  r.runtime_ms = sw.ms();
  return r;
}

}  // namespace detail

/// 2ε log₂|A| + g(ε) with ε = d_set.
inline double scb_formula(double eps, int da) { return 2.0 * eps * std::log2(da) + bosonic_entropy(eps); }

/// 4ε log₂|B| + 2g(ε) with ε = d_map.
inline double mcb_formula(double eps, int db) { return 4.0 * eps * std::log2(db) + 2.0 * bosonic_entropy(eps); }

inline BoundReport e_scb(const DensityOperator& rho, const sdp::ToleranceSet& tol = {}) {
  Stopwatch sw;
  const auto d = d_set(rho, tol);
  return detail::distance_report("scb", rho, d, scb_formula(d.value, rho.dims()[0]), tol, sw);
}

inline BoundReport e_mcb(const DensityOperator& rho, const sdp::ToleranceSet& tol = {}) {
  Stopwatch sw;
  const auto d = d_map(rho, tol);
  return detail::distance_report("mcb", rho, d, mcb_formula(d.value, rho.dims()[1]), tol, sw);
}

inline BoundReport d_set_report(const DensityOperator& rho, const sdp::ToleranceSet& tol = {}) {
  Stopwatch sw;
  const auto d = d_set(rho, tol);
  return detail::distance_report("dset", rho, d, d.value, tol, sw);
}

inline BoundReport d_map_report(const DensityOperator& rho, const sdp::ToleranceSet& tol = {}) {
  Stopwatch sw;
  const auto d = d_map(rho, tol);
  return detail::distance_report("dmap", rho, d, d.value, tol, sw);
}

/// Coherent information I_c(A⟩B), a lower bound on E_D,→. May be negative.
inline double hashing_lower(const DensityOperator& rho) { return coherent_information(rho); }

inline BoundReport hashing_report(const DensityOperator& rho) {
  Stopwatch sw;
  BoundReport r;
  r.bound_name = "hashing";
  r.value = hashing_lower(rho);
  r.tolerance = 0.0;
  r.status = status::kAnalytic;
  r.inputs_digest = detail::state_digest(rho, r.bound_name);
  r.runtime_ms = sw.ms();
  return r;
}

}  // namespace sqz
