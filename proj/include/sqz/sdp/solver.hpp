#pragma once

// Primal-dual interior-point method for block SDPs in real symmetric form.
//
// The problem is solved through its homogeneous self-dual embedding
//   A x − b τ = 0,   Aᵀy + s − c τ = 0,   bᵀy − cᵀx − κ = 0,
// with Nesterov–Todd scaling and a Mehrotra predictor-corrector. Optimality
// is read off x/τ, y/τ; infeasibility from the ray where τ → 0.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "sqz/sdp/embed.hpp"

namespace sqz::sdp {

struct RealSolution {
  SolveStatus status = SolveStatus::NumericalFailure;
  std::vector<RMat> x;
  std::vector<RMat> s;
  RVec y;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
};

namespace detail {

/// Rows grouped by the block they touch, for Schur-complement assembly.
struct BlockRows {
  std::vector<int> idx;
  std::vector<const std::vector<SymEntry>*> entries;
  std::vector<int> weight;  // number of nonzeros counting both triangles
};

class RealIpm {
 public:
  RealIpm(const RealSdp& p, const ToleranceSet& tol) : p_(p), tol_(tol) {}

  RealSolution run() {
    RealSolution out;
    const int m0 = p_.num_rows();
    nb_ = static_cast<int>(p_.block_dims.size());
    for (int d : p_.block_dims)
      if (d < 1) throw ModelError("solve: empty block");

    // Row scaling and removal of zero or linearly dependent rows.
    scale_.assign(m0, 1.0);
    std::vector<int> nonzero;
    for (int i = 0; i < m0; ++i) {
      double nrm2 = 0.0;
      for (const auto& rb : p_.rows[i])
        for (const auto& e : rb.entries) nrm2 += (e.row == e.col ? 1.0 : 2.0) * e.value * e.value;
      scale_[i] = std::sqrt(nrm2);
      if (scale_[i] == 0.0) {
        if (std::abs(p_.b(i)) > 1e-12 * (1.0 + p_.b.cwiseAbs().maxCoeff())) {
          out.status = SolveStatus::PrimalInfeasible;
          return out;
        }
      } else {
        nonzero.push_back(i);
      }
    }
    rows_.clear();
    b_.resize(static_cast<Eigen::Index>(nonzero.size()));
    for (std::size_t r = 0; r < nonzero.size(); ++r) {
      const int i = nonzero[r];
      auto row = p_.rows[i];
      for (auto& rb : row)
        for (auto& e : rb.entries) e.value /= scale_[i];
      rows_.push_back(std::move(row));
      b_(static_cast<Eigen::Index>(r)) = p_.b(i) / scale_[i];
    }
    build_block_rows();

    std::vector<int> keep;
    if (!select_independent(keep)) {
      out.status = SolveStatus::PrimalInfeasible;
      return out;
    }
    if (keep.size() != rows_.size()) {
      std::vector<std::vector<RowBlock>> kept_rows;
      RVec kept_b(static_cast<Eigen::Index>(keep.size()));
      std::vector<int> kept_orig;
      for (std::size_t r = 0; r < keep.size(); ++r) {
        kept_rows.push_back(rows_[keep[r]]);
        kept_b(static_cast<Eigen::Index>(r)) = b_(keep[r]);
        kept_orig.push_back(nonzero[keep[r]]);
      }
      rows_ = std::move(kept_rows);
      b_ = kept_b;
      nonzero = kept_orig;
      build_block_rows();
    }
    orig_index_ = nonzero;

    iterate(out);

    // Map the multipliers back to the caller's rows.
    RVec y_full = RVec::Zero(m0);
    for (std::size_t r = 0; r < orig_index_.size(); ++r)
      y_full(orig_index_[r]) = out.y(static_cast<Eigen::Index>(r)) / scale_[orig_index_[r]];
    out.y = y_full;
    return out;
  }

 private:
  int m() const { return static_cast<int>(rows_.size()); }

  void build_block_rows() {
    brows_.assign(nb_, BlockRows{});
    for (int i = 0; i < m(); ++i)
      for (const auto& rb : rows_[i]) {
        int w = 0;
        for (const auto& e : rb.entries) w += e.row == e.col ? 1 : 2;
        brows_[rb.block].idx.push_back(i);
        brows_[rb.block].entries.push_back(&rb.entries);
        brows_[rb.block].weight.push_back(w);
      }
  }

  RVec apply_a(const std::vector<RMat>& x) const {
    RVec out = RVec::Zero(m());
    for (int k = 0; k < nb_; ++k) {
      const auto& br = brows_[k];
      for (std::size_t a = 0; a < br.idx.size(); ++a) out(br.idx[a]) += sym_dot(*br.entries[a], x[k]);
    }
    return out;
  }

  std::vector<RMat> apply_at(const RVec& y) const {
    std::vector<RMat> out;
    for (int k = 0; k < nb_; ++k) {
      out.push_back(RMat::Zero(p_.block_dims[k], p_.block_dims[k]));
      const auto& br = brows_[k];
      for (std::size_t a = 0; a < br.idx.size(); ++a) sym_axpy(y(br.idx[a]), *br.entries[a], out[k]);
    }
    return out;
  }

  /// M_ij = Σ_k ⟨A_ik, W_k A_jk W_k⟩.
  RMat schur(const std::vector<RMat>& w) const {
    RMat mm = RMat::Zero(m(), m());
    for (int k = 0; k < nb_; ++k) {
      const auto& br = brows_[k];
      const int n = p_.block_dims[k];
      const RMat& wk = w[k];
      RMat bmat(n, n);
      RMat aw(n, n);
      for (std::size_t a = 0; a < br.idx.size(); ++a) {
        const auto& ents = *br.entries[a];
        if (2 * br.weight[a] < n) {
          bmat.setZero();
          for (const auto& e : ents) {
            bmat.noalias() += e.value * wk.col(e.row) * wk.row(e.col);
            if (e.row != e.col) bmat.noalias() += e.value * wk.col(e.col) * wk.row(e.row);
          }
        } else {
          aw.setZero();
          for (const auto& e : ents) {
            aw.row(e.row) += e.value * wk.row(e.col);
            if (e.row != e.col) aw.row(e.col) += e.value * wk.row(e.row);
          }
          bmat.noalias() = wk * aw;
        }
        const int j = br.idx[a];
        for (std::size_t c = 0; c <= a; ++c) mm(br.idx[c], j) += sym_dot(*br.entries[c], bmat);
      }
    }
    return mm.selfadjointView<Eigen::Upper>();
  }

  /// Greedy pivoted Cholesky of the Gram matrix; false if a dropped row is inconsistent.
  bool select_independent(std::vector<int>& keep) {
    keep.clear();
    const int mm = m();
    if (mm == 0) return true;
    std::vector<RMat> eye;
    for (int d : p_.block_dims) eye.push_back(RMat::Identity(d, d));
    const RMat g = schur(eye);
    RMat l = RMat::Zero(mm, mm);
    RVec diag = g.diagonal();
    std::vector<bool> used(mm, false);
    std::vector<int> order;
    const double cut = 1e-11;
    for (int step = 0; step < mm; ++step) {
      int piv = -1;
      double best = cut;
      for (int i = 0; i < mm; ++i)
        if (!used[i] && diag(i) > best) {
          best = diag(i);
          piv = i;
        }
      if (piv < 0) break;
      used[piv] = true;
      const int c = static_cast<int>(order.size());
      order.push_back(piv);
      const double lp = std::sqrt(diag(piv));
      for (int i = 0; i < mm; ++i) {
        if (used[i] && i != piv) continue;
        double v = g(i, piv);
        for (int t = 0; t < c; ++t) v -= l(i, t) * l(piv, t);
        l(i, c) = i == piv ? lp : v / lp;
        if (i != piv) diag(i) -= l(i, c) * l(i, c);
      }
    }
    const int r = static_cast<int>(order.size());
    if (r < mm) {
      // Consistency of dropped rows: b_d must equal the same combination of kept b.
      RMat gs(r, r);
      RVec bs(r);
      for (int a = 0; a < r; ++a) {
        bs(a) = b_(order[a]);
        for (int c = 0; c < r; ++c) gs(a, c) = g(order[a], order[c]);
      }
      Eigen::LDLT<RMat> fac(gs);
      const double bscale = 1.0 + b_.cwiseAbs().maxCoeff();
      for (int i = 0; i < mm; ++i) {
        if (used[i]) continue;
        RVec gi(r);
        for (int a = 0; a < r; ++a) gi(a) = g(order[a], i);
        const RVec coef = fac.solve(gi);
        if (std::abs(coef.dot(bs) - b_(i)) > 1e-8 * bscale) return false;
      }
    }
    keep = order;
    std::sort(keep.begin(), keep.end());
    return true;
  }

  struct Scaling {
    RMat r, rinv, w, px, ps;  // px = Λ^{-1/2}R⁻¹, ps = RΛ^{-1/2}
    RVec lam;
  };

  static bool chol(const RMat& a, RMat& l) {
    Eigen::LLT<RMat> llt(a);
    if (llt.info() != Eigen::Success) return false;
    l = llt.matrixL();
    return l.allFinite();
  }

  static bool nt_scaling(const RMat& x, const RMat& s, Scaling& sc) {
    RMat lx, ls;
    if (!chol(x, lx) || !chol(s, ls)) return false;
    Eigen::JacobiSVD<RMat> svd(ls.transpose() * lx, Eigen::ComputeFullU | Eigen::ComputeFullV);
    sc.lam = svd.singularValues();
    if (sc.lam.minCoeff() <= 0.0 || !sc.lam.allFinite()) return false;
    const RVec isq = sc.lam.cwiseSqrt().cwiseInverse();
    sc.r = lx * svd.matrixV() * isq.asDiagonal();
    sc.rinv = isq.asDiagonal() * svd.matrixU().transpose() * ls.transpose();
    sc.w = sc.r * sc.r.transpose();
    sc.w = 0.5 * (sc.w + sc.w.transpose()).eval();
    sc.px = isq.asDiagonal() * sc.rinv;
    sc.ps = sc.r * isq.asDiagonal();
    return true;
  }

  /// Largest α ≤ 1/0 such that I + α G ⪰ 0.
  static double max_step(const RMat& g) {
    Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (g + g.transpose()), Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    return lmin >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
  }

  struct Direction {
    std::vector<RMat> dx, ds;
    RVec dy;
    double dtau = 0.0, dkappa = 0.0;
  };

  struct Factors {
    Eigen::LLT<RMat> llt;
    RVec q, h;
    double cwc = 0.0;
  };

  Direction newton(const std::vector<Scaling>& sc, const Factors& f, const RVec& r1, const std::vector<RMat>& r2,
                   double r3, const std::vector<RMat>& t, double rk) const {
    Direction d;
    std::vector<RMat> xc(nb_), z(nb_);
    for (int k = 0; k < nb_; ++k) {
      xc[k] = sc[k].r * t[k] * sc[k].r.transpose();
      z[k] = xc[k] - sc[k].w * r2[k] * sc[k].w;
    }
    const RVec pvec = m() > 0 ? RVec(f.llt.solve(r1 - apply_a(z))) : RVec();
    double cz = 0.0;
    for (int k = 0; k < nb_; ++k) cz += p_.c[k].cwiseProduct(z[k]).sum();
    const RVec bmh = b_ - f.h;
    const double num = r3 + cz + rk / tau_ - (m() > 0 ? bmh.dot(pvec) : 0.0);
    const double den = (m() > 0 ? bmh.dot(f.q) : 0.0) + f.cwc + kappa_ / tau_;
    d.dtau = num / den;
    d.dy = m() > 0 ? RVec(pvec + f.q * d.dtau) : RVec();
    const auto aty = apply_at(d.dy);
    d.ds.resize(nb_);
    d.dx.resize(nb_);
    for (int k = 0; k < nb_; ++k) {
      d.ds[k] = r2[k] - aty[k] + p_.c[k] * d.dtau;
      d.dx[k] = xc[k] - sc[k].w * d.ds[k] * sc[k].w;
      d.dx[k] = 0.5 * (d.dx[k] + d.dx[k].transpose()).eval();
      d.ds[k] = 0.5 * (d.ds[k] + d.ds[k].transpose()).eval();
    }
    d.dkappa = (rk - kappa_ * d.dtau) / tau_;
    return d;
  }

  double step_length(const std::vector<Scaling>& sc, const Direction& d) const {
    double a = std::numeric_limits<double>::infinity();
    for (int k = 0; k < nb_; ++k) {
      a = std::min(a, max_step(sc[k].px * d.dx[k] * sc[k].px.transpose()));
      a = std::min(a, max_step(sc[k].ps.transpose() * d.ds[k] * sc[k].ps));
    }
    if (d.dtau < 0) a = std::min(a, -tau_ / d.dtau);
    if (d.dkappa < 0) a = std::min(a, -kappa_ / d.dkappa);
    return a;
  }

  void iterate(RealSolution& out) {
    const int mm = m();
    x_.clear();
    s_.clear();
    for (int d : p_.block_dims) {
      x_.push_back(RMat::Identity(d, d));
      s_.push_back(RMat::Identity(d, d));
    }
    y_ = RVec::Zero(mm);
    tau_ = 1.0;
    kappa_ = 1.0;
    double nu = 0.0;
    for (int d : p_.block_dims) nu += d;

    double bnorm = 1.0, cnorm = 1.0;
    for (std::size_t r = 0; r < orig_index_.size(); ++r)
      bnorm = std::max(bnorm, std::abs(p_.b(orig_index_[r])));
    for (const auto& c : p_.c) cnorm = std::max(cnorm, c.cwiseAbs().maxCoeff());

    int stalls = 0;
    for (int it = 0; it <= tol_.max_iter; ++it) {
      out.iterations = it;
      // Residuals of the embedding.
      const RVec ax = apply_a(x_);
      const RVec f1 = ax - b_ * tau_;
      const auto aty = apply_at(y_);
      std::vector<RMat> f2(nb_);
      double cx = 0.0;
      for (int k = 0; k < nb_; ++k) {
        f2[k] = aty[k] + s_[k] - p_.c[k] * tau_;
        cx += p_.c[k].cwiseProduct(x_[k]).sum();
      }
      const double by = mm > 0 ? b_.dot(y_) : 0.0;
      const double f3 = by - cx - kappa_;

      double pres = 0.0, dres = 0.0;
      for (int r = 0; r < mm; ++r) pres = std::max(pres, std::abs(f1(r)) * scale_[orig_index_[r]]);
      for (int k = 0; k < nb_; ++k) dres = std::max(dres, f2[k].cwiseAbs().maxCoeff());
      pres /= tau_;
      dres /= tau_;
      const double pobj = cx / tau_;
      const double dobj = by / tau_;
      record(out, pobj, dobj, pres, dres);
      if (trace_)
        std::fprintf(stderr, "%3d pobj % .10e dobj % .10e pres %.2e dres %.2e tau %.2e kappa %.2e\n", it, pobj, dobj,
                     pres, dres, tau_, kappa_);

      if (pres <= tol_.feas * bnorm && dres <= tol_.feas * cnorm &&
          std::abs(pobj - dobj) <= tol_.gap * std::max(1.0, std::min(std::abs(pobj), std::abs(dobj)))) {
        out.status = SolveStatus::Optimal;
        return;
      }
      if (infeasible(out, f1, f2, by, cx, tol_.infeas)) return;
      if (it == tol_.max_iter) break;

      // Scaling and Schur complement.
      std::vector<Scaling> sc(nb_);
      bool ok = true;
      for (int k = 0; k < nb_ && ok; ++k) ok = nt_scaling(x_[k], s_[k], sc[k]);
      if (!ok) break;
      Factors f;
      std::vector<RMat> w(nb_), wcw(nb_);
      for (int k = 0; k < nb_; ++k) {
        w[k] = sc[k].w;
        wcw[k] = sc[k].w * p_.c[k] * sc[k].w;
        f.cwc += p_.c[k].cwiseProduct(wcw[k]).sum();
      }
      if (mm > 0) {
        RMat schur_m = schur(w);
        f.llt.compute(schur_m);
        double reg = 1e-14 * std::max(1.0, schur_m.diagonal().maxCoeff());
        while (f.llt.info() != Eigen::Success && reg < 1e-4) {
          f.llt.compute(schur_m + reg * RMat::Identity(mm, mm));
          reg *= 100.0;
        }
        if (f.llt.info() != Eigen::Success) break;
        f.h = apply_a(wcw);
        f.q = f.llt.solve(f.h + b_);
      }

      double xs = tau_ * kappa_;
      for (int k = 0; k < nb_; ++k) xs += sc[k].lam.squaredNorm();
      const double mu = xs / (nu + 1.0);

      // Predictor.
      std::vector<RMat> r2(nb_), t(nb_);
      for (int k = 0; k < nb_; ++k) {
        r2[k] = -f2[k];
        t[k] = -RMat(sc[k].lam.asDiagonal());
      }
      const Direction da = newton(sc, f, -f1, r2, -f3, t, -tau_ * kappa_);
      const double alpha_a = std::min(1.0, step_length(sc, da));
      const double sigma = std::pow(1.0 - alpha_a, 3);

      // Corrector.
      for (int k = 0; k < nb_; ++k) {
        const RMat dxt = sc[k].rinv * da.dx[k] * sc[k].rinv.transpose();
        const RMat dst = sc[k].r.transpose() * da.ds[k] * sc[k].r;
        RMat qmat = -0.5 * (dxt * dst + dst * dxt);
        for (int i = 0; i < qmat.rows(); ++i) qmat(i, i) += sigma * mu - sc[k].lam(i) * sc[k].lam(i);
        for (int i = 0; i < qmat.rows(); ++i)
          for (int j = 0; j < qmat.cols(); ++j) qmat(i, j) *= 2.0 / (sc[k].lam(i) + sc[k].lam(j));
        t[k] = qmat;
        r2[k] = -(1.0 - sigma) * f2[k];
      }
      const double rk = sigma * mu - tau_ * kappa_ - da.dtau * da.dkappa;
      const Direction d = newton(sc, f, -(1.0 - sigma) * f1, r2, -(1.0 - sigma) * f3, t, rk);
      double alpha = std::min(1.0, tol_.step_fraction * step_length(sc, d));
      if (!std::isfinite(alpha) || alpha <= 0.0) break;

      // Take the step, backing off if a block loses definiteness numerically.
      bool stepped = false;
      for (int tries = 0; tries < 30 && !stepped; ++tries) {
        std::vector<RMat> xn(nb_), sn(nb_);
        bool pd = true;
        for (int k = 0; k < nb_ && pd; ++k) {
          xn[k] = x_[k] + alpha * d.dx[k];
          sn[k] = s_[k] + alpha * d.ds[k];
          RMat l;
          pd = chol(xn[k], l) && chol(sn[k], l);
        }
        const double tn = tau_ + alpha * d.dtau, kn = kappa_ + alpha * d.dkappa;
        if (pd && tn > 0 && kn > 0) {
          x_ = std::move(xn);
          s_ = std::move(sn);
          if (mm > 0) y_ += alpha * d.dy;
          tau_ = tn;
          kappa_ = kn;
          stepped = true;
        } else {
          alpha *= 0.7;
        }
      }
      if (!stepped) break;
      if (trace_) std::fprintf(stderr, "    alpha %.3e alpha_a %.3e sigma %.3e\n", alpha, alpha_a, sigma);
      stalls = alpha < 1e-8 ? stalls + 1 : 0;
      if (stalls >= 5) break;
    }

    // Iteration cap or breakdown: check whether a looser ray certificate exists,
    // otherwise report failure with the last iterate.
    const RVec f1 = apply_a(x_) - b_ * tau_;
    const auto aty = apply_at(y_);
    std::vector<RMat> f2(nb_);
    double cx = 0.0;
    for (int k = 0; k < nb_; ++k) {
      f2[k] = aty[k] + s_[k] - p_.c[k] * tau_;
      cx += p_.c[k].cwiseProduct(x_[k]).sum();
    }
    const double by = mm > 0 ? b_.dot(y_) : 0.0;
    if (infeasible(out, f1, f2, by, cx, std::sqrt(tol_.infeas))) return;
    out.status = SolveStatus::NumericalFailure;
  }

  void record(RealSolution& out, double pobj, double dobj, double pres, double dres) const {
    out.x.clear();
    out.s.clear();
    for (int k = 0; k < nb_; ++k) {
      out.x.push_back(x_[k] / tau_);
      out.s.push_back(s_[k] / tau_);
    }
    out.y = y_ / tau_;
    out.primal_value = pobj;
    out.dual_value = dobj;
    out.primal_residual = pres;
    out.dual_residual = dres;
  }

  /// Ray certificates: bᵀy > 0 with Aᵀy + s ≈ 0, or cᵀx < 0 with Ax ≈ 0.
  bool infeasible(RealSolution& out, const RVec& f1, const std::vector<RMat>& f2, double by, double cx,
                  double thresh) const {
    if (tau_ > kappa_) return false;
    if (by > 0) {
      double r = 0.0;
      for (int k = 0; k < nb_; ++k) r = std::max(r, (f2[k] + p_.c[k] * tau_).cwiseAbs().maxCoeff());
      if (r <= thresh * by) {
        out.status = SolveStatus::PrimalInfeasible;
        out.y = y_ / by;
        return true;
      }
    }
    if (cx < 0) {
      const double r = m() > 0 ? (f1 + b_ * tau_).cwiseAbs().maxCoeff() : 0.0;
      if (r <= thresh * -cx) {
        out.status = SolveStatus::DualInfeasible;
        out.x.clear();
        for (int k = 0; k < nb_; ++k) out.x.push_back(x_[k] / -cx);
        return true;
      }
    }
    return false;
  }

  const RealSdp& p_;
  ToleranceSet tol_;
  bool trace_ = std::getenv("SQZ_SDP_TRACE") != nullptr;
  int nb_ = 0;
  std::vector<double> scale_;
  std::vector<std::vector<RowBlock>> rows_;
  std::vector<BlockRows> brows_;
  std::vector<int> orig_index_;
  RVec b_;
  std::vector<RMat> x_, s_;
  RVec y_;
  double tau_ = 1.0, kappa_ = 1.0;
};

}  // namespace detail

inline RealSolution solve_real(const RealSdp& p, const ToleranceSet& tol = {}) {
  return detail::RealIpm(p, tol).run();
}

/// Solves a Hermitian SDP. Multipliers follow the Lagrangian
/// ⟨C,X⟩ + Σ Re tr[Y_i(B_i − L_i(X))] for minimization; for maximization the
/// reported Y solves min Σ Re tr[Y_i B_i] s.t. Σ L_i*(Y_i) − C ⪰ 0.
inline SdpSolution solve(const SdpProblem& prob, const ToleranceSet& tol = {}) {
  const EmbeddedProblem emb = embed_hermitian(prob);
  ToleranceSet rt = tol;
  rt.feas = 0.5 * tol.feas;  // Hermitian dual residuals are twice the real ones.
  const RealSolution rs = solve_real(emb.real, rt);

  SdpSolution sol;
  sol.status = rs.status;
  sol.iterations = rs.iterations;
  const double sign = emb.info.negated ? -1.0 : 1.0;
  sol.primal_value = sign * rs.primal_value;
  sol.dual_value = sign * rs.dual_value;

  const auto& vars = prob.variables();
  const auto& cons = prob.constraints();
  std::vector<CMat> xs;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const auto& vb = emb.info.vars[j];
    CMat x = CMat::Zero(vars[j].dim, vars[j].dim);
    if (!rs.x.empty()) {
      x = extract_hermitian(rs.x[vb.plus]);
      if (vb.minus >= 0) x -= extract_hermitian(rs.x[vb.minus]);
    }
    xs.push_back(x);
    sol.variable_values[vars[j].name] = x;
  }

  std::vector<CMat> ys;
  for (const auto& c : cons) ys.push_back(CMat::Zero(c.rhs.rows(), c.rhs.cols()));
  if (rs.y.size() == static_cast<Eigen::Index>(emb.info.rows.size())) {
    for (std::size_t r = 0; r < emb.info.rows.size(); ++r) {
      const auto& ri = emb.info.rows[r];
      const double v = sign * rs.y(static_cast<Eigen::Index>(r));
      CMat& y = ys[ri.constraint];
      if (ri.p == ri.q) {
        y(ri.p, ri.p) += v;
      } else if (ri.imag) {
        y(ri.q, ri.p) += cplx(0, -0.5 * v);
        y(ri.p, ri.q) += cplx(0, 0.5 * v);
      } else {
        y(ri.q, ri.p) += 0.5 * v;
        y(ri.p, ri.q) += 0.5 * v;
      }
    }
  }
  for (std::size_t i = 0; i < cons.size(); ++i) sol.dual_values[cons[i].name] = ys[i];

  // Residuals measured on the Hermitian problem.
  double res = 0.0;
  for (std::size_t i = 0; i < cons.size(); ++i) {
    CMat lhs = CMat::Zero(cons[i].rhs.rows(), cons[i].rhs.cols());
    for (const auto& t : cons[i].terms) lhs += t.map.apply(xs[t.var]);
    res = std::max(res, max_abs(lhs - cons[i].rhs));
  }
  for (std::size_t j = 0; j < vars.size(); ++j) {
    CMat z = prob.objective(static_cast<int>(j));
    for (std::size_t i = 0; i < cons.size(); ++i)
      for (const auto& t : cons[i].terms)
        if (t.var == static_cast<int>(j)) z -= t.map.apply_adjoint(ys[i]);
    z = sign * z;  // C − L*(Y) for minimize, L*(Y) − C for maximize
    CMat s = CMat::Zero(vars[j].dim, vars[j].dim);
    const auto& vb = emb.info.vars[j];
    if (!rs.s.empty() && vb.minus < 0) s = 2.0 * extract_hermitian(rs.s[vb.plus]);
    if (rs.status == SolveStatus::Optimal || rs.status == SolveStatus::NumericalFailure)
      res = std::max(res, max_abs(z - s));
    sol.dual_slacks[vars[j].name] = z;
  }
  sol.max_residual = res;
  return sol;
}

}  // namespace sqz::sdp
