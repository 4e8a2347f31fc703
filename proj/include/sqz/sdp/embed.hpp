#pragma once

// Real-symmetric standard form and the Hermitian → real embedding.
//
// A Hermitian block H of dimension n is represented by the real symmetric
// block emb(H) = [[Re H, −Im H], [Im H, Re H]] of dimension 2n. Because
// tr(emb(A) emb(X)) = 2 tr(AX), coefficients are stored as emb(A)/2 so that
// objective values and constraint rows agree with the Hermitian problem.

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "sqz/sdp/problem.hpp"

namespace sqz::sdp {

using RMat = Eigen::MatrixXd;

/// One stored entry of a symmetric coefficient matrix (row ≤ col).
struct SymEntry {
  int row;
  int col;
  double value;
};

struct RowBlock {
  int block;
  std::vector<SymEntry> entries;
};

/// minimize Σ⟨C_k, X_k⟩  s.t.  Σ_k ⟨A_ik, X_k⟩ = b_i,  X_k ⪰ 0.
struct RealSdp {
  std::vector<int> block_dims;
  std::vector<RMat> c;
  std::vector<std::vector<RowBlock>> rows;
  RVec b;

  int num_rows() const { return static_cast<int>(rows.size()); }
};

/// ⟨A, Y⟩ for a symmetric A given by its upper-triangular entries.
inline double sym_dot(const std::vector<SymEntry>& a, const RMat& y) {
  double s = 0.0;
  for (const auto& e : a) s += e.row == e.col ? e.value * y(e.row, e.row) : e.value * (y(e.row, e.col) + y(e.col, e.row));
  return s;
}

inline void sym_axpy(double alpha, const std::vector<SymEntry>& a, RMat& y) {
  for (const auto& e : a) {
    y(e.row, e.col) += alpha * e.value;
    if (e.row != e.col) y(e.col, e.row) += alpha * e.value;
  }
}

inline RMat embed_matrix(const CMat& h) {
  const auto n = h.rows();
  RMat out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = h.real();
  out.topRightCorner(n, n) = -h.imag();
  out.bottomLeftCorner(n, n) = h.imag();
  out.bottomRightCorner(n, n) = h.real();
  return out;
}

/// Inverse of embed_matrix on its range; averages the duplicated parts otherwise.
inline CMat extract_hermitian(const RMat& y) {
  const auto n = y.rows() / 2;
  const RMat re = 0.5 * (y.topLeftCorner(n, n) + y.bottomRightCorner(n, n));
  const RMat im = 0.5 * (y.bottomLeftCorner(n, n) - y.topRightCorner(n, n));
  CMat out(n, n);
  out.real() = re;
  out.imag() = im;
  return out;
}

struct EmbedInfo {
  struct VarBlocks {
    int plus = -1;
    int minus = -1;  // only for free-Hermitian variables
  };
  struct RowInfo {
    int constraint;
    int p;
    int q;
    bool imag;
  };
  std::vector<VarBlocks> vars;
  std::vector<RowInfo> rows;
  bool negated = false;
};

struct EmbeddedProblem {
  RealSdp real;
  EmbedInfo info;
};

namespace detail {

inline std::vector<SymEntry> sparse_upper(const RMat& m, double scale) {
  std::vector<SymEntry> out;
  const double cut = 1e-15 * std::max(1.0, m.cwiseAbs().maxCoeff());
  for (int c = 0; c < m.cols(); ++c)
    for (int r = 0; r <= c; ++r)
      if (std::abs(m(r, c)) > cut) out.push_back({r, c, scale * m(r, c)});
  return out;
}

}  // namespace detail

inline EmbeddedProblem embed_hermitian(const SdpProblem& p) {
  EmbeddedProblem out;
  RealSdp& real = out.real;
  EmbedInfo& info = out.info;
  info.negated = p.sense() == Sense::Maximize;

  const auto& vars = p.variables();
  if (vars.empty()) throw ModelError("embed_hermitian: problem has no variables");
  for (std::size_t j = 0; j < vars.size(); ++j) {
    EmbedInfo::VarBlocks vb;
    const RMat cj = (info.negated ? -0.5 : 0.5) * embed_matrix(p.objective(static_cast<int>(j)));
    vb.plus = static_cast<int>(real.block_dims.size());
    real.block_dims.push_back(2 * vars[j].dim);
    real.c.push_back(cj);
    if (vars[j].cone == Cone::FreeHermitian) {
      vb.minus = static_cast<int>(real.block_dims.size());
      real.block_dims.push_back(2 * vars[j].dim);
      real.c.push_back(-cj);
    }
    info.vars.push_back(vb);
  }

  std::vector<double> rhs;
  const auto& cons = p.constraints();
  for (std::size_t ci = 0; ci < cons.size(); ++ci) {
    const auto& con = cons[ci];
    const int m = static_cast<int>(con.rhs.rows());
    for (int q = 0; q < m; ++q) {
      for (int pp = 0; pp <= q; ++pp) {
        CMat g = CMat::Zero(m, m);
        g(pp, q) = 1.0;
        std::vector<CMat> adj;
        adj.reserve(con.terms.size());
        for (const auto& t : con.terms) adj.push_back(t.map.apply_adjoint(g));
        for (int part = 0; part < (pp == q ? 1 : 2); ++part) {
          const bool imag = part == 1;
          std::vector<RowBlock> row;
          for (std::size_t ti = 0; ti < con.terms.size(); ++ti) {
            const auto& t = con.terms[ti];
            const CMat a = hermitian_part(imag ? CMat(cplx(0, 1) * adj[ti]) : adj[ti]);
            const RMat e = embed_matrix(a);
            auto entries = detail::sparse_upper(e, 0.5);
            if (entries.empty()) continue;
            const auto& vb = info.vars[t.var];
            // Several terms may touch the same variable; merge into one block.
            auto merge = [&row](int block, std::vector<SymEntry> ents) {
              for (auto& rb : row)
                if (rb.block == block) {
                  rb.entries.insert(rb.entries.end(), ents.begin(), ents.end());
                  return;
                }
              row.push_back({block, std::move(ents)});
            };
            if (vb.minus >= 0) {
              auto neg = entries;
              for (auto& en : neg) en.value = -en.value;
              merge(vb.minus, std::move(neg));
            }
            merge(vb.plus, std::move(entries));
          }
          // Combine duplicates produced by merging.
          for (auto& rb : row) {
            RMat acc = RMat::Zero(real.block_dims[rb.block], real.block_dims[rb.block]);
            for (const auto& e : rb.entries) acc(e.row, e.col) += e.value;
            std::vector<SymEntry> merged;
            for (int c = 0; c < acc.cols(); ++c)
              for (int r = 0; r <= c; ++r)
                if (acc(r, c) != 0.0) merged.push_back({r, c, acc(r, c)});
            rb.entries = std::move(merged);
          }
          real.rows.push_back(std::move(row));
          rhs.push_back(imag ? con.rhs(pp, q).imag() : con.rhs(pp, q).real());
          info.rows.push_back({static_cast<int>(ci), pp, q, imag});
        }
      }
    }
  }
  real.b = Eigen::Map<RVec>(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  return out;
}

}  // namespace sqz::sdp
