#pragma once

// Hermiticity-preserving linear maps built as a pipeline of primitive steps.
// Every primitive has its Hilbert–Schmidt adjoint in the same family, which is
// what lets a constraint row be turned into a coefficient matrix.

#include <string>
#include <utility>
#include <vector>

#include "sqz/qmat.hpp"

namespace sqz::sdp {

class LinearMap {
 public:
  explicit LinearMap(int in_dim = 1) : in_dim_(in_dim), out_dim_(in_dim) {
    if (in_dim < 1) throw ModelError("LinearMap: dimension < 1");
  }

  static LinearMap identity(int n) { return LinearMap(n); }

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  bool is_identity() const { return steps_.empty(); }

  LinearMap& scale(double c) {
    Step s;
    s.kind = Kind::Scale;
    s.factor = c;
    return push(std::move(s), out_dim_);
  }

  LinearMap& partial_trace(Dims dims, std::vector<int> keep) {
    check_input(dims, "partial_trace");
    const int out = detail::kept_dim(dims, keep);
    Step s;
    s.kind = Kind::PartialTrace;
    s.dims = std::move(dims);
    s.keep = std::move(keep);
    return push(std::move(s), out);
  }

  /// Tensor with identity on every subsystem of `dims` not in `keep`.
  LinearMap& expand(Dims dims, std::vector<int> keep) {
    if (detail::kept_dim(dims, keep) != out_dim_) throw ModelError("LinearMap::expand: dimension mismatch");
    const int out = dim_product(dims);
    Step s;
    s.kind = Kind::Expand;
    s.dims = std::move(dims);
    s.keep = std::move(keep);
    return push(std::move(s), out);
  }

  /// X ↦ X ⊗ I_d.
  LinearMap& tensor_identity_right(int d) { return expand(Dims{out_dim_, d}, {0}); }
  /// X ↦ I_d ⊗ X.
  LinearMap& tensor_identity_left(int d) { return expand(Dims{d, out_dim_}, {1}); }

  LinearMap& partial_transpose(Dims dims, int sys) {
    check_input(dims, "partial_transpose");
    Step s;
    s.kind = Kind::PartialTranspose;
    s.dims = std::move(dims);
    s.sys = sys;
    return push(std::move(s), out_dim_);
  }

  /// X ↦ V X V†; V may be rectangular.
  LinearMap& conjugate(CMat v) {
    if (v.cols() != out_dim_) throw ModelError("LinearMap::conjugate: dimension mismatch");
    const int out = static_cast<int>(v.rows());
    Step s;
    s.kind = Kind::Conjugate;
    s.mat = std::move(v);
    return push(std::move(s), out);
  }

  /// X ↦ tr(X)·I_{out}.
  LinearMap& trace_times_identity(int out) {
    partial_trace(Dims{out_dim_}, {});
    return expand(Dims{out}, {});
  }

  CMat apply(const CMat& x) const {
    if (x.rows() != in_dim_ || x.cols() != in_dim_) throw DimensionError("LinearMap::apply: operand dimension");
    CMat cur = x;
    for (const auto& s : steps_) cur = forward(s, cur);
    return cur;
  }

  CMat apply_adjoint(const CMat& y) const {
    if (y.rows() != out_dim_ || y.cols() != out_dim_)
      throw DimensionError("LinearMap::apply_adjoint: operand dimension");
    CMat cur = y;
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) cur = backward(*it, cur);
    return cur;
  }

  std::string describe() const {
    std::string out = "id(" + std::to_string(in_dim_) + ")";
    for (const auto& s : steps_) {
      switch (s.kind) {
        case Kind::Scale: out += " scale(" + std::to_string(s.factor) + ")"; break;
        case Kind::PartialTrace: out += " ptrace" + list(s.dims) + "keep" + list(s.keep); break;
        case Kind::Expand: out += " expand" + list(s.dims) + "keep" + list(s.keep); break;
        case Kind::PartialTranspose: out += " ptranspose" + list(s.dims) + "sys" + std::to_string(s.sys); break;
        case Kind::Conjugate:
          out += " conj(" + std::to_string(s.mat.rows()) + "x" + std::to_string(s.mat.cols()) + ")";
          break;
      }
    }
    return out;
  }

 private:
  enum class Kind { Scale, PartialTrace, Expand, PartialTranspose, Conjugate };

  struct Step {
    Kind kind = Kind::Scale;
    double factor = 1.0;
    Dims dims;
    std::vector<int> keep;
    int sys = 0;
    CMat mat;
  };

  static std::string list(const std::vector<int>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
  }

  void check_input(const Dims& dims, const char* what) const {
    if (dim_product(dims) != out_dim_)
      throw ModelError(std::string("LinearMap::") + what + ": dims product does not match current dimension");
  }

  LinearMap& push(Step s, int new_out) {
    steps_.push_back(std::move(s));
    out_dim_ = new_out;
    return *this;
  }

  static CMat forward(const Step& s, const CMat& x) {
    switch (s.kind) {
      case Kind::Scale: return s.factor * x;
      case Kind::PartialTrace: return sqz::partial_trace(x, s.dims, s.keep);
      case Kind::Expand: return expand_identity(x, s.dims, s.keep);
      case Kind::PartialTranspose: return sqz::partial_transpose(x, s.dims, s.sys);
      case Kind::Conjugate: return s.mat * x * s.mat.adjoint();
    }
    return x;
  }

  static CMat backward(const Step& s, const CMat& y) {
    switch (s.kind) {
      case Kind::Scale: return s.factor * y;
      case Kind::PartialTrace: return expand_identity(y, s.dims, s.keep);
      case Kind::Expand: return sqz::partial_trace(y, s.dims, s.keep);
      case Kind::PartialTranspose: return sqz::partial_transpose(y, s.dims, s.sys);
      case Kind::Conjugate: return s.mat.adjoint() * y * s.mat;
    }
    return y;
  }

  int in_dim_;
  int out_dim_;
  std::vector<Step> steps_;
};

}  // namespace sqz::sdp
