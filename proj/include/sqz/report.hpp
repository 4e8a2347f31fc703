#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <string>

#include "sqz/qmat.hpp"
#include "sqz/sdp/problem.hpp"

namespace sqz {

namespace status {
inline const std::string kOptimal = "optimal";
inline const std::string kAnalytic = "analytic";
inline const std::string kMarginal = "marginal";
inline const std::string kNotApplicable = "not-applicable";
inline const std::string kError = "error";
}  // namespace status

/// True for statuses whose value is a trustworthy number.
inline bool status_ok(const std::string& s) { return s == status::kOptimal || s == status::kAnalytic; }

struct BoundReport {
  std::string bound_name;
  double value = 0.0;
  double tolerance = 1e-8;
  std::string status = status::kOptimal;
  std::int64_t runtime_ms = 0;
  std::string inputs_digest;
};

/// FNV-1a (64-bit) over raw bytes, printed as 16 hex digits.
class Digest {
 public:
  Digest& bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h_ ^= p[i];
      h_ *= 0x100000001b3ULL;
    }
    return *this;
  }
  Digest& add(double v) { return bytes(&v, sizeof v); }
  Digest& add(int v) { return bytes(&v, sizeof v); }
  Digest& add(const std::string& s) { return bytes(s.data(), s.size()); }
  Digest& add(const CMat& m) {
    add(static_cast<int>(m.rows()));
    add(static_cast<int>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        add(m(i, j).real());
        add(m(i, j).imag());
      }
    return *this;
  }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
    return buf;
  }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace sqz
