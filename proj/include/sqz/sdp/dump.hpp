#pragma once

// Writes the embedded real problem in SDPA sparse format (.dat-s) so it can be
// cross-checked with external solvers. See docs/problem_dump.md.
//
// SDPA's dual form, max ⟨F_0, Y⟩ s.t. ⟨F_i, Y⟩ = c_i, Y ⪰ 0, is our
// minimization with F_0 = −C, F_i = A_i and c = b; its optimal value is the
// negative of ours.

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>

#include "sqz/sdp/embed.hpp"

namespace sqz::sdp {

inline void write_sdpa(const RealSdp& p, std::ostream& os) {
  char buf[64];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  os << "* sqz problem dump: minimize <C,X> s.t. <A_i,X> = b_i, X psd\n";
  os << p.num_rows() << "\n" << p.block_dims.size() << "\n";
  for (std::size_t k = 0; k < p.block_dims.size(); ++k) os << (k ? " " : "") << p.block_dims[k];
  os << "\n";
  for (int i = 0; i < p.num_rows(); ++i) os << (i ? " " : "") << num(p.b(i));
  os << "\n";
  for (std::size_t k = 0; k < p.c.size(); ++k)
    for (int c = 0; c < p.c[k].cols(); ++c)
      for (int r = 0; r <= c; ++r)
        if (p.c[k](r, c) != 0.0) os << 0 << " " << k + 1 << " " << r + 1 << " " << c + 1 << " " << num(-p.c[k](r, c)) << "\n";
  for (int i = 0; i < p.num_rows(); ++i)
    for (const auto& rb : p.rows[i])
      for (const auto& e : rb.entries)
        os << i + 1 << " " << rb.block + 1 << " " << e.row + 1 << " " << e.col + 1 << " " << num(e.value) << "\n";
}

inline void write_sdpa(const SdpProblem& p, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("write_sdpa: cannot open " + path);
  write_sdpa(embed_hermitian(p).real, f);
  if (!f) throw IoError("write_sdpa: write failed for " + path);
}

}  // namespace sqz::sdp
