#pragma once

// JSON encodings for matrices, states, channels and bound reports, plus the
// named constructors accepted on the command line ("pauli:0.9,0.05,0.03,0.02").

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sqz/channels.hpp"
#include "sqz/report.hpp"

namespace sqz {

using json = nlohmann::json;

/// {"rows", "cols", "data": [[re, im], ...]} in row-major order.
inline json matrix_to_json(const CMat& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back({m(i, j).real(), m(i, j).imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

inline CMat matrix_from_json(const json& j) {
  const int r = j.at("rows").get<int>(), c = j.at("cols").get<int>();
  const auto& data = j.at("data");
  if (r < 0 || c < 0 || data.size() != static_cast<std::size_t>(r) * c)
    throw DimensionError("matrix JSON: data length does not match rows x cols");
  CMat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < c; ++k) {
      const auto& e = data[static_cast<std::size_t>(i) * c + k];
      m(i, k) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
    }
  return m;
}

inline json state_to_json(const DensityOperator& rho) {
  json j = matrix_to_json(rho.matrix());
  j["dims"] = rho.dims();
  return j;
}

inline DensityOperator state_from_json(const json& j) {
  CMat m = matrix_from_json(j);
  Dims dims = j.contains("dims") ? j.at("dims").get<Dims>() : Dims{static_cast<int>(m.rows())};
  return DensityOperator(std::move(m), std::move(dims));
}

/// {"kind": "kraus", "d_in", "d_out", "ops": [...]} or {"kind": "choi", "d_in", "d_out", "matrix": {...}}.
inline json channel_to_json(const KrausChannel& k) {
  json ops = json::array();
  for (const auto& op : k.ops()) ops.push_back(matrix_to_json(op));
  return {{"kind", "kraus"}, {"d_in", k.input_dim()}, {"d_out", k.output_dim()}, {"ops", ops}};
}

inline json channel_to_json(const ChoiMatrix& c) {
  return {{"kind", "choi"}, {"d_in", c.input_dim()}, {"d_out", c.output_dim()}, {"matrix", matrix_to_json(c.matrix())}};
}

inline KrausChannel channel_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const int din = j.at("d_in").get<int>(), dout = j.at("d_out").get<int>();
  if (kind == "kraus") {
    std::vector<CMat> ops;
    for (const auto& o : j.at("ops")) ops.push_back(matrix_from_json(o));
    return KrausChannel(din, dout, std::move(ops));
  }
  if (kind == "choi") return kraus_from_choi(ChoiMatrix(din, dout, matrix_from_json(j.at("matrix"))));
  throw IoError("channel JSON: unknown kind '" + kind + "'");
}

inline json report_to_json(const BoundReport& r) {
  json j = {{"bound", r.bound_name},  {"status", r.status},         {"tol", r.tolerance},
            {"runtime_ms", r.runtime_ms}, {"inputs_digest", r.inputs_digest}};
  // NaN is not valid JSON
  j["value"] = std::isfinite(r.value) ? json(r.value) : json(nullptr);
  return j;
}

inline BoundReport report_from_json(const json& j) {
  BoundReport r;
  r.bound_name = j.at("bound").get<std::string>();
  r.value = j.at("value").is_null() ? std::numeric_limits<double>::quiet_NaN() : j.at("value").get<double>();
  r.status = j.at("status").get<std::string>();
  r.tolerance = j.at("tol").get<double>();
  r.runtime_ms = j.at("runtime_ms").get<std::int64_t>();
  r.inputs_digest = j.at("inputs_digest").get<std::string>();
  return r;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw IoError("'" + path + "': " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path + "'");
}

// ---------------------------------------------------------------------------
// Named constructors

namespace detail {

struct NamedSpec {
  std::string name;
  std::vector<double> args;
};

inline NamedSpec parse_named(const std::string& s) {
  NamedSpec out;
  const auto colon = s.find(':');
  out.name = s.substr(0, colon);
  if (colon == std::string::npos) return out;
  std::stringstream ss(s.substr(colon + 1));
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.args.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw IoError("constructor '" + s + "': bad number '" + tok + "'");
    }
  }
  return out;
}

inline void require_args(const NamedSpec& s, std::size_t lo, std::size_t hi, const char* usage) {
  if (s.args.size() < lo || s.args.size() > hi) throw IoError(std::string("constructor '") + s.name + "': usage " + usage);
}

inline int as_int(double v) {
  if (v != std::floor(v)) throw IoError("expected an integer, got " + std::to_string(v));
  return static_cast<int>(v);
}

/// Lower-triangular MAD rates from the list γ10, γ20, γ21, γ30, γ31, γ32, ...
inline Eigen::MatrixXd mad_rates(int d, const std::vector<double>& g) {
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(d, d);
  std::size_t k = 0;
  for (int j = 1; j < d; ++j)
    for (int i = 0; i < j; ++i) r(j, i) = k < g.size() ? g[k++] : 0.0;
  if (k < g.size()) throw IoError("mad: too many rates for d = " + std::to_string(d));
  return r;
}

inline bool looks_like_file(const std::string& s) {
  return s.find(':') == std::string::npos && (s.find('.') != std::string::npos || s.find('/') != std::string::npos);
}

}  // namespace detail

/// Channel constructors:
///   identity:d  pauli:p0,p1,p2,p3  covpauli:p0,p3  depolarizing:d,p  ad:γ
///   mad:d,γ10,γ20,γ21,...  random:d_in,d_out,n_kraus,seed  mixu:seed,p0,p1,...
/// Anything else containing '.' or '/' and no ':' is read as a channel JSON file.
inline KrausChannel make_channel(const std::string& text) {
  if (detail::looks_like_file(text)) return channel_from_json(read_json_file(text));
  const auto s = detail::parse_named(text);
  using detail::as_int;
  if (s.name == "identity") {
    detail::require_args(s, 1, 1, "identity:d");
    const int d = as_int(s.args[0]);
    return KrausChannel(d, d, {CMat::Identity(d, d)});
  }
  if (s.name == "pauli") {
    detail::require_args(s, 4, 4, "pauli:p0,p1,p2,p3");
    return pauli({s.args[0], s.args[1], s.args[2], s.args[3]});
  }
  if (s.name == "covpauli") {
    detail::require_args(s, 2, 2, "covpauli:p0,p3");
    return covariant_pauli(s.args[0], s.args[1]);
  }
  if (s.name == "depolarizing") {
    detail::require_args(s, 2, 2, "depolarizing:d,p");
    return depolarizing(as_int(s.args[0]), s.args[1]);
  }
  if (s.name == "ad") {
    detail::require_args(s, 1, 1, "ad:gamma");
    return amplitude_damping(s.args[0]);
  }
  if (s.name == "mad") {
    detail::require_args(s, 1, 64, "mad:d,g10,g20,g21,...");
    const int d = as_int(s.args[0]);
    return mad_channel(d, detail::mad_rates(d, {s.args.begin() + 1, s.args.end()}));
  }
  if (s.name == "random") {
    detail::require_args(s, 4, 4, "random:d_in,d_out,n_kraus,seed");
    return random_channel(as_int(s.args[0]), as_int(s.args[1]), as_int(s.args[2]),
                          static_cast<std::uint64_t>(s.args[3]));
  }
  if (s.name == "mixu") {
    detail::require_args(s, 2, 64, "mixu:seed,p0,p1,...");
    SplitMix64 rng(static_cast<std::uint64_t>(s.args[0]));
    std::vector<CMat> us;
    for (std::size_t i = 1; i < s.args.size(); ++i) us.push_back(haar_unitary(2, rng));
    return mixed_unitary(us, {s.args.begin() + 1, s.args.end()});
  }
  throw IoError("unknown channel constructor '" + s.name + "'");
}

/// State constructors:
///   phi:d  isotropic:d,F  bilocal-qubit:γ,p  bilocal-mad:d,p  twoway:p
///   hs:d_A,d_B,rank,seed  product:d_A,d_B
///   choi:<channel constructor>  (normalized Choi state)
/// Anything else containing '.' or '/' and no ':' is read as a state JSON file.
inline DensityOperator make_state(const std::string& text);

namespace detail {

inline Eigen::MatrixXd paper_mad_rates(int d) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(d, d);
  if (d == 3) {
    g(1, 0) = g(2, 0) = 0.1;
  } else if (d == 4) {
    g(1, 0) = g(2, 0) = g(3, 0) = g(2, 1) = 0.1;
  } else {
    throw DomainError("bilocal-mad: the MAD families are defined for d = 3 and d = 4");
  }
  return g;
}

}  // namespace detail

/// Φ_2 passed through AD(γ) on A and depolarizing(p) on B.
inline DensityOperator bilocal_qubit_state(double gamma, double p) {
  return noisy_mes(choi_from_kraus(amplitude_damping(gamma)), choi_from_kraus(depolarizing(2, p)));
}

/// Φ_d through the MAD channel of the d = 3 / d = 4 example on A and depolarizing(p) on B.
inline DensityOperator bilocal_mad_state(int d, double p) {
  return noisy_mes(choi_from_kraus(mad_channel(d, detail::paper_mad_rates(d))), choi_from_kraus(depolarizing(d, p)));
}

/// p Φ_2 + (1 − p)|01⟩⟨01|.
inline DensityOperator twoway_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("twoway_state: p outside [0,1]");
  CMat m = p * maximally_entangled(2).matrix();
  m(1, 1) += 1.0 - p;
  return DensityOperator(m, Dims{2, 2});
}

inline DensityOperator make_state(const std::string& text) {
  if (detail::looks_like_file(text)) return state_from_json(read_json_file(text));
  if (text.rfind("choi:", 0) == 0) return choi_from_kraus(make_channel(text.substr(5))).normalized_state();
  const auto s = detail::parse_named(text);
  using detail::as_int;
  if (s.name == "phi") {
    detail::require_args(s, 1, 1, "phi:d");
    return maximally_entangled(as_int(s.args[0]));
  }
  if (s.name == "isotropic") {
    detail::require_args(s, 2, 2, "isotropic:d,F");
    return isotropic_state(as_int(s.args[0]), s.args[1]);
  }
  if (s.name == "bilocal-qubit") {
    detail::require_args(s, 2, 2, "bilocal-qubit:gamma,p");
    return bilocal_qubit_state(s.args[0], s.args[1]);
  }
  if (s.name == "bilocal-mad") {
    detail::require_args(s, 2, 2, "bilocal-mad:d,p");
    return bilocal_mad_state(as_int(s.args[0]), s.args[1]);
  }
  if (s.name == "twoway") {
    detail::require_args(s, 1, 1, "twoway:p");
    return twoway_state(s.args[0]);
  }
  if (s.name == "hs") {
    detail::require_args(s, 4, 4, "hs:dA,dB,rank,seed");
    return hs_random_state(as_int(s.args[0]), as_int(s.args[1]), as_int(s.args[2]),
                           static_cast<std::uint64_t>(s.args[3]));
  }
  if (s.name == "product") {
    detail::require_args(s, 2, 2, "product:dA,dB");
    const int da = as_int(s.args[0]), db = as_int(s.args[1]);
    return pure_state(basis_vector(da * db, 0), Dims{da, db});
  }
  throw IoError("unknown state constructor '" + s.name + "'");
}

}  // namespace sqz
