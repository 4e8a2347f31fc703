#pragma once

// Seeded figure experiments. Each experiment expands into independent tasks
// (one per grid point or sample); tasks run on a small thread pool and their
// rows are concatenated in task order, so output does not depend on scheduling.

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "sqz/channel_bounds.hpp"
#include "sqz/json_io.hpp"

namespace sqz {

inline const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids{"fig-qubit",   "fig-qutrit",        "fig-qudit", "fig-mixu",
                                            "fig-covpauli", "fig-random-states", "fig-twoway"};
  return ids;
}

struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 1;
  int steps = 16;    // grid points per axis
  int samples = 0;   // 0: experiment default (1000 for fig-mixu, 500 per dimension for fig-random-states)
  sdp::ToleranceSet tol;
  int workers = 0;   // 0: hardware concurrency
  bool record_runtime = true;  // false writes runtime_ms = 0 for byte-stable output
  /// fig-mixu parameter sets; empty selects the four sets from the figures.
  std::vector<std::vector<double>> mixu_sets;

  void validate() const {
    if (std::find(experiment_ids().begin(), experiment_ids().end(), experiment) == experiment_ids().end())
      throw DomainError("unknown experiment '" + experiment + "'");
    if (steps < 1) throw DomainError("steps must be >= 1");
    if (samples < 0) throw DomainError("samples must be >= 1");
    for (const auto& s : mixu_sets) {
      double t = 0.0;
      for (double p : s) {
        if (!(p >= 0.0 && p <= 1.0)) throw DomainError("mixu set: probability outside [0,1]");
        t += p;
      }
      if (s.empty() || std::abs(t - 1.0) > 1e-10) throw DomainError("mixu set: probabilities must sum to 1");
    }
  }
};

struct Row {
  std::string experiment;
  std::string param_name;
  double param_value = 0.0;
  std::string bound;
  double value = 0.0;
  std::string status;
  std::uint64_t seed = 0;
  std::int64_t runtime_ms = 0;
};

struct Dataset {
  std::vector<Row> rows;

  bool all_ok() const {
    return std::all_of(rows.begin(), rows.end(), [](const Row& r) { return status_ok(r.status); });
  }
};

inline std::vector<double> linspace(double lo, double hi, int n) {
  if (n == 1) return {lo};
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  return out;
}

inline const std::vector<std::vector<double>>& default_mixu_sets() {
  static const std::vector<std::vector<double>> sets{
      {0.58, 0.22, 0.15, 0.05}, {0.6, 0.2, 0.1, 0.1}, {0.5, 0.3, 0.2, 0.0}, {0.54, 0.32, 0.12, 0.02}};
  return sets;
}

/// "p=0.58/0.22/0.15/0.05", the param_name of fig-mixu rows.
inline std::string mixu_label(const std::vector<double>& set) {
  std::string s = "p=";
  char buf[32];
  for (std::size_t i = 0; i < set.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%g", set[i]);
    s += (i ? "/" : "") + std::string(buf);
  }
  return s;
}

/// Σ p_i U_i · U_i† with Haar-random qubit unitaries drawn from `seed`.
inline KrausChannel random_mixed_unitary(const std::vector<double>& probs, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<CMat> us;
  for (std::size_t i = 0; i < probs.size(); ++i) us.push_back(haar_unitary(2, rng));
  return mixed_unitary(us, probs);
}

namespace detail {

using Task = std::function<std::vector<Row>()>;

inline void run_tasks(const std::vector<Task>& tasks, std::vector<std::vector<Row>>& out, int workers) {
  out.assign(tasks.size(), {});
  int n = workers > 0 ? workers : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  n = std::min<int>(n, static_cast<int>(tasks.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) out[i] = tasks[i]();
  };
  if (n <= 1) {
    work();
    return;
  }
  std::vector<std::thread> pool;
  for (int i = 0; i < n; ++i) pool.emplace_back(work);
  for (auto& t : pool) t.join();
}

/// Evaluates one bound; failures become an "error" row instead of aborting the sweep.
class RowMaker {
 public:
  RowMaker(const ExperimentConfig& cfg, std::string param_name, double param_value, std::uint64_t seed)
      : cfg_(cfg), name_(std::move(param_name)), value_(param_value), seed_(seed) {}

  void add(const std::string& bound, const std::function<BoundReport()>& f) {
    Stopwatch sw;
    Row r{cfg_.experiment, name_, value_, bound, 0.0, status::kError, seed_, 0};
    try {
      const BoundReport b = f();
      r.value = b.value;
      r.status = b.status;
    } catch (const std::exception&) {
      r.value = std::numeric_limits<double>::quiet_NaN();
    }
    r.runtime_ms = cfg_.record_runtime ? sw.ms() : 0;
    rows_.push_back(std::move(r));
  }

  std::vector<Row> take() { return std::move(rows_); }

 private:
  const ExperimentConfig& cfg_;
  std::string name_;
  double value_;
  std::uint64_t seed_;
  std::vector<Row> rows_;
};

inline std::vector<Task> bilocal_tasks(const ExperimentConfig& cfg, int d) {
  std::vector<Task> tasks;
  for (double p : linspace(0.15, 0.3, cfg.steps))
    tasks.push_back([&cfg, d, p] {
      const auto rho = d == 2 ? bilocal_qubit_state(0.1, p) : bilocal_mad_state(d, p);
      RowMaker m(cfg, "p", p, cfg.seed);
      m.add("hashing", [&] { return hashing_report(rho); });
      m.add("erev-u-hat", [&] { return e_rev_u_hat(rho, FreeSet::ADG, cfg.tol); });
      m.add("scb", [&] { return e_scb(rho, cfg.tol); });
      m.add("mcb", [&] { return e_mcb(rho, cfg.tol); });
      return m.take();
    });
  return tasks;
}

inline std::vector<Task> mixu_tasks(const ExperimentConfig& cfg) {
  const auto& sets = cfg.mixu_sets.empty() ? default_mixu_sets() : cfg.mixu_sets;
  const int n = cfg.samples > 0 ? cfg.samples : 1000;
  std::vector<Task> tasks;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    const std::string label = mixu_label(sets[s]);
    const std::uint64_t stream = derive_seed(cfg.seed, s);
    for (int i = 0; i < n; ++i)
      tasks.push_back([&cfg, set = sets[s], label, seed = derive_seed(stream, i), i] {
        const auto ch = random_mixed_unitary(set, seed);
        RowMaker m(cfg, label, i, seed);
        m.add("qsqz", [&] { return q_sqz_qubit(choi_from_kraus(ch), cfg.tol); });
        m.add("conti-adg", [&] { return q_conti_adg(ch, cfg.tol); });
        return m.take();
      });
  }
  return tasks;
}

inline std::vector<Task> covpauli_tasks(const ExperimentConfig& cfg) {
  std::vector<Task> tasks;
  const double p3 = 0.05;
  for (double p0 : linspace(0.75, 0.85, cfg.steps))
    tasks.push_back([&cfg, p0, p3] {
      const double p1 = 0.5 * (1.0 - p0 - p3);
      const PauliParams pp(p0, p1, p1, p3);
      const auto ch = covariant_pauli(p0, p3);
      RowMaker m(cfg, "p0", p0, cfg.seed);
      m.add("hashing", [&] { return pauli_hashing_report(pp); });
      m.add("qsqz", [&] { return q_sqz_qubit(choi_from_kraus(ch), cfg.tol); });
      m.add("nocloning", [&] { return no_cloning_report(pp); });
      m.add("covpauli", [&] { return covariant_pauli_report(p0, p3); });
      m.add("conti-adg", [&] { return q_conti_adg(ch, cfg.tol); });
      return m.take();
    });
  return tasks;
}

inline std::vector<Task> random_state_tasks(const ExperimentConfig& cfg) {
  const int n = cfg.samples > 0 ? cfg.samples : 500;
  std::vector<Task> tasks;
  for (int d : {2, 3}) {
    const std::string label = "rank@" + std::to_string(d) + "x" + std::to_string(d);
    const std::uint64_t stream = derive_seed(cfg.seed, static_cast<std::uint64_t>(d));
    for (int i = 0; i < n; ++i) {
      const int rank = 1 + i % (d * d);  // ranks swept uniformly
      tasks.push_back([&cfg, d, rank, label, seed = derive_seed(stream, i)] {
        const auto rho = hs_random_state(d, d, rank, seed);
        RowMaker m(cfg, label, rank, seed);
        m.add("erev-u-hat", [&] { return e_rev_u_hat(rho, FreeSet::ADG, cfg.tol); });
        m.add("hashing", [&] { return hashing_report(rho); });
        return m.take();
      });
    }
  }
  return tasks;
}

inline std::vector<Task> twoway_tasks(const ExperimentConfig& cfg) {
  std::vector<Task> tasks;
  for (double p : linspace(0.0, 1.0, cfg.steps))
    tasks.push_back([&cfg, p] {
      const auto rho = twoway_state(p);
      RowMaker m(cfg, "p", p, cfg.seed);
      m.add("erev-npt-hat", [&] { return e_rev_u_hat(rho, FreeSet::PPT, cfg.tol); });
      return m.take();
    });
  return tasks;
}

}  // namespace detail

inline Dataset run(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<detail::Task> tasks;
  const auto& e = cfg.experiment;
  if (e == "fig-qubit") tasks = detail::bilocal_tasks(cfg, 2);
  else if (e == "fig-qutrit") tasks = detail::bilocal_tasks(cfg, 3);
  else if (e == "fig-qudit") tasks = detail::bilocal_tasks(cfg, 4);
  else if (e == "fig-mixu") tasks = detail::mixu_tasks(cfg);
  else if (e == "fig-covpauli") tasks = detail::covpauli_tasks(cfg);
  else if (e == "fig-random-states") tasks = detail::random_state_tasks(cfg);
  else tasks = detail::twoway_tasks(cfg);
  std::vector<std::vector<Row>> parts;
  detail::run_tasks(tasks, parts, cfg.workers);
  Dataset ds;
  for (auto& p : parts)
    for (auto& r : p) ds.rows.push_back(std::move(r));
  return ds;
}

// ---------------------------------------------------------------------------
// Serialization

inline const char* kCsvHeader = "experiment,param_name,param_value,bound,value,status,seed,runtime_ms";

inline std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string to_csv(const Dataset& ds) {
  std::string out = std::string(kCsvHeader) + "\n";
  char buf[64];
  for (const auto& r : ds.rows) {
    out += r.experiment + "," + r.param_name + "," + format_real(r.param_value) + "," + r.bound + "," +
           format_real(r.value) + "," + r.status + ",";
    std::snprintf(buf, sizeof buf, "%" PRIu64 ",%" PRId64 "\n", r.seed, r.runtime_ms);
    out += buf;
  }
  return out;
}

/// Values are rounded to the same 12 significant digits as the CSV.
inline json to_json(const Dataset& ds) {
  json arr = json::array();
  for (const auto& r : ds.rows) {
    json v = std::isnan(r.value) ? json(nullptr) : json(std::stod(format_real(r.value)));
    arr.push_back({{"experiment", r.experiment},
                   {"param_name", r.param_name},
                   {"param_value", std::stod(format_real(r.param_value))},
                   {"bound", r.bound},
                   {"value", v},
                   {"status", r.status},
                   {"seed", r.seed},
                   {"runtime_ms", r.runtime_ms}});
  }
  return arr;
}

inline Dataset dataset_from_json(const json& arr) {
  Dataset ds;
  for (const auto& j : arr) {
    Row r;
    r.experiment = j.at("experiment").get<std::string>();
    r.param_name = j.at("param_name").get<std::string>();
    r.param_value = j.at("param_value").get<double>();
    r.bound = j.at("bound").get<std::string>();
    r.value = j.at("value").is_null() ? std::numeric_limits<double>::quiet_NaN() : j.at("value").get<double>();
    r.status = j.at("status").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.runtime_ms = j.at("runtime_ms").get<std::int64_t>();
    ds.rows.push_back(std::move(r));
  }
  return ds;
}

inline Dataset dataset_from_csv(const std::string& text) {
  std::stringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw IoError("CSV: unexpected header");
  Dataset ds;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string tok;
    while (std::getline(ls, tok, ',')) f.push_back(tok);
    if (f.size() != 8) throw IoError("CSV: expected 8 fields in '" + line + "'");
    Row r{f[0], f[1], std::stod(f[2]), f[3], std::stod(f[4]), f[5], std::stoull(f[6]), std::stoll(f[7])};
    ds.rows.push_back(std::move(r));
  }
  return ds;
}

enum class Format { Csv, Json };

inline void emit(const Dataset& ds, Format f, const std::string& path) {
  write_text_file(path, f == Format::Csv ? to_csv(ds) : to_json(ds).dump(2) + "\n");
}

}  // namespace sqz
