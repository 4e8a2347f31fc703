#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sqz/sqz.hpp"

using namespace sqz;

namespace {

Dims parse_dims(const std::string& s) {
  Dims d;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) d.push_back(std::stoi(tok));
  if (d.size() != 2) throw IoError("--dims expects dA,dB");
  return d;
}

BoundReport not_applicable(const std::string& bound, const std::string& digest, double tol) {
  BoundReport r;
  r.bound_name = bound;
  r.value = std::numeric_limits<double>::quiet_NaN();
  r.status = status::kNotApplicable;
  r.tolerance = tol;
  r.inputs_digest = digest;
  return r;
}

BoundReport state_bound(const DensityOperator& rho, const std::string& bound, const sdp::ToleranceSet& tol) {
  if (bound == "erev-u-hat") return e_rev_u_hat(rho, FreeSet::ADG, tol);
  if (bound == "erev-npt-hat") return e_rev_u_hat(rho, FreeSet::PPT, tol);
  if (bound == "erev-u") return e_rev_u(rho, FreeSet::ADG, tol);
  if (bound == "scb") return e_scb(rho, tol);
  if (bound == "mcb") return e_mcb(rho, tol);
  if (bound == "dset") return d_set_report(rho, tol);
  if (bound == "dmap") return d_map_report(rho, tol);
  return hashing_report(rho);
}

BoundReport eps_report(const KrausChannel& n, bool degradable, const sdp::ToleranceSet& tol) {
  Stopwatch sw;
  const auto c = choi_from_kraus(n);
  auto r = detail::channel_report(degradable ? "eps-deg" : "eps-adg", c, tol.gap);
  const auto e = degradable ? eps_degradable(n, tol) : eps_antidegradable(n, tol);
  r.value = e.epsilon;
  r.status = e.status == sdp::SolveStatus::Optimal ? status::kOptimal : sdp::to_string(e.status);
  r.runtime_ms = sw.ms();
  return r;
}

BoundReport channel_bound(const KrausChannel& n, const std::string& bound, const sdp::ToleranceSet& tol) {
  const auto c = choi_from_kraus(n);
  if (bound == "qsqz") return q_sqz_qubit(c, tol);
  if (bound == "conti-adg") return q_conti_adg(n, tol);
  if (bound == "conti-deg") return q_conti_deg(n, tol);
  if (bound == "eps-deg") return eps_report(n, true, tol);
  if (bound == "eps-adg") return eps_report(n, false, tol);
  if (bound == "hashing") {
    auto r = hashing_report(c.normalized_state());
    r.inputs_digest = detail::channel_digest(c, bound);
    return r;
  }
  const auto p = pauli_params_from_choi(c);
  const std::string digest = detail::channel_digest(c, bound);
  if (!p) return not_applicable(bound, digest, 0.0);
  if (bound == "nocloning") return no_cloning_report(*p);
  // covpauli
  if (std::abs(p->p1 - p->p2) > 1e-9) return not_applicable(bound, digest, 0.0);
  return covariant_pauli_report(p->p0, p->p3);
}

int write_report(const BoundReport& r, const std::string& out) {
  const std::string text = report_to_json(r).dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    write_text_file(out, text);
  return status_ok(r.status) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reverse-divergence bounds on distillable entanglement and quantum capacity"};
  app.require_subcommand(1);

  double tol_gap = 1e-8;
  std::string out;

  auto* sb = app.add_subcommand("state-bound", "Evaluate one bound on a bipartite state");
  std::string state_spec, state_kind, dims_text;
  sb->add_option("--state", state_spec, "state JSON file or constructor (e.g. isotropic:2,0.9)")->required();
  sb->add_option("--bound", state_kind, "bound name")
      ->required()
      ->check(CLI::IsMember({"erev-u", "erev-u-hat", "erev-npt-hat", "scb", "mcb", "dset", "dmap", "hashing"}));
  sb->add_option("--dims", dims_text, "subsystem dimensions dA,dB");
  sb->add_option("--tol", tol_gap, "solver tolerance");
  sb->add_option("--out", out, "output JSON path (stdout if omitted)");

  auto* cb = app.add_subcommand("channel-bound", "Evaluate one bound on a channel");
  std::string channel_spec, channel_kind;
  cb->add_option("--channel", channel_spec, "channel JSON file or constructor (e.g. pauli:0.9,0.05,0.03,0.02)")
      ->required();
  cb->add_option("--bound", channel_kind, "bound name")
      ->required()
      ->check(CLI::IsMember({"qsqz", "nocloning", "covpauli", "conti-adg", "conti-deg", "hashing", "eps-deg", "eps-adg"}));
  cb->add_option("--tol", tol_gap, "solver tolerance");
  cb->add_option("--out", out, "output JSON path (stdout if omitted)");

  auto* fig = app.add_subcommand("fig", "Run a figure experiment");
  ExperimentConfig cfg;
  std::string format = "csv";
  bool no_timing = false;
  fig->add_option("experiment", cfg.experiment, "experiment id")->required()->check(CLI::IsMember(experiment_ids()));
  fig->add_option("--seed", cfg.seed, "base seed");
  fig->add_option("--steps", cfg.steps, "grid points per axis")->check(CLI::PositiveNumber);
  fig->add_option("--samples", cfg.samples, "samples per parameter set")->check(CLI::PositiveNumber);
  fig->add_option("--workers", cfg.workers, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  fig->add_option("--tol", tol_gap, "solver tolerance");
  fig->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
  fig->add_flag("--no-timing", no_timing, "write runtime_ms = 0 so reruns are byte-identical");
  fig->add_option("--out", out, "output path")->required();

  CLI11_PARSE(app, argc, argv);

  sdp::ToleranceSet tol;
  tol.gap = tol_gap;
  try {
    if (sb->parsed()) {
      auto rho = make_state(state_spec);
      if (!dims_text.empty()) rho = rho.with_dims(parse_dims(dims_text));
      return write_report(state_bound(rho, state_kind, tol), out);
    }
    if (cb->parsed()) return write_report(channel_bound(make_channel(channel_spec), channel_kind, tol), out);
    cfg.tol = tol;
    cfg.record_runtime = !no_timing;
    const Dataset ds = run(cfg);
    emit(ds, format == "csv" ? Format::Csv : Format::Json, out);
    return ds.all_ok() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "sqz: " << e.what() << "\n";
    return 2;
  }
}
