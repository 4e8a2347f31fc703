#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "sqz/sqz.hpp"

using namespace sqz;
using Catch::Approx;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("sqz_test_" + name)).string();
}

}  // namespace

TEST_CASE("matrix, state and channel JSON round-trip bit-exactly", "[io]") {
  const CMat m = haar_unitary(3, 9) * 0.1234567890123;
  const CMat back = matrix_from_json(json::parse(matrix_to_json(m).dump()));
  CHECK((back.array() == m.array()).all());

  const auto rho = hs_random_state(2, 3, 2, 4);
  const auto rho2 = state_from_json(json::parse(state_to_json(rho).dump()));
  CHECK(rho2.dims() == rho.dims());
  CHECK((rho2.matrix().array() == rho.matrix().array()).all());

  const auto k = random_channel(2, 2, 3, 5);
  const auto k2 = channel_from_json(json::parse(channel_to_json(k).dump()));
  REQUIRE(k2.rank() == 3);
  for (int i = 0; i < 3; ++i) CHECK((k2.ops()[i].array() == k.ops()[i].array()).all());
  const auto c = choi_from_kraus(k);
  CHECK(max_abs(choi_from_kraus(channel_from_json(channel_to_json(c))).matrix() - c.matrix()) < 1e-12);

  CHECK_THROWS_AS(channel_from_json(json{{"kind", "unitary"}, {"d_in", 2}, {"d_out", 2}}), IoError);
  CHECK_THROWS_AS(matrix_from_json(json{{"rows", 2}, {"cols", 2}, {"data", json::array()}}), DimensionError);
}

TEST_CASE("bound report JSON", "[io]") {
  BoundReport r;
  r.bound_name = "qsqz";
  r.value = 0.6103;
  r.status = status::kOptimal;
  r.tolerance = 1e-8;
  r.runtime_ms = 12;
  r.inputs_digest = "0123456789abcdef";
  const json j = report_to_json(r);
  for (const char* key : {"bound", "value", "status", "tol", "runtime_ms", "inputs_digest"}) CHECK(j.contains(key));
  const auto back = report_from_json(json::parse(j.dump()));
  CHECK(back.value == r.value);
  CHECK(back.bound_name == r.bound_name);
  r.value = std::numeric_limits<double>::quiet_NaN();
  CHECK(report_to_json(r).at("value").is_null());
}

TEST_CASE("named constructors", "[io]") {
  CHECK(max_abs(choi_from_kraus(make_channel("pauli:0.9,0.05,0.03,0.02")).matrix() -
                choi_from_kraus(pauli({0.9, 0.05, 0.03, 0.02})).matrix()) < 1e-15);
  CHECK(make_channel("identity:3").input_dim() == 3);
  CHECK(make_channel("mad:3,0.1,0.1,0").rank() == 3);
  CHECK(make_channel("mixu:7,0.5,0.5").rank() == 2);
  CHECK(make_state("isotropic:2,0.9").dims() == Dims{2, 2});
  CHECK(make_state("bilocal-mad:4,0.2").dims() == Dims{4, 4});
  CHECK(make_state("choi:ad:0.3").dims() == Dims{2, 2});
  CHECK(max_abs(make_state("twoway:1").matrix() - maximally_entangled(2).matrix()) < 1e-15);
  CHECK_THROWS_AS(make_channel("warp:1"), IoError);
  CHECK_THROWS_AS(make_channel("pauli:0.9,0.1"), IoError);
  CHECK_THROWS_AS(make_state("phi:x"), IoError);
  CHECK_THROWS_AS(make_state("missing/file.json"), IoError);

  const auto path = temp_path("state.json");
  write_text_file(path, state_to_json(isotropic_state(2, 0.8)).dump());
  CHECK(max_abs(make_state(path).matrix() - isotropic_state(2, 0.8).matrix()) < 1e-15);
}

TEST_CASE("Pauli parameters from a Choi matrix", "[io]") {
  const auto p = pauli_params_from_choi(choi_from_kraus(pauli({0.7, 0.1, 0.15, 0.05})));
  REQUIRE(p.has_value());
  CHECK(p->p2 == Approx(0.15).margin(1e-12));
  CHECK_FALSE(pauli_params_from_choi(choi_from_kraus(amplitude_damping(0.3))).has_value());
}

TEST_CASE("experiment row counts", "[experiments]") {
  ExperimentConfig cfg;
  cfg.experiment = "fig-qubit";
  cfg.steps = 2;
  const auto ds = run(cfg);
  CHECK(ds.rows.size() == 8);
  CHECK(ds.all_ok());

  ExperimentConfig mu;
  mu.experiment = "fig-mixu";
  mu.samples = 10;
  mu.mixu_sets = {{0.58, 0.22, 0.15, 0.05}};
  const auto dm = run(mu);
  CHECK(dm.rows.size() == 20);
  for (const auto& r : dm.rows) CHECK(r.param_name == "p=0.58/0.22/0.15/0.05");

  ExperimentConfig rs;
  rs.experiment = "fig-random-states";
  rs.samples = 5;
  CHECK(run(rs).rows.size() == 20);

  ExperimentConfig tw;
  tw.experiment = "fig-twoway";
  tw.steps = 3;
  const auto dt = run(tw);
  REQUIRE(dt.rows.size() == 3);
  CHECK(dt.rows.back().value == Approx(1.0).margin(1e-6));  // Φ_2
}

TEST_CASE("experiments are deterministic", "[experiments]") {
  ExperimentConfig cfg;
  cfg.experiment = "fig-covpauli";
  cfg.record_runtime = false;
  cfg.workers = 1;
  const auto a = to_csv(run(cfg));
  cfg.workers = 3;
  const auto b = to_csv(run(cfg));
  CHECK(a == b);

  ExperimentConfig mu;
  mu.experiment = "fig-mixu";
  mu.samples = 3;
  mu.record_runtime = false;
  mu.seed = 42;
  const auto c = to_csv(run(mu));
  CHECK(c == to_csv(run(mu)));
  mu.seed = 43;
  CHECK(c != to_csv(run(mu)));
}

TEST_CASE("config validation", "[experiments]") {
  ExperimentConfig cfg;
  cfg.experiment = "fig-nothing";
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.experiment = "fig-qubit";
  cfg.steps = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.steps = 4;
  cfg.mixu_sets = {{0.5, 0.6}};
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("dataset serialization", "[experiments][io]") {
  Dataset empty;
  CHECK(to_csv(empty) == "experiment,param_name,param_value,bound,value,status,seed,runtime_ms\n");

  Dataset one;
  one.rows.push_back({"fig-covpauli", "p0", 0.8, "qsqz", 0.6103, "optimal", 7, 3});
  const auto back = dataset_from_json(json::parse(to_json(one).dump()));
  REQUIRE(back.rows.size() == 1);
  CHECK(back.rows[0].bound == "qsqz");
  CHECK(back.rows[0].seed == 7);
  CHECK(std::abs(back.rows[0].value - 0.6103) <= 1e-12);

  const auto csv = dataset_from_csv(to_csv(one));
  REQUIRE(csv.rows.size() == 1);
  CHECK(std::abs(csv.rows[0].value - 0.6103) <= 1e-12);
  CHECK(csv.rows[0].runtime_ms == 3);

  one.rows[0].value = 1.0 / 3.0;
  CHECK(to_csv(one).find("0.333333333333,") != std::string::npos);

  const auto path = temp_path("rows.csv");
  emit(one, Format::Csv, path);
  CHECK(slurp(path) == to_csv(one));
  CHECK_THROWS_AS(emit(one, Format::Csv, "/nonexistent-dir/x.csv"), IoError);
  CHECK_THROWS_AS(dataset_from_csv("a,b\n"), IoError);
}
