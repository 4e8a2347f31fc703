#include <catch_amalgamated.hpp>

#include "sqz/channel_bounds.hpp"

using namespace sqz;
using Catch::Approx;

namespace {

ChoiMatrix choi(const KrausChannel& k) { return choi_from_kraus(k); }

ChoiMatrix pauli_choi(double p0, double p1, double p2, double p3) { return choi(pauli({p0, p1, p2, p3})); }

// Dominant-p0 Pauli points with all p_i > 0.
std::vector<PauliParams> pauli_grid(int n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<PauliParams> out;
  while (static_cast<int>(out.size()) < n) {
    const double p0 = 0.55 + 0.44 * rng.uniform();
    double a = rng.uniform() + 1e-3, b = rng.uniform() + 1e-3, c = rng.uniform() + 1e-3;
    const double s = (1.0 - p0) / (a + b + c);
    a *= s;
    b *= s;
    c = 1.0 - p0 - a - b;
    if (c <= 0.0 || std::max({a, b, c}) > p0) continue;
    out.emplace_back(p0, a, b, c);
  }
  return out;
}

}  // namespace

TEST_CASE("Pauli closed forms", "[channel]") {
  const PauliParams p(0.9, 0.05, 0.03, 0.02);
  CHECK(pauli_adg_weight(p) == Approx(0.3896950149831795).margin(1e-12));
  CHECK(no_cloning_bound(p) == Approx(1.0 - 0.3896950149831795).margin(1e-12));
  CHECK(pauli_adg_weight({1, 0, 0, 0}) == 0.0);
  CHECK(no_cloning_bound({1, 0, 0, 0}) == 1.0);
  CHECK(pauli_adg_weight_raw({0.7, 0.1, 0.1, 0.1}) == Approx(1.2));
  CHECK(pauli_adg_weight({0.7, 0.1, 0.1, 0.1}) == 1.0);
  CHECK_THROWS_AS(pauli_adg_weight({0.2, 0.5, 0.2, 0.1}), DomainError);

  CHECK(pauli_hashing(p) == Approx(0.382457).margin(1e-6));
  CHECK(pauli_hashing({1, 0, 0, 0}) == 1.0);
  CHECK(pauli_hashing_raw({0.25, 0.25, 0.25, 0.25}) == Approx(-1.0));
  CHECK(pauli_hashing({0.25, 0.25, 0.25, 0.25}) == 0.0);

  CHECK(covariant_pauli_qsqz(1.0, 0.0) == Approx(1.0));
  CHECK(covariant_pauli_qsqz(0.8, 0.05) == Approx(0.45 - std::sqrt(0.06)).margin(1e-12));
  CHECK_THROWS_AS(covariant_pauli_qsqz(0.9, 0.2), DomainError);
  for (int i = 0; i < 16; ++i) {
    const double p0 = 0.75 + 0.1 * i / 15.0, p3 = 0.05, p1 = 0.5 * (1.0 - p0 - p3);
    CHECK(covariant_pauli_qsqz(p0, p3) == Approx(no_cloning_bound({p0, p1, p1, p3})).margin(1e-12));
  }
  for (const auto& q : pauli_grid(50, 7)) CHECK(pauli_hashing(q) <= no_cloning_bound(q) + 1e-9);
}

TEST_CASE("closed-form dual point for Pauli channels", "[channel][certificate]") {
  for (const auto& p : pauli_grid(20, 11)) {
    const auto c = pauli_dual_certificate(p);
    CHECK(channel_dual_violation(c, 2, 2) < 1e-9);
    const CMat j = choi(pauli(p)).matrix() / 2.0;
    const double dual = (c.at("M") * j).trace().real();
    CHECK(dual == Approx(1.0 - pauli_adg_weight_raw(p)).margin(1e-9));
  }
}

TEST_CASE("channel squeezing", "[channel]") {
  SECTION("identity channel has no free part") {
    const auto r = squeeze_channel_adg(identity_choi(2));
    REQUIRE(r.status == sdp::SolveStatus::Optimal);
    CHECK(r.free_weight == 0.0);
    REQUIRE(r.squeezed_channel.has_value());
  }
  SECTION("Pauli channel matches the closed form") {
    const auto r = squeeze_channel_adg(pauli_choi(0.9, 0.05, 0.03, 0.02));
    REQUIRE(r.status == sdp::SolveStatus::Optimal);
    CHECK(r.free_weight == Approx(0.3896950149831795).margin(1e-6));
    // the squeezed channel is the identity
    CHECK(max_abs(r.squeezed_channel->matrix() - identity_choi(2).matrix()) < 1e-5);
  }
  SECTION("anti-degradable Pauli channel is entirely free") {
    const auto r = squeeze_channel_adg(pauli_choi(0.7, 0.1, 0.1, 0.1));
    REQUIRE(r.status == sdp::SolveStatus::Optimal);
    CHECK(r.free_weight == 1.0);
    CHECK_FALSE(r.squeezed_channel.has_value());
  }
}

TEST_CASE("channel squeezing agrees with the Pauli formula", "[channel][property]") {
  for (const auto& p : pauli_grid(12, 3)) {
    const auto r = squeeze_channel_adg(choi(pauli(p)));
    REQUIRE(r.status == sdp::SolveStatus::Optimal);
    CHECK(r.free_weight == Approx(pauli_adg_weight(p)).margin(1e-6));
  }
}

TEST_CASE("channel squeezing decomposition and certificate", "[channel][property]") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto n = choi(random_channel(2, 2, 1 + static_cast<int>(seed % 3), seed));
    const auto r = squeeze_channel_adg(n);
    REQUIRE(r.status == sdp::SolveStatus::Optimal);
    const CMat j = n.matrix() / 2.0;
    CHECK((r.dual_certificate.at("M") * j).trace().real() == Approx(1.0 - r.free_weight).margin(1e-6));
    if (r.support.cols() == 4) CHECK(channel_dual_violation(r.dual_certificate, 2, 2) < 1e-7);
    if (r.free_weight > 0.0 && r.free_weight < 1.0) {
      const CMat rebuilt =
          (1.0 - r.free_weight) * r.squeezed_channel->matrix() + r.free_weight * r.adg_channel->matrix();
      CHECK(max_abs(rebuilt - n.matrix()) < 1e-6);
    }
  }
}

TEST_CASE("diamond norm", "[channel][diamond]") {
  const auto id = identity_choi(2);
  SECTION("zero map") { CHECK(diamond_norm_half(id, id).value == 0.0); }
  SECTION("orthogonal unitaries") {
    const auto x = choi(unitary_channel(pauli_matrix(1)));
    const auto r = diamond_norm_half(id, x);
    REQUIRE(r.status == sdp::SolveStatus::Optimal);
    CHECK(r.value == Approx(1.0).margin(1e-7));
  }
  SECTION("identity against depolarizing, with a sampled lower bound") {
    const auto dep = choi(depolarizing(2, 0.3));
    const CMat delta = id.matrix() - dep.matrix();
    const auto r = diamond_norm_half(delta, 2, 2);
    REQUIRE(r.status == sdp::SolveStatus::Optimal);
    const double lower = diamond_norm_half_sampled(delta, 2, 2, 20000, 5);
    CHECK(r.value >= lower - 1e-8);
    CHECK(r.value - lower < 1e-3);
  }
  SECTION("random pairs") {
    for (std::uint64_t s = 1; s <= 4; ++s) {
      const auto a = choi(random_channel(2, 2, 2, 100 + s));
      const auto b = choi(random_channel(2, 2, 3, 200 + s));
      const auto r = diamond_norm_half(a, b);
      REQUIRE(r.status == sdp::SolveStatus::Optimal);
      CHECK(r.value >= diamond_norm_half_sampled(a.matrix() - b.matrix(), 2, 2, 2000, s) - 1e-8);
      CHECK(r.value <= 1.0 + 1e-8);
    }
  }
  SECTION("preconditions") {
    CMat bad = id.matrix();
    bad(0, 1) = std::complex<double>(0.0, 0.3);
    CHECK_THROWS_AS(diamond_norm_half(bad, 2, 2), DomainError);
    CHECK_THROWS_AS(diamond_norm_half(id.matrix(), 2, 2), DomainError);
  }
}

TEST_CASE("composition link map", "[channel]") {
  const auto s = random_channel(2, 3, 2, 41);
  const auto d = random_channel(3, 2, 3, 42);
  const CMat expected = compose_choi(choi(d).matrix(), choi(s).matrix(), 2, 3, 2);
  const CMat got = detail::link_after(s, 2).apply(choi(d).matrix());
  CHECK(max_abs(got - expected) < 1e-12);
}

TEST_CASE("epsilon degradability", "[channel][eps]") {
  for (double g : {0.1, 0.3, 0.5}) {
    const auto r = eps_degradable(amplitude_damping(g));
    REQUIRE(r.status == sdp::SolveStatus::Optimal);
    CHECK(r.epsilon <= 1e-6);
    CHECK(r.direction == DegradeDirection::Degradable);
  }
  for (double g : {0.5, 0.7, 0.9}) {
    const auto r = eps_antidegradable(amplitude_damping(g));
    REQUIRE(r.status == sdp::SolveStatus::Optimal);
    CHECK(r.epsilon <= 1e-6);
  }
  const auto ad9 = eps_degradable(amplitude_damping(0.9));
  CHECK(ad9.epsilon > 0.01);
  CHECK(ad9.epsilon <= 1.0 + 1e-9);

  const auto idd = eps_degradable(KrausChannel(2, 2, {CMat::Identity(2, 2)}));
  CHECK(idd.epsilon <= 1e-6);
  CHECK(idd.env_dim == 1);
  const auto ida = eps_antidegradable(KrausChannel(2, 2, {CMat::Identity(2, 2)}));
  CHECK(ida.epsilon >= 0.25);
  CHECK(ida.epsilon <= 1.0 + 1e-9);

  CHECK(eps_antidegradable(pauli({0.7, 0.1, 0.1, 0.1})).epsilon <= 1e-6);

  SECTION("witness achieves the reported distance") {
    const auto n = amplitude_damping(0.8);
    const auto r = eps_degradable(n);
    const auto nc = complementary(kraus_from_choi(choi(n)));
    const CMat composed = compose_choi(r.witness_map.matrix(), choi(n).matrix(), 2, 2, nc.output_dim());
    const auto check = diamond_norm_half(CMat(choi(nc).matrix() - composed), 2, nc.output_dim());
    CHECK(check.value == Approx(r.epsilon).margin(1e-5));
  }
}

TEST_CASE("diagonal coherent information", "[channel]") {
  const auto id = q1_degradable_diag(identity_choi(2));
  CHECK(id.value == Approx(1.0).margin(1e-7));
  CHECK(id.argmax == Approx(0.5).margin(1e-4));
  CHECK(q1_degradable_diag(choi(amplitude_damping(0.0))).value == Approx(1.0).margin(1e-7));
  CHECK(q1_degradable_diag(choi(amplitude_damping(0.5))).value == Approx(0.0).margin(1e-7));
  // grid check of the optimizer on AD(0.2)
  const auto k = amplitude_damping(0.2);
  const auto kc = complementary(k);
  double grid_best = -1.0;
  for (int i = 0; i <= 2000; ++i) {
    CMat rho = CMat::Zero(2, 2);
    rho(0, 0) = i / 2000.0;
    rho(1, 1) = 1.0 - rho(0, 0).real();
    grid_best = std::max(grid_best, entropy_bits(k.apply(rho)) - entropy_bits(kc.apply(rho)));
  }
  const double v = q1_degradable_diag(choi(k)).value;
  CHECK(v >= grid_best - 1e-9);
  CHECK(v - grid_best < 1e-5);
}

TEST_CASE("qubit squeezing bound", "[channel]") {
  SECTION("identity") {
    const auto r = q_sqz_qubit(identity_choi(2));
    CHECK(r.status == status::kOptimal);
    CHECK(r.value == Approx(1.0).margin(1e-6));
  }
  SECTION("Pauli channel recovers the no-cloning bound") {
    const auto r = q_sqz_qubit(pauli_choi(0.9, 0.05, 0.03, 0.02));
    CHECK(r.status == status::kOptimal);
    CHECK(r.value == Approx(0.6103049850168205).margin(1e-5));
    CHECK(pauli_hashing({0.9, 0.05, 0.03, 0.02}) <= r.value);
  }
  SECTION("covariant Pauli") {
    const auto r = q_sqz_qubit(choi(covariant_pauli(0.8, 0.05)));
    CHECK(r.status == status::kOptimal);
    CHECK(r.value == Approx(0.205051).margin(1e-5));
  }
  SECTION("anti-degradable input") {
    const auto r = q_sqz_qubit(pauli_choi(0.7, 0.1, 0.1, 0.1));
    CHECK(r.status == status::kOptimal);
    CHECK(r.value == 0.0);
  }
  SECTION("non-qubit input") {
    const auto r = q_sqz_qubit(identity_choi(3));
    CHECK(r.status == status::kNotApplicable);
  }
}

TEST_CASE("continuity bounds", "[channel]") {
  CHECK(conti_adg_formula(0.05, 2) == Approx(0.676402).margin(1e-6));
  CHECK(conti_deg_penalty(0.05, 2) == Approx(0.676402).margin(1e-6));
  CHECK(conti_adg_formula(0.0, 2) == 0.0);
  CHECK(conti_deg_penalty(0.0, 1) == 0.0);

  const auto adg = q_conti_adg(amplitude_damping(0.8));
  CHECK(adg.status == status::kOptimal);
  CHECK(adg.value == Approx(0.0).margin(1e-4));

  const auto deg = q_conti_deg(amplitude_damping(0.2));
  CHECK(deg.status == status::kOptimal);
  CHECK(deg.value == Approx(q1_degradable_diag(choi(amplitude_damping(0.2))).value).margin(1e-9));

  const auto id = q_conti_deg(KrausChannel(2, 2, {CMat::Identity(2, 2)}));
  CHECK(id.value == Approx(1.0).margin(1e-7));

  CHECK(q_conti_deg(KrausChannel(3, 3, {CMat::Identity(3, 3)})).status == status::kNotApplicable);
  CHECK(q_conti_deg(amplitude_damping(0.8)).status == status::kMarginal);
}

TEST_CASE("squeezing bound stays below the epsilon anti-degradable bound", "[channel][property]") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    SplitMix64 rng(seed);
    const double q = rng.uniform();
    const auto u1 = haar_unitary(2, seed * 31 + 1), u2 = haar_unitary(2, seed * 31 + 2);
    const auto n = mixed_unitary({u1, u2}, {q, 1.0 - q});
    const auto sq = q_sqz_qubit(choi(n));
    const auto ea = q_conti_adg(n);
    REQUIRE(status_ok(sq.status));
    CHECK(sq.value <= ea.value + 1e-6);
  }
}
