#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "eprsim/errors.hpp"
#include "eprsim/montecarlo.hpp"

using namespace eprsim;

namespace {

constexpr double kPi = std::numbers::pi;
const double kTwoSqrt2 = 2.0 * std::sqrt(2.0);

ExperimentConfig photon_config(double a, double b, long long pairs, std::uint64_t seed) {
  ExperimentConfig config;
  config.system = SystemKind::Photon;
  config.setting_a = a;
  config.setting_b = b;
  config.pairs = pairs;
  config.seed = seed;
  return config;
}

bool counts_equal(const CoincidenceCounts& x, const CoincidenceCounts& y) {
  return x.n_pp == y.n_pp && x.n_pm == y.n_pm && x.n_mp == y.n_mp && x.n_mm == y.n_mm &&
         x.n_single_a == y.n_single_a && x.n_single_b == y.n_single_b && x.n_lost == y.n_lost;
}

}  // namespace

TEST_CASE("identical configs give identical counts") {
  const ExperimentConfig config = photon_config(0.3, 1.1, 50000, 99);
  const CoincidenceCounts first = run_experiment(config);
  const CoincidenceCounts second = run_experiment(config);
  CHECK(counts_equal(first, second));
  CHECK(first.total() == config.pairs);
}

TEST_CASE("counts are additive across pair-index partitions") {
  // Splitting the pair range must reproduce the sequential run: the per-pair
  // substreams depend only on (seed, global index).
  ExperimentConfig whole = photon_config(0.2, 0.9, 30000, 7);
  whole.efficiency = 0.6;
  const CoincidenceCounts full = run_experiment(whole);

  ExperimentConfig head = whole;
  head.pairs = 11111;
  ExperimentConfig tail = whole;
  tail.pairs = whole.pairs - head.pairs;
  tail.pair_index_offset = static_cast<std::uint64_t>(head.pairs);

  const CoincidenceCounts h = run_experiment(head);
  const CoincidenceCounts t = run_experiment(tail);
  CoincidenceCounts merged{h.n_pp + t.n_pp,        h.n_pm + t.n_pm,
                           h.n_mp + t.n_mp,        h.n_mm + t.n_mm,
                           h.n_single_a + t.n_single_a, h.n_single_b + t.n_single_b,
                           h.n_lost + t.n_lost};
  CHECK(counts_equal(full, merged));
}

TEST_CASE("aligned analyzers never produce equal outcomes") {
  const CoincidenceCounts counts = run_experiment(photon_config(0.7, 0.7, 200000, 3));
  CHECK(counts.n_pp == 0);
  CHECK(counts.n_mm == 0);
  CHECK(counts.n_pm + counts.n_mp == counts.total());
}

TEST_CASE("detector thinning at efficiency 0.5 keeps a quarter of the pairs") {
  ExperimentConfig config = photon_config(0.0, 1.0, 400000, 21);
  config.efficiency = 0.5;
  const CoincidenceCounts counts = run_experiment(config);
  const double n = static_cast<double>(config.pairs);
  const double expected = 0.25 * n;
  const double sigma = std::sqrt(n * 0.25 * 0.75);
  CHECK(std::abs(static_cast<double>(counts.coincidences()) - expected) < 5.0 * sigma);
  CHECK(counts.total() == config.pairs);
  CHECK(counts.n_single_a > 0);
  CHECK(counts.n_single_b > 0);
}

TEST_CASE("kaon coincidence frequency tracks the analytic rate") {
  ExperimentConfig config;
  config.system = SystemKind::Kaon;
  config.setting_a = 0.6;
  config.setting_b = 2.1;
  config.pairs = 1000000;
  config.seed = 31;

  const double rate = kaon_R_pp(config.setting_a, config.setting_b, config.kaon);
  const CoincidenceCounts counts = run_experiment(config);
  const double n = static_cast<double>(config.pairs);
  const double sigma = std::sqrt(n * rate * (1.0 - rate));
  CHECK(std::abs(static_cast<double>(counts.n_pp) - n * rate) < 5.0 * sigma);

  // Decay shows up as singles and dead pairs; everything is conserved.
  CHECK(counts.n_single_a > 0);
  CHECK(counts.n_lost >= 0);
  CHECK(counts.total() == config.pairs);
}

TEST_CASE("outcome probabilities decompose the channel loss") {
  ExperimentConfig config;
  config.system = SystemKind::Kaon;
  config.setting_a = 1.0;
  config.setting_b = 2.0;
  const OutcomeProbabilities p = outcome_probabilities(config);
  const double total = p.pp + p.pm + p.mp + p.mm + p.single_a + p.single_b + p.lost;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  // Arm A measured earlier survives more often.
  CHECK(p.single_a > p.single_b);
}

TEST_CASE("estimate_E edge counts") {
  CoincidenceCounts anti{0, 500, 500, 0, 0, 0, 0};
  const CorrelationEstimate e1 = estimate_E(anti);
  CHECK(e1.value == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(e1.standard_error == doctest::Approx(0.0).epsilon(1e-15));

  CoincidenceCounts flat{250, 250, 250, 250, 0, 0, 0};
  CHECK(std::abs(estimate_E(flat).value) < 1e-15);

  CoincidenceCounts empty{0, 0, 0, 0, 10, 10, 80};
  CHECK_THROWS_AS(estimate_E(empty), InsufficientDataError);
}

TEST_CASE("kaon E_R estimate converges to the closed form") {
  ExperimentConfig config;
  config.system = SystemKind::Kaon;
  config.setting_a = 0.0;
  config.setting_b = 2.0;  // dt = 2 lifetimes
  config.pairs = 1000000;
  config.seed = 5;

  const CorrelationEstimate est = estimate_E(run_experiment(config));
  const double expected = kaon_E_normalized(config.setting_a, config.setting_b, config.kaon);
  CHECK(std::abs(est.value - expected) < 4.0 * est.standard_error);
}

TEST_CASE("photon CHSH estimate lands on 2 sqrt 2") {
  ExperimentConfig base = photon_config(0.0, 0.0, 400000, 17);
  const Settings4 settings{0.0, 0.5 * kPi, 0.25 * kPi, 0.75 * kPi};
  const ChshEstimate est = estimate_chsh(base, settings);
  CHECK(std::abs(est.abs_s - kTwoSqrt2) < 4.0 * est.standard_error);
  CHECK(est.standard_error < 5e-3);
  long long used = 0;
  for (const auto& c : est.counts) {
    used += c.total();
  }
  CHECK(used == base.pairs);
}

TEST_CASE("kaon CHSH estimate at the optimal tau is consistent with 2.35") {
  ExperimentConfig base;
  base.system = SystemKind::Kaon;
  base.pairs = 4000000;
  base.seed = 23;
  const MaxResult best = maximize_S(make_kaon_normalized_system(base.kaon));
  const double tau = best.param;
  const ChshEstimate est = estimate_chsh(base, {0.0, 2.0 * tau, tau, 3.0 * tau});
  CHECK(std::abs(est.abs_s - 2.35) < std::max(0.03, 4.0 * est.standard_error));
  CHECK(est.abs_s > 2.0 + 4.0 * est.standard_error);  // a genuine violation
}

TEST_CASE("LHV sampler never violates the classical bound") {
  std::array<double, 16> weights{};
  weights[15] = 0.4;  // all +1
  weights[0] = 0.3;   // all -1
  weights[5] = 0.3;
  const ChshEstimate est = estimate_chsh_lhv(weights, 400000, 11);
  CHECK(est.abs_s <= 2.0 + 4.0 * est.standard_error);

  std::array<double, 16> uniform{};
  uniform.fill(1.0 / 16.0);
  const ChshEstimate zero = estimate_chsh_lhv(uniform, 400000, 12);
  CHECK(std::abs(zero.s) < 5.0 * zero.standard_error);
}

TEST_CASE("parameter independence: Alice's marginal ignores Bob's setting") {
  const long long n = 1000000;
  ExperimentConfig with_b = photon_config(0.0, 0.25 * kPi, n, 71);
  ExperimentConfig with_b_prime = photon_config(0.0, 0.75 * kPi, n, 72);

  const CoincidenceCounts c1 = run_experiment(with_b);
  const CoincidenceCounts c2 = run_experiment(with_b_prime);
  const double f1 = static_cast<double>(c1.n_pp + c1.n_pm) / static_cast<double>(n);
  const double f2 = static_cast<double>(c2.n_pp + c2.n_pm) / static_cast<double>(n);
  const double pooled = 0.5 * (f1 + f2);
  const double sigma = std::sqrt(pooled * (1.0 - pooled) * 2.0 / static_cast<double>(n));
  CHECK(std::abs(f1 - f2) < 5.0 * sigma);
}

TEST_CASE("config validation") {
  ExperimentConfig config = photon_config(0.0, 0.0, 0, 1);
  CHECK_THROWS_AS(config.validate(), std::domain_error);
  config.pairs = 10;
  config.efficiency = 0.0;
  CHECK_THROWS_AS(config.validate(), std::domain_error);
  config.efficiency = 1.5;
  CHECK_THROWS_AS(config.validate(), std::domain_error);

  ExperimentConfig kaon;
  kaon.system = SystemKind::Kaon;
  kaon.setting_a = -1.0;
  CHECK_THROWS_AS(kaon.validate(), std::domain_error);
}
