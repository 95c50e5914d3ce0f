#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "eprsim/correlations.hpp"
#include "eprsim/joint_state.hpp"

namespace eprsim {

enum class SystemKind { Photon, Kaon, BMeson };

/// One stochastic coincidence run at a single pair of settings. For photons
/// the settings are analyzer angles and the optional per-arm channels act on
/// the singlet before detection; for kaons and B-mesons the settings are the
/// measurement times and the channel is the intrinsic evolution.
struct ExperimentConfig {
  SystemKind system = SystemKind::Photon;
  double setting_a = 0.0;
  double setting_b = 0.0;

  std::optional<BirefringenceSpec> birefringence_a;
  std::optional<BirefringenceSpec> birefringence_b;
  std::optional<PdlSpec> pdl_a;
  std::optional<PdlSpec> pdl_b;
  KaonSpec kaon;
  BMesonSpec bmeson;

  long long pairs = 1;
  double efficiency = 1.0;  // per-arm Bernoulli detection probability
  std::uint64_t seed = 0;
  std::uint64_t pair_index_offset = 0;  // first global pair index of this run

  void validate() const;
};

/// Per-pair outcome distribution before detector thinning. Channel loss is
/// split into one-sided survivals, so a pair can surface as a coincidence,
/// a single on either arm, or nothing.
struct OutcomeProbabilities {
  double pp = 0.0, pm = 0.0, mp = 0.0, mm = 0.0;
  double single_a = 0.0;
  double single_b = 0.0;
  double lost = 0.0;
};

OutcomeProbabilities outcome_probabilities(const ExperimentConfig& config);

struct CoincidenceCounts {
  long long n_pp = 0, n_pm = 0, n_mp = 0, n_mm = 0;
  long long n_single_a = 0, n_single_b = 0, n_lost = 0;

  long long coincidences() const { return n_pp + n_pm + n_mp + n_mm; }
  long long total() const { return coincidences() + n_single_a + n_single_b + n_lost; }
};

/// Sample `pairs` emissions: draw the channel outcome, then thin each
/// detected particle independently with the detector efficiency. Identical
/// configs give identical counts, bit for bit.
CoincidenceCounts run_experiment(const ExperimentConfig& config);

struct CorrelationEstimate {
  double value = 0.0;
  double standard_error = 0.0;
};

/// Normalized correlation estimate (Npp+Nmm-Npm-Nmp)/Ncoinc with binomial
/// standard error sqrt((1-E^2)/Ncoinc). Throws InsufficientDataError when no
/// coincidences were recorded.
CorrelationEstimate estimate_E(const CoincidenceCounts& counts);

struct ChshEstimate {
  double s = 0.0;
  double abs_s = 0.0;
  double standard_error = 0.0;
  std::array<CorrelationEstimate, 4> terms{};   // (a,b), (a,b'), (a',b), (a',b')
  std::array<CoincidenceCounts, 4> counts{};
};

/// CHSH estimate from four sub-runs, one per setting pair, with the pair
/// budget split evenly (remainders go to the earliest pairs) and global pair
/// indices running consecutively across the sub-runs.
ChshEstimate estimate_chsh(const ExperimentConfig& base, const Settings4& settings);

/// Same estimator fed by a local-hidden-variable sampler: each pair draws a
/// deterministic strategy from the mixture and reports its preassigned
/// outcomes. Useful as a plug-in that can never beat |S| = 2.
ChshEstimate estimate_chsh_lhv(const std::array<double, 16>& weights, long long pairs,
                               std::uint64_t seed);

}  // namespace eprsim
