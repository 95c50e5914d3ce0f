#include <cmath>
#include <stdexcept>

#include "eprsim/errors.hpp"
#include "eprsim/montecarlo.hpp"
#include "eprsim/rng.hpp"

namespace eprsim {

namespace {

Operator2 photon_arm_operator(const std::optional<BirefringenceSpec>& bire,
                              const std::optional<PdlSpec>& pdl) {
  Operator2 op = Operator2::identity();
  if (bire) {
    op = birefringence_operator(*bire) * op;
  }
  if (pdl) {
    op = pdl_operator(*pdl) * op;  // loss after the rotation
  }
  return op;
}

struct PreparedPair {
  JointState state;
  Operator2 op_a;
  Operator2 op_b;
  BlochVector axis_a;
  BlochVector axis_b;
};

PreparedPair prepare(const ExperimentConfig& config) {
  switch (config.system) {
    case SystemKind::Photon:
      return {JointState::singlet(BasisLabel::photon_circular()),
              photon_arm_operator(config.birefringence_a, config.pdl_a),
              photon_arm_operator(config.birefringence_b, config.pdl_b),
              equatorial(config.setting_a), equatorial(config.setting_b)};
    case SystemKind::Kaon:
      return {JointState::singlet(BasisLabel::kaon_mass()),
              kaon_evolution_operator(config.kaon, config.setting_a),
              kaon_evolution_operator(config.kaon, config.setting_b),
              BlochVector{1.0, 0.0, 0.0}, BlochVector{1.0, 0.0, 0.0}};
    case SystemKind::BMeson:
      return {JointState::singlet(BasisLabel::kaon_mass()),
              bmeson_evolution_operator(config.bmeson, config.setting_a),
              bmeson_evolution_operator(config.bmeson, config.setting_b),
              BlochVector{1.0, 0.0, 0.0}, BlochVector{1.0, 0.0, 0.0}};
  }
  throw std::domain_error("unknown system kind");
}

}  // namespace

void ExperimentConfig::validate() const {
  if (pairs < 1) {
    throw std::domain_error("experiment needs at least one pair");
  }
  if (!(efficiency > 0.0) || efficiency > 1.0) {
    throw std::domain_error("detector efficiency must lie in (0, 1]");
  }
  if (system != SystemKind::Photon && (setting_a < 0.0 || setting_b < 0.0)) {
    throw std::domain_error("measurement times must be non-negative");
  }
}

OutcomeProbabilities outcome_probabilities(const ExperimentConfig& config) {
  config.validate();
  const PreparedPair pair = prepare(config);

  const JointState evolved = apply_local(pair.state, pair.op_a, pair.op_b);
  const JointProbabilities joint = joint_probabilities(evolved, pair.axis_a, pair.axis_b);

  // One-sided survivals split the channel loss into singles and dead pairs.
  const double survive_a =
      apply_local(pair.state, pair.op_a, Operator2::identity()).weight();
  const double survive_b =
      apply_local(pair.state, Operator2::identity(), pair.op_b).weight();
  const double both = joint.coincidence_sum();

  OutcomeProbabilities p;
  p.pp = joint.pp;
  p.pm = joint.pm;
  p.mp = joint.mp;
  p.mm = joint.mm;
  p.single_a = std::max(survive_a - both, 0.0);
  p.single_b = std::max(survive_b - both, 0.0);
  p.lost = std::max(1.0 - both - p.single_a - p.single_b, 0.0);
  return p;
}

CoincidenceCounts run_experiment(const ExperimentConfig& config) {
  const OutcomeProbabilities p = outcome_probabilities(config);

  // Cumulative category thresholds; zero-probability categories collapse to
  // zero-width intervals that the strict comparison can never select.
  const double c_pp = p.pp;
  const double c_pm = c_pp + p.pm;
  const double c_mp = c_pm + p.mp;
  const double c_mm = c_mp + p.mm;
  const double c_sa = c_mm + p.single_a;
  const double c_sb = c_sa + p.single_b;
  const double eff = config.efficiency;

  CoincidenceCounts counts;
  for (long long k = 0; k < config.pairs; ++k) {
    SplitMix64 rng(pair_stream_seed(config.seed, config.pair_index_offset +
                                                      static_cast<std::uint64_t>(k)));
    const double u = rng.next_double();
    if (u < c_mm) {
      bool got_a = true;
      bool got_b = true;
      if (eff < 1.0) {
        got_a = rng.next_double() < eff;
        got_b = rng.next_double() < eff;
      }
      if (got_a && got_b) {
        if (u < c_pp) {
          ++counts.n_pp;
        } else if (u < c_pm) {
          ++counts.n_pm;
        } else if (u < c_mp) {
          ++counts.n_mp;
        } else {
          ++counts.n_mm;
        }
      } else if (got_a) {
        ++counts.n_single_a;
      } else if (got_b) {
        ++counts.n_single_b;
      } else {
        ++counts.n_lost;
      }
    } else if (u < c_sa) {
      if (eff >= 1.0 || rng.next_double() < eff) {
        ++counts.n_single_a;
      } else {
        ++counts.n_lost;
      }
    } else if (u < c_sb) {
      if (eff >= 1.0 || rng.next_double() < eff) {
        ++counts.n_single_b;
      } else {
        ++counts.n_lost;
      }
    } else {
      ++counts.n_lost;
    }
  }
  return counts;
}

CorrelationEstimate estimate_E(const CoincidenceCounts& counts) {
  const long long n = counts.coincidences();
  if (n <= 0) {
    throw InsufficientDataError("estimate_E: no coincidences recorded");
  }
  const double value =
      static_cast<double>(counts.n_pp + counts.n_mm - counts.n_pm - counts.n_mp) /
      static_cast<double>(n);
  const double variance = std::max(1.0 - value * value, 0.0) / static_cast<double>(n);
  return {value, std::sqrt(variance)};
}

ChshEstimate estimate_chsh(const ExperimentConfig& base, const Settings4& settings) {
  base.validate();
  if (base.pairs < 4) {
    throw InsufficientDataError("estimate_chsh: need at least one pair per setting");
  }
  const std::array<std::pair<double, double>, 4> combos = {
      std::pair{settings.a, settings.b}, std::pair{settings.a, settings.b_prime},
      std::pair{settings.a_prime, settings.b}, std::pair{settings.a_prime, settings.b_prime}};

  ChshEstimate estimate;
  std::uint64_t offset = base.pair_index_offset;
  double variance = 0.0;
  for (int k = 0; k < 4; ++k) {
    ExperimentConfig sub = base;
    sub.setting_a = combos[k].first;
    sub.setting_b = combos[k].second;
    sub.pairs = base.pairs / 4 + (k < base.pairs % 4 ? 1 : 0);
    sub.pair_index_offset = offset;
    offset += static_cast<std::uint64_t>(sub.pairs);

    estimate.counts[k] = run_experiment(sub);
    estimate.terms[k] = estimate_E(estimate.counts[k]);
    variance += estimate.terms[k].standard_error * estimate.terms[k].standard_error;
  }
  estimate.s = estimate.terms[0].value - estimate.terms[1].value + estimate.terms[2].value +
               estimate.terms[3].value;
  estimate.abs_s = std::abs(estimate.s);
  estimate.standard_error = std::sqrt(variance);
  return estimate;
}

ChshEstimate estimate_chsh_lhv(const std::array<double, 16>& weights, long long pairs,
                               std::uint64_t seed) {
  if (pairs < 4) {
    throw std::domain_error("LHV sampler needs at least one pair per setting");
  }
  lhv_bound(weights);  // validates the mixture

  std::array<double, 16> cumulative{};
  double acc = 0.0;
  for (int k = 0; k < 16; ++k) {
    acc += weights[static_cast<std::size_t>(k)];
    cumulative[static_cast<std::size_t>(k)] = acc;
  }

  ChshEstimate estimate;
  std::uint64_t offset = 0;
  double variance = 0.0;
  for (int combo = 0; combo < 4; ++combo) {
    const long long n = pairs / 4 + (combo < pairs % 4 ? 1 : 0);
    CoincidenceCounts counts;
    for (long long k = 0; k < n; ++k) {
      SplitMix64 rng(pair_stream_seed(seed, offset + static_cast<std::uint64_t>(k)));
      const double u = rng.next_double();
      int strategy = 15;
      for (int j = 0; j < 16; ++j) {
        if (u < cumulative[static_cast<std::size_t>(j)]) {
          strategy = j;
          break;
        }
      }
      const LhvStrategy lambda = LhvStrategy::from_index(static_cast<unsigned>(strategy));
      const int mu_a = (combo < 2) ? lambda.mu_a : lambda.mu_a_prime;
      const int mu_b = (combo % 2 == 0) ? lambda.mu_b : lambda.mu_b_prime;
      if (mu_a > 0) {
        ++(mu_b > 0 ? counts.n_pp : counts.n_pm);
      } else {
        ++(mu_b > 0 ? counts.n_mp : counts.n_mm);
      }
    }
    offset += static_cast<std::uint64_t>(n);
    estimate.counts[static_cast<std::size_t>(combo)] = counts;
    estimate.terms[static_cast<std::size_t>(combo)] = estimate_E(counts);
    const double se = estimate.terms[static_cast<std::size_t>(combo)].standard_error;
    variance += se * se;
  }
  estimate.s = estimate.terms[0].value - estimate.terms[1].value + estimate.terms[2].value +
               estimate.terms[3].value;
  estimate.abs_s = std::abs(estimate.s);
  estimate.standard_error = std::sqrt(variance);
  return estimate;
}

}  // namespace eprsim
