#include <cmath>
#include <stdexcept>

#include "eprsim/channels.hpp"
#include "eprsim/errors.hpp"

namespace eprsim {

namespace {
constexpr double kZeroWeight = 1e-300;
}

void BirefringenceSpec::validate() const {
  if (!axis.is_unit()) {
    throw InvalidStateError("birefringence axis must be a unit vector");
  }
  if (rate < 0.0 || length < 0.0) {
    throw std::domain_error("birefringence rate and length must be non-negative");
  }
}

void PdlSpec::validate() const {
  if (!axis.is_unit()) {
    throw InvalidStateError("PDL axis must be a unit vector");
  }
  if (alpha_max < 0.0 || alpha_min < 0.0 || length < 0.0) {
    throw std::domain_error("PDL exponents and length must be non-negative");
  }
  if (alpha_max > alpha_min) {
    throw std::domain_error("PDL requires T_max >= T_min, i.e. alpha_max <= alpha_min");
  }
}

void KaonSpec::validate() const {
  if (!(gamma_S > 0.0) || !(gamma_L > 0.0) || gamma_S < gamma_L) {
    throw std::domain_error("kaon widths must satisfy gamma_S >= gamma_L > 0");
  }
}

void BMesonSpec::validate() const {
  if (!(gamma > 0.0)) {
    throw std::domain_error("B-meson width must be positive");
  }
}

Operator2 birefringence_operator(const BirefringenceSpec& spec) {
  spec.validate();
  return Operator2::rotation(spec.axis, spec.total_angle());
}

Operator2 pdl_operator(const PdlSpec& spec) {
  spec.validate();
  const double amp_max = std::sqrt(spec.t_max());
  const double amp_min = std::sqrt(spec.t_min());
  return Operator2::projector(spec.axis) * Complex(amp_max) +
         Operator2::projector(-spec.axis) * Complex(amp_min);
}

EvolvedBloch pdl_evolve_bloch(const BlochVector& m, const PdlSpec& spec) {
  const Spinor out = pdl_operator(spec).apply(bloch_to_spinor(m));
  const double weight = out.weight();
  if (weight < kZeroWeight) {
    throw DegenerateStateError("pdl_evolve_bloch: state fully absorbed");
  }
  return {spinor_to_bloch(out), weight};
}

Operator2 mixing_decay_operator(double m_first, double m_second, double gamma_first,
                                double gamma_second, double t) {
  if (t < 0.0) {
    throw std::domain_error("evolution time must be non-negative");
  }
  const Complex i(0.0, 1.0);
  return Operator2::diagonal(std::exp(-(i * m_first + 0.5 * gamma_first) * t),
                             std::exp(-(i * m_second + 0.5 * gamma_second) * t));
}

Operator2 kaon_evolution_operator(const KaonSpec& spec, double t) {
  spec.validate();
  const double m_s = spec.mean_mass_phase + 0.5 * spec.delta_m;
  const double m_l = spec.mean_mass_phase - 0.5 * spec.delta_m;
  return mixing_decay_operator(m_s, m_l, spec.gamma_S, spec.gamma_L, t);
}

Operator2 bmeson_evolution_operator(const BMesonSpec& spec, double t) {
  spec.validate();
  return mixing_decay_operator(0.5 * spec.delta_m, -0.5 * spec.delta_m, spec.gamma, spec.gamma,
                               t);
}

Operator2 fiber_operator(const BirefringenceSpec& bire, const PdlSpec& pdl) {
  bire.validate();
  pdl.validate();
  if (std::abs(bire.length - pdl.length) > 1e-12) {
    throw std::domain_error("fiber_operator: segment lengths must agree");
  }
  // Sum of the rotation and loss generators, exponentiated over the segment.
  const Complex mi(0.0, -1.0);
  const double half_angle = 0.5 * bire.total_angle();
  const Operator2 rot_gen = Operator2::from_pauli(
      0.0, mi * half_angle * bire.axis.x, mi * half_angle * bire.axis.y,
      mi * half_angle * bire.axis.z);
  const Operator2 loss_gen =
      Operator2::projector(pdl.axis) * Complex(-0.5 * pdl.alpha_max * pdl.length) +
      Operator2::projector(-pdl.axis) * Complex(-0.5 * pdl.alpha_min * pdl.length);
  return (rot_gen + loss_gen).exp();
}

}  // namespace eprsim
