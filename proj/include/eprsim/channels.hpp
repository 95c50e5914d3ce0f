#pragma once

#include "eprsim/operator2.hpp"

namespace eprsim {

/// Birefringent fiber segment: the Poincare vector precesses around `axis`
/// with angular rate `rate` per unit length, over `length`.
struct BirefringenceSpec {
  BlochVector axis{1.0, 0.0, 0.0};  // linear birefringence by default
  double rate = 1.0;                // radians per unit length
  double length = 0.0;

  double total_angle() const { return rate * length; }
  void validate() const;
};

/// Polarization-dependent loss. |+axis> is the favored (low-loss) state with
/// intensity transmission T_max = exp(-alpha_max * length); the orthogonal
/// |-axis> gets T_min = exp(-alpha_min * length). The subscripts follow the
/// transmissions they produce, so alpha_max <= alpha_min.
struct PdlSpec {
  BlochVector axis{1.0, 0.0, 0.0};
  double alpha_max = 0.0;  // loss exponent of the favored state
  double alpha_min = 0.0;  // loss exponent of the orthogonal state
  double length = 0.0;

  double t_max() const { return std::exp(-alpha_max * length); }
  double t_min() const { return std::exp(-alpha_min * length); }
  void validate() const;
};

/// Neutral-kaon mixing and decay, in units with gamma_S = 1 and hbar = 1.
/// delta_m = m_S - m_L in units of gamma_S; the mean mass only contributes a
/// global phase and defaults to zero.
struct KaonSpec {
  double delta_m = 0.477;
  double gamma_S = 1.0;
  double gamma_L = 1.0 / 580.0;
  double mean_mass_phase = 0.0;

  double gamma_mean() const { return 0.5 * (gamma_S + gamma_L); }
  /// gamma_S >= gamma_L > 0; equal widths are allowed (the B-meson limit).
  void validate() const;
};

/// B-meson oscillation: same structure as the kaon with equal widths, in
/// units of the common lifetime. delta_m = dM_B * tau_B.
struct BMesonSpec {
  double delta_m = 0.723;
  double gamma = 1.0;

  void validate() const;
};

/// Unitary rotation exp(-i axis.sigma rate z / 2); the induced Bloch map is
/// the classical rotation by rate*z around the axis.
Operator2 birefringence_operator(const BirefringenceSpec& spec);

/// sqrt(T_max) P_{+axis} + sqrt(T_min) P_{-axis}: Hermitian, positive,
/// eigenvalues sqrt(T_max) >= sqrt(T_min). Equals the exponential of the loss
/// generator -(alpha_max P_+ + alpha_min P_-) z / 2.
Operator2 pdl_operator(const PdlSpec& spec);

struct EvolvedBloch {
  BlochVector direction;  // renormalized state on the sphere
  double weight = 1.0;    // survival probability before renormalizing
};

/// Send a pure state through the PDL element and renormalize. The direction
/// stays in the plane spanned by m and the axis and slides toward +axis.
EvolvedBloch pdl_evolve_bloch(const BlochVector& m, const PdlSpec& spec);

/// diag(e^{-(i m_first + g_first/2) t}, e^{-(i m_second + g_second/2) t}):
/// the generic oscillation-plus-decay operator for a two-level pole pair.
Operator2 mixing_decay_operator(double m_first, double m_second, double gamma_first,
                                double gamma_second, double t);

/// Kaon time evolution in the (K_S, K_L) basis:
///   diag(e^{-(i m_S + gamma_S/2) t}, e^{-(i m_L + gamma_L/2) t})
/// = global phase x rotation by delta_m*t about the poles x contraction
///   diag(e^{-gamma_S t/2}, e^{-gamma_L t/2}).
/// The contraction is the PDL stretch with T_max = e^{-gamma_L t} favoring
/// the long-lived pole, so renormalized states precess toward K_L.
Operator2 kaon_evolution_operator(const KaonSpec& spec, double t);

/// Kaon operator with equal widths: a global decay factor times a pure
/// rotation, so every renormalized quantity is width-independent.
Operator2 bmeson_evolution_operator(const BMesonSpec& spec, double t);

/// Simultaneous birefringence and PDL over one segment (lengths must agree):
/// exp of the summed generators. With a shared axis, as in real fibers, the
/// generators commute and this equals the product of the two operators.
Operator2 fiber_operator(const BirefringenceSpec& bire, const PdlSpec& pdl);

}  // namespace eprsim
