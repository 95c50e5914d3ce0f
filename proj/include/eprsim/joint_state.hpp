#pragma once

#include <array>

#include "eprsim/basis.hpp"
#include "eprsim/operator2.hpp"

namespace eprsim {

struct JointProbabilities {
  double pp = 0.0, pm = 0.0, mp = 0.0, mm = 0.0;
  double loss = 0.0;
  double coincidence_sum() const { return pp + pm + mp + mm; }
};

struct ConditionalState {
  Spinor state;              // normalized particle-2 state
  double probability = 0.0;  // absolute branch probability
};

/// Two-particle state: four amplitudes over the ordered product basis
/// (first,second) x (first,second) of the recorded BasisLabel. There is no
/// implicit renormalization: lossy channels leave weight() < 1 and the
/// deficit is the absorbed probability.
class JointState {
 public:
  JointState(const BasisLabel& basis, const std::array<Complex, 4>& amplitudes);

  /// (|first>|second> - |second>|first>)/sqrt2 in the requested basis, i.e.
  /// amplitudes (0, 1/sqrt2, -1/sqrt2, 0). The same physical ray regardless
  /// of basis, up to a global sign.
  static JointState singlet(const BasisLabel& basis);

  const std::array<Complex, 4>& amplitudes() const { return amp_; }
  /// Amplitude of |i>_1 |j>_2 with 0 = first, 1 = second basis element.
  Complex amplitude(int i, int j) const { return amp_[2 * i + j]; }
  const BasisLabel& basis() const { return basis_; }
  double weight() const;

  /// The same state re-expressed in another basis of the same system.
  JointState in_basis(const BasisLabel& to) const;

 private:
  std::array<Complex, 4> amp_{};
  BasisLabel basis_;
};

/// Apply op_a (x) op_b. Operators act in the sphere (pole-basis) frame; the
/// result keeps the input's recorded basis. No renormalization: the weight
/// becomes the new squared norm.
JointState apply_local(const JointState& j, const Operator2& op_a, const Operator2& op_b);

/// Coincidence probabilities for projecting particle 1 onto +/-a and particle
/// 2 onto +/-b. The four probabilities sum to weight(); loss = 1 - sum.
JointProbabilities joint_probabilities(const JointState& j, const BlochVector& a,
                                       const BlochVector& b);

/// Collapse particle 1 onto sign*axis; returns the normalized particle-2
/// state and the absolute branch probability.
ConditionalState conditional_state(const JointState& j, const BlochVector& axis, int sign);

}  // namespace eprsim
