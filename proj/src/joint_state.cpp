#include <cmath>

#include "eprsim/errors.hpp"
#include "eprsim/joint_state.hpp"

namespace eprsim {

namespace {

constexpr double kUnitTol = 1e-9;
constexpr double kZeroWeight = 1e-300;

// Coordinate change between an equator basis and the pole (computational)
// basis: the Hadamard applied per particle. Involutive, so it serves both
// directions.
std::array<Complex, 4> hadamard_pair(const std::array<Complex, 4>& a) {
  const double h = 0.5;  // (1/sqrt2)^2
  return {h * (a[0] + a[1] + a[2] + a[3]), h * (a[0] - a[1] + a[2] - a[3]),
          h * (a[0] + a[1] - a[2] - a[3]), h * (a[0] - a[1] - a[2] + a[3])};
}

std::array<Complex, 4> to_computational(const JointState& j) {
  return j.basis().is_pole() ? j.amplitudes() : hadamard_pair(j.amplitudes());
}

std::array<Complex, 4> from_computational(const std::array<Complex, 4>& a,
                                          const BasisLabel& basis) {
  return basis.is_pole() ? a : hadamard_pair(a);
}

double norm2(const std::array<Complex, 4>& a) {
  return std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]) + std::norm(a[3]);
}

}  // namespace

JointState::JointState(const BasisLabel& basis, const std::array<Complex, 4>& amplitudes)
    : amp_(amplitudes), basis_(basis) {
  validate(basis_);
}

JointState JointState::singlet(const BasisLabel& basis) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return JointState(basis, {Complex(0.0), Complex(inv_sqrt2), Complex(-inv_sqrt2), Complex(0.0)});
}

double JointState::weight() const { return norm2(amp_); }

JointState JointState::in_basis(const BasisLabel& to) const {
  validate(to);
  if (to.system != basis_.system) {
    throw BasisMismatchError("in_basis: target basis belongs to a different system");
  }
  if (to.axis == basis_.axis) {
    return *this;
  }
  return JointState(to, hadamard_pair(amp_));
}

JointState apply_local(const JointState& j, const Operator2& op_a, const Operator2& op_b) {
  const std::array<Complex, 4> psi = to_computational(j);
  std::array<Complex, 4> out{};
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) {
      Complex acc(0.0);
      for (int ip = 0; ip < 2; ++ip) {
        for (int kp = 0; kp < 2; ++kp) {
          acc += op_a.at(i, ip) * op_b.at(k, kp) * psi[2 * ip + kp];
        }
      }
      out[2 * i + k] = acc;
    }
  }
  return JointState(j.basis(), from_computational(out, j.basis()));
}

JointProbabilities joint_probabilities(const JointState& j, const BlochVector& a,
                                       const BlochVector& b) {
  if (!a.is_unit(kUnitTol) || !b.is_unit(kUnitTol)) {
    throw InvalidStateError("joint_probabilities: analyzer axes must be unit vectors");
  }
  if (j.weight() < kZeroWeight) {
    throw DegenerateStateError("joint_probabilities: state has zero weight");
  }
  const std::array<Complex, 4> psi = to_computational(j);
  const Spinor up_a = bloch_to_spinor(a);
  const Spinor dn_a = bloch_to_spinor(-a);
  const Spinor up_b = bloch_to_spinor(b);
  const Spinor dn_b = bloch_to_spinor(-b);

  auto amp = [&psi](const Spinor& u, const Spinor& v) {
    const Complex cu = std::conj(u.up), cd = std::conj(u.down);
    const Complex du = std::conj(v.up), dd = std::conj(v.down);
    return cu * (du * psi[0] + dd * psi[1]) + cd * (du * psi[2] + dd * psi[3]);
  };

  JointProbabilities p;
  p.pp = std::norm(amp(up_a, up_b));
  p.pm = std::norm(amp(up_a, dn_b));
  p.mp = std::norm(amp(dn_a, up_b));
  p.mm = std::norm(amp(dn_a, dn_b));
  p.loss = 1.0 - p.coincidence_sum();
  return p;
}

ConditionalState conditional_state(const JointState& j, const BlochVector& axis, int sign) {
  if (!axis.is_unit(kUnitTol)) {
    throw InvalidStateError("conditional_state: outcome axis must be a unit vector");
  }
  const BlochVector outcome = sign >= 0 ? axis : -axis;
  const Spinor u = bloch_to_spinor(outcome);
  const std::array<Complex, 4> psi = to_computational(j);

  const Spinor branch{std::conj(u.up) * psi[0] + std::conj(u.down) * psi[2],
                      std::conj(u.up) * psi[1] + std::conj(u.down) * psi[3]};
  const double probability = branch.weight();
  if (probability < kZeroWeight) {
    throw DegenerateStateError("conditional_state: zero-probability branch");
  }
  return {branch.normalized(), probability};
}

}  // namespace eprsim
