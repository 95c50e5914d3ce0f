#pragma once

#include <complex>

#include "eprsim/bloch.hpp"

namespace eprsim {

using Complex = std::complex<double>;

/// Two-component amplitude pair (c_up, c_down) over the pole basis of the
/// active sphere. A spinor may be unnormalized after a lossy channel; its
/// squared norm is then the survival weight of the state.
struct Spinor {
  Complex up{0.0, 0.0};
  Complex down{0.0, 0.0};

  double weight() const { return std::norm(up) + std::norm(down); }
  Spinor normalized() const;
  Spinor operator*(const Complex& s) const { return {up * s, down * s}; }
};

Complex inner(const Spinor& a, const Spinor& b);

/// Spinor of the pure state at unit Bloch vector m:
///   ( sqrt((1+eta)/2) e^{-i phi/2},  sqrt((1-eta)/2) e^{+i phi/2} ),
/// with eta = m.z and phi = atan2(m.y, m.x). The half-angle phases pin the
/// sigma_y sign convention used everywhere else.
Spinor bloch_to_spinor(const BlochVector& m);

/// Bloch vector of a spinor via Pauli expectation values. Divides by the
/// weight, so post-channel (unnormalized) spinors map to their direction.
BlochVector spinor_to_bloch(const Spinor& s);

/// |<m1|m2>|^2 computed from the spinors. Equals (1 + m1.m2)/2 for unit input.
double overlap(const BlochVector& m1, const BlochVector& m2);

/// |<a|b>|^2 over the product of weights: 1 iff a and b are the same ray
/// (equal up to global phase). Used to compare states phase-insensitively.
double phase_free_fidelity(const Spinor& a, const Spinor& b);

}  // namespace eprsim
