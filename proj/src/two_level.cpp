#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eprsim/errors.hpp"
#include "eprsim/operator2.hpp"

namespace eprsim {

namespace {
constexpr double kUnitTol = 1e-9;
constexpr double kZeroWeight = 1e-300;
}  // namespace

BlochVector BlochVector::from_angles(double eta, double phi) {
  if (std::abs(eta) > 1.0 + 1e-12) {
    throw std::domain_error("BlochVector::from_angles: eta outside [-1, 1]");
  }
  eta = std::clamp(eta, -1.0, 1.0);
  const double s = std::sqrt(1.0 - eta * eta);
  return {s * std::cos(phi), s * std::sin(phi), eta};
}

BlochVector BlochVector::normalized() const {
  const double n = norm();
  if (n < kZeroWeight) {
    throw InvalidStateError("cannot normalize a zero Bloch vector");
  }
  return {x / n, y / n, z / n};
}

BlochVector equatorial(double phi) { return {std::cos(phi), std::sin(phi), 0.0}; }

Spinor Spinor::normalized() const {
  const double w = weight();
  if (w < kZeroWeight) {
    throw InvalidStateError("cannot normalize a zero spinor");
  }
  const double inv = 1.0 / std::sqrt(w);
  return {up * inv, down * inv};
}

Complex inner(const Spinor& a, const Spinor& b) {
  return std::conj(a.up) * b.up + std::conj(a.down) * b.down;
}

Spinor bloch_to_spinor(const BlochVector& m) {
  if (!m.is_unit(kUnitTol)) {
    throw InvalidStateError("bloch_to_spinor: input is not a unit vector");
  }
  const double eta = std::clamp(m.z, -1.0, 1.0);
  const double phi = std::atan2(m.y, m.x);
  const double cu = std::sqrt(0.5 * (1.0 + eta));
  const double cd = std::sqrt(0.5 * (1.0 - eta));
  return {cu * std::polar(1.0, -0.5 * phi), cd * std::polar(1.0, +0.5 * phi)};
}

BlochVector spinor_to_bloch(const Spinor& s) {
  const double w = s.weight();
  if (w < kZeroWeight) {
    throw InvalidStateError("spinor_to_bloch: zero spinor has no direction");
  }
  const Complex cross = std::conj(s.up) * s.down;
  return {2.0 * cross.real() / w, 2.0 * cross.imag() / w,
          (std::norm(s.up) - std::norm(s.down)) / w};
}

double overlap(const BlochVector& m1, const BlochVector& m2) {
  if (!m1.is_unit(kUnitTol) || !m2.is_unit(kUnitTol)) {
    throw InvalidStateError("overlap: inputs must be unit vectors");
  }
  return std::norm(inner(bloch_to_spinor(m1), bloch_to_spinor(m2)));
}

double phase_free_fidelity(const Spinor& a, const Spinor& b) {
  const double wa = a.weight();
  const double wb = b.weight();
  if (wa < kZeroWeight || wb < kZeroWeight) {
    throw InvalidStateError("phase_free_fidelity: zero spinor");
  }
  return std::norm(inner(a, b)) / (wa * wb);
}

Operator2 Operator2::identity() { return {1.0, 0.0, 0.0, 1.0}; }
Operator2 Operator2::pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }
Operator2 Operator2::pauli_y() { return {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0}; }
Operator2 Operator2::pauli_z() { return {1.0, 0.0, 0.0, -1.0}; }
Operator2 Operator2::diagonal(Complex d1, Complex d2) { return {d1, 0.0, 0.0, d2}; }

Operator2 Operator2::from_pauli(Complex c0, Complex cx, Complex cy, Complex cz) {
  const Complex i(0.0, 1.0);
  return {c0 + cz, cx - i * cy, cx + i * cy, c0 - cz};
}

Operator2 Operator2::projector(const BlochVector& m) {
  if (!m.is_unit(kUnitTol)) {
    throw InvalidStateError("projector: axis must be a unit vector");
  }
  return from_pauli(0.5, 0.5 * m.x, 0.5 * m.y, 0.5 * m.z);
}

Operator2 Operator2::rotation(const BlochVector& axis, double angle) {
  if (!axis.is_unit(kUnitTol)) {
    throw InvalidStateError("rotation: axis must be a unit vector");
  }
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  const Complex mi(0.0, -1.0);
  return from_pauli(c, mi * s * axis.x, mi * s * axis.y, mi * s * axis.z);
}

Operator2 Operator2::operator*(const Operator2& o) const {
  return {e_[0] * o.e_[0] + e_[1] * o.e_[2], e_[0] * o.e_[1] + e_[1] * o.e_[3],
          e_[2] * o.e_[0] + e_[3] * o.e_[2], e_[2] * o.e_[1] + e_[3] * o.e_[3]};
}

Operator2 Operator2::operator+(const Operator2& o) const {
  return {e_[0] + o.e_[0], e_[1] + o.e_[1], e_[2] + o.e_[2], e_[3] + o.e_[3]};
}

Operator2 Operator2::operator-(const Operator2& o) const {
  return {e_[0] - o.e_[0], e_[1] - o.e_[1], e_[2] - o.e_[2], e_[3] - o.e_[3]};
}

Operator2 Operator2::operator*(const Complex& s) const {
  return {e_[0] * s, e_[1] * s, e_[2] * s, e_[3] * s};
}

Spinor Operator2::apply(const Spinor& s) const {
  return {e_[0] * s.up + e_[1] * s.down, e_[2] * s.up + e_[3] * s.down};
}

Operator2 Operator2::adjoint() const {
  return {std::conj(e_[0]), std::conj(e_[2]), std::conj(e_[1]), std::conj(e_[3])};
}

Operator2 Operator2::exp() const {
  // M = c0 I + c.sigma  =>  exp(M) = e^{c0} (cosh r I + sinh(r)/r c.sigma),
  // r^2 = c.c (complex). The sinh(r)/r limit at r = 0 is handled by series.
  const Complex c0 = 0.5 * trace();
  const Complex cx = 0.5 * (e_[1] + e_[2]);
  const Complex cy = 0.5 * Complex(0.0, 1.0) * (e_[1] - e_[2]);
  const Complex cz = 0.5 * (e_[0] - e_[3]);
  const Complex r2 = cx * cx + cy * cy + cz * cz;
  const Complex r = std::sqrt(r2);

  Complex cosh_r, sinc_r;
  if (std::abs(r) < 1e-4) {
    cosh_r = 1.0 + r2 / 2.0 + r2 * r2 / 24.0;
    sinc_r = 1.0 + r2 / 6.0 + r2 * r2 / 120.0;
  } else {
    cosh_r = std::cosh(r);
    sinc_r = std::sinh(r) / r;
  }
  const Complex scale = std::exp(c0);
  return from_pauli(scale * cosh_r, scale * sinc_r * cx, scale * sinc_r * cy,
                    scale * sinc_r * cz);
}

std::array<double, 2> Operator2::singular_values() const {
  // Eigenvalues of the 2x2 Hermitian M^dagger M.
  const Operator2 g = adjoint() * (*this);
  const double p = g.e_[0].real();
  const double q = g.e_[3].real();
  const double off = std::abs(g.e_[1]);
  const double mean = 0.5 * (p + q);
  const double disc = std::sqrt(0.25 * (p - q) * (p - q) + off * off);
  const double hi = std::max(mean + disc, 0.0);
  const double lo = std::max(mean - disc, 0.0);
  return {std::sqrt(hi), std::sqrt(lo)};
}

double Operator2::max_abs_diff(const Operator2& o) const {
  double d = 0.0;
  for (int k = 0; k < 4; ++k) {
    d = std::max(d, std::abs(e_[k] - o.e_[k]));
  }
  return d;
}

}  // namespace eprsim
