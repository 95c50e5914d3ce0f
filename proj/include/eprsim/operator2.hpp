#pragma once

#include <array>

#include "eprsim/bloch.hpp"
#include "eprsim/spinor.hpp"

namespace eprsim {

/// Dense 2x2 complex operator in the pole-basis frame. Projectors, rotations,
/// attenuations and the kaon/B-meson evolution operators all live here.
/// Entries are row-major (a11, a12, a21, a22).
class Operator2 {
 public:
  Operator2() = default;
  Operator2(Complex a11, Complex a12, Complex a21, Complex a22) : e_{a11, a12, a21, a22} {}

  static Operator2 identity();
  static Operator2 pauli_x();
  static Operator2 pauli_y();
  static Operator2 pauli_z();
  static Operator2 diagonal(Complex d1, Complex d2);

  /// c0*I + cx*sigma_x + cy*sigma_y + cz*sigma_z.
  static Operator2 from_pauli(Complex c0, Complex cx, Complex cy, Complex cz);

  /// Rank-1 projector |m><m| = (I + m.sigma)/2 onto the state at unit m.
  static Operator2 projector(const BlochVector& m);

  /// exp(-i angle (axis.sigma)/2); induces the classical rotation by `angle`
  /// around `axis` on the sphere.
  static Operator2 rotation(const BlochVector& axis, double angle);

  Complex at(int row, int col) const { return e_[2 * row + col]; }
  Complex& at(int row, int col) { return e_[2 * row + col]; }

  Operator2 operator*(const Operator2& o) const;
  Operator2 operator+(const Operator2& o) const;
  Operator2 operator-(const Operator2& o) const;
  Operator2 operator*(const Complex& s) const;
  Spinor apply(const Spinor& s) const;

  Operator2 adjoint() const;
  Complex trace() const { return e_[0] + e_[3]; }
  Complex determinant() const { return e_[0] * e_[3] - e_[1] * e_[2]; }

  /// Matrix exponential, closed form through the Pauli decomposition.
  Operator2 exp() const;

  /// Singular values, descending order.
  std::array<double, 2> singular_values() const;

  double max_abs_diff(const Operator2& o) const;

 private:
  std::array<Complex, 4> e_{};
};

}  // namespace eprsim
