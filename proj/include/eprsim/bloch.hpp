#pragma once

#include <cmath>

namespace eprsim {

/// Point on the Bloch/Poincare sphere. Pure two-level states are unit vectors;
/// the +z pole carries the first element of whichever pole basis is in use
/// (|L> for photons, |K_S> for kaons).
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  /// Unit vector (sqrt(1-eta^2) cos phi, sqrt(1-eta^2) sin phi, eta), eta in [-1,1].
  static BlochVector from_angles(double eta, double phi);

  double dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }
  BlochVector cross(const BlochVector& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }

  BlochVector operator-() const { return {-x, -y, -z}; }
  BlochVector operator+(const BlochVector& o) const { return {x + o.x, y + o.y, z + o.z}; }
  BlochVector operator-(const BlochVector& o) const { return {x - o.x, y - o.y, z - o.z}; }
  BlochVector operator*(double s) const { return {x * s, y * s, z * s}; }

  bool is_unit(double tol = 1e-9) const { return std::abs(norm() - 1.0) <= tol; }
  BlochVector normalized() const;
};

/// Equatorial unit vector at azimuth phi; analyzer settings live on the equator.
BlochVector equatorial(double phi);

}  // namespace eprsim
