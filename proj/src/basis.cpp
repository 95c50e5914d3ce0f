#include <cmath>

#include "eprsim/basis.hpp"
#include "eprsim/errors.hpp"

namespace eprsim {

const char* BasisLabel::first_name() const {
  switch (axis) {
    case BasisAxis::Circular: return "L";
    case BasisAxis::Linear: return "V";
    case BasisAxis::Mass: return "K_S";
    case BasisAxis::Strangeness: return "K0";
  }
  return "?";
}

const char* BasisLabel::second_name() const {
  switch (axis) {
    case BasisAxis::Circular: return "R";
    case BasisAxis::Linear: return "H";
    case BasisAxis::Mass: return "K_L";
    case BasisAxis::Strangeness: return "K0bar";
  }
  return "?";
}

BlochVector BasisLabel::first_direction() const {
  return is_pole() ? BlochVector{0.0, 0.0, 1.0} : BlochVector{1.0, 0.0, 0.0};
}

BlochVector BasisLabel::second_direction() const { return -first_direction(); }

void validate(const BasisLabel& label) {
  const bool photon_axis =
      label.axis == BasisAxis::Circular || label.axis == BasisAxis::Linear;
  const bool ok = (label.system == ParticleSystem::Photon) == photon_axis;
  if (!ok) {
    throw InvalidStateError("basis axis does not belong to the particle system");
  }
}

Spinor basis_change(const Spinor& s, const BasisLabel& from, const BasisLabel& to) {
  validate(from);
  validate(to);
  if (from.system != to.system) {
    throw BasisMismatchError("basis_change: bases belong to different systems");
  }
  if (from.axis == to.axis) {
    return s;
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return {(s.up + s.down) * inv_sqrt2, (s.up - s.down) * inv_sqrt2};
}

}  // namespace eprsim
