#pragma once

#include "eprsim/bloch.hpp"
#include "eprsim/spinor.hpp"

namespace eprsim {

enum class ParticleSystem { Photon, Kaon };

/// The two natural bases of each system. Circular polarization and the kaon
/// mass eigenstates sit on the poles; linear polarization and strangeness sit
/// on the equator:
///
///   circular     (L,   R)      L   = (0,0,1)   R    = (0,0,-1)
///   linear       (V,   H)      V   = (1,0,0)   H    = (-1,0,0)
///   mass         (K_S, K_L)    K_S = (0,0,1)   K_L  = (0,0,-1)
///   strangeness  (K0,  K0bar)  K0  = (1,0,0)   K0bar= (-1,0,0)
///
/// Amplitude pairs are ordered (first, second) as listed, and the pole bases
/// coincide with the computational frame of Operator2 and Spinor, so
///   L = (V+H)/sqrt2, R = (V-H)/sqrt2, K0 = (K_S+K_L)/sqrt2, K0bar = (K_S-K_L)/sqrt2.
enum class BasisAxis { Circular, Linear, Mass, Strangeness };

struct BasisLabel {
  ParticleSystem system = ParticleSystem::Photon;
  BasisAxis axis = BasisAxis::Circular;

  static BasisLabel photon_circular() { return {ParticleSystem::Photon, BasisAxis::Circular}; }
  static BasisLabel photon_linear() { return {ParticleSystem::Photon, BasisAxis::Linear}; }
  static BasisLabel kaon_mass() { return {ParticleSystem::Kaon, BasisAxis::Mass}; }
  static BasisLabel kaon_strangeness() { return {ParticleSystem::Kaon, BasisAxis::Strangeness}; }

  bool is_pole() const { return axis == BasisAxis::Circular || axis == BasisAxis::Mass; }

  const char* first_name() const;
  const char* second_name() const;
  BlochVector first_direction() const;
  BlochVector second_direction() const;

  bool operator==(const BasisLabel&) const = default;
};

/// Throws InvalidStateError when the axis does not belong to the system.
void validate(const BasisLabel& label);

/// Re-express an amplitude pair between the two bases of one system. The map
/// is the real Hadamard [[1,1],[1,-1]]/sqrt2 in both directions (involutive)
/// and is entry-for-entry the same for photons and kaons. Same-axis calls
/// return the input unchanged; mixed systems throw BasisMismatchError.
Spinor basis_change(const Spinor& s, const BasisLabel& from, const BasisLabel& to);

}  // namespace eprsim
