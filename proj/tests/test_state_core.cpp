#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "eprsim/basis.hpp"
#include "eprsim/channels.hpp"
#include "eprsim/errors.hpp"
#include "eprsim/joint_state.hpp"
#include "eprsim/operator2.hpp"

using namespace eprsim;

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

BlochVector random_unit(std::mt19937& gen) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (true) {
    const BlochVector v{gauss(gen), gauss(gen), gauss(gen)};
    if (v.norm() > 1e-6) {
      return v.normalized();
    }
  }
}

// Independent route for the Bloch vector: m_k = Tr(sigma_k |s><s|).
BlochVector bloch_via_projector_trace(const Spinor& s) {
  const Spinor n = s.normalized();
  Operator2 proj(std::norm(n.up), n.up * std::conj(n.down), n.down * std::conj(n.up),
                 std::norm(n.down));
  const std::array<Operator2, 3> sigma = {Operator2::pauli_x(), Operator2::pauli_y(),
                                          Operator2::pauli_z()};
  BlochVector m;
  m.x = (sigma[0] * proj).trace().real();
  m.y = (sigma[1] * proj).trace().real();
  m.z = (sigma[2] * proj).trace().real();
  return m;
}

double distance(const BlochVector& a, const BlochVector& b) { return (a - b).norm(); }

}  // namespace

TEST_CASE("bloch_to_spinor at the poles and on the equator") {
  const Spinor north = bloch_to_spinor({0.0, 0.0, 1.0});
  CHECK(phase_free_fidelity(north, Spinor{1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));

  // |V> = (|L> + |R>)/sqrt2 with the poles carrying the circular pair.
  const Spinor v = bloch_to_spinor({1.0, 0.0, 0.0});
  CHECK(phase_free_fidelity(v, Spinor{kInvSqrt2, kInvSqrt2}) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(v.up - kInvSqrt2) < 1e-12);
  CHECK(std::abs(v.down - kInvSqrt2) < 1e-12);
}

TEST_CASE("bloch_to_spinor rejects non-unit input") {
  CHECK_THROWS_AS(bloch_to_spinor({0.0, 0.0, 0.5}), InvalidStateError);
  CHECK_THROWS_AS(bloch_to_spinor({1.0, 1.0, 1.0}), InvalidStateError);
}

TEST_CASE("spinor_to_bloch basics and zero-spinor error") {
  const BlochVector up = spinor_to_bloch(Spinor{1.0, 0.0});
  CHECK(distance(up, {0.0, 0.0, 1.0}) < 1e-12);

  // |H> = (|L> - |R>)/sqrt2 sits at the -x equator point.
  const BlochVector h = spinor_to_bloch(Spinor{kInvSqrt2, -kInvSqrt2});
  CHECK(distance(h, {-1.0, 0.0, 0.0}) < 1e-12);

  CHECK_THROWS_AS(spinor_to_bloch(Spinor{0.0, 0.0}), InvalidStateError);
}

TEST_CASE("spinor_to_bloch agrees with the projector-trace route") {
  std::mt19937 gen(12345);
  for (int k = 0; k < 200; ++k) {
    const Spinor s = bloch_to_spinor(random_unit(gen));
    const BlochVector direct = spinor_to_bloch(s);
    const BlochVector traced = bloch_via_projector_trace(s);
    CHECK(distance(direct, traced) < 1e-12);
  }
}

TEST_CASE("round trip bloch -> spinor -> bloch on 1000 random unit vectors") {
  std::mt19937 gen(987);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const BlochVector m = random_unit(gen);
    worst = std::max(worst, distance(spinor_to_bloch(bloch_to_spinor(m)), m));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("overlap special values") {
  const BlochVector m{0.6, 0.0, 0.8};
  CHECK(overlap(m, m) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(overlap(m, -m) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(overlap({1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("overlap law |<m1|m2>|^2 = (1 + m1.m2)/2 on 1000 random pairs") {
  std::mt19937 gen(55);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const BlochVector m1 = random_unit(gen);
    const BlochVector m2 = random_unit(gen);
    worst = std::max(worst, std::abs(overlap(m1, m2) - 0.5 * (1.0 + m1.dot(m2))));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("basis_change reproduces the strangeness decomposition") {
  const BasisLabel strange = BasisLabel::kaon_strangeness();
  const BasisLabel mass = BasisLabel::kaon_mass();

  // |K0> = (|K_S> + |K_L>)/sqrt2, |K0bar> = (|K_S> - |K_L>)/sqrt2.
  const Spinor k0 = basis_change(Spinor{1.0, 0.0}, strange, mass);
  CHECK(std::abs(k0.up - kInvSqrt2) < 1e-12);
  CHECK(std::abs(k0.down - kInvSqrt2) < 1e-12);

  const Spinor k0bar = basis_change(Spinor{0.0, 1.0}, strange, mass);
  CHECK(std::abs(k0bar.up - kInvSqrt2) < 1e-12);
  CHECK(std::abs(k0bar.down + kInvSqrt2) < 1e-12);
}

TEST_CASE("basis_change is involutive and identical across systems") {
  std::mt19937 gen(77);
  for (int k = 0; k < 100; ++k) {
    const Spinor s = bloch_to_spinor(random_unit(gen));

    const Spinor twice_photon =
        basis_change(basis_change(s, BasisLabel::photon_linear(), BasisLabel::photon_circular()),
                     BasisLabel::photon_circular(), BasisLabel::photon_linear());
    CHECK(std::abs(twice_photon.up - s.up) < 1e-12);
    CHECK(std::abs(twice_photon.down - s.down) < 1e-12);

    const Spinor photon_mapped =
        basis_change(s, BasisLabel::photon_circular(), BasisLabel::photon_linear());
    const Spinor kaon_mapped =
        basis_change(s, BasisLabel::kaon_mass(), BasisLabel::kaon_strangeness());
    CHECK(std::abs(photon_mapped.up - kaon_mapped.up) < 1e-15);
    CHECK(std::abs(photon_mapped.down - kaon_mapped.down) < 1e-15);
  }
}

TEST_CASE("basis_change rejects mixed systems") {
  CHECK_THROWS_AS(
      basis_change(Spinor{1.0, 0.0}, BasisLabel::photon_linear(), BasisLabel::kaon_mass()),
      BasisMismatchError);
}

TEST_CASE("singlet amplitudes sit at the pinned positions") {
  // (|first>|second> - |second>|first>)/sqrt2 in every basis.
  for (const BasisLabel& basis :
       {BasisLabel::photon_circular(), BasisLabel::photon_linear(), BasisLabel::kaon_mass(),
        BasisLabel::kaon_strangeness()}) {
    const JointState psi = JointState::singlet(basis);
    CHECK(std::abs(psi.amplitude(0, 0)) < 1e-15);
    CHECK(std::abs(psi.amplitude(0, 1) - kInvSqrt2) < 1e-15);
    CHECK(std::abs(psi.amplitude(1, 0) + kInvSqrt2) < 1e-15);
    CHECK(std::abs(psi.amplitude(1, 1)) < 1e-15);
    CHECK(psi.weight() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("singlet is basis invariant up to a global phase") {
  const JointState circ = JointState::singlet(BasisLabel::photon_circular());
  const JointState lin = JointState::singlet(BasisLabel::photon_linear());
  const JointState re_expressed = circ.in_basis(BasisLabel::photon_linear());

  Complex ip(0.0);
  for (int k = 0; k < 4; ++k) {
    ip += std::conj(re_expressed.amplitudes()[k]) * lin.amplitudes()[k];
  }
  CHECK(std::norm(ip) == doctest::Approx(1.0).epsilon(1e-12));

  const JointState mass = JointState::singlet(BasisLabel::kaon_mass());
  const JointState strange = mass.in_basis(BasisLabel::kaon_strangeness());
  Complex ip2(0.0);
  for (int k = 0; k < 4; ++k) {
    ip2 += std::conj(strange.amplitudes()[k]) *
           JointState::singlet(BasisLabel::kaon_strangeness()).amplitudes()[k];
  }
  CHECK(std::norm(ip2) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("apply_local identities and scalar attenuation") {
  const JointState psi = JointState::singlet(BasisLabel::photon_circular());
  const JointState same = apply_local(psi, Operator2::identity(), Operator2::identity());
  for (int k = 0; k < 4; ++k) {
    CHECK(std::abs(same.amplitudes()[k] - psi.amplitudes()[k]) < 1e-15);
  }

  const Operator2 rot = Operator2::rotation({0.0, 0.0, 1.0}, 0.7);
  CHECK(apply_local(psi, Operator2::identity(), rot).weight() ==
        doctest::Approx(1.0).epsilon(1e-12));

  // Equal transmissions: a scalar sqrt(T), weight drops to T.
  const double t = 0.36;
  const PdlSpec flat{{0.0, 0.0, 1.0}, -std::log(t), -std::log(t), 1.0};
  const JointState dimmed = apply_local(psi, Operator2::identity(), pdl_operator(flat));
  CHECK(dimmed.weight() == doctest::Approx(t).epsilon(1e-12));
  for (int k = 0; k < 4; ++k) {
    CHECK(std::abs(dimmed.amplitudes()[k] - psi.amplitudes()[k] * std::sqrt(t)) < 1e-12);
  }
}

TEST_CASE("joint probabilities of the pristine singlet anticorrelate") {
  const JointState psi = JointState::singlet(BasisLabel::photon_circular());
  std::mt19937 gen(31);
  for (int k = 0; k < 100; ++k) {
    const BlochVector axis = random_unit(gen);
    const JointProbabilities p = joint_probabilities(psi, axis, axis);
    CHECK(std::abs(p.pp) < 1e-12);
    CHECK(std::abs(p.mm) < 1e-12);
    CHECK(p.pm == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p.mp == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("equatorial analyzers give E = -cos(angle difference)") {
  const JointState psi = JointState::singlet(BasisLabel::photon_circular());
  for (double alpha : {0.0, 0.3, 1.1}) {
    for (double beta : {0.0, 0.25 * kPi, 0.5 * kPi, 2.0}) {
      const JointProbabilities p = joint_probabilities(psi, equatorial(alpha), equatorial(beta));
      const double e = p.pp + p.mm - p.pm - p.mp;
      CHECK(e == doctest::Approx(-std::cos(alpha - beta)).epsilon(1e-12));
    }
  }
}

TEST_CASE("joint probabilities sum to the state weight under arbitrary channels") {
  std::mt19937 gen(4242);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> loss(0.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    const BirefringenceSpec bire{random_unit(gen), angle(gen), 1.0};
    const double a1 = loss(gen);
    const double a2 = loss(gen);
    const PdlSpec pdl{random_unit(gen), std::min(a1, a2), std::max(a1, a2), 1.0};
    const JointState evolved =
        apply_local(JointState::singlet(BasisLabel::photon_circular()),
                    birefringence_operator(bire), pdl_operator(pdl));
    const JointProbabilities p =
        joint_probabilities(evolved, random_unit(gen), random_unit(gen));
    CHECK(p.coincidence_sum() == doctest::Approx(evolved.weight()).epsilon(1e-12));
    CHECK(p.loss == doctest::Approx(1.0 - evolved.weight()).epsilon(1e-12));
    CHECK(evolved.weight() <= 1.0 + 1e-12);  // physical channels never gain weight
  }
}

TEST_CASE("joint_probabilities rejects dead states") {
  const JointState dead(BasisLabel::photon_circular(),
                        {Complex(0.0), Complex(0.0), Complex(0.0), Complex(0.0)});
  CHECK_THROWS_AS(joint_probabilities(dead, {0.0, 0.0, 1.0}, {0.0, 0.0, 1.0}),
                  DegenerateStateError);
}

TEST_CASE("conditional state of the pristine singlet is the antipode") {
  const JointState psi = JointState::singlet(BasisLabel::photon_circular());
  std::mt19937 gen(8);
  for (int k = 0; k < 100; ++k) {
    const BlochVector m = random_unit(gen);
    const ConditionalState cond = conditional_state(psi, m, +1);
    CHECK(cond.probability == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(distance(spinor_to_bloch(cond.state), -m) < 1e-10);
  }
}

TEST_CASE("one-sided rotation rotates the conditional state") {
  const JointState psi = JointState::singlet(BasisLabel::photon_circular());
  std::mt19937 gen(9);
  for (int k = 0; k < 50; ++k) {
    const BlochVector axis = random_unit(gen);
    const double angle = 2.0 * kPi * std::generate_canonical<double, 53>(gen);
    const Operator2 u = Operator2::rotation(axis, angle);
    const JointState evolved = apply_local(psi, Operator2::identity(), u);

    const BlochVector m = random_unit(gen);
    const ConditionalState cond = conditional_state(evolved, m, +1);

    // Direct 2x2 oracle: particle 2 should be U applied to |-m>.
    const Spinor expected = u.apply(bloch_to_spinor(-m));
    CHECK(phase_free_fidelity(cond.state, expected) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(distance(spinor_to_bloch(cond.state), spinor_to_bloch(expected)) < 1e-12);
  }
}

TEST_CASE("one-sided PDL shifts the conditional state toward the favored axis") {
  const BlochVector gamma_axis{0.0, 0.0, 1.0};
  const PdlSpec pdl{gamma_axis, 0.0, std::log(4.0), 1.0};  // T_max = 1, T_min = 1/4
  const JointState evolved = apply_local(JointState::singlet(BasisLabel::photon_circular()),
                                         Operator2::identity(), pdl_operator(pdl));

  const BlochVector m{1.0, 0.0, 0.0};  // perpendicular to the PDL axis
  const ConditionalState cond = conditional_state(evolved, m, +1);
  const BlochVector shifted = spinor_to_bloch(cond.state);

  CHECK(shifted.dot(gamma_axis) > (-m).dot(gamma_axis) + 1e-6);
  CHECK(shifted.dot(gamma_axis) > 0.0);
  // Still orthogonal to m within the geodesic plane spanned by -m and gamma.
  CHECK(std::abs(shifted.y) < 1e-12);
}

TEST_CASE("conditional_state rejects zero-probability branches") {
  const JointState psi = JointState::singlet(BasisLabel::photon_circular());
  // Polarizer kills |-z> on arm 2, then ask for the branch where arm 1 sees +z:
  // arm 2 must be -z, fully absorbed.
  const PdlSpec polarizer{{0.0, 0.0, 1.0}, 0.0, 1e6, 1.0};
  const JointState filtered =
      apply_local(psi, Operator2::identity(), pdl_operator(polarizer));
  CHECK_THROWS_AS(conditional_state(filtered, {0.0, 0.0, 1.0}, +1), DegenerateStateError);
}
