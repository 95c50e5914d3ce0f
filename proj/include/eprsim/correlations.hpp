#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "eprsim/channels.hpp"

namespace eprsim {

/// Four measurement settings for a CHSH run. Angles in radians for photons;
/// times >= 0 in 1/gamma_S units for kaons and B-mesons.
struct Settings4 {
  double a = 0.0;
  double a_prime = 0.0;
  double b = 0.0;
  double b_prime = 0.0;
};

/// Singlet correlation for polarization analyzers at angles a and b.
double photon_E(double a, double b);

struct KaonRates {
  double pp = 0.0, pm = 0.0, mp = 0.0, mm = 0.0;
  double sum() const { return pp + pm + mp + mm; }
};

/// Joint strangeness coincidence rate for outcomes (K0, K0) at measurement
/// times t_a, t_b. With t' = min(t_a, t_b) and dt = |t_a - t_b|:
///   (1/8) e^{-(gs+gl) t'} (e^{-gs dt} + e^{-gl dt} - 2 e^{-g dt} cos(dm dt)).
double kaon_R_pp(double t_a, double t_b, const KaonSpec& spec);

/// All four strangeness coincidence rates; R-- = R++ and R-+ = R+- with the
/// cosine term flipped.
KaonRates kaon_rates(double t_a, double t_b, const KaonSpec& spec);

/// E(t_a, t_b) = -e^{-2 g t'} e^{-g dt} cos(dm dt): the raw correlation,
/// damped by pair decay, equal to R++ + R-- - R+- - R-+.
double kaon_E_unnormalized(double t_a, double t_b, const KaonSpec& spec);

/// Correlation normalized to surviving pairs:
///   -2 e^{-g dt} cos(dm dt) / (e^{-gs dt} + e^{-gl dt})
/// = -cos(dm dt)/cosh((gs-gl) dt / 2). Depends on dt only.
double kaon_E_normalized(double t_a, double t_b, const KaonSpec& spec);

/// B-meson normalized correlation: the equal-width limit, -cos(dm dt).
double bmeson_E_normalized(double t_a, double t_b, const BMesonSpec& spec);

/// S = E(a,b) - E(a,b') + E(a',b) + E(a',b') for any correlation function.
double chsh_S(const std::function<double(double, double)>& E, const Settings4& s);

/// One point of a one-parameter CHSH scan: S = 3 E(param) - E(3 param).
struct ScanRecord {
  double param = 0.0;
  double e1 = 0.0;  // E at the scan parameter
  double e3 = 0.0;  // E at three times the parameter
  double s = 0.0;
  double abs_s() const { return std::abs(s); }
};

/// A system reduced to its correlation-vs-setting-difference function plus
/// the parameter range its scan should cover.
struct OneParamSystem {
  std::string name;
  std::function<double(double)> correlation;  // E as a function of |setting difference|
  double scan_min = 0.0;
  double scan_max = 0.0;
};

OneParamSystem make_photon_system();
OneParamSystem make_kaon_unnormalized_system(const KaonSpec& spec);
OneParamSystem make_kaon_normalized_system(const KaonSpec& spec);
OneParamSystem make_bmeson_system(const BMesonSpec& spec);

/// Evaluate S(theta) = 3 E(theta) - E(3 theta) on a uniform grid of `steps`
/// points (steps >= 2) from min to max inclusive.
std::vector<ScanRecord> chsh_theta_scan(const OneParamSystem& system, int steps);
std::vector<ScanRecord> chsh_theta_scan(const OneParamSystem& system, int steps, double min,
                                        double max);

struct MaxResult {
  double param = 0.0;
  double abs_s = 0.0;
};

/// Maximize |S| over the system's declared range: coarse grid (>= 10^4 points
/// by default), golden-section refinement of the bracketing cell to 1e-8 in
/// the parameter, then one parabolic polish.
MaxResult maximize_S(const OneParamSystem& system, int grid_points = 10001);

/// Deterministic local strategy: preassigned outcomes for the four settings.
struct LhvStrategy {
  int mu_a = 1, mu_a_prime = 1, mu_b = 1, mu_b_prime = 1;

  /// The 16 strategies, indexed by the sign pattern bits (a, a', b, b').
  static LhvStrategy from_index(unsigned index);
  double chsh_value() const;
};

/// S for a mixture of the 16 deterministic strategies, by exact enumeration.
/// Weights must be non-negative and sum to 1; always lands in [-2, 2].
double lhv_bound(const std::array<double, 16>& weights);

}  // namespace eprsim
