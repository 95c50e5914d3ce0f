#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "eprsim/correlations.hpp"

namespace eprsim {

namespace {

void require_times(double t_a, double t_b) {
  if (t_a < 0.0 || t_b < 0.0) {
    throw std::domain_error("measurement times must be non-negative");
  }
}

// Maximize f on [lo, hi] by golden-section to the given parameter tolerance.
double golden_max(const std::function<double(double)>& f, double lo, double hi, double xtol) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > xtol) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

// One parabolic step over a wide stencil. Near a smooth maximum the golden
// bracket dithers at the rounding floor of f; refitting over h recovers the
// vertex to far below the bracket width.
double parabolic_polish(const std::function<double(double)>& f, double x, double lo, double hi,
                        double h) {
  if (x - h < lo || x + h > hi) {
    return x;
  }
  const double fm = f(x - h);
  const double f0 = f(x);
  const double fp = f(x + h);
  const double denom = fp - 2.0 * f0 + fm;
  if (!(denom < 0.0)) {
    return x;  // not concave here; keep the golden result
  }
  const double step = -0.5 * h * (fp - fm) / denom;
  return std::abs(step) <= h ? x + step : x;
}

}  // namespace

double photon_E(double a, double b) { return -std::cos(a - b); }

KaonRates kaon_rates(double t_a, double t_b, const KaonSpec& spec) {
  require_times(t_a, t_b);
  spec.validate();
  const double t_min = std::min(t_a, t_b);
  const double dt = std::abs(t_a - t_b);
  const double prefactor = 0.125 * std::exp(-(spec.gamma_S + spec.gamma_L) * t_min);
  const double even = std::exp(-spec.gamma_S * dt) + std::exp(-spec.gamma_L * dt);
  const double cross =
      2.0 * std::exp(-spec.gamma_mean() * dt) * std::cos(spec.delta_m * dt);
  KaonRates r;
  r.pp = prefactor * (even - cross);
  r.mm = r.pp;
  r.pm = prefactor * (even + cross);
  r.mp = r.pm;
  return r;
}

double kaon_R_pp(double t_a, double t_b, const KaonSpec& spec) {
  return kaon_rates(t_a, t_b, spec).pp;
}

double kaon_E_unnormalized(double t_a, double t_b, const KaonSpec& spec) {
  require_times(t_a, t_b);
  spec.validate();
  const double t_min = std::min(t_a, t_b);
  const double dt = std::abs(t_a - t_b);
  const double g = spec.gamma_mean();
  return -std::exp(-2.0 * g * t_min) * std::exp(-g * dt) * std::cos(spec.delta_m * dt);
}

double kaon_E_normalized(double t_a, double t_b, const KaonSpec& spec) {
  require_times(t_a, t_b);
  spec.validate();
  const double dt = std::abs(t_a - t_b);
  const double numerator =
      -2.0 * std::exp(-spec.gamma_mean() * dt) * std::cos(spec.delta_m * dt);
  const double denominator = std::exp(-spec.gamma_S * dt) + std::exp(-spec.gamma_L * dt);
  return numerator / denominator;
}

double bmeson_E_normalized(double t_a, double t_b, const BMesonSpec& spec) {
  require_times(t_a, t_b);
  spec.validate();
  return -std::cos(spec.delta_m * std::abs(t_a - t_b));
}

double chsh_S(const std::function<double(double, double)>& E, const Settings4& s) {
  return E(s.a, s.b) - E(s.a, s.b_prime) + E(s.a_prime, s.b) + E(s.a_prime, s.b_prime);
}

OneParamSystem make_photon_system() {
  return {"photon", [](double d) { return -std::cos(d); }, 0.0, 0.5 * std::numbers::pi};
}

OneParamSystem make_kaon_unnormalized_system(const KaonSpec& spec) {
  spec.validate();
  return {"kaon",
          [spec](double d) { return kaon_E_unnormalized(0.0, d, spec); },
          0.0,
          4.0 * std::numbers::pi / spec.delta_m};
}

OneParamSystem make_kaon_normalized_system(const KaonSpec& spec) {
  spec.validate();
  return {"kaon-normalized",
          [spec](double d) { return kaon_E_normalized(0.0, d, spec); },
          0.0,
          4.0 * std::numbers::pi / spec.delta_m};
}

OneParamSystem make_bmeson_system(const BMesonSpec& spec) {
  spec.validate();
  // Same window as the photon scan, mapped through theta = delta_m * dt.
  return {"bmeson",
          [spec](double d) { return bmeson_E_normalized(0.0, d, spec); },
          0.0,
          0.5 * std::numbers::pi / spec.delta_m};
}

std::vector<ScanRecord> chsh_theta_scan(const OneParamSystem& system, int steps) {
  return chsh_theta_scan(system, steps, system.scan_min, system.scan_max);
}

std::vector<ScanRecord> chsh_theta_scan(const OneParamSystem& system, int steps, double min,
                                        double max) {
  if (steps < 2) {
    throw std::domain_error("scan needs at least 2 steps");
  }
  if (max < min) {
    throw std::domain_error("scan range is empty");
  }
  std::vector<ScanRecord> records;
  records.reserve(static_cast<std::size_t>(steps));
  const double step = (max - min) / (steps - 1);
  for (int k = 0; k < steps; ++k) {
    ScanRecord rec;
    rec.param = min + k * step;
    rec.e1 = system.correlation(rec.param);
    rec.e3 = system.correlation(3.0 * rec.param);
    rec.s = 3.0 * rec.e1 - rec.e3;
    records.push_back(rec);
  }
  return records;
}

MaxResult maximize_S(const OneParamSystem& system, int grid_points) {
  if (grid_points < 3) {
    throw std::domain_error("maximize_S needs at least a 3-point grid");
  }
  const auto f = [&system](double p) {
    return std::abs(3.0 * system.correlation(p) - system.correlation(3.0 * p));
  };
  const double lo = system.scan_min;
  const double hi = system.scan_max;
  const double step = (hi - lo) / (grid_points - 1);

  int best = 0;
  double best_value = f(lo);
  for (int k = 1; k < grid_points; ++k) {
    const double value = f(lo + k * step);
    if (value > best_value) {
      best_value = value;
      best = k;
    }
  }

  const double bracket_lo = lo + std::max(best - 1, 0) * step;
  const double bracket_hi = lo + std::min(best + 1, grid_points - 1) * step;
  double x = golden_max(f, bracket_lo, bracket_hi, 1e-8);
  x = parabolic_polish(f, x, lo, hi, 1e-4 * std::max(1.0, hi - lo));
  if (f(lo + best * step) > f(x)) {
    x = lo + best * step;
  }
  return {x, f(x)};
}

LhvStrategy LhvStrategy::from_index(unsigned index) {
  auto sign = [index](unsigned bit) { return (index >> bit) & 1u ? +1 : -1; };
  return {sign(0), sign(1), sign(2), sign(3)};
}

double LhvStrategy::chsh_value() const {
  return static_cast<double>(mu_a * mu_b - mu_a * mu_b_prime + mu_a_prime * mu_b +
                             mu_a_prime * mu_b_prime);
}

double lhv_bound(const std::array<double, 16>& weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (w < -1e-12) {
      throw std::domain_error("lhv_bound: negative strategy weight");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::domain_error("lhv_bound: weights must sum to 1");
  }
  double s = 0.0;
  for (unsigned k = 0; k < 16; ++k) {
    s += weights[k] * LhvStrategy::from_index(k).chsh_value();
  }
  return s;
}

}  // namespace eprsim
