// eprsim: analytic CHSH scans, Bloch trajectories and Monte Carlo coincidence
// experiments for entangled photon, kaon and B-meson pairs. Every output file
// gets a `<file>.manifest` sidecar with the fully resolved parameters, and
// rerunning from those parameters reproduces the file byte for byte.
//
// Exit codes: 0 success, 1 usage error, 2 I/O error, 3 insufficient data.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "eprsim/channels.hpp"
#include "eprsim/correlations.hpp"
#include "eprsim/errors.hpp"
#include "eprsim/joint_state.hpp"
#include "eprsim/montecarlo.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kPi = std::numbers::pi;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitInsufficientData = 3;

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Trajectory rows carry 12 decimals so downstream checks (unit norm, drift)
// are not limited by the file precision.
std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

std::string fmt_exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open output file: " + path);
  }
  return out;
}

using ManifestEntries = std::vector<std::pair<std::string, std::string>>;

void write_manifest(const std::string& out_path, const std::string& command,
                    const ManifestEntries& entries) {
  std::ofstream manifest = open_output(out_path + ".manifest");
  manifest << "command=" << command << "\n";
  manifest << "version=" << kVersion << "\n";
  for (const auto& [key, value] : entries) {
    manifest << key << "=" << value << "\n";
  }
  manifest << "out=" << out_path << "\n";
  if (!manifest) {
    throw IoError("failed writing manifest for: " + out_path);
  }
}

// ---------------------------------------------------------------------------
// scan

struct ScanOptions {
  std::string system;
  std::optional<double> min;
  std::optional<double> max;
  int steps = 1001;
  std::string unit = "deg";
  std::optional<double> delta_m;
  double gamma_l_ratio = 1.0 / 580.0;
  std::string out;
};

eprsim::KaonSpec kaon_spec_from(const std::optional<double>& delta_m, double gamma_l_ratio) {
  eprsim::KaonSpec spec;
  spec.delta_m = delta_m.value_or(0.477);
  spec.gamma_L = gamma_l_ratio;
  return spec;
}

eprsim::BMesonSpec bmeson_spec_from(const std::optional<double>& delta_m) {
  eprsim::BMesonSpec spec;
  spec.delta_m = delta_m.value_or(0.723);
  return spec;
}

eprsim::OneParamSystem scan_system(const ScanOptions& opt) {
  if (opt.system == "photon") {
    return eprsim::make_photon_system();
  }
  if (opt.system == "kaon") {
    return eprsim::make_kaon_unnormalized_system(kaon_spec_from(opt.delta_m, opt.gamma_l_ratio));
  }
  if (opt.system == "kaon-normalized") {
    return eprsim::make_kaon_normalized_system(kaon_spec_from(opt.delta_m, opt.gamma_l_ratio));
  }
  return eprsim::make_bmeson_system(bmeson_spec_from(opt.delta_m));
}

int run_scan(const ScanOptions& opt) {
  const bool degrees = opt.system == "photon" && opt.unit == "deg";
  const double to_internal = degrees ? kPi / 180.0 : 1.0;

  const eprsim::OneParamSystem system = scan_system(opt);
  const double lo = opt.min ? *opt.min * to_internal : system.scan_min;
  const double hi = opt.max ? *opt.max * to_internal : system.scan_max;
  const auto records = eprsim::chsh_theta_scan(system, opt.steps, lo, hi);

  std::ofstream out = open_output(opt.out);
  out << "param,E,E3,S,abs_S,violates\n";
  for (const auto& rec : records) {
    const double shown = degrees ? rec.param * 180.0 / kPi : rec.param;
    out << fmt6(shown) << ',' << fmt6(rec.e1) << ',' << fmt6(rec.e3) << ',' << fmt6(rec.s)
        << ',' << fmt6(rec.abs_s()) << ',' << (rec.abs_s() > 2.0 ? 1 : 0) << "\n";
  }
  if (!out) {
    throw IoError("failed writing: " + opt.out);
  }

  ManifestEntries entries{{"system", opt.system},
                          {"min", fmt_exact(degrees ? lo * 180.0 / kPi : lo)},
                          {"max", fmt_exact(degrees ? hi * 180.0 / kPi : hi)},
                          {"steps", std::to_string(opt.steps)},
                          {"unit", opt.system == "photon" ? opt.unit : "time"}};
  if (opt.system != "photon" && opt.system != "bmeson") {
    entries.emplace_back("delta_m", fmt_exact(opt.delta_m.value_or(0.477)));
    entries.emplace_back("gamma_l_ratio", fmt_exact(opt.gamma_l_ratio));
  }
  if (opt.system == "bmeson") {
    entries.emplace_back("delta_m", fmt_exact(opt.delta_m.value_or(0.723)));
  }
  write_manifest(opt.out, "scan", entries);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// maximize

struct MaximizeOptions {
  std::string system;
  std::string unit = "deg";
  std::optional<double> delta_m;
  double gamma_l_ratio = 1.0 / 580.0;
  int grid = 10001;
};

int run_maximize(const MaximizeOptions& opt) {
  ScanOptions scan_opt;
  scan_opt.system = opt.system;
  scan_opt.delta_m = opt.delta_m;
  scan_opt.gamma_l_ratio = opt.gamma_l_ratio;
  const eprsim::OneParamSystem system = scan_system(scan_opt);
  const eprsim::MaxResult result = eprsim::maximize_S(system, opt.grid);

  const bool degrees = opt.system == "photon" && opt.unit == "deg";
  const double shown = degrees ? result.param * 180.0 / kPi : result.param;
  std::cout << opt.system << ',' << fmt6(shown) << ',' << fmt6(result.abs_s) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// trajectory

struct TrajectoryOptions {
  std::string channel;
  std::vector<double> axis{1.0, 0.0, 0.0};
  std::vector<double> pdl_axis;
  double rate = 1.0;
  double alpha_max = 0.0;
  double alpha_min = 0.0;
  double length = 2.0 * kPi;
  int steps = 201;
  std::string start;
  std::optional<double> delta_m;
  double gamma_l_ratio = 1.0 / 580.0;
  std::string out;
};

eprsim::BlochVector parse_axis(const std::vector<double>& values, const char* what) {
  if (values.size() != 3) {
    throw CLI::ValidationError(std::string(what) + " needs three components x,y,z");
  }
  const eprsim::BlochVector v{values[0], values[1], values[2]};
  if (v.norm() < 1e-12) {
    throw CLI::ValidationError(std::string(what) + " must be a nonzero vector");
  }
  return v.normalized();
}

eprsim::Spinor parse_start(const std::string& name, bool kaon_like) {
  if (name.empty()) {
    // Kaons start as a freshly tagged K0; photons default to the north pole.
    return kaon_like ? eprsim::Spinor{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}
                     : eprsim::Spinor{1.0, 0.0};
  }
  const double s = 1.0 / std::sqrt(2.0);
  if (name == "L" || name == "KS" || name == "K_S") return {1.0, 0.0};
  if (name == "R" || name == "KL" || name == "K_L") return {0.0, 1.0};
  if (name == "V" || name == "K0") return {s, s};
  if (name == "H" || name == "K0bar") return {s, -s};
  std::stringstream ss(name);
  double x, y, z;
  char c1, c2;
  if (ss >> x >> c1 >> y >> c2 >> z && c1 == ',' && c2 == ',') {
    return eprsim::bloch_to_spinor(eprsim::BlochVector{x, y, z}.normalized());
  }
  throw CLI::ValidationError("unknown start state: " + name);
}

int run_trajectory(const TrajectoryOptions& opt) {
  const bool kaon_like = opt.channel == "kaon" || opt.channel == "bmeson";
  const eprsim::Spinor start = parse_start(opt.start, kaon_like);
  const eprsim::BlochVector axis = parse_axis(opt.axis, "--axis");
  const eprsim::BlochVector pdl_axis =
      opt.pdl_axis.empty() ? axis : parse_axis(opt.pdl_axis, "--pdl-axis");
  const eprsim::KaonSpec kaon = kaon_spec_from(opt.delta_m, opt.gamma_l_ratio);
  const eprsim::BMesonSpec bmeson = bmeson_spec_from(opt.delta_m);

  auto operator_at = [&](double z) -> eprsim::Operator2 {
    if (opt.channel == "birefringence") {
      return eprsim::birefringence_operator({axis, opt.rate, z});
    }
    if (opt.channel == "pdl") {
      return eprsim::pdl_operator({pdl_axis, opt.alpha_max, opt.alpha_min, z});
    }
    if (opt.channel == "fiber") {
      return eprsim::fiber_operator({axis, opt.rate, z},
                                    {pdl_axis, opt.alpha_max, opt.alpha_min, z});
    }
    if (opt.channel == "kaon") {
      return eprsim::kaon_evolution_operator(kaon, z);
    }
    return eprsim::bmeson_evolution_operator(bmeson, z);
  };

  std::ofstream out = open_output(opt.out);
  out << "z,x,y,z_comp,weight\n";
  const int rows = opt.length == 0.0 ? 1 : opt.steps;
  for (int k = 0; k < rows; ++k) {
    const double z = rows == 1 ? 0.0 : opt.length * k / (opt.steps - 1);
    const eprsim::Spinor evolved = operator_at(z).apply(start);
    const eprsim::BlochVector m = eprsim::spinor_to_bloch(evolved);
    out << fmt12(z) << ',' << fmt12(m.x) << ',' << fmt12(m.y) << ',' << fmt12(m.z) << ','
        << fmt12(evolved.weight()) << "\n";
  }
  if (!out) {
    throw IoError("failed writing: " + opt.out);
  }

  ManifestEntries entries{{"channel", opt.channel},
                          {"axis", fmt_exact(axis.x) + ";" + fmt_exact(axis.y) + ";" +
                                       fmt_exact(axis.z)},
                          {"rate", fmt_exact(opt.rate)},
                          {"alpha_max", fmt_exact(opt.alpha_max)},
                          {"alpha_min", fmt_exact(opt.alpha_min)},
                          {"length", fmt_exact(opt.length)},
                          {"steps", std::to_string(opt.steps)},
                          {"start", opt.start.empty() ? (kaon_like ? "K0" : "L") : opt.start}};
  if (kaon_like) {
    entries.emplace_back("delta_m",
                         fmt_exact(opt.delta_m.value_or(opt.channel == "kaon" ? 0.477 : 0.723)));
    if (opt.channel == "kaon") {
      entries.emplace_back("gamma_l_ratio", fmt_exact(opt.gamma_l_ratio));
    }
  }
  write_manifest(opt.out, "trajectory", entries);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// montecarlo

struct MonteCarloOptions {
  std::string system;
  std::vector<double> settings;
  std::string unit = "deg";
  long long pairs = 1000000;
  std::uint64_t seed = 0;
  double efficiency = 1.0;
  std::optional<double> delta_m;
  double gamma_l_ratio = 1.0 / 580.0;
  std::string out;
};

int run_montecarlo(const MonteCarloOptions& opt) {
  if (opt.settings.size() != 2 && opt.settings.size() != 4) {
    throw CLI::ValidationError("--settings needs 2 values (a,b) or 4 values (a,a',b,b')");
  }
  const bool degrees = opt.system == "photon" && opt.unit == "deg";
  const double to_internal = degrees ? kPi / 180.0 : 1.0;
  const double to_shown = degrees ? 180.0 / kPi : 1.0;

  eprsim::ExperimentConfig config;
  config.system = opt.system == "photon"  ? eprsim::SystemKind::Photon
                  : opt.system == "kaon" ? eprsim::SystemKind::Kaon
                                          : eprsim::SystemKind::BMeson;
  config.kaon = kaon_spec_from(opt.delta_m, opt.gamma_l_ratio);
  config.bmeson = bmeson_spec_from(opt.delta_m);
  config.pairs = opt.pairs;
  config.efficiency = opt.efficiency;
  config.seed = opt.seed;

  std::ofstream out = open_output(opt.out);
  out << "setting_pair,setting_a,setting_b,n_pp,n_pm,n_mp,n_mm,n_single_a,n_single_b,n_lost,"
         "E,SE\n";

  auto write_row = [&](int index, double a, double b, const eprsim::CoincidenceCounts& counts,
                       const eprsim::CorrelationEstimate& est) {
    out << index << ',' << fmt6(a * to_shown) << ',' << fmt6(b * to_shown) << ','
        << counts.n_pp << ',' << counts.n_pm << ',' << counts.n_mp << ',' << counts.n_mm << ','
        << counts.n_single_a << ',' << counts.n_single_b << ',' << counts.n_lost << ','
        << fmt6(est.value) << ',' << fmt6(est.standard_error) << "\n";
  };

  if (opt.settings.size() == 2) {
    config.setting_a = opt.settings[0] * to_internal;
    config.setting_b = opt.settings[1] * to_internal;
    const eprsim::CoincidenceCounts counts = eprsim::run_experiment(config);
    const eprsim::CorrelationEstimate est = eprsim::estimate_E(counts);
    write_row(1, config.setting_a, config.setting_b, counts, est);
    std::cout << "E_R,SE\n" << fmt6(est.value) << ',' << fmt6(est.standard_error) << "\n";
  } else {
    const eprsim::Settings4 settings{opt.settings[0] * to_internal,
                                     opt.settings[1] * to_internal,
                                     opt.settings[2] * to_internal,
                                     opt.settings[3] * to_internal};
    const eprsim::ChshEstimate chsh = eprsim::estimate_chsh(config, settings);
    const std::array<std::pair<double, double>, 4> combos = {
        std::pair{settings.a, settings.b}, std::pair{settings.a, settings.b_prime},
        std::pair{settings.a_prime, settings.b},
        std::pair{settings.a_prime, settings.b_prime}};
    for (int k = 0; k < 4; ++k) {
      write_row(k + 1, combos[k].first, combos[k].second, chsh.counts[k], chsh.terms[k]);
    }
    std::cout << "E_R,SE,S,SE_S\n"
              << fmt6(chsh.terms[0].value) << ',' << fmt6(chsh.terms[0].standard_error) << ','
              << fmt6(chsh.abs_s) << ',' << fmt6(chsh.standard_error) << "\n";
  }
  if (!out) {
    throw IoError("failed writing: " + opt.out);
  }

  std::string settings_text;
  for (std::size_t k = 0; k < opt.settings.size(); ++k) {
    settings_text += (k ? ";" : "") + fmt_exact(opt.settings[k]);
  }
  ManifestEntries entries{{"system", opt.system},
                          {"settings", settings_text},
                          {"unit", opt.system == "photon" ? opt.unit : "time"},
                          {"pairs", std::to_string(opt.pairs)},
                          {"seed", std::to_string(opt.seed)},
                          {"efficiency", fmt_exact(opt.efficiency)}};
  if (opt.system != "photon") {
    entries.emplace_back(
        "delta_m", fmt_exact(opt.delta_m.value_or(opt.system == "kaon" ? 0.477 : 0.723)));
    if (opt.system == "kaon") {
      entries.emplace_back("gamma_l_ratio", fmt_exact(opt.gamma_l_ratio));
    }
  }
  write_manifest(opt.out, "montecarlo", entries);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entangled two-level pair simulator: CHSH scans, Bloch trajectories and "
               "Monte Carlo coincidence counting for photons, kaons and B-mesons."};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  ScanOptions scan_opt;
  CLI::App* scan = app.add_subcommand("scan", "CHSH one-parameter scan to CSV");
  scan->add_option("--system", scan_opt.system, "System to scan")
      ->required()
      ->check(CLI::IsMember({"photon", "kaon", "kaon-normalized", "bmeson"}));
  scan->add_option("--min", scan_opt.min, "Scan start (default: system range)");
  scan->add_option("--max", scan_opt.max, "Scan end (default: system range)");
  scan->add_option("--steps", scan_opt.steps, "Grid points including both ends")
      ->check(CLI::Range(2, 100000000));
  scan->add_option("--unit", scan_opt.unit, "Angle unit for photon scans")
      ->check(CLI::IsMember({"deg", "rad"}));
  scan->add_option("--delta-m", scan_opt.delta_m, "Mass splitting (kaon 0.477, bmeson 0.723)");
  scan->add_option("--gamma-l-ratio", scan_opt.gamma_l_ratio, "gamma_L / gamma_S for kaons");
  scan->add_option("--out", scan_opt.out, "Output CSV path")->required();

  MaximizeOptions max_opt;
  CLI::App* maximize = app.add_subcommand("maximize", "Locate the |S| maximum of a system");
  maximize->add_option("--system", max_opt.system, "System to maximize")
      ->required()
      ->check(CLI::IsMember({"photon", "kaon", "kaon-normalized", "bmeson"}));
  maximize->add_option("--unit", max_opt.unit, "Angle unit for the photon argmax")
      ->check(CLI::IsMember({"deg", "rad"}));
  maximize->add_option("--delta-m", max_opt.delta_m, "Mass splitting override");
  maximize->add_option("--gamma-l-ratio", max_opt.gamma_l_ratio, "gamma_L / gamma_S for kaons");
  maximize->add_option("--grid", max_opt.grid, "Coarse grid size")
      ->check(CLI::Range(1001, 100000000));

  TrajectoryOptions traj_opt;
  CLI::App* trajectory = app.add_subcommand("trajectory", "Bloch-vector trace to CSV");
  trajectory->add_option("--channel", traj_opt.channel, "Channel type")
      ->required()
      ->check(CLI::IsMember({"birefringence", "pdl", "fiber", "kaon", "bmeson"}));
  trajectory->add_option("--axis", traj_opt.axis, "Channel axis x,y,z")->delimiter(',');
  trajectory->add_option("--pdl-axis", traj_opt.pdl_axis, "Separate PDL axis for fiber")
      ->delimiter(',');
  trajectory->add_option("--rate", traj_opt.rate, "Rotation rate (rad per unit length)");
  trajectory->add_option("--alpha-max", traj_opt.alpha_max, "Loss exponent, favored state");
  trajectory->add_option("--alpha-min", traj_opt.alpha_min, "Loss exponent, orthogonal state");
  trajectory->add_option("--length", traj_opt.length, "Channel length (or final time)");
  trajectory->add_option("--steps", traj_opt.steps, "Sample points")->check(CLI::Range(2, 10000000));
  trajectory->add_option("--start", traj_opt.start,
                         "Start state: L,R,V,H,K_S,K_L,K0,K0bar or x,y,z");
  trajectory->add_option("--delta-m", traj_opt.delta_m, "Mass splitting override");
  trajectory->add_option("--gamma-l-ratio", traj_opt.gamma_l_ratio, "gamma_L / gamma_S");
  trajectory->add_option("--out", traj_opt.out, "Output CSV path")->required();

  MonteCarloOptions mc_opt;
  CLI::App* montecarlo = app.add_subcommand("montecarlo", "Coincidence-counting experiment");
  montecarlo->add_option("--system", mc_opt.system, "System to simulate")
      ->required()
      ->check(CLI::IsMember({"photon", "kaon", "bmeson"}));
  montecarlo->add_option("--settings", mc_opt.settings, "a,b or a,a',b,b'")
      ->required()
      ->delimiter(',');
  montecarlo->add_option("--unit", mc_opt.unit, "Angle unit for photon settings")
      ->check(CLI::IsMember({"deg", "rad"}));
  montecarlo->add_option("--pairs", mc_opt.pairs, "Emitted pairs")->check(CLI::Range(1LL, (1LL << 40)));
  montecarlo->add_option("--seed", mc_opt.seed, "RNG seed");
  montecarlo->add_option("--efficiency", mc_opt.efficiency, "Per-arm detector efficiency")
      ->check(CLI::Range(1e-9, 1.0));
  montecarlo->add_option("--delta-m", mc_opt.delta_m, "Mass splitting override");
  montecarlo->add_option("--gamma-l-ratio", mc_opt.gamma_l_ratio, "gamma_L / gamma_S");
  montecarlo->add_option("--out", mc_opt.out, "Counts CSV path")->required();

  try {
    app.parse(argc, argv);
    if (scan->parsed()) return run_scan(scan_opt);
    if (maximize->parsed()) return run_maximize(max_opt);
    if (trajectory->parsed()) return run_trajectory(traj_opt);
    if (montecarlo->parsed()) return run_montecarlo(mc_opt);
    std::cerr << app.help();
    return kExitUsage;
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    std::cout << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const eprsim::InsufficientDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInsufficientData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
