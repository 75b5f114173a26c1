#include "gupheun/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gupheun/errors.hpp"
#include "gupheun/io.hpp"
#include "gupheun/radial.hpp"
#include "gupheun/spectral.hpp"

namespace gupheun::cli {
namespace {

Command command_from_string(const std::string& s) {
  if (s == "scan") return Command::scan;
  if (s == "roots") return Command::roots;
  if (s == "spectrum") return Command::spectrum;
  if (s == "wavefunction") return Command::wavefunction;
  if (s == "compare") return Command::compare;
  if (s == "critical") return Command::critical;
  throw DomainError("unknown command '" + s + "'");
}

Format format_from_string(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw DomainError("unknown format '" + s + "', expected csv or json");
}

// Flags given on the command line; unset ones leave the config untouched.
struct Overrides {
  std::optional<double> kappa, omega_min, omega_max, tol, validity, omega, kappa_lo, kappa_hi, radius_factor;
  std::optional<int> ell, points, n_max;
  std::optional<std::string> output, format, method, units, config;
  bool gnuplot = false;
};

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("--kappa", o.kappa, "Dimensionless coupling m*alpha/(2 hbar^2)");
  sub->add_option("--ell", o.ell, "Orbital quantum number");
  sub->add_option("--omega-min", o.omega_min, "Lower end of the omega window");
  sub->add_option("--omega-max", o.omega_max, "Upper end of the omega window");
  sub->add_option("--points", o.points, "Number of scan or grid points");
  sub->add_option("--tol", o.tol, "Relative root tolerance (default 1e-8 or $GUP_HEUN_TOL)");
  sub->add_option("--validity", o.validity, "Closed-form cut: keep omega_n below this");
  sub->add_option("-o,--output", o.output, "Output file");
  sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--radius-factor", o.radius_factor, "Multiplier c on the evaluation point c(Omega-1)/Omega");
  sub->add_option("--units", o.units, "JSON units file {mass, hbar, beta, alpha_coupling}");
  sub->add_option("--config", o.config, "JSON file mirroring the run configuration");
  sub->add_flag("--gnuplot", o.gnuplot, "Also write a gnuplot script next to the output");
}

template <class T>
void set_if(T& dst, const std::optional<T>& src) {
  if (src) dst = *src;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot open output file '" + path + "'");
  f << text;
  if (!f) throw DomainError("failed writing output file '" + path + "'");
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string summary_prefix(const RunConfig& cfg) {
  std::ostringstream os;
  os << "command=" << to_string(cfg.command) << " kappa=" << io::format_number(cfg.kappa) << " ell=" << cfg.ell;
  return os.str();
}

spectral::SpectralOptions spectral_options(const RunConfig& cfg) {
  spectral::SpectralOptions opts;
  opts.radius_factor = cfg.radius_factor;
  opts.continuation.tol = std::min(1e-12, cfg.tol);
  return opts;
}

double critical_lo(const RunConfig& cfg) {
  return cfg.kappa_lo.value_or(0.8 * CouplingConfig{1.0, cfg.ell}.critical_kappa());
}
double critical_hi(const RunConfig& cfg) {
  return cfg.kappa_hi.value_or(1.28 * CouplingConfig{1.0, cfg.ell}.critical_kappa());
}

std::vector<double> natural_energies(const spectral::SpectrumResult& r) {
  spectral::UnitSystem natural;
  natural.alpha_coupling = 2.0 * r.kappa;  // m = hbar = 1
  return spectral::to_physical_energy(r, natural);
}

std::vector<double> energies_for(const RunConfig& cfg, const spectral::SpectrumResult& r) {
  if (cfg.units_path.empty()) return natural_energies(r);
  return spectral::to_physical_energy(r, io::load_units(cfg.units_path));
}

void maybe_gnuplot(const RunConfig& cfg, const std::string& path, const std::string& title, int x, int y, bool log_x) {
  if (!cfg.gnuplot || cfg.format != Format::csv) return;
  write_text(path + ".gp", io::gnuplot_script(path, title, x, y, log_x));
}

std::string run_scan(const RunConfig& cfg, const std::string& path) {
  const CouplingConfig cc{cfg.kappa, cfg.ell};
  const auto scan = spectral::spectral_scan(cc, cfg.omega_min, cfg.omega_max, static_cast<std::size_t>(cfg.points),
                                            spectral_options(cfg));
  std::ostringstream body;
  if (cfg.format == Format::csv) {
    io::write_scan_csv(body, scan);
  } else {
    body << json_text(io::to_json(scan));
  }
  write_text(path, body.str());
  maybe_gnuplot(cfg, path, "Hc at (Omega-1)/Omega, kappa=" + io::format_number(cfg.kappa), 1, 2, true);
  std::ostringstream s;
  s << summary_prefix(cfg) << " brackets=" << scan.brackets.size() << " gaps=" << scan.gaps.size();
  if (scan.brackets.empty()) s << " result=no_bound_states";
  return s.str();
}

std::string emit_spectrum(const RunConfig& cfg, const std::string& path, const spectral::SpectrumResult& r) {
  const auto energies = energies_for(cfg, r);
  std::ostringstream body;
  if (cfg.format == Format::csv) {
    io::write_spectrum_csv(body, r, energies);
  } else {
    body << json_text(io::to_json(r, energies));
  }
  write_text(path, body.str());
  maybe_gnuplot(cfg, path, spectral::to_string(r.method) + " levels", 1, 2, false);
  std::ostringstream s;
  s << summary_prefix(cfg) << " method=" << spectral::to_string(r.method) << " count=" << r.omegas.size();
  if (r.omegas.empty()) {
    s << " result=no_bound_states";
  } else {
    s << " omega_0=" << io::format_number(r.omegas.front());
  }
  if (!r.warnings.empty()) s << " warnings=" << r.warnings.size();
  return s.str();
}

spectral::SpectrumResult exact_roots(const RunConfig& cfg) {
  const CouplingConfig cc{cfg.kappa, cfg.ell};
  const auto scan = spectral::spectral_scan(cc, cfg.omega_min, cfg.omega_max, static_cast<std::size_t>(cfg.points),
                                            spectral_options(cfg));
  return spectral::find_roots(scan, cfg.tol);
}

std::string run_spectrum(const RunConfig& cfg, const std::string& path) {
  const CouplingConfig cc{cfg.kappa, cfg.ell};
  if (cfg.method == "hypergeometric_condition") {
    const double hi = std::min(cfg.omega_max, cfg.validity);
    return emit_spectrum(cfg, path, spectral::hypergeometric_condition_roots(cc, cfg.omega_min, hi, cfg.tol));
  }
  return emit_spectrum(cfg, path, spectral::closed_form_spectrum(cc, cfg.n_max, cfg.validity));
}

std::string run_wavefunction(const RunConfig& cfg, const std::string& path) {
  const CouplingConfig cc{cfg.kappa, cfg.ell};
  const EnergyPoint ep(cfg.omega);
  const auto grid = radial::default_grid(cc, ep, static_cast<std::size_t>(cfg.points));
  const auto prof = radial::wavefunction(cc, ep, grid);
  std::ostringstream body;
  if (cfg.format == Format::csv) {
    io::write_profile_csv(body, prof);
  } else {
    body << json_text(io::to_json(prof));
  }
  write_text(path, body.str());
  maybe_gnuplot(cfg, path, "R(xi), omega=" + io::format_number(cfg.omega), 1, 2, false);
  std::ostringstream s;
  s << summary_prefix(cfg) << " omega=" << io::format_number(cfg.omega)
    << " xi_star=" << io::format_number(prof.xi_star) << " edge_ratio=" << io::format_number(prof.edge_ratio)
    << " non_decaying=" << (prof.non_decaying ? 1 : 0);
  return s.str();
}

std::string run_compare(const RunConfig& cfg, const std::string& path) {
  const CouplingConfig cc{cfg.kappa, cfg.ell};
  const auto exact = exact_roots(cfg);
  auto closed = spectral::closed_form_spectrum(cc, cfg.n_max, cfg.validity);
  std::erase_if(closed.omegas, [&](double w) { return w < cfg.omega_min; });
  const auto cmp = spectral::compare_spectra(exact, closed);
  std::ostringstream body;
  if (cfg.format == Format::csv) {
    io::write_comparison_csv(body, cmp);
  } else {
    body << json_text(io::to_json(cmp));
  }
  write_text(path, body.str());
  std::ostringstream s;
  s << summary_prefix(cfg) << " exact=" << exact.omegas.size() << " closed_form=" << closed.omegas.size()
    << " pairs=" << cmp.rows.size() << " agreement=" << (cmp.agreement ? 1 : 0);
  if (exact.omegas.empty() && closed.omegas.empty()) s << " result=no_bound_states";
  return s.str();
}

std::string run_critical(const RunConfig& cfg, const std::string& path) {
  spectral::CriticalOptions opts;
  opts.spectral = spectral_options(cfg);
  const double lo = critical_lo(cfg);
  const double hi = critical_hi(cfg);
  const double kstar = spectral::critical_coupling(cfg.ell, lo, hi, opts);
  const double expected = CouplingConfig{1.0, cfg.ell}.critical_kappa();
  std::ostringstream body;
  if (cfg.format == Format::csv) {
    body << "ell,kappa_critical,kappa_critical_closed_form\n"
         << cfg.ell << ',' << io::format_number(kstar) << ',' << io::format_number(expected) << '\n';
  } else {
    body << json_text(nlohmann::json{{"ell", cfg.ell},
                                     {"kappa_lo", lo},
                                     {"kappa_hi", hi},
                                     {"omega_floor", opts.omega_floor},
                                     {"kappa_critical", kstar},
                                     {"kappa_critical_closed_form", expected}});
  }
  write_text(path, body.str());
  std::ostringstream s;
  s << "command=critical ell=" << cfg.ell << " kappa_critical=" << io::format_number(kstar)
    << " closed_form=" << io::format_number(expected);
  return s.str();
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::scan:
      return "scan";
    case Command::roots:
      return "roots";
    case Command::spectrum:
      return "spectrum";
    case Command::wavefunction:
      return "wavefunction";
    case Command::compare:
      return "compare";
    case Command::critical:
      return "critical";
  }
  return "unknown";
}

double default_tolerance() {
  if (const char* env = std::getenv("GUP_HEUN_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && std::isfinite(v) && v > 0.0) return v;
  }
  return 1e-8;
}

void RunConfig::validate() const {
  auto fail = [](const std::string& msg) { throw DomainError(msg); };
  if (command != Command::critical) {
    if (!(std::isfinite(kappa) && kappa > 0.0)) fail("kappa must be finite and positive");
  }
  if (ell < 0) fail("ell must be non-negative");
  if (!(tol > 0.0)) fail("tol must be positive");
  if (!(omega_min > 0.0 && omega_min < omega_max && omega_max < 0.5)) {
    fail("omega window must satisfy 0 < omega-min < omega-max < 0.5");
  }
  if (points < 2) fail("points must be at least 2");
  if (!(validity > 0.0 && validity < 0.5)) fail("validity must lie in (0, 0.5)");
  if (!(radius_factor > 0.0)) fail("radius-factor must be positive");
  if (n_max < 0) fail("n-max must be non-negative");
  if (command == Command::wavefunction && !(omega > 0.0 && omega < 0.5)) {
    fail("wavefunction needs --omega in (0, 0.5)");
  }
  if (command == Command::spectrum && method != "closed_form" && method != "hypergeometric_condition") {
    fail("method must be closed_form or hypergeometric_condition");
  }
  if (command == Command::spectrum && method == "hypergeometric_condition" &&
      !(omega_min < std::min(omega_max, validity))) {
    fail("hypergeometric_condition needs omega-min below min(omega-max, validity)");
  }
  if (command == Command::critical) {
    const double lo = kappa_lo.value_or(0.0);
    const double hi = kappa_hi.value_or(0.0);
    if (kappa_lo && kappa_hi && !(lo > 0.0 && lo < hi)) fail("critical bracket needs 0 < kappa-lo < kappa-hi");
  }
}

std::string RunConfig::resolved_output_path() const {
  if (!output_path.empty()) return output_path;
  return "gupheun_" + to_string(command) + (format == Format::csv ? ".csv" : ".json");
}

void apply_json(RunConfig& cfg, const nlohmann::json& j) {
  try {
    if (j.contains("command")) cfg.command = command_from_string(j.at("command").get<std::string>());
    if (j.contains("format")) cfg.format = format_from_string(j.at("format").get<std::string>());
    auto num = [&](const char* key, double& dst) {
      if (j.contains(key)) dst = j.at(key).get<double>();
    };
    auto integer = [&](const char* key, int& dst) {
      if (j.contains(key)) dst = j.at(key).get<int>();
    };
    num("kappa", cfg.kappa);
    integer("ell", cfg.ell);
    num("omega_min", cfg.omega_min);
    num("omega_max", cfg.omega_max);
    integer("points", cfg.points);
    num("tol", cfg.tol);
    num("validity", cfg.validity);
    num("omega", cfg.omega);
    integer("n_max", cfg.n_max);
    num("radius_factor", cfg.radius_factor);
    if (j.contains("kappa_lo")) cfg.kappa_lo = j.at("kappa_lo").get<double>();
    if (j.contains("kappa_hi")) cfg.kappa_hi = j.at("kappa_hi").get<double>();
    if (j.contains("output_path")) cfg.output_path = j.at("output_path").get<std::string>();
    if (j.contains("method")) cfg.method = j.at("method").get<std::string>();
    if (j.contains("units_path")) cfg.units_path = j.at("units_path").get<std::string>();
    if (j.contains("gnuplot")) cfg.gnuplot = j.at("gnuplot").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed config JSON: ") + e.what());
  }
}

std::optional<int> parse_args(int argc, const char* const* argv, RunConfig& cfg, std::ostream& out,
                              std::ostream& err) {
  CLI::App app{"Bound states of the inverse-square potential with a minimal length"};
  app.require_subcommand(1);
  Overrides o;

  auto* scan = app.add_subcommand("scan", "Sample Hc at the spectral point over an omega grid");
  auto* roots = app.add_subcommand("roots", "Refine the zeros of the exact spectral function");
  auto* spectrum = app.add_subcommand("spectrum", "Closed-form or hypergeometric-condition levels");
  auto* wave = app.add_subcommand("wavefunction", "Sample the radial wavefunction R(xi)");
  auto* compare = app.add_subcommand("compare", "Exact roots against the closed-form spectrum");
  auto* critical = app.add_subcommand("critical", "Bisect kappa for the onset of bound states");
  for (auto* sub : {scan, roots, spectrum, wave, compare, critical}) add_common(sub, o);
  spectrum->add_option("--n-max", o.n_max, "Highest closed-form level index");
  spectrum->add_option("--method", o.method, "closed_form or hypergeometric_condition")
      ->check(CLI::IsMember({"closed_form", "hypergeometric_condition"}));
  compare->add_option("--n-max", o.n_max, "Highest closed-form level index");
  wave->add_option("--omega", o.omega, "Trial energy omega")->required();
  critical->add_option("--kappa-lo", o.kappa_lo, "Lower end of the kappa bracket");
  critical->add_option("--kappa-hi", o.kappa_hi, "Upper end of the kappa bracket");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidConfig;
  }

  RunConfig c;
  c.tol = default_tolerance();
  const std::pair<CLI::App*, Command> subs[] = {{scan, Command::scan},         {roots, Command::roots},
                                                {spectrum, Command::spectrum}, {wave, Command::wavefunction},
                                                {compare, Command::compare},   {critical, Command::critical}};
  for (const auto& [sub, command] : subs) {
    if (sub->parsed()) c.command = command;
  }
  if (c.command == Command::wavefunction) c.points = 400;

  try {
    if (o.config) {
      std::ifstream in(*o.config);
      if (!in) throw DomainError("cannot open config file '" + *o.config + "'");
      const Command chosen = c.command;
      apply_json(c, nlohmann::json::parse(in));
      c.command = chosen;
    }
    set_if(c.kappa, o.kappa);
    set_if(c.ell, o.ell);
    set_if(c.omega_min, o.omega_min);
    set_if(c.omega_max, o.omega_max);
    set_if(c.points, o.points);
    set_if(c.tol, o.tol);
    set_if(c.validity, o.validity);
    set_if(c.omega, o.omega);
    set_if(c.n_max, o.n_max);
    set_if(c.radius_factor, o.radius_factor);
    set_if(c.output_path, o.output);
    set_if(c.method, o.method);
    set_if(c.units_path, o.units);
    if (o.format) c.format = format_from_string(*o.format);
    if (o.kappa_lo) c.kappa_lo = o.kappa_lo;
    if (o.kappa_hi) c.kappa_hi = o.kappa_hi;
    if (o.gnuplot) c.gnuplot = true;
    c.validate();
  } catch (const nlohmann::json::exception& e) {
    err << "error: invalid config file: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
  }
  cfg = c;
  return std::nullopt;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    if (!cfg.units_path.empty()) io::load_units(cfg.units_path);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
  }
  const std::string path = cfg.resolved_output_path();
  try {
    std::string summary;
    switch (cfg.command) {
      case Command::scan:
        summary = run_scan(cfg, path);
        break;
      case Command::roots:
        summary = emit_spectrum(cfg, path, exact_roots(cfg));
        break;
      case Command::spectrum:
        summary = run_spectrum(cfg, path);
        break;
      case Command::wavefunction:
        summary = run_wavefunction(cfg, path);
        break;
      case Command::compare:
        summary = run_compare(cfg, path);
        break;
      case Command::critical:
        summary = run_critical(cfg, path);
        break;
    }
    out << summary << " output=" << path << '\n';
    return kExitOk;
  } catch (const DomainError& e) {
    // Units mismatches and unusable output paths are configuration problems.
    err << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumericalFailure;
  }
}

}  // namespace gupheun::cli
