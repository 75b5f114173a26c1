#include "gupheun/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "gupheun/errors.hpp"

namespace gupheun::io {

using nlohmann::json;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

// JSON has no NaN; gaps become null.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

void write_scan_csv(std::ostream& os, const spectral::SpectralScan& scan) {
  std::set<std::size_t> flagged;
  for (const auto& [i, j] : scan.brackets) {
    flagged.insert(i);
    flagged.insert(j);
  }
  os << "omega,hc_value,bracket_flag\n";
  for (std::size_t i = 0; i < scan.omegas.size(); ++i) {
    os << format_number(scan.omegas[i]) << ',' << format_number(scan.values[i]) << ','
       << (flagged.count(i) ? 1 : 0) << '\n';
  }
}

void write_spectrum_csv(std::ostream& os, const spectral::SpectrumResult& result,
                        const std::vector<double>& energies) {
  os << "n,omega,energy_natural_units,method\n";
  for (std::size_t n = 0; n < result.omegas.size(); ++n) {
    os << n << ',' << format_number(result.omegas[n]) << ','
       << format_number(n < energies.size() ? energies[n] : std::numeric_limits<double>::quiet_NaN()) << ','
       << spectral::to_string(result.method) << '\n';
  }
}

void write_profile_csv(std::ostream& os, const radial::RadialProfile& profile) {
  os << "xi,R\n";
  for (std::size_t i = 0; i < profile.xi.size(); ++i) {
    os << format_number(profile.xi[i]) << ',' << format_number(profile.values[i]) << '\n';
  }
}

void write_comparison_csv(std::ostream& os, const spectral::Comparison& cmp) {
  os << "n,omega_exact,omega_closed_form,rel_dev\n";
  for (const auto& r : cmp.rows) {
    os << r.n << ',' << format_number(r.omega_exact) << ',' << format_number(r.omega_approx) << ','
       << format_number(r.rel_dev) << '\n';
  }
}

json to_json(const spectral::SpectralScan& scan) {
  json values = json::array();
  for (double v : scan.values) values.push_back(number_or_null(v));
  json brackets = json::array();
  for (const auto& [i, j] : scan.brackets) brackets.push_back({scan.omegas[i], scan.omegas[j]});
  return {{"kappa", scan.cfg.kappa},
          {"ell", scan.cfg.ell},
          {"omegas", scan.omegas},
          {"values", values},
          {"brackets", brackets},
          {"gaps", scan.gap_messages}};
}

json to_json(const spectral::SpectrumResult& result, const std::vector<double>& energies) {
  return {{"method", spectral::to_string(result.method)},
          {"kappa", result.kappa},
          {"ell", result.ell},
          {"omegas", result.omegas},
          {"energies_natural_units", energies},
          {"warnings", result.warnings}};
}

json to_json(const radial::RadialProfile& profile) {
  return {{"kappa", profile.kappa},
          {"ell", profile.ell},
          {"omega", profile.omega},
          {"xi_star", profile.xi_star},
          {"edge_ratio", profile.edge_ratio},
          {"tail_to_mid", profile.tail_to_mid},
          {"non_decaying", profile.non_decaying},
          {"xi", profile.xi},
          {"R", profile.values}};
}

json to_json(const spectral::Comparison& cmp) {
  json rows = json::array();
  for (const auto& r : cmp.rows) {
    rows.push_back({{"n", r.n}, {"omega_exact", r.omega_exact}, {"omega_approx", r.omega_approx}, {"rel_dev", r.rel_dev}});
  }
  return {{"rows", rows},
          {"exact_ratios", cmp.exact_ratios},
          {"approx_ratios", cmp.approx_ratios},
          {"expected_ratio", number_or_null(cmp.expected_ratio)},
          {"agreement", cmp.agreement}};
}

spectral::SpectrumResult spectrum_from_json(const json& j) {
  try {
    spectral::SpectrumResult r;
    r.method = spectral::method_from_string(j.at("method").get<std::string>());
    r.kappa = j.at("kappa").get<double>();
    r.ell = j.at("ell").get<int>();
    r.omegas = j.at("omegas").get<std::vector<double>>();
    if (j.contains("warnings")) r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed spectrum JSON: ") + e.what());
  }
}

spectral::UnitSystem units_from_json(const json& j) {
  try {
    spectral::UnitSystem u;
    u.mass = j.at("mass").get<double>();
    u.hbar = j.at("hbar").get<double>();
    u.beta = j.at("beta").get<double>();
    u.alpha_coupling = j.at("alpha_coupling").get<double>();
    u.validate();
    return u;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed units JSON: ") + e.what());
  }
}

spectral::UnitSystem load_units(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open units file '" + path + "'");
  try {
    return units_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw DomainError("units file '" + path + "' is not valid JSON: " + e.what());
  }
}

std::string gnuplot_script(const std::string& data_path, const std::string& title, int x_column, int y_column,
                           bool log_x) {
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set title '" << title << "'\n";
  if (log_x) os << "set logscale x\n";
  os << "set zeroaxis\n"
     << "plot '" << data_path << "' using " << x_column << ':' << y_column << " with lines\n"
     << "pause -1\n";
  return os.str();
}

}  // namespace gupheun::io
