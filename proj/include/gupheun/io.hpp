#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "gupheun/radial.hpp"
#include "gupheun/spectral.hpp"

namespace gupheun::io {

/// Decimal rendering with 12 significant digits; NaN prints as "nan".
std::string format_number(double v);

// CSV writers. Each writes a mandatory header line first.
//   scan:         omega,hc_value,bracket_flag
//   roots:        n,omega,energy_natural_units,method
//   wavefunction: xi,R
//   compare:      n,omega_exact,omega_closed_form,rel_dev
void write_scan_csv(std::ostream& os, const spectral::SpectralScan& scan);
void write_spectrum_csv(std::ostream& os, const spectral::SpectrumResult& result,
                        const std::vector<double>& energies);
void write_profile_csv(std::ostream& os, const radial::RadialProfile& profile);
void write_comparison_csv(std::ostream& os, const spectral::Comparison& cmp);

nlohmann::json to_json(const spectral::SpectralScan& scan);
nlohmann::json to_json(const spectral::SpectrumResult& result, const std::vector<double>& energies);
nlohmann::json to_json(const radial::RadialProfile& profile);
nlohmann::json to_json(const spectral::Comparison& cmp);

/// Inverse of to_json for spectra; the energies array is ignored.
spectral::SpectrumResult spectrum_from_json(const nlohmann::json& j);

/// Units file: {"mass": .., "hbar": .., "beta": .., "alpha_coupling": ..}.
spectral::UnitSystem units_from_json(const nlohmann::json& j);
spectral::UnitSystem load_units(const std::string& path);

/// Plain-text gnuplot script plotting columns x_column:y_column of data_path.
std::string gnuplot_script(const std::string& data_path, const std::string& title, int x_column, int y_column,
                           bool log_x);

}  // namespace gupheun::io
