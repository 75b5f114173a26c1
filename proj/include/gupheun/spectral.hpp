#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gupheun/heun.hpp"
#include "gupheun/types.hpp"

namespace gupheun::spectral {

struct SpectralOptions {
  /// Multiplier c on the evaluation point c (Omega - 1) / Omega.
  double radius_factor = 1.0;
  heun::ContinuationOptions continuation{};
};

/// Point where the spectral condition is imposed: c (Omega - 1) / Omega for
/// r -> c sqrt(-alpha/E).
double evaluation_point(double omega, const SpectralOptions& opts = {});

/// Hc(a, -b, c, d, e; evaluation_point(omega)). Its zeros in omega are the
/// bound-state energies.
double spectral_function(const CouplingConfig& cfg, double omega, const SpectralOptions& opts = {});

struct SpectralScan {
  CouplingConfig cfg;
  SpectralOptions opts;
  std::vector<double> omegas;  ///< increasing, log-spaced
  std::vector<double> values;  ///< NaN where the continuation failed
  std::vector<std::pair<std::size_t, std::size_t>> brackets;
  std::vector<std::size_t> gaps;
  std::vector<std::string> gap_messages;

  [[nodiscard]] double max_abs_value() const;
};

/// Samples spectral_function on n_points log-spaced omegas in
/// [omega_min, omega_max] and records adjacent sign changes. A failed point
/// becomes a gap; the scan carries on.
SpectralScan spectral_scan(const CouplingConfig& cfg, double omega_min, double omega_max, std::size_t n_points,
                           const SpectralOptions& opts = {});

enum class Method { exact_heun, closed_form, hypergeometric_condition };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

struct SpectrumResult {
  Method method = Method::exact_heun;
  std::vector<double> omegas;  ///< strictly decreasing
  double kappa = 0.0;
  int ell = 0;
  std::vector<std::string> warnings;

  bool operator==(const SpectrumResult&) const = default;
};

/// Refines each bracket of the scan with TOMS 748 until the bracket width is
/// below tol * omega. Brackets whose sign change disappears on
/// re-evaluation are dropped with a warning. Roots closer than 2 tol omega
/// are merged.
SpectrumResult find_roots(const SpectralScan& scan, double tol);

/// omega_n = exp[(2/nu)(arg B - (n + 1/2) pi)] / 2 for n = 0..n_max, keeping
/// only omega_n < validity. Weak coupling gives an empty result.
SpectrumResult closed_form_spectrum(const CouplingConfig& cfg, int n_max, double validity = 0.05);

/// Zeros of F(alpha', gamma'; delta'; -1/Omega) over [omega_lo, omega_hi]
/// (a sub-range of (0, 0.05]), found by a log-spaced scan followed by TOMS 748.
SpectrumResult hypergeometric_condition_roots(const CouplingConfig& cfg, double omega_lo, double omega_hi,
                                              double tol, std::size_t points = 400);

struct CriticalOptions {
  double omega_floor = 1e-60;
  double omega_ceiling = 0.4;
  std::size_t points = 300;
  double rel_tol = 2e-4;
  SpectralOptions spectral{};
};

/// True when the exact spectral function changes sign on
/// [omega_floor, omega_ceiling].
bool has_bound_state(const CouplingConfig& cfg, const CriticalOptions& opts = {});

/// Bisects kappa on [kappa_lo, kappa_hi] for the onset of bound states.
/// Throws DomainError if both ends agree.
double critical_coupling(int ell, double kappa_lo, double kappa_hi, const CriticalOptions& opts = {});

struct ComparisonRow {
  std::size_t n = 0;
  double omega_exact = 0.0;
  double omega_approx = 0.0;
  double rel_dev = 0.0;
};

struct Comparison {
  std::vector<ComparisonRow> rows;
  std::vector<double> exact_ratios;   ///< omega_{n+1} / omega_n
  std::vector<double> approx_ratios;
  double expected_ratio = 0.0;        ///< exp(-2 pi / nu); NaN at weak coupling
  bool agreement = false;
};

/// Pairs each exact root with the nearest approximate root in ln(omega),
/// provided they sit within half a log-period (pi/nu) of each other.
/// agreement holds when both spectra are empty, or when at least one pair
/// exists and every pair deviates by at most agreement_tol.
Comparison compare_spectra(const SpectrumResult& exact, const SpectrumResult& approx,
                           double agreement_tol = 0.05);

struct UnitSystem {
  double mass = 1.0;
  double hbar = 1.0;
  double beta = 1.0;
  double alpha_coupling = 1.0;

  void validate() const;
  [[nodiscard]] double minimal_length() const;  ///< hbar sqrt(5 beta)
  [[nodiscard]] double kappa() const;           ///< mass alpha / (2 hbar^2)
  /// 1 / (4 m beta)
  [[nodiscard]] double energy_scale() const;
  /// 5 hbar^2 / (4 m (Delta x)_min^2); equal to energy_scale().
  [[nodiscard]] double energy_scale_from_minimal_length() const;
};

/// E_n = -omega_n / (2 m beta). Throws DomainError if the units imply a
/// different kappa than the result carries.
std::vector<double> to_physical_energy(const SpectrumResult& result, const UnitSystem& units);

}  // namespace gupheun::spectral
