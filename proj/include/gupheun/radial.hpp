#pragma once

#include <span>
#include <vector>

#include "gupheun/heun.hpp"
#include "gupheun/types.hpp"

namespace gupheun::radial {

/// y = -(1 - Omega) * 5 xi^2 / (8 kappa), with xi = r / (Delta x)_min and
/// (Delta x)_min = hbar sqrt(5 beta).
double map_xi_to_y(double xi, const CouplingConfig& cfg, const EnergyPoint& ep);

/// xi* = sqrt(4 kappa / (5 omega)), i.e. r = sqrt(-alpha/E). map_xi_to_y sends
/// it to (Omega - 1) / Omega.
double spectral_radius(const CouplingConfig& cfg, const EnergyPoint& ep);

struct RadialProfile {
  std::vector<double> xi;
  std::vector<double> values;
  double omega = 0.0;
  double kappa = 0.0;
  int ell = 0;
  double xi_star = 0.0;
  /// R(xi*) / max |R|, signed.
  double edge_ratio = 0.0;
  /// Mean |R| over the last tenth of [0, xi*] divided by mean |R| over
  /// [0.45 xi*, 0.55 xi*].
  double tail_to_mid = 0.0;
  /// The profile has not decayed by xi*: |R(xi*)| is at least half of the
  /// largest |R| on [xi*/2, xi*].
  bool non_decaying = false;
};

struct ProfileOptions {
  double series_radius = 0.9;  ///< |y| below which the Frobenius series is summed
  heun::ContinuationOptions continuation{};
};

/// R(xi) = xi^ell (1 - y) Hc(a, -b, c, d, e; y(xi)) with normalization 1.
/// Grid must be sorted and non-negative.
RadialProfile wavefunction(const CouplingConfig& cfg, const EnergyPoint& ep,
                           std::span<const double> xi_grid, const ProfileOptions& opts = {});

/// 400 log-spaced points on [1e-3, 1.2 xi*].
std::vector<double> default_grid(const CouplingConfig& cfg, const EnergyPoint& ep,
                                 std::size_t points = 400);

struct AsymptoticExponents {
  double s_minus = 0.0;        ///< -1 - ell, irregular at the origin
  double s_plus = 0.0;         ///< ell, the physical branch
  double farfield_rate = 0.0;  ///< decay rate of xi R(xi) in minimal-length units
};

AsymptoticExponents asymptotic_exponents(const CouplingConfig& cfg, const EnergyPoint& ep);

}  // namespace gupheun::radial
