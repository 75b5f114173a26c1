#pragma once

#include <complex>

namespace gupheun {

using Complex = std::complex<double>;

/// Dimensionless problem definition: coupling kappa = m*alpha/(2*hbar^2) and
/// orbital quantum number ell.
struct CouplingConfig {
  double kappa = 0.0;
  int ell = 0;

  /// Throws DomainError unless kappa is finite and positive and ell >= 0.
  void validate() const;

  /// 4*kappa > (ell + 1/2)^2. The boundary itself counts as weak.
  [[nodiscard]] bool strong_coupling() const;

  /// (ell + 1/2)^2 / 4, the coupling below which no bound state exists.
  [[nodiscard]] double critical_kappa() const;
};

/// Trial energy in units of the deformation scale: omega = -2*m*beta*E.
class EnergyPoint {
 public:
  /// Throws DomainError unless 0 < omega < 1/2.
  explicit EnergyPoint(double omega);

  [[nodiscard]] double omega() const { return omega_; }
  /// Omega = 2*omega = -4*m*beta*E.
  [[nodiscard]] double big_omega() const { return 2.0 * omega_; }
  /// epsilon = 1 - Omega.
  [[nodiscard]] double epsilon() const { return 1.0 - 2.0 * omega_; }

 private:
  double omega_;
};

}  // namespace gupheun
