#pragma once

#include "gupheun/types.hpp"

namespace gupheun::specfun {

/// Principal branch of log Gamma(z): analytic in the plane cut along the
/// negative real axis, real for real z > 0, and satisfying
/// lgamma(z+1) = lgamma(z) + log(z).
///
/// Lanczos approximation (g = 607/128, 15 terms) for Re z >= 1/2 and the
/// reflection formula below that. Throws PoleError at non-positive integers.
Complex log_gamma(Complex z);

/// Oscillation index and the gamma-function ratio
///   B = Gamma(i nu) / (Gamma(1/4 + ell/2 + i nu/2) Gamma(5/4 + ell/2 + i nu/2))
/// that fixes the phase of the low-energy spectrum.
struct PhaseData {
  double nu = 0.0;
  double b_modulus = 0.0;
  double b_arg = 0.0;  ///< in (-pi, pi]

  [[nodiscard]] Complex b() const { return std::polar(b_modulus, b_arg); }
};

/// nu = sqrt(4 kappa - (ell + 1/2)^2). Throws WeakCouplingError when the
/// coupling is at or below the critical value.
PhaseData compute_phase(const CouplingConfig& cfg);

/// Parameters (alpha', gamma', delta') of the hypergeometric function that
/// the physical Heun branch degenerates to when d -> 0, e -> kappa + 1/2:
///   alpha' = 1/4 + ell/2 - i nu/2,  gamma' = conj(alpha'),  delta' = 3/2 + ell.
/// nu may be imaginary (weak coupling); then both alpha' and gamma' are real.
struct HypergeometricParams {
  Complex alpha;
  Complex gamma;
  Complex delta;
};
HypergeometricParams reduced_parameters(const CouplingConfig& cfg);

struct Hyp2f1Options {
  double tol = 1e-15;
  int max_terms = 20000;
  double series_radius = 0.9;
};

/// Gauss hypergeometric function F(alpha, gamma; delta; z) on the principal
/// branch (cut along [1, inf)).
///
/// Regimes, tried in order:
///   |z| < 0.9            direct series
///   |z/(z-1)| < 0.9      Pfaff transformation
///   |1/z| < 0.9          two-term connection formula around infinity
/// Throws ConvergenceError when none applies (z near 1, or near e^{+-i pi/3}),
/// and PoleError for delta a non-positive integer or an integer gamma-alpha in
/// the connection regime.
Complex hyp2f1(Complex alpha, Complex gamma, Complex delta, Complex z,
               const Hyp2f1Options& opts = {});

/// Connection formula for real z <= -2:
///   F(a,g;d;z) = G(d)G(g-a)/(G(g)G(d-a)) (-z)^{-a} F(a, 1-d+a; 1-g+a; 1/z)
///              + G(d)G(a-g)/(G(a)G(d-g)) (-z)^{-g} F(g, 1-d+g; 1-a+g; 1/z)
/// with ln(-z) real. Both inner functions are summed as full series.
Complex hyp2f1_large_negative(Complex alpha, Complex gamma, Complex delta, double z,
                              const Hyp2f1Options& opts = {});

/// Partial sums of the Gauss series, stopping once three consecutive terms
/// fall below tol * |sum|. Requires |z| < 1.
Complex hyp2f1_series(Complex alpha, Complex gamma, Complex delta, Complex z,
                      const Hyp2f1Options& opts = {});

}  // namespace gupheun::specfun
