#pragma once

#include <span>
#include <vector>

#include "gupheun/types.hpp"

namespace gupheun::heun {

/// Parameters of the confluent Heun equation
///
///   g'' + (a + (b+1)/y + (c+1)/(y-1)) g'
///       + ((a(b+c+2)/2 + d) y + e + b/2 + (c-a)(b+1)/2) / (y (y-1)) g = 0
///
/// For the deformed inverse-square problem a = 0, b = -1/2 - ell, c = 1,
/// d = kappa Omega / epsilon^2 and e = kappa / epsilon + 1/2.
struct HeunParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double e = 0.0;
};

/// Which local solution at y = 0 is meant.
///   regular:  Hc(a, b, c, d, e; y)
///   physical: Hc(a, -b, c, d, e; y), the branch regular at r = 0
enum class Branch { regular, physical };

HeunParams heun_params(const CouplingConfig& cfg, const EnergyPoint& ep);

/// The Omega -> 0 limit of heun_params: d = 0, e = kappa + 1/2.
HeunParams degenerate_params(const CouplingConfig& cfg);

/// Truncated Frobenius series sum_n v_n y^n about y = 0 with v_0 = 1.
class HeunSeries {
 public:
  HeunSeries(std::vector<double> coeffs, double tol, double radius_used);

  [[nodiscard]] const std::vector<double>& coeffs() const { return coeffs_; }
  [[nodiscard]] double tol() const { return tol_; }
  [[nodiscard]] double radius_used() const { return radius_; }

  /// Throws DomainError for |y| > radius_used.
  [[nodiscard]] double value(double y) const;
  [[nodiscard]] double derivative(double y) const;
  [[nodiscard]] double second_derivative(double y) const;

 private:
  void check_range(double y) const;

  std::vector<double> coeffs_;
  double tol_;
  double radius_;
};

/// Coefficients from the three-term recurrence
///   (n+1)(n+B+1) v_{n+1} = [n(n+B+c+1-a) + q] v_n + [a(n-1) + mu] v_{n-1}
/// with B the effective second parameter (b or -b), mu = a(B+c+2)/2 + d and
/// q = e + B/2 + (c-a)(B+1)/2. Summation stops once three consecutive terms
/// at |y| = radius fall below tol times the absolute partial sum; more than
/// 10^4 terms is a ConvergenceError. radius must lie in (0, 0.9].
HeunSeries heun_series(const HeunParams& p, Branch branch, double tol, double radius = 0.5);

struct ContinuationOptions {
  double tol = 1e-12;    ///< local relative/absolute tolerance of the integrator
  double seed = -0.5;    ///< series-to-ODE hand-off point, in [-0.7, -0.4]
  std::size_t max_steps = 200000;
};

struct HeunValue {
  double y = 0.0;
  double value = 0.0;
  double derivative = 0.0;  ///< dHc/dy
};

/// Value of the selected Heun branch at y_target < 0, obtained by seeding
/// (Hc, Hc') from the series at the seed point and integrating the equation.
/// Throws DomainError for y_target >= 0 and StepSizeError if the integrator
/// stalls.
double heun_continue(const HeunParams& p, Branch branch, double y_target, double tol);

HeunValue heun_continue_point(const HeunParams& p, Branch branch, double y_target,
                              const ContinuationOptions& opts = {});

/// Several targets in one sweep. Targets must be negative; they may be given
/// in any order. Results come back in the order of the input.
std::vector<HeunValue> heun_continue_many(const HeunParams& p, Branch branch,
                                          std::span<const double> y_targets,
                                          const ContinuationOptions& opts = {});

/// Integrates the equation from a known (y, Hc, Hc') state to y_to. Both
/// points must be negative.
HeunValue integrate_between(const HeunParams& p, Branch branch, const HeunValue& start, double y_to,
                            const ContinuationOptions& opts = {});

/// Terms of the equation at y: {g'', P(y) g', Q(y) g}. Their sum is the
/// residual.
struct EquationTerms {
  double second;
  double first;
  double zeroth;
};
EquationTerms equation_terms(const HeunParams& p, Branch branch, double y, double g, double dg,
                             double d2g);

}  // namespace gupheun::heun
