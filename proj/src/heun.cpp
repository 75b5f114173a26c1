#include "gupheun/heun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "gupheun/errors.hpp"

namespace gupheun::heun {
namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 2>;

constexpr int kMaxSeriesTerms = 10000;

double effective_b(const HeunParams& p, Branch branch) {
  return branch == Branch::physical ? -p.b : p.b;
}

struct Coefficients {
  double a, b, c, mu, q;
};

Coefficients coefficients(const HeunParams& p, Branch branch) {
  const double b = effective_b(p, branch);
  return {p.a, b, p.c, 0.5 * p.a * (b + p.c + 2.0) + p.d, p.e + 0.5 * b + 0.5 * (p.c - p.a) * (b + 1.0)};
}

// Real part of the slower power-law exponent at infinity in the d = 0 limit.
// Factoring |y|^{-p} out keeps the integrated amplitude O(1) over many
// decades of y.
double decay_exponent(const Coefficients& k) {
  const double s = k.b + k.c + 1.0;
  const double disc = s * s - 4.0 * k.q;
  if (disc < 0.0) return 0.5 * s;
  return 0.5 * (s - std::sqrt(disc));
}

// Equation in t = ln(-y) for u = (-y)^p g:
//   u'' + (A - 2p) u' + (p^2 - p A + C) u = 0,
//   A = y P(y) - 1,  C = y^2 Q(y).
struct LogSystem {
  Coefficients k;
  double p;

  void operator()(const State& x, State& dxdt, double t) const {
    const double y = -std::exp(t);
    const double ratio = y / (y - 1.0);
    const double big_a = k.a * y + (k.b + 1.0) + (k.c + 1.0) * ratio - 1.0;
    const double big_c = (k.mu * y + k.q) * ratio;
    dxdt[0] = x[1];
    dxdt[1] = -(big_a - 2.0 * p) * x[1] - (p * p - p * big_a + big_c) * x[0];
  }
};

State to_log_state(double y, double g, double dg, double p) {
  const double t = std::log(-y);
  const double scale = std::exp(p * t);
  return {scale * g, scale * (y * dg + p * g)};
}

HeunValue from_log_state(double y, const State& x, double p) {
  const double scale = std::exp(-p * std::log(-y));
  const double g = scale * x[0];
  const double dg_dt = scale * (x[1] - p * x[0]);
  return {y, g, dg_dt / y};
}

class Integrator {
 public:
  Integrator(const LogSystem& sys, const ContinuationOptions& opts)
      : sys_(sys), opts_(opts), stepper_(odeint::make_controlled<odeint::runge_kutta_fehlberg78<State>>(opts.tol, opts.tol)) {}

  // Advance x from t to t_end exactly.
  void advance(State& x, double& t, double t_end, double& dt) {
    if (t == t_end) return;
    const double dir = t_end > t ? 1.0 : -1.0;
    if (dt == 0.0 || std::signbit(dt) != std::signbit(dir)) dt = 0.05 * dir;
    while (dir * (t_end - t) > 0.0) {
      if (++steps_ > opts_.max_steps) {
        throw StepSizeError("Heun continuation exceeded the step budget near y = " +
                            std::to_string(-std::exp(t)));
      }
      const double remaining = t_end - t;
      const bool last = std::abs(dt) >= std::abs(remaining);
      double trial = last ? remaining : dt;
      const double t_before = t;
      const auto res = stepper_.try_step(sys_, x, t, trial);
      if (res == odeint::success) {
        if (last) t = t_end;
        // trial now holds the suggested next step
        dt = last ? std::max(std::abs(dt), std::abs(trial)) * dir : trial;
      } else {
        t = t_before;
        dt = trial;
        if (std::abs(dt) < 1e-13 * std::max(1.0, std::abs(t))) {
          std::ostringstream os;
          os << "Heun continuation step size underflow at y = " << -std::exp(t);
          throw StepSizeError(os.str());
        }
      }
      if (!std::isfinite(x[0]) || !std::isfinite(x[1])) {
        std::ostringstream os;
        os << "Heun continuation produced non-finite values near y = " << -std::exp(t);
        throw StepSizeError(os.str());
      }
    }
  }

 private:
  LogSystem sys_;
  ContinuationOptions opts_;
  decltype(odeint::make_controlled<odeint::runge_kutta_fehlberg78<State>>(1.0, 1.0)) stepper_;
  std::size_t steps_ = 0;
};

}  // namespace

HeunParams heun_params(const CouplingConfig& cfg, const EnergyPoint& ep) {
  cfg.validate();
  const double big_omega = ep.big_omega();
  const double eps = ep.epsilon();
  return {0.0, -0.5 - cfg.ell, 1.0, cfg.kappa * big_omega / (eps * eps), cfg.kappa / eps + 0.5};
}

HeunParams degenerate_params(const CouplingConfig& cfg) {
  cfg.validate();
  return {0.0, -0.5 - cfg.ell, 1.0, 0.0, cfg.kappa + 0.5};
}

HeunSeries::HeunSeries(std::vector<double> coeffs, double tol, double radius_used)
    : coeffs_(std::move(coeffs)), tol_(tol), radius_(radius_used) {}

void HeunSeries::check_range(double y) const {
  if (std::abs(y) > radius_ * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "HeunSeries evaluated at |y| = " << std::abs(y) << " beyond its radius " << radius_;
    throw DomainError(os.str());
  }
}

double HeunSeries::value(double y) const {
  check_range(y);
  double s = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) s = s * y + *it;
  return s;
}

double HeunSeries::derivative(double y) const {
  check_range(y);
  double s = 0.0;
  for (std::size_t n = coeffs_.size() - 1; n >= 1; --n) s = s * y + static_cast<double>(n) * coeffs_[n];
  return s;
}

double HeunSeries::second_derivative(double y) const {
  check_range(y);
  double s = 0.0;
  for (std::size_t n = coeffs_.size() - 1; n >= 2; --n) {
    s = s * y + static_cast<double>(n) * static_cast<double>(n - 1) * coeffs_[n];
  }
  return s;
}

HeunSeries heun_series(const HeunParams& p, Branch branch, double tol, double radius) {
  if (!(tol > 0.0)) throw DomainError("heun_series: tol must be positive");
  if (!(radius > 0.0 && radius <= 0.9)) throw DomainError("heun_series: radius must lie in (0, 0.9]");
  const Coefficients k = coefficients(p, branch);

  std::vector<double> v{1.0};
  double abs_sum = 1.0;
  double power = 1.0;
  int small_run = 0;
  for (int n = 0; n < kMaxSeriesTerms; ++n) {
    const double nd = n;
    const double den = (nd + 1.0) * (nd + k.b + 1.0);
    if (std::abs(den) < 1e-300) {
      throw ConvergenceError("heun_series: recurrence breakdown, leading coefficient vanishes at n = " +
                             std::to_string(n + 1));
    }
    const double prev = n >= 1 ? v[n - 1] : 0.0;
    const double next = ((nd * (nd + k.b + k.c + 1.0 - k.a) + k.q) * v[n] + (k.a * (nd - 1.0) + k.mu) * prev) / den;
    v.push_back(next);
    power *= radius;
    const double term = std::abs(next) * power;
    abs_sum += term;
    if (!std::isfinite(abs_sum)) throw ConvergenceError("heun_series: coefficients overflow");
    if (term < tol * abs_sum) {
      if (++small_run >= 3) return HeunSeries(std::move(v), tol, radius);
    } else {
      small_run = 0;
    }
  }
  throw ConvergenceError("heun_series: no convergence within 10^4 terms");
}

EquationTerms equation_terms(const HeunParams& p, Branch branch, double y, double g, double dg,
                             double d2g) {
  const Coefficients k = coefficients(p, branch);
  const double big_p = k.a + (k.b + 1.0) / y + (k.c + 1.0) / (y - 1.0);
  const double big_q = (k.mu * y + k.q) / (y * (y - 1.0));
  return {d2g, big_p * dg, big_q * g};
}

std::vector<HeunValue> heun_continue_many(const HeunParams& p, Branch branch,
                                          std::span<const double> y_targets,
                                          const ContinuationOptions& opts) {
  if (!(opts.seed < 0.0 && opts.seed >= -0.9)) throw DomainError("continuation seed must lie in [-0.9, 0)");
  if (!(opts.tol > 0.0)) throw DomainError("continuation tolerance must be positive");
  for (double y : y_targets) {
    if (!(y < 0.0) || !std::isfinite(y)) {
      std::ostringstream os;
      os << "heun_continue: target y = " << y << " is not on the negative real axis";
      throw DomainError(os.str());
    }
  }

  const Coefficients k = coefficients(p, branch);
  const double pw = decay_exponent(k);
  const LogSystem sys{k, pw};

  const HeunSeries series = heun_series(p, branch, std::min(opts.tol, 1e-15), std::abs(opts.seed));
  const double t_seed = std::log(-opts.seed);
  const State x_seed = to_log_state(opts.seed, series.value(opts.seed), series.derivative(opts.seed), pw);

  std::vector<std::size_t> order(y_targets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return y_targets[i] < y_targets[j]; });

  std::vector<HeunValue> out(y_targets.size());
  // Outward sweep (y < seed) in increasing |y|, then inward sweep toward 0.
  auto sweep = [&](auto begin, auto end) {
    Integrator integ(sys, opts);
    State x = x_seed;
    double t = t_seed;
    double dt = 0.0;
    for (auto it = begin; it != end; ++it) {
      const double y = y_targets[*it];
      integ.advance(x, t, std::log(-y), dt);
      out[*it] = from_log_state(y, x, pw);
    }
  };
  const auto split = std::partition_point(order.begin(), order.end(),
                                          [&](std::size_t i) { return y_targets[i] <= opts.seed; });
  sweep(std::make_reverse_iterator(split), order.rend());
  sweep(split, order.end());
  return out;
}

HeunValue integrate_between(const HeunParams& p, Branch branch, const HeunValue& start, double y_to,
                            const ContinuationOptions& opts) {
  if (!(start.y < 0.0 && y_to < 0.0)) throw DomainError("integrate_between: both points must be negative");
  if (!(opts.tol > 0.0)) throw DomainError("continuation tolerance must be positive");
  const Coefficients k = coefficients(p, branch);
  const double pw = decay_exponent(k);
  Integrator integ(LogSystem{k, pw}, opts);
  State x = to_log_state(start.y, start.value, start.derivative, pw);
  double t = std::log(-start.y);
  double dt = 0.0;
  integ.advance(x, t, std::log(-y_to), dt);
  return from_log_state(y_to, x, pw);
}

HeunValue heun_continue_point(const HeunParams& p, Branch branch, double y_target,
                              const ContinuationOptions& opts) {
  const std::array<double, 1> target{y_target};
  return heun_continue_many(p, branch, target, opts).front();
}

double heun_continue(const HeunParams& p, Branch branch, double y_target, double tol) {
  ContinuationOptions opts;
  opts.tol = tol;
  return heun_continue_point(p, branch, y_target, opts).value;
}

}  // namespace gupheun::heun
