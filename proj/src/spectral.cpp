#include "gupheun/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include "gupheun/errors.hpp"
#include "gupheun/specfun.hpp"

namespace gupheun::spectral {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  const double step = std::log(hi / lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo * std::exp(step * static_cast<double>(i));
  g.front() = lo;
  g.back() = hi;
  return g;
}

void check_window(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0 && lo < hi && hi < 0.5)) {
    std::ostringstream os;
    os << "omega window must satisfy 0 < omega_min < omega_max < 1/2, got [" << lo << ", " << hi << "]";
    throw DomainError(os.str());
  }
  if (n < 2) throw DomainError("a scan needs at least two points");
}

// Root of f on [lo, hi] given opposite-sign endpoint values; bracket width
// driven below tol * lo.
double refine(const std::function<double(double)>& f, double lo, double hi, double f_lo, double f_hi, double tol) {
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  auto done = [tol](double a, double b) { return std::abs(b - a) <= tol * std::min(std::abs(a), std::abs(b)); };
  std::uintmax_t max_iter = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, done, max_iter);
  return 0.5 * (a + b);
}

// Sorted decreasing, merging near-duplicates.
std::vector<double> tidy_roots(std::vector<double> roots, double tol) {
  std::sort(roots.begin(), roots.end(), std::greater<>());
  std::vector<double> out;
  for (double r : roots) {
    if (!out.empty() && std::abs(out.back() - r) < 2.0 * tol * r) continue;
    out.push_back(r);
  }
  return out;
}

}  // namespace

double evaluation_point(double omega, const SpectralOptions& opts) {
  const double big_omega = 2.0 * omega;
  return opts.radius_factor * (big_omega - 1.0) / big_omega;
}

double spectral_function(const CouplingConfig& cfg, double omega, const SpectralOptions& opts) {
  const EnergyPoint ep(omega);
  const heun::HeunParams p = heun::heun_params(cfg, ep);
  return heun::heun_continue_point(p, heun::Branch::physical, evaluation_point(omega, opts), opts.continuation)
      .value;
}

double SpectralScan::max_abs_value() const {
  double m = 0.0;
  for (double v : values) {
    if (std::isfinite(v)) m = std::max(m, std::abs(v));
  }
  return m;
}

SpectralScan spectral_scan(const CouplingConfig& cfg, double omega_min, double omega_max, std::size_t n_points,
                           const SpectralOptions& opts) {
  cfg.validate();
  check_window(omega_min, omega_max, n_points);
  SpectralScan scan;
  scan.cfg = cfg;
  scan.opts = opts;
  scan.omegas = log_grid(omega_min, omega_max, n_points);
  scan.values.resize(n_points, kNaN);
  for (std::size_t i = 0; i < n_points; ++i) {
    try {
      scan.values[i] = spectral_function(cfg, scan.omegas[i], opts);
    } catch (const Error& err) {
      scan.gaps.push_back(i);
      std::ostringstream os;
      os << "omega=" << scan.omegas[i] << ": " << err.what();
      scan.gap_messages.push_back(os.str());
    }
  }
  for (std::size_t i = 0; i + 1 < n_points; ++i) {
    const double a = scan.values[i];
    const double b = scan.values[i + 1];
    if (!std::isfinite(a) || !std::isfinite(b)) continue;
    if (a == 0.0) {
      scan.brackets.emplace_back(i, i);
    } else if (a * b < 0.0) {
      scan.brackets.emplace_back(i, i + 1);
    }
  }
  if (n_points > 0 && scan.values.back() == 0.0) scan.brackets.emplace_back(n_points - 1, n_points - 1);
  return scan;
}

std::string to_string(Method m) {
  switch (m) {
    case Method::exact_heun:
      return "exact_heun";
    case Method::closed_form:
      return "closed_form";
    case Method::hypergeometric_condition:
      return "hypergeometric_condition";
  }
  return "unknown";
}

Method method_from_string(const std::string& s) {
  if (s == "exact_heun") return Method::exact_heun;
  if (s == "closed_form") return Method::closed_form;
  if (s == "hypergeometric_condition") return Method::hypergeometric_condition;
  throw DomainError("unknown spectrum method '" + s + "'");
}

SpectrumResult find_roots(const SpectralScan& scan, double tol) {
  if (!(tol > 0.0)) throw DomainError("find_roots: tol must be positive");
  SpectrumResult out;
  out.method = Method::exact_heun;
  out.kappa = scan.cfg.kappa;
  out.ell = scan.cfg.ell;

  SpectralOptions refine_opts = scan.opts;
  refine_opts.continuation.tol = std::min(scan.opts.continuation.tol, 1e-10);
  const std::function<double(double)> f = [&](double w) { return spectral_function(scan.cfg, w, refine_opts); };

  std::vector<double> roots;
  for (const auto& [i, j] : scan.brackets) {
    const double lo = scan.omegas[i];
    const double hi = scan.omegas[j];
    if (i == j) {
      roots.push_back(lo);
      continue;
    }
    try {
      const double f_lo = f(lo);
      const double f_hi = f(hi);
      if (f_lo * f_hi > 0.0) {
        std::ostringstream os;
        os << "bracket lost on refinement: [" << lo << ", " << hi << "]";
        out.warnings.push_back(os.str());
        continue;
      }
      roots.push_back(refine(f, lo, hi, f_lo, f_hi, tol));
    } catch (const Error& err) {
      std::ostringstream os;
      os << "refinement failed in [" << lo << ", " << hi << "]: " << err.what();
      out.warnings.push_back(os.str());
    }
  }
  out.omegas = tidy_roots(std::move(roots), tol);
  return out;
}

SpectrumResult closed_form_spectrum(const CouplingConfig& cfg, int n_max, double validity) {
  cfg.validate();
  SpectrumResult out;
  out.method = Method::closed_form;
  out.kappa = cfg.kappa;
  out.ell = cfg.ell;
  if (!cfg.strong_coupling()) return out;
  const specfun::PhaseData ph = specfun::compute_phase(cfg);
  for (int n = 0; n <= n_max; ++n) {
    const double w = 0.5 * std::exp((2.0 / ph.nu) * (ph.b_arg - (n + 0.5) * kPi));
    if (w < validity && w > 0.0) out.omegas.push_back(w);
  }
  return out;
}

SpectrumResult hypergeometric_condition_roots(const CouplingConfig& cfg, double omega_lo, double omega_hi,
                                              double tol, std::size_t points) {
  cfg.validate();
  if (!(omega_lo > 0.0 && omega_lo < omega_hi && omega_hi <= 0.05)) {
    throw DomainError("hypergeometric condition range must satisfy 0 < lo < hi <= 0.05");
  }
  if (points < 2) throw DomainError("hypergeometric condition scan needs at least two points");
  if (!(tol > 0.0)) throw DomainError("hypergeometric_condition_roots: tol must be positive");
  SpectrumResult out;
  out.method = Method::hypergeometric_condition;
  out.kappa = cfg.kappa;
  out.ell = cfg.ell;
  if (!cfg.strong_coupling()) return out;

  const specfun::HypergeometricParams hp = specfun::reduced_parameters(cfg);
  const std::function<double(double)> f = [&](double w) {
    return specfun::hyp2f1_large_negative(hp.alpha, hp.gamma, hp.delta, -1.0 / (2.0 * w)).real();
  };
  const std::vector<double> grid = log_grid(omega_lo, omega_hi, points);
  std::vector<double> vals(points);
  for (std::size_t i = 0; i < points; ++i) vals[i] = f(grid[i]);
  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < points; ++i) {
    if (vals[i] * vals[i + 1] <= 0.0) roots.push_back(refine(f, grid[i], grid[i + 1], vals[i], vals[i + 1], tol));
  }
  out.omegas = tidy_roots(std::move(roots), tol);
  return out;
}

bool has_bound_state(const CouplingConfig& cfg, const CriticalOptions& opts) {
  cfg.validate();
  check_window(opts.omega_floor, opts.omega_ceiling, opts.points);
  const std::vector<double> grid = log_grid(opts.omega_floor, opts.omega_ceiling, opts.points);
  // Walk down from the ceiling; the first sign change settles it.
  std::optional<double> prev;
  for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
    double v = 0.0;
    try {
      v = spectral_function(cfg, *it, opts.spectral);
    } catch (const Error&) {
      prev.reset();
      continue;
    }
    if (v == 0.0) return true;
    if (prev && *prev * v < 0.0) return true;
    prev = v;
  }
  return false;
}

double critical_coupling(int ell, double kappa_lo, double kappa_hi, const CriticalOptions& opts) {
  if (!(kappa_lo > 0.0 && kappa_lo < kappa_hi)) throw DomainError("critical_coupling needs 0 < kappa_lo < kappa_hi");
  const bool lo_bound = has_bound_state({kappa_lo, ell}, opts);
  const bool hi_bound = has_bound_state({kappa_hi, ell}, opts);
  if (lo_bound == hi_bound) {
    std::ostringstream os;
    os << "no bound-state transition in kappa bracket [" << kappa_lo << ", " << kappa_hi << "]";
    throw DomainError(os.str());
  }
  double lo = kappa_lo;
  double hi = kappa_hi;
  while (hi - lo > opts.rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (has_bound_state({mid, ell}, opts) == hi_bound) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Comparison compare_spectra(const SpectrumResult& exact, const SpectrumResult& approx, double agreement_tol) {
  Comparison cmp;
  const CouplingConfig cfg{exact.kappa, exact.ell};
  double half_period = std::numeric_limits<double>::infinity();
  cmp.expected_ratio = kNaN;
  if (cfg.kappa > 0.0 && cfg.strong_coupling()) {
    const double nu = std::sqrt(4.0 * cfg.kappa - (cfg.ell + 0.5) * (cfg.ell + 0.5));
    cmp.expected_ratio = std::exp(-2.0 * kPi / nu);
    half_period = kPi / nu;
  }

  std::vector<bool> used(approx.omegas.size(), false);
  for (std::size_t n = 0; n < exact.omegas.size(); ++n) {
    const double we = exact.omegas[n];
    std::optional<std::size_t> best;
    double best_dist = half_period;
    for (std::size_t k = 0; k < approx.omegas.size(); ++k) {
      if (used[k]) continue;
      const double dist = std::abs(std::log(approx.omegas[k] / we));
      if (dist < best_dist) {
        best_dist = dist;
        best = k;
      }
    }
    if (!best) continue;
    used[*best] = true;
    const double wa = approx.omegas[*best];
    cmp.rows.push_back({n, we, wa, (wa - we) / we});
  }
  for (std::size_t n = 0; n + 1 < exact.omegas.size(); ++n) {
    cmp.exact_ratios.push_back(exact.omegas[n + 1] / exact.omegas[n]);
  }
  for (std::size_t n = 0; n + 1 < approx.omegas.size(); ++n) {
    cmp.approx_ratios.push_back(approx.omegas[n + 1] / approx.omegas[n]);
  }
  if (exact.omegas.empty() && approx.omegas.empty()) {
    cmp.agreement = true;
  } else {
    cmp.agreement = !cmp.rows.empty() && std::all_of(cmp.rows.begin(), cmp.rows.end(), [&](const ComparisonRow& r) {
      return std::abs(r.rel_dev) <= agreement_tol;
    });
  }
  return cmp;
}

void UnitSystem::validate() const {
  for (double v : {mass, hbar, beta, alpha_coupling}) {
    if (!(std::isfinite(v) && v > 0.0)) throw DomainError("unit system entries must be finite and positive");
  }
}

double UnitSystem::minimal_length() const { return hbar * std::sqrt(5.0 * beta); }

double UnitSystem::kappa() const { return mass * alpha_coupling / (2.0 * hbar * hbar); }

double UnitSystem::energy_scale() const { return 1.0 / (4.0 * mass * beta); }

double UnitSystem::energy_scale_from_minimal_length() const {
  const double dx = minimal_length();
  return 5.0 * hbar * hbar / (4.0 * mass * dx * dx);
}

std::vector<double> to_physical_energy(const SpectrumResult& result, const UnitSystem& units) {
  units.validate();
  const double k = units.kappa();
  if (std::abs(k - result.kappa) > 1e-12 * std::max(1.0, std::abs(result.kappa))) {
    std::ostringstream os;
    os.precision(15);
    os << "unit system implies kappa = " << k << " but the spectrum was computed for kappa = " << result.kappa;
    throw DomainError(os.str());
  }
  std::vector<double> energies;
  energies.reserve(result.omegas.size());
  const double scale = 2.0 * units.mass * units.beta;
  for (double w : result.omegas) energies.push_back(-w / scale);
  return energies;
}

}  // namespace gupheun::spectral
