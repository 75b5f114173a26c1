#include "gupheun/radial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gupheun/errors.hpp"

namespace gupheun::radial {

double map_xi_to_y(double xi, const CouplingConfig& cfg, const EnergyPoint& ep) {
  if (!(xi >= 0.0)) throw DomainError("map_xi_to_y: xi must be non-negative");
  cfg.validate();
  return -ep.epsilon() * 5.0 * xi * xi / (8.0 * cfg.kappa);
}

double spectral_radius(const CouplingConfig& cfg, const EnergyPoint& ep) {
  cfg.validate();
  return std::sqrt(4.0 * cfg.kappa / (5.0 * ep.omega()));
}

std::vector<double> default_grid(const CouplingConfig& cfg, const EnergyPoint& ep, std::size_t points) {
  if (points < 2) throw DomainError("default_grid needs at least two points");
  const double lo = 1e-3;
  const double hi = 1.2 * spectral_radius(cfg, ep);
  std::vector<double> grid(points);
  const double step = std::log(hi / lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = lo * std::exp(step * static_cast<double>(i));
  grid.back() = hi;
  return grid;
}

namespace {

double mean_abs_in(const std::vector<double>& xi, const std::vector<double>& values, double lo, double hi) {
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (xi[i] >= lo && xi[i] <= hi) {
      sum += std::abs(values[i]);
      ++n;
    }
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

}  // namespace

RadialProfile wavefunction(const CouplingConfig& cfg, const EnergyPoint& ep, std::span<const double> xi_grid,
                           const ProfileOptions& opts) {
  cfg.validate();
  if (!std::is_sorted(xi_grid.begin(), xi_grid.end())) throw DomainError("wavefunction: xi grid must be sorted");
  if (!xi_grid.empty() && xi_grid.front() < 0.0) throw DomainError("wavefunction: xi grid must be non-negative");

  const heun::HeunParams params = heun::heun_params(cfg, ep);
  const heun::HeunSeries series =
      heun::heun_series(params, heun::Branch::physical, 1e-16, opts.series_radius);

  RadialProfile prof;
  prof.omega = ep.omega();
  prof.kappa = cfg.kappa;
  prof.ell = cfg.ell;
  prof.xi_star = spectral_radius(cfg, ep);
  prof.xi.assign(xi_grid.begin(), xi_grid.end());
  prof.values.resize(xi_grid.size());

  std::vector<double> ys(xi_grid.size());
  std::vector<double> far_targets;
  for (std::size_t i = 0; i < xi_grid.size(); ++i) {
    ys[i] = map_xi_to_y(xi_grid[i], cfg, ep);
    if (std::abs(ys[i]) >= opts.series_radius) far_targets.push_back(ys[i]);
  }
  // The edge value at xi* always comes from continuation.
  const double y_star = map_xi_to_y(prof.xi_star, cfg, ep);
  far_targets.push_back(y_star);
  const auto far = heun::heun_continue_many(params, heun::Branch::physical, far_targets, opts.continuation);

  auto prefactor = [&](double xi, double y) { return std::pow(xi, cfg.ell) * (1.0 - y); };
  std::size_t next_far = 0;
  for (std::size_t i = 0; i < xi_grid.size(); ++i) {
    const double y = ys[i];
    const double hc = std::abs(y) < opts.series_radius ? series.value(y) : far[next_far++].value;
    prof.values[i] = prefactor(xi_grid[i], y) * hc;
  }
  const double edge = prefactor(prof.xi_star, y_star) * far.back().value;

  double peak = 0.0;
  double outer_peak = std::abs(edge);
  for (std::size_t i = 0; i < prof.xi.size(); ++i) {
    peak = std::max(peak, std::abs(prof.values[i]));
    if (prof.xi[i] >= 0.5 * prof.xi_star && prof.xi[i] <= prof.xi_star) {
      outer_peak = std::max(outer_peak, std::abs(prof.values[i]));
    }
  }
  prof.edge_ratio = peak > 0.0 ? edge / peak : 0.0;
  const double mid = mean_abs_in(prof.xi, prof.values, 0.45 * prof.xi_star, 0.55 * prof.xi_star);
  const double tail = mean_abs_in(prof.xi, prof.values, 0.9 * prof.xi_star, prof.xi_star);
  prof.tail_to_mid = mid > 0.0 ? tail / mid : 0.0;
  prof.non_decaying = outer_peak > 0.0 && std::abs(edge) >= 0.5 * outer_peak;
  return prof;
}

AsymptoticExponents asymptotic_exponents(const CouplingConfig& cfg, const EnergyPoint& ep) {
  cfg.validate();
  AsymptoticExponents out;
  out.s_minus = -1.0 - cfg.ell;
  out.s_plus = cfg.ell;
  out.farfield_rate = std::sqrt(5.0 * ep.omega() / (1.0 - 2.0 * ep.omega()));
  return out;
}

}  // namespace gupheun::radial
