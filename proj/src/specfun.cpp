#include "gupheun/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gupheun/errors.hpp"

namespace gupheun {

void CouplingConfig::validate() const {
  if (!std::isfinite(kappa) || kappa <= 0.0) {
    std::ostringstream os;
    os << "coupling kappa must be finite and positive, got " << kappa;
    throw DomainError(os.str());
  }
  if (ell < 0) {
    throw DomainError("orbital quantum number ell must be non-negative, got " +
                      std::to_string(ell));
  }
}

double CouplingConfig::critical_kappa() const {
  const double h = ell + 0.5;
  return 0.25 * h * h;
}

bool CouplingConfig::strong_coupling() const { return kappa > critical_kappa(); }

EnergyPoint::EnergyPoint(double omega) : omega_(omega) {
  if (!(omega > 0.0 && omega < 0.5)) {
    std::ostringstream os;
    os << "omega must lie in (0, 1/2), got " << omega;
    throw DomainError(os.str());
  }
}

namespace specfun {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLogPi = 1.1447298858494001741;
constexpr double kHalfLog2Pi = 0.91893853320467274178;

// Godfrey's coefficient set, g = 607/128.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczosCoeffs = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4, .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,  -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4, .36899182659531622704e-5};

bool near_nonpositive_integer(Complex z) {
  if (z.real() > 0.5) return false;
  const double n = std::round(z.real());
  const double scale = std::max(1.0, std::abs(n));
  return std::abs(z.imag()) <= 1e-14 * scale && std::abs(z.real() - n) <= 1e-14 * scale;
}

bool near_integer(Complex z) {
  const double n = std::round(z.real());
  const double scale = std::max(1.0, std::abs(n));
  return std::abs(z.imag()) <= 1e-14 * scale && std::abs(z.real() - n) <= 1e-14 * scale;
}

Complex lanczos_log_gamma(Complex z) {
  const Complex w = z - 1.0;
  Complex series = kLanczosCoeffs[0];
  for (std::size_t k = 1; k < kLanczosCoeffs.size(); ++k) {
    series += kLanczosCoeffs[k] / (w + static_cast<double>(k));
  }
  const Complex t = w + kLanczosG + 0.5;
  return kHalfLog2Pi + (w + 0.5) * std::log(t) - t + std::log(series);
}

// Principal log of sin(pi z), stable for large |Im z|.
Complex log_sinpi(Complex z) {
  if (std::abs(z.imag()) < 20.0) return std::log(std::sin(kPi * z));
  if (z.imag() < 0.0) return std::conj(log_sinpi(std::conj(z)));
  // sin(pi z) = -exp(-i pi z) (1 - exp(2 i pi z)) / (2 i) = exp(-i pi z) (1 - exp(2 i pi z)) i / 2
  const Complex i{0.0, 1.0};
  const Complex lead = -i * kPi * z;
  const Complex tail = 1.0 - std::exp(2.0 * i * kPi * z);
  const double modulus = lead.real() + std::log(std::abs(tail)) - std::log(2.0);
  const double phase = std::remainder(lead.imag() + std::arg(tail) + 0.5 * kPi, 2.0 * kPi);
  return {modulus, phase};
}

// log Gamma, or a pole marker where 1/Gamma vanishes.
struct LogGammaOrPole {
  bool pole;
  Complex value;
};

LogGammaOrPole log_gamma_or_pole(Complex z) {
  if (near_nonpositive_integer(z)) return {true, {}};
  return {false, log_gamma(z)};
}

void require_finite(Complex v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw ConvergenceError(std::string(what) + " produced a non-finite value");
  }
}

// Coefficient G(c) G(b-a) / (G(b) G(c-a)) of the connection formula; zero
// when a reciprocal gamma vanishes.
Complex connection_coefficient(Complex a, Complex b, Complex c) {
  const auto den1 = log_gamma_or_pole(b);
  const auto den2 = log_gamma_or_pole(c - a);
  if (den1.pole || den2.pole) return {0.0, 0.0};
  return std::exp(log_gamma(c) + log_gamma(b - a) - den1.value - den2.value);
}

Complex connection_sum(Complex a, Complex b, Complex c, Complex log_minus_z, Complex inv_z,
                       const Hyp2f1Options& opts) {
  if (near_integer(b - a)) {
    throw PoleError("connection formula is degenerate: gamma - alpha is an integer");
  }
  Complex total{0.0, 0.0};
  const Complex ca = connection_coefficient(a, b, c);
  if (ca != Complex{0.0, 0.0}) {
    total += ca * std::exp(-a * log_minus_z) * hyp2f1_series(a, a - c + 1.0, a - b + 1.0, inv_z, opts);
  }
  const Complex cb = connection_coefficient(b, a, c);
  if (cb != Complex{0.0, 0.0}) {
    total += cb * std::exp(-b * log_minus_z) * hyp2f1_series(b, b - c + 1.0, b - a + 1.0, inv_z, opts);
  }
  return total;
}

}  // namespace

Complex log_gamma(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("log_gamma argument is not finite");
  }
  if (near_nonpositive_integer(z)) {
    std::ostringstream os;
    os << "log_gamma pole at z = " << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    throw PoleError(os.str());
  }
  if (z.real() >= 0.5) return lanczos_log_gamma(z);
  // Reflection with the branch correction that keeps the result on the
  // principal (recurrence-consistent) sheet.
  const double shift = std::copysign(2.0 * kPi, z.imag()) * std::floor(0.5 * z.real() + 0.25);
  return Complex{kLogPi, shift} - log_sinpi(z) - lanczos_log_gamma(1.0 - z);
}

PhaseData compute_phase(const CouplingConfig& cfg) {
  cfg.validate();
  const double h = cfg.ell + 0.5;
  const double nu_sq = 4.0 * cfg.kappa - h * h;
  if (!(nu_sq > 0.0)) {
    std::ostringstream os;
    os << "weak coupling: 4*kappa = " << 4.0 * cfg.kappa << " <= (ell+1/2)^2 = " << h * h
       << ", no bound states";
    throw WeakCouplingError(os.str());
  }
  const double nu = std::sqrt(nu_sq);
  const Complex half_i_nu{0.0, 0.5 * nu};
  const double base = 0.25 + 0.5 * cfg.ell;
  const Complex log_b = log_gamma(Complex{0.0, nu}) - log_gamma(base + half_i_nu) -
                        log_gamma(base + 1.0 + half_i_nu);
  PhaseData out;
  out.nu = nu;
  out.b_modulus = std::exp(log_b.real());
  double arg = std::remainder(log_b.imag(), 2.0 * kPi);
  if (arg <= -kPi) arg += 2.0 * kPi;
  out.b_arg = arg;
  return out;
}

HypergeometricParams reduced_parameters(const CouplingConfig& cfg) {
  cfg.validate();
  const double h = cfg.ell + 0.5;
  const double nu_sq = 4.0 * cfg.kappa - h * h;
  // alpha', gamma' = (1/2 + ell)/2 -+ sqrt((ell+1/2)^2 - 4 kappa)/2
  const Complex root = std::sqrt(Complex{-nu_sq, 0.0});
  const double base = 0.25 + 0.5 * cfg.ell;
  // For nu_sq > 0, root = i*nu, so alpha' = base - i nu/2.
  return {base - 0.5 * root, base + 0.5 * root, Complex{1.5 + cfg.ell, 0.0}};
}

Complex hyp2f1_series(Complex alpha, Complex gamma, Complex delta, Complex z,
                      const Hyp2f1Options& opts) {
  if (near_nonpositive_integer(delta)) throw PoleError("hyp2f1: delta is a non-positive integer");
  if (!(std::abs(z) < 1.0)) throw DomainError("hyp2f1_series requires |z| < 1");
  Complex term{1.0, 0.0};
  Complex sum = term;
  int small_run = 0;
  for (int n = 0; n < opts.max_terms; ++n) {
    const double nd = n;
    term *= (alpha + nd) * (gamma + nd) / ((delta + nd) * (nd + 1.0)) * z;
    sum += term;
    if (term == Complex{0.0, 0.0}) return sum;
    if (std::abs(term) < opts.tol * std::abs(sum)) {
      if (++small_run >= 3) {
        require_finite(sum, "hyp2f1_series");
        return sum;
      }
    } else {
      small_run = 0;
    }
  }
  throw ConvergenceError("hyp2f1_series did not converge within the term cap");
}

Complex hyp2f1(Complex alpha, Complex gamma, Complex delta, Complex z, const Hyp2f1Options& opts) {
  if (near_nonpositive_integer(delta)) throw PoleError("hyp2f1: delta is a non-positive integer");
  if (z == Complex{0.0, 0.0}) return {1.0, 0.0};
  if (std::abs(z) < opts.series_radius) return hyp2f1_series(alpha, gamma, delta, z, opts);

  const Complex pfaff_arg = z / (z - 1.0);
  if (std::abs(pfaff_arg) < opts.series_radius) {
    const Complex prefactor = std::exp(-alpha * std::log(1.0 - z));
    const Complex v = prefactor * hyp2f1_series(alpha, delta - gamma, delta, pfaff_arg, opts);
    require_finite(v, "hyp2f1");
    return v;
  }
  if (std::abs(1.0 / z) < opts.series_radius) {
    const Complex v = connection_sum(alpha, gamma, delta, std::log(-z), 1.0 / z, opts);
    require_finite(v, "hyp2f1");
    return v;
  }
  std::ostringstream os;
  os << "hyp2f1: no convergent regime at z = " << z.real() << (z.imag() < 0 ? "-" : "+")
     << std::abs(z.imag()) << "i";
  throw ConvergenceError(os.str());
}

Complex hyp2f1_large_negative(Complex alpha, Complex gamma, Complex delta, double z,
                              const Hyp2f1Options& opts) {
  if (!(z <= -2.0)) throw DomainError("hyp2f1_large_negative requires real z <= -2");
  if (near_nonpositive_integer(delta)) throw PoleError("hyp2f1: delta is a non-positive integer");
  const Complex v = connection_sum(alpha, gamma, delta, Complex{std::log(-z), 0.0},
                                   Complex{1.0 / z, 0.0}, opts);
  require_finite(v, "hyp2f1_large_negative");
  return v;
}

}  // namespace specfun
}  // namespace gupheun
