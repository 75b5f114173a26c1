#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

namespace gupheun::cli {

enum class Command { scan, roots, spectrum, wavefunction, compare, critical };
enum class Format { csv, json };

std::string to_string(Command c);

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitNumericalFailure = 3;

struct RunConfig {
  Command command = Command::scan;
  double kappa = 2.0;
  int ell = 0;
  double omega_min = 1e-5;
  double omega_max = 0.45;
  int points = 600;
  double tol = 1e-8;
  double validity = 0.05;
  std::string output_path;  ///< empty: gupheun_<command>.<format>
  Format format = Format::csv;

  double omega = 0.0;          ///< wavefunction energy
  int n_max = 60;              ///< closed-form levels
  std::string method = "closed_form";  ///< spectrum: closed_form | hypergeometric_condition
  std::optional<double> kappa_lo;      ///< critical bracket; defaults scale with (ell+1/2)^2/4
  std::optional<double> kappa_hi;
  double radius_factor = 1.0;
  std::string units_path;
  bool gnuplot = false;

  /// Throws DomainError when a field violates its range.
  void validate() const;
  [[nodiscard]] std::string resolved_output_path() const;
};

/// Fields present in j overwrite those in cfg. Keys mirror RunConfig member
/// names; "command" and "format" take their string spellings.
void apply_json(RunConfig& cfg, const nlohmann::json& j);

/// Default tolerance: GUP_HEUN_TOL if set and positive, else 1e-8.
double default_tolerance();

/// Parses argv. On success fills cfg and returns nullopt; otherwise returns
/// the process exit code (0 for --help, 2 for bad input) after printing to err.
std::optional<int> parse_args(int argc, const char* const* argv, RunConfig& cfg, std::ostream& out,
                              std::ostream& err);

/// Executes cfg, writes the artifact file(s) and a one-line key=value summary
/// to out. Returns 0, 2 (invalid config) or 3 (numerical failure).
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace gupheun::cli
