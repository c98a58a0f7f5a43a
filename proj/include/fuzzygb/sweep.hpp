#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzygb/curvature.hpp"
#include "fuzzygb/regularization.hpp"
#include "fuzzygb/surfaces.hpp"

namespace fuzzygb {

enum class HbarMode { Rule, Calibrate, Explicit };

struct HbarChoice {
  HbarMode mode = HbarMode::Rule;
  double value = 0.0;  // used by Explicit only

  /// "rule", "calibrate" or a positive number.
  static HbarChoice parse(std::string_view text);
};

enum class OutputFormat { Csv, Json };

struct SweepConfig {
  SurfaceSpec surface = SurfaceSpec::round_sphere();
  std::vector<int> n_list;
  HbarChoice hbar;
  OutputFormat format = OutputFormat::Csv;
  std::string output_path;  // empty means stdout
  bool record_runtime = true;

  /// Throws ConfigError on an empty or unsorted N list, N < 2, or an hbar
  /// mode other than `rule` for the sphere and torus.
  void validate() const;
};

struct SweepRow {
  int N = 0;
  double hbar = 0.0;
  double chi_hat = 0.0;
  double abs_err = 0.0;
  double runtime_ms = 0.0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct RowDiagnostics {
  int N = 0;
  double K_hermiticity = 0.0;
  double gamma_hermiticity = 0.0;
  double gamma_min_eigenvalue = 0.0;
  double chi_imag_residual = 0.0;
};

struct RowFailure {
  int N = 0;
  std::string reason;
  int exit_code = 3;
};

/// Rows are the successful N values, sorted. Failed N values are listed in
/// `failures` and take no part in the fit.
struct ConvergenceTable {
  std::string surface;
  double chi_classical = 0.0;
  std::vector<SweepRow> rows;
  std::optional<double> fitted_rate;
  std::vector<RowDiagnostics> diagnostics;
  std::vector<RowFailure> failures;

  bool all_ok() const { return failures.empty(); }
};

/// Slope of log|abs_err| against log N over rows with nonzero error; needs
/// at least three such rows.
std::optional<double> fit_rate(std::span<const SweepRow> rows);

ConvergenceTable run_sweep(const SweepConfig& cfg, const Tolerances& tol = {});

/// Columns N,hbar,chi_hat,abs_err,runtime_ms; 17 significant digits.
std::string to_csv(const ConvergenceTable& table);
ConvergenceTable parse_csv(std::string_view text);
std::string to_json(const ConvergenceTable& table);

struct AxiomCheckResult {
  int mode_cutoff = 0;
  std::vector<AxiomDefectReport> reports;
  std::optional<double> bracket_rate;
  std::optional<double> product_rate;
  std::optional<double> trace_rate;
};

/// Torus axiom meters per N, maximized over Fourier modes with
/// |m1|, |m2| <= mode_cutoff.
AxiomCheckResult run_axiom_check(std::span<const int> n_list, int mode_cutoff);

std::string to_csv(const AxiomCheckResult& result);
std::string to_json(const AxiomCheckResult& result);

}  // namespace fuzzygb
