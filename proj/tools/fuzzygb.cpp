// fuzzygb: discrete curvature and Euler characteristic of fuzzy surfaces.
//
//   fuzzygb sphere --n 2,10,100 [--out FILE] [--format csv|json]
//   fuzzygb torus --n 4,8,16
//   fuzzygb axisym --f2 "1,0,0,0,-1" --n 8,16,32 [--hbar rule|calibrate|VALUE] [--domain "z-,z+"]
//   fuzzygb check-axioms --n 8,16,32 --modes 3
//
// Exit codes: 0 success, 2 configuration error, 3 numeric/admissibility failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fuzzygb/sweep.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

fuzzygb::Tolerances tolerances_from_env() {
  const char* raw = std::getenv("FUZZYGB_TOL_SCALE");
  if (raw == nullptr || *raw == '\0') return {};
  char* end = nullptr;
  const double scale = std::strtod(raw, &end);
  if (*end != '\0' || !(scale > 0.0) || !std::isfinite(scale)) {
    throw fuzzygb::ConfigError(std::string("FUZZYGB_TOL_SCALE must be a positive number, got '") + raw + "'");
  }
  return fuzzygb::Tolerances{}.scaled(scale);
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw fuzzygb::ConfigError("cannot open output file '" + path + "'");
  out << text;
}

std::optional<fuzzygb::Interval> parse_domain(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw fuzzygb::ConfigError("--domain expects \"z-,z+\"");
  try {
    return fuzzygb::Interval{std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw fuzzygb::ConfigError("cannot parse --domain '" + text + "'");
  }
}

struct CommonOptions {
  std::vector<int> n_list;
  std::string out;
  std::string format = "csv";
  bool no_timing = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--n", opts.n_list, "Comma-separated ascending matrix sizes")->required()->delimiter(',');
  cmd->add_option("--out", opts.out, "Output file (default: stdout)");
  cmd->add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--no-timing", opts.no_timing, "Write runtime_ms as 0 for byte-identical reruns");
}

int run_sweep_command(fuzzygb::SweepConfig cfg, const CommonOptions& opts) {
  cfg.n_list = opts.n_list;
  cfg.format = opts.format == "json" ? fuzzygb::OutputFormat::Json : fuzzygb::OutputFormat::Csv;
  cfg.output_path = opts.out;
  cfg.record_runtime = !opts.no_timing;

  const auto table = fuzzygb::run_sweep(cfg, tolerances_from_env());
  write_output(cfg.format == fuzzygb::OutputFormat::Json ? fuzzygb::to_json(table) : fuzzygb::to_csv(table),
               cfg.output_path);
  int code = 0;
  for (const auto& f : table.failures) {
    std::cerr << "N=" << f.N << ": " << f.reason << '\n';
    code = std::max(code, f.exit_code);
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete Gauss-Bonnet checks for fuzzy surfaces"};
  app.require_subcommand(1);

  CommonOptions sphere_opts;
  auto* sphere = app.add_subcommand("sphere", "Round fuzzy sphere from su(2)");
  add_common(sphere, sphere_opts);

  CommonOptions torus_opts;
  auto* torus = app.add_subcommand("torus", "Fuzzy Clifford torus from clock and shift matrices");
  add_common(torus, torus_opts);

  CommonOptions axisym_opts;
  std::string f2;
  std::string domain;
  std::string hbar = "rule";
  auto* axisym = app.add_subcommand("axisym", "Axially symmetric surface x^2 + y^2 = f^2(z)");
  add_common(axisym, axisym_opts);
  axisym->add_option("--f2", f2, "Ascending coefficients of f^2, e.g. \"1,0,0,0,-1\"")->required();
  axisym->add_option("--domain", domain, "z-,z+ (default: the two real roots of f^2)");
  axisym->add_option("--hbar", hbar, "rule | calibrate | positive value");

  std::vector<int> axiom_n;
  int modes = 3;
  std::string axiom_out;
  std::string axiom_format = "csv";
  auto* axioms = app.add_subcommand("check-axioms", "Torus regularization axiom defects");
  axioms->add_option("--n", axiom_n, "Comma-separated matrix sizes")->required()->delimiter(',');
  axioms->add_option("--modes", modes, "Fourier mode cutoff |m1|,|m2| <= modes");
  axioms->add_option("--out", axiom_out, "Output file (default: stdout)");
  axioms->add_option("--format", axiom_format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sphere) {
      fuzzygb::SweepConfig cfg;
      cfg.surface = fuzzygb::SurfaceSpec::round_sphere();
      return run_sweep_command(cfg, sphere_opts);
    }
    if (*torus) {
      fuzzygb::SweepConfig cfg;
      cfg.surface = fuzzygb::SurfaceSpec::clifford_torus();
      return run_sweep_command(cfg, torus_opts);
    }
    if (*axisym) {
      fuzzygb::SweepConfig cfg;
      try {
        cfg.surface = fuzzygb::SurfaceSpec::axisymmetric(fuzzygb::RealPolynomial::parse(f2), parse_domain(domain));
      } catch (const fuzzygb::DomainError& e) {
        throw fuzzygb::ConfigError(e.what());
      }
      cfg.hbar = fuzzygb::HbarChoice::parse(hbar);
      return run_sweep_command(cfg, axisym_opts);
    }
    if (*axioms) {
      const auto result = fuzzygb::run_axiom_check(axiom_n, modes);
      write_output(axiom_format == "json" ? fuzzygb::to_json(result) : fuzzygb::to_csv(result), axiom_out);
      return 0;
    }
  } catch (const fuzzygb::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const fuzzygb::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return 0;
}
