#include "fuzzygb/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

#include "json.hpp"

namespace fuzzygb {
namespace {

using json = nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& token) {
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (token.empty() || end != token.c_str() + token.size()) throw ConfigError("bad number '" + token + "' in CSV");
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::string surface_label(const SurfaceSpec& s) {
  switch (s.kind()) {
    case SurfaceKind::RoundSphere:
      return "sphere";
    case SurfaceKind::CliffordTorus:
      return "torus";
    case SurfaceKind::Axisymmetric:
      return "axisym f2=" + s.fsq().to_string();
  }
  return "unknown";
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

HbarChoice HbarChoice::parse(std::string_view text) {
  if (text == "rule") return {HbarMode::Rule, 0.0};
  if (text == "calibrate") return {HbarMode::Calibrate, 0.0};
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError("--hbar expects 'rule', 'calibrate' or a positive number, got '" + s + "'");
  }
  return {HbarMode::Explicit, v};
}

void SweepConfig::validate() const {
  if (n_list.empty()) throw ConfigError("N list is empty");
  for (std::size_t k = 0; k < n_list.size(); ++k) {
    if (n_list[k] < 2) throw ConfigError("every N must be at least 2, got " + std::to_string(n_list[k]));
    if (k > 0 && n_list[k] <= n_list[k - 1]) throw ConfigError("N list must be strictly ascending");
  }
  if (surface.kind() != SurfaceKind::Axisymmetric && hbar.mode != HbarMode::Rule) {
    throw ConfigError("the sphere and torus fix hbar by their own rule");
  }
}

std::optional<double> fit_rate(std::span<const SweepRow> rows) {
  std::vector<double> n;
  std::vector<double> err;
  for (const auto& r : rows) {
    n.push_back(r.N);
    err.push_back(r.abs_err);
  }
  return loglog_slope(n, err, 3);
}

ConvergenceTable run_sweep(const SweepConfig& cfg, const Tolerances& tol) {
  cfg.validate();
  ConvergenceTable table;
  table.surface = surface_label(cfg.surface);
  switch (cfg.surface.kind()) {
    case SurfaceKind::RoundSphere:
      table.chi_classical = 2.0;
      break;
    case SurfaceKind::CliffordTorus:
      table.chi_classical = 0.0;
      break;
    case SurfaceKind::Axisymmetric:
      table.chi_classical = classical_axisym(cfg.surface).chi_classical;
      break;
  }

  for (int n : cfg.n_list) {
    const auto start = std::chrono::steady_clock::now();
    try {
      CurvatureReport report = [&] {
        switch (cfg.surface.kind()) {
          case SurfaceKind::RoundSphere:
            return curvature_report(sphere_embedding(n), CurvatureRoute::Normals, tol);
          case SurfaceKind::CliffordTorus:
            return curvature_report(torus_embedding(n), CurvatureRoute::Normals, tol);
          case SurfaceKind::Axisymmetric:
            break;
        }
        double hbar = 0.0;
        switch (cfg.hbar.mode) {
          case HbarMode::Rule:
            hbar = HbarRule::sphere().value(n);
            break;
          case HbarMode::Calibrate:
            hbar = calibrate_hbar(cfg.surface, n, tol);
            break;
          case HbarMode::Explicit:
            hbar = cfg.hbar.value;
            break;
        }
        return curvature_report(axisym_representation(cfg.surface, n, hbar, tol), tol);
      }();
      const auto stop = std::chrono::steady_clock::now();
      const double ms =
          cfg.record_runtime ? std::chrono::duration<double, std::milli>(stop - start).count() : 0.0;
      table.rows.push_back(
          {n, report.hbar, report.chi_hat, std::abs(report.chi_hat - table.chi_classical), ms});
      table.diagnostics.push_back({n, report.K_hermiticity, report.gamma_hermiticity,
                                   report.gamma_min_eigenvalue, report.chi_imag_residual});
    } catch (const ConfigError& ex) {
      table.failures.push_back({n, ex.what(), 2});
    } catch (const Error& ex) {
      table.failures.push_back({n, ex.what(), 3});
    }
  }
  table.fitted_rate = fit_rate(table.rows);
  return table;
}

std::string to_csv(const ConvergenceTable& table) {
  std::string out = "N,hbar,chi_hat,abs_err,runtime_ms\n";
  for (const auto& r : table.rows) {
    out += std::to_string(r.N) + ',' + fmt17(r.hbar) + ',' + fmt17(r.chi_hat) + ',' + fmt17(r.abs_err) + ',' +
           fmt17(r.runtime_ms) + '\n';
  }
  return out;
}

ConvergenceTable parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "N,hbar,chi_hat,abs_err,runtime_ms") {
    throw ConfigError("CSV header must be N,hbar,chi_hat,abs_err,runtime_ms");
  }
  ConvergenceTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 5) throw ConfigError("CSV row needs 5 fields: '" + line + "'");
    table.rows.push_back({static_cast<int>(parse_double(f[0])), parse_double(f[1]), parse_double(f[2]),
                          parse_double(f[3]), parse_double(f[4])});
  }
  table.fitted_rate = fit_rate(table.rows);
  return table;
}

std::string to_json(const ConvergenceTable& table) {
  json doc;
  doc["surface"] = table.surface;
  doc["chi_classical"] = table.chi_classical;
  json rows = json::array();
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    const auto& r = table.rows[k];
    const auto& d = table.diagnostics.at(k);
    rows.push_back({{"N", r.N},
                    {"hbar", r.hbar},
                    {"chi_hat", r.chi_hat},
                    {"abs_err", r.abs_err},
                    {"runtime_ms", r.runtime_ms},
                    {"diagnostics",
                     {{"K_hermiticity", d.K_hermiticity},
                      {"gamma_sq_hermiticity", d.gamma_hermiticity},
                      {"gamma_sq_min_eigenvalue", d.gamma_min_eigenvalue},
                      {"chi_imag_residual", d.chi_imag_residual}}}});
  }
  doc["rows"] = std::move(rows);
  doc["fitted_rate"] = optional_number(table.fitted_rate);
  json failures = json::array();
  for (const auto& f : table.failures) failures.push_back({{"N", f.N}, {"reason", f.reason}});
  doc["failures"] = std::move(failures);
  return doc.dump(2) + "\n";
}

AxiomCheckResult run_axiom_check(std::span<const int> n_list, int mode_cutoff) {
  if (mode_cutoff < 0) throw ConfigError("mode cutoff must be nonnegative");
  if (n_list.empty()) throw ConfigError("N list is empty");
  std::vector<FourierMode> modes;
  for (int a = -mode_cutoff; a <= mode_cutoff; ++a)
    for (int b = -mode_cutoff; b <= mode_cutoff; ++b) modes.push_back({a, b});

  AxiomCheckResult result;
  result.mode_cutoff = mode_cutoff;
  for (int n : n_list) {
    if (n < 2) throw ConfigError("every N must be at least 2, got " + std::to_string(n));
    AxiomDefectReport rep;
    rep.N = n;
    const double hbar = HbarRule::torus().value(n);

    std::vector<CMatrix> images;
    for (const auto& m : modes) images.push_back(torus_quantize(m, n));
    std::map<std::pair<int, int>, CMatrix> sums;
    auto image_of = [&](FourierMode m) -> const CMatrix& {
      auto it = sums.find({m.m1, m.m2});
      if (it == sums.end()) it = sums.emplace(std::pair{m.m1, m.m2}, torus_quantize(m, n)).first;
      return it->second;
    };

    // The bracket defect is antisymmetric in (m, n), so unordered pairs suffice.
    for (std::size_t i = 0; i < modes.size(); ++i) {
      for (std::size_t j = i; j < modes.size(); ++j) {
        const CMatrix& tm = images[i];
        const CMatrix& tn = images[j];
        const CMatrix& tsum = image_of(modes[i] + modes[j]);
        const CMatrix product = tm * tn;
        rep.product_defect = std::max(rep.product_defect, operator_norm(product - tsum));
        const CMatrix bracket = Complex(0.0, -1.0 / hbar) * (product - tn * tm);
        const CMatrix expected = Complex(-2.0 * cross(modes[i], modes[j]), 0.0) * tsum;
        rep.bracket_defect = std::max(rep.bracket_defect, operator_norm(bracket - expected));
      }
      rep.trace_defect = std::max(rep.trace_defect, torus_trace_defect(modes[i], n));
    }
    rep.unitality_defect = unitality_defect(torus_quantize({0, 0}, n));
    result.reports.push_back(rep);
  }

  std::vector<double> ns;
  std::vector<double> bracket;
  std::vector<double> product;
  std::vector<double> trace;
  for (const auto& r : result.reports) {
    ns.push_back(static_cast<double>(r.N));
    bracket.push_back(r.bracket_defect);
    product.push_back(r.product_defect);
    trace.push_back(r.trace_defect);
  }
  result.bracket_rate = loglog_slope(ns, bracket, 3);
  result.product_rate = loglog_slope(ns, product, 3);
  result.trace_rate = loglog_slope(ns, trace, 3);
  return result;
}

std::string to_csv(const AxiomCheckResult& result) {
  std::string out = "N,product_defect,bracket_defect,trace_defect,unitality_defect\n";
  for (const auto& r : result.reports) {
    out += std::to_string(r.N) + ',' + fmt17(r.product_defect) + ',' + fmt17(r.bracket_defect) + ',' +
           fmt17(r.trace_defect) + ',' + fmt17(r.unitality_defect) + '\n';
  }
  return out;
}

std::string to_json(const AxiomCheckResult& result) {
  json doc;
  doc["surface"] = "torus";
  doc["mode_cutoff"] = result.mode_cutoff;
  json rows = json::array();
  for (const auto& r : result.reports) {
    rows.push_back({{"N", r.N},
                    {"product_defect", r.product_defect},
                    {"bracket_defect", r.bracket_defect},
                    {"trace_defect", r.trace_defect},
                    {"unitality_defect", r.unitality_defect}});
  }
  doc["rows"] = std::move(rows);
  doc["rates"] = {{"bracket", optional_number(result.bracket_rate)},
                  {"product", optional_number(result.product_rate)},
                  {"trace", optional_number(result.trace_rate)}};
  return doc.dump(2) + "\n";
}

}  // namespace fuzzygb
