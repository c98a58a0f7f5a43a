#include "fuzzygb/regularization.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <string>

#include "fuzzygb/surfaces.hpp"

namespace fuzzygb {
namespace {

using std::numbers::pi;

void require_size(Index n, const char* what) {
  if (n < 2) throw DomainError(std::string(what) + ": N must be at least 2, got " + std::to_string(n));
}

Index wrap(long long value, Index n) {
  const long long r = value % n;
  return static_cast<Index>(r < 0 ? r + n : r);
}

// exp(i pi k / N) with k reduced mod 2N so large exponents stay accurate.
Complex half_root_power(long long k, Index n) {
  const long long r = ((k % (2 * n)) + 2 * n) % (2 * n);
  return std::polar(1.0, pi * static_cast<double>(r) / static_cast<double>(n));
}

// Polynomials in the ambient coordinates x, y, z.
using Exponents = std::array<int, 3>;
using Poly3 = std::map<Exponents, double>;

int degree(const Exponents& e) { return e[0] + e[1] + e[2]; }

Poly3 derivative(const Poly3& p, int var) {
  Poly3 out;
  for (const auto& [e, c] : p) {
    if (e[static_cast<std::size_t>(var)] == 0) continue;
    Exponents d = e;
    d[static_cast<std::size_t>(var)] -= 1;
    out[d] += c * e[static_cast<std::size_t>(var)];
  }
  return out;
}

Poly3 multiply(const Poly3& a, const Poly3& b) {
  Poly3 out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) out[{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}] += ca * cb;
  return out;
}

// {p, q} on the unit sphere with {x^i, x^j} = eps_ijk x^k, i.e. x . (grad p x grad q).
Poly3 sphere_bracket(const Poly3& p, const Poly3& q) {
  Poly3 out;
  for (int k = 0; k < 3; ++k) {
    const int i = (k + 1) % 3;
    const int j = (k + 2) % 3;
    Exponents xk{0, 0, 0};
    xk[static_cast<std::size_t>(k)] = 1;
    const Poly3 cross_k = [&] {
      Poly3 a = multiply(derivative(p, i), derivative(q, j));
      for (const auto& [e, c] : multiply(derivative(p, j), derivative(q, i))) a[e] -= c;
      return a;
    }();
    for (const auto& [e, c] : multiply(cross_k, Poly3{{xk, 1.0}})) out[e] += c;
  }
  return out;
}

CMatrix quantize(const Poly3& p, Index n) {
  CMatrix acc = CMatrix::zero(n);
  for (const auto& [e, c] : p) {
    if (c == 0.0) continue;
    acc = acc + Complex(c, 0.0) * sphere_quantize_monomial(e, n);
  }
  return acc;
}

std::vector<Exponents> monomials_up_to(int max_degree) {
  std::vector<Exponents> out;
  for (int a = 0; a <= max_degree; ++a)
    for (int b = 0; a + b <= max_degree; ++b)
      for (int c = 0; a + b + c <= max_degree; ++c) out.push_back({a, b, c});
  return out;
}

}  // namespace

HbarRule HbarRule::explicit_value(double hbar) {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw DomainError("explicit hbar must be a positive finite number");
  }
  return HbarRule(Kind::Explicit, hbar);
}

double HbarRule::value(Index n) const {
  switch (kind_) {
    case Kind::Sphere:
      require_size(n, "sphere hbar rule");
      return 2.0 / std::sqrt(static_cast<double>(n) * static_cast<double>(n) - 1.0);
    case Kind::Torus:
      require_size(n, "torus hbar rule");
      return std::sin(pi / static_cast<double>(n));
    case Kind::Explicit:
      return value_;
  }
  return value_;
}

std::pair<CMatrix, CMatrix> clock_shift(Index n) {
  require_size(n, "clock_shift");
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (Index k = 0; k < n; ++k) {
    g(k, k) = half_root_power(2 * k, n);
    h(k, wrap(k + 1, n)) = 1.0;
  }
  return {CMatrix(std::move(g)), CMatrix(std::move(h))};
}

CMatrix torus_quantize(FourierMode mode, Index n) {
  require_size(n, "torus_quantize");
  // g^{m1} h^{m2} has a single nonzero per row: (k, k + m2) -> w^{m1 k}.
  // Negative powers coincide with powers of g^dagger and h^dagger.
  const Complex phase = half_root_power(static_cast<long long>(mode.m1) * mode.m2, n);
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(n, n);
  for (Index k = 0; k < n; ++k) {
    t(k, wrap(static_cast<long long>(k) + mode.m2, n)) =
        phase * half_root_power(2LL * mode.m1 * static_cast<long long>(k), n);
  }
  return CMatrix(std::move(t));
}

CMatrix torus_quantize(std::span<const std::pair<Complex, FourierMode>> series, Index n) {
  CMatrix acc = CMatrix::zero(n);
  for (const auto& [coeff, mode] : series) acc = acc + coeff * torus_quantize(mode, n);
  return acc;
}

double torus_bracket_defect(FourierMode m, FourierMode n, Index size) {
  const double hbar = HbarRule::torus().value(size);
  const CMatrix lhs = Complex(0.0, -1.0 / hbar) * commutator(torus_quantize(m, size), torus_quantize(n, size));
  const CMatrix rhs = Complex(-2.0 * cross(m, n), 0.0) * torus_quantize(m + n, size);
  return operator_norm(lhs - rhs);
}

double torus_product_defect(FourierMode m, FourierMode n, Index size) {
  return operator_norm(torus_quantize(m, size) * torus_quantize(n, size) - torus_quantize(m + n, size));
}

double torus_trace_defect(FourierMode m, Index size) {
  const double hbar = HbarRule::torus().value(size);
  const double integral = (m.m1 == 0 && m.m2 == 0) ? 2.0 * pi * pi : 0.0;
  return std::abs(trace_functional(torus_quantize(m, size), hbar) - integral);
}

Complex trace_functional(const CMatrix& a, double hbar) { return 2.0 * pi * hbar * trace(a); }

double unitality_defect(const CMatrix& t_of_one) {
  return operator_norm(CMatrix::identity(t_of_one.dim()) - t_of_one);
}

CMatrix pad_nonunital(const CMatrix& a) {
  const Index n = a.dim();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  out.topLeftCorner(n, n) = a.eigen();
  return CMatrix(std::move(out));
}

CMatrix sphere_quantize_monomial(std::array<int, 3> exponents, Index n) {
  if (std::any_of(exponents.begin(), exponents.end(), [](int e) { return e < 0; })) {
    throw ArgumentError("monomial exponents must be nonnegative");
  }
  if (degree(exponents) > 3) throw ArgumentError("sphere monomials are limited to total degree 3");
  const EmbeddingSet sphere = sphere_embedding(n);
  std::vector<int> word;
  for (int i = 0; i < 3; ++i) word.insert(word.end(), static_cast<std::size_t>(exponents[static_cast<std::size_t>(i)]), i);
  if (word.empty()) return CMatrix::identity(n);

  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
  int orderings = 0;
  do {
    Eigen::MatrixXcd product = sphere.X(word.front()).eigen();
    for (std::size_t k = 1; k < word.size(); ++k) product = product * sphere.X(word[k]).eigen();
    sum += product;
    ++orderings;
  } while (std::next_permutation(word.begin(), word.end()));
  return CMatrix(sum / static_cast<double>(orderings));
}

double sphere_monomial_integral(std::array<int, 3> e) {
  if (std::any_of(e.begin(), e.end(), [](int v) { return v % 2 != 0; })) return 0.0;
  const double a = (e[0] + 1) / 2.0;
  const double b = (e[1] + 1) / 2.0;
  const double c = (e[2] + 1) / 2.0;
  return 2.0 * std::tgamma(a) * std::tgamma(b) * std::tgamma(c) / std::tgamma(a + b + c);
}

AxiomDefectReport sphere_axiom_defects(Index n) {
  const double hbar = HbarRule::sphere().value(n);
  AxiomDefectReport report;
  report.N = n;

  std::map<Exponents, CMatrix> images;
  for (const auto& e : monomials_up_to(3)) images.emplace(e, sphere_quantize_monomial(e, n));

  const auto low = monomials_up_to(2);
  for (const auto& p : low) {
    for (const auto& q : low) {
      if (degree(p) + degree(q) > 3 || degree(p) == 0 || degree(q) == 0) continue;
      const Exponents pq{p[0] + q[0], p[1] + q[1], p[2] + q[2]};
      report.product_defect = std::max(
          report.product_defect, operator_norm(images.at(p) * images.at(q) - images.at(pq)));

      const Poly3 bracket = sphere_bracket(Poly3{{p, 1.0}}, Poly3{{q, 1.0}});
      const CMatrix lhs = Complex(0.0, -1.0 / hbar) * commutator(images.at(p), images.at(q));
      report.bracket_defect = std::max(report.bracket_defect, operator_norm(lhs - quantize(bracket, n)));
    }
  }
  for (const auto& [e, image] : images) {
    report.trace_defect = std::max(
        report.trace_defect, std::abs(trace_functional(image, hbar) - sphere_monomial_integral(e)));
  }
  report.unitality_defect = unitality_defect(images.at({0, 0, 0}));
  return report;
}

std::optional<double> loglog_slope(std::span<const double> x, std::span<const double> y,
                                   std::size_t min_points) {
  if (x.size() != y.size()) throw ShapeError("loglog_slope: x and y differ in length");
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (y[k] > 0.0 && x[k] > 0.0 && std::isfinite(y[k])) {
      lx.push_back(std::log(x[k]));
      ly.push_back(std::log(y[k]));
    }
  }
  if (lx.size() < std::max<std::size_t>(min_points, 2)) return std::nullopt;
  const double count = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / count;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

}  // namespace fuzzygb
