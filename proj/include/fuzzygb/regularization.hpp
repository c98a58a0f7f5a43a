#pragma once

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fuzzygb/linalg.hpp"

namespace fuzzygb {

/// How the deformation parameter hbar depends on the matrix size N.
class HbarRule {
 public:
  enum class Kind { Sphere, Torus, Explicit };

  static HbarRule sphere() { return HbarRule(Kind::Sphere, 0.0); }
  static HbarRule torus() { return HbarRule(Kind::Torus, 0.0); }
  static HbarRule explicit_value(double hbar);

  Kind kind() const { return kind_; }

  // sphere: 2 / sqrt(N^2 - 1); torus: sin(pi / N); explicit: the stored value.
  double value(Index n) const;

 private:
  HbarRule(Kind kind, double v) : kind_(kind), value_(v) {}
  Kind kind_;
  double value_;
};

/// Integer wave vector of the torus Fourier mode exp(i(m1 phi1 + m2 phi2)).
struct FourierMode {
  int m1 = 0;
  int m2 = 0;

  friend bool operator==(const FourierMode&, const FourierMode&) = default;
  friend FourierMode operator+(FourierMode a, FourierMode b) { return {a.m1 + b.m1, a.m2 + b.m2}; }
};

// m1 * n2 - m2 * n1
inline int cross(FourierMode m, FourierMode n) { return m.m1 * n.m2 - m.m2 * n.m1; }

struct AxiomDefectReport {
  Index N = 0;
  double product_defect = 0.0;
  double bracket_defect = 0.0;
  double trace_defect = 0.0;
  double unitality_defect = 0.0;
};

/// Clock matrix g = diag(1, w, ..., w^{N-1}) and cyclic shift h with
/// w = exp(2 pi i / N). They satisfy h g = w g h.
std::pair<CMatrix, CMatrix> clock_shift(Index n);

/// w^{m1 m2 / 2} g^{m1} h^{m2} with w^{1/2} = exp(i pi / N).
CMatrix torus_quantize(FourierMode mode, Index n);

/// Linear extension of torus_quantize to a finite Fourier series.
CMatrix torus_quantize(std::span<const std::pair<Complex, FourierMode>> series, Index n);

/// ||(1/i hbar)[T(Y_m), T(Y_n)] - T({Y_m, Y_n})|| with hbar = sin(pi/N) and
/// {Y_m, Y_n} = -2 (m x n) Y_{m+n}.
double torus_bracket_defect(FourierMode m, FourierMode n, Index size);

/// ||T(Y_m) T(Y_n) - T(Y_{m+n})||
double torus_product_defect(FourierMode m, FourierMode n, Index size);

/// |2 pi hbar Tr T(Y_m) - integral of Y_m over the torus|, with the torus
/// measure (1/2) dphi1 dphi2.
double torus_trace_defect(FourierMode m, Index size);

/// 2 pi hbar Tr(a)
Complex trace_functional(const CMatrix& a, double hbar);

/// ||1 - T(1)||
double unitality_defect(const CMatrix& t_of_one);

/// Embeds `a` in the top-left block of an (N+1)x(N+1) zero matrix.
CMatrix pad_nonunital(const CMatrix& a);

/// Weyl-symmetrized image of x^a y^b z^c on the round fuzzy sphere: the
/// average over all distinct orderings of the word X^a Y^b Z^c, with
/// X^i = 2 S^i / sqrt(N^2 - 1). Total degree is limited to 3.
CMatrix sphere_quantize_monomial(std::array<int, 3> exponents, Index n);

/// Integral of x^a y^b z^c over the unit sphere with the area measure.
double sphere_monomial_integral(std::array<int, 3> exponents);

/// Axiom meters on the round fuzzy sphere over coordinate monomials up to
/// total degree 3 (products only up to total degree 3).
AxiomDefectReport sphere_axiom_defects(Index n);

/// Least-squares slope of log(y) against log(x), skipping points with
/// y <= 0. Empty when fewer than `min_points` usable points remain.
std::optional<double> loglog_slope(std::span<const double> x, std::span<const double> y,
                                   std::size_t min_points = 2);

}  // namespace fuzzygb
