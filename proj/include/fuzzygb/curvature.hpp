#pragma once

#include <functional>
#include <optional>

#include "fuzzygb/linalg.hpp"
#include "fuzzygb/surfaces.hpp"

namespace fuzzygb {

/// Which matrix formula produces K-hat.
enum class CurvatureRoute {
  Normals,       // K12 - 1/2 sum_A gamma^-1 (tr S_A^2) gamma^-1, needs normals
  EpsilonR3,     // normal-free double-commutator formula, m = 3
  Axisymmetric,  // diagonal formula in terms of W and (f f')(Z)
};

struct CurvatureReport {
  Index N = 0;
  double hbar = 0.0;
  CMatrix K_hat;
  CMatrix gamma_sq;
  CMatrix ambient_sectional;
  double chi_hat = 0.0;

  // Diagnostics
  double chi_imag_residual = 0.0;
  double K_hermiticity = 0.0;      // ||K - K^dagger||
  double gamma_hermiticity = 0.0;  // ||gamma^2 - (gamma^2)^dagger||
  double gamma_min_eigenvalue = 0.0;
};

struct EulerCharacteristic {
  double value = 0.0;
  double imag_residual = 0.0;
};

/// Classical geometry of x^2 + y^2 = f^2(z), z in [lower, upper], with
/// (z, v) as surface coordinates. All quantities are expressed through f^2
/// and its derivatives so no square root of f is differentiated.
struct ClassicalAxisymGeometry {
  RealPolynomial fsq;
  Interval domain;
  double chi_classical = 0.0;
  std::function<double(double)> K;       // Gauss curvature -f'' / (f (1 + f'^2)^2)
  std::function<double(double)> sqrt_g;  // f sqrt(1 + f'^2)

  /// -f'/sqrt(1 + f'^2) = -(f f') / sqrt(f^2 + (f f')^2)
  double antiderivative(double z) const;

  /// (1/2pi) integral of K sqrt(g) dz dv by adaptive Gauss-Kronrod.
  double gauss_bonnet_integral(double tolerance = 1e-12) const;
};

/// -(1/hbar^2) sum_{i<j} [X^i, X^j]^2
CMatrix gamma_sq_from_embedding(const EmbeddingSet& e, const Tolerances& tol = {});

/// -(1/hbar^2) sum_{i,j} [X^i, N_A^j][X^j, N_A^i]
CMatrix tr_S_sq_flat(const EmbeddingSet& e, std::size_t normal, const Tolerances& tol = {});

/// K12 - 1/2 sum_A gamma^-1 (tr S_A^2) gamma^-1 with gamma the hermitian
/// square root of gamma_sq. The sectional term defaults to zero.
CMatrix discrete_K(const EmbeddingSet& e, const CMatrix& gamma_sq,
                   const std::optional<CMatrix>& ambient_sectional = std::nullopt,
                   const Tolerances& tol = {});

/// -(1/8 hbar^4) eps_jkl eps_ipq gamma^-2 [X^i,[X^k,X^l]] [X^j,[X^p,X^q]] gamma^-2
CMatrix discrete_K_r3(const EmbeddingSet& e, const CMatrix& gamma_sq, const Tolerances& tol = {});

/// gamma^-2 { (ff')^2(Z) + (1/2hbar)[W, ff'(Z)] W^dagger + (1/2hbar) W^dagger [W, ff'(Z)] } gamma^-2
/// with gamma^2 taken from the embedding. Raises ConsistencyError when the
/// result is not diagonal.
CMatrix axisym_K(const AxisymRepresentation& rep, const Tolerances& tol = {});
CMatrix axisym_K(const AxisymRepresentation& rep, const CMatrix& gamma_sq, const Tolerances& tol = {});

/// hbar Tr(sqrt(gamma_sq) K_hat)
EulerCharacteristic euler_characteristic(const CMatrix& K_hat, const CMatrix& gamma_sq, double hbar,
                                         const Tolerances& tol = {});

ClassicalAxisymGeometry classical_axisym(const SurfaceSpec& spec);

CurvatureReport curvature_report(const EmbeddingSet& e, CurvatureRoute route, const Tolerances& tol = {});
CurvatureReport curvature_report(const AxisymRepresentation& rep, const Tolerances& tol = {});

}  // namespace fuzzygb
