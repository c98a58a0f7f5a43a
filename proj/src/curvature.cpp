#include "fuzzygb/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace fuzzygb {
namespace {

// gamma^2 factored once; gamma is its hermitian square root.
struct GammaFactors {
  HermitianEigensystem sys;

  double min_eigenvalue() const { return sys.values.front(); }
  CMatrix root() const { return sys.apply([](double x) { return std::sqrt(x); }); }
  CMatrix inv() const { return sys.apply([](double x) { return 1.0 / std::sqrt(x); }); }
  CMatrix inv_sq() const { return sys.apply([](double x) { return 1.0 / x; }); }
};

GammaFactors factor_gamma(const CMatrix& gamma_sq, const Tolerances& tol) {
  GammaFactors g{hermitian_eigensystem(gamma_sq, tol)};
  const double floor = tol.psd * g.sys.spectral_radius();
  if (!(g.min_eigenvalue() > floor)) {
    throw ConditioningError("gamma^2 is singular or indefinite: smallest eigenvalue " +
                            std::to_string(g.min_eigenvalue()));
  }
  return g;
}

// Tr(AB) without forming AB.
Complex trace_of_product(const CMatrix& a, const CMatrix& b) {
  return a.eigen().cwiseProduct(b.eigen().transpose()).sum();
}

Eigen::MatrixXcd gamma_sq_unchecked(const EmbeddingSet& e) {
  const Index n = e.N();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < e.ambient_dim(); ++i) {
    for (int j = i + 1; j < e.ambient_dim(); ++j) {
      const CMatrix c = commutator(e.X(i), e.X(j));
      acc += (c * c).eigen();
    }
  }
  return -acc / (e.hbar() * e.hbar());
}

// Normal components that equal +-X^j exactly (sphere and torus) reuse the
// coordinate commutators: with N^j = s_j X^j,
// [X^i, N^j][X^j, N^i] = -s_i s_j [X^i, X^j]^2, and the i = j terms vanish.
Eigen::MatrixXcd tr_S_sq_unchecked(const EmbeddingSet& e, const std::vector<CMatrix>& nvec) {
  const int m = e.ambient_dim();
  std::vector<int> sign(static_cast<std::size_t>(m), 0);
  for (int j = 0; j < m; ++j) {
    const CMatrix& nj = nvec[static_cast<std::size_t>(j)];
    if (nj == e.X(j)) {
      sign[static_cast<std::size_t>(j)] = 1;
    } else if (nj == -e.X(j)) {
      sign[static_cast<std::size_t>(j)] = -1;
    }
  }
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(e.N(), e.N());
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      const int si = sign[static_cast<std::size_t>(i)];
      const int sj = sign[static_cast<std::size_t>(j)];
      if (si != 0 && sj != 0) {
        if (i == j) continue;
        const CMatrix c = commutator(e.X(i), e.X(j));
        acc -= static_cast<double>(2 * si * sj) * (c * c).eigen();
        continue;
      }
      const CMatrix cij = commutator(e.X(i), nvec[static_cast<std::size_t>(j)]);
      if (i == j) {
        acc += (cij * cij).eigen();
        continue;
      }
      const CMatrix cji = commutator(e.X(j), nvec[static_cast<std::size_t>(i)]);
      acc += (cij * cji + cji * cij).eigen();
    }
  }
  return -acc / (e.hbar() * e.hbar());
}

CMatrix discrete_K_factored(const EmbeddingSet& e, const GammaFactors& g, const CMatrix& sectional) {
  const auto& normals = e.normals();
  if (normals.empty()) return sectional;
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(e.N(), e.N());
  for (const auto& nvec : normals) sum += tr_S_sq_unchecked(e, nvec);
  const CMatrix inv = g.inv();
  return sectional - Complex(0.5, 0.0) * (inv * CMatrix(std::move(sum)) * inv);
}

CMatrix discrete_K_r3_factored(const EmbeddingSet& e, const GammaFactors& g) {
  // B^j = eps_jkl [X^k, X^l]
  const std::array<CMatrix, 3> b{Complex(2.0, 0.0) * commutator(e.X(1), e.X(2)),
                                 Complex(2.0, 0.0) * commutator(e.X(2), e.X(0)),
                                 Complex(2.0, 0.0) * commutator(e.X(0), e.X(1))};
  std::vector<CMatrix> c;
  c.reserve(9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c.push_back(commutator(e.X(i), b[static_cast<std::size_t>(j)]));

  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(e.N(), e.N());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      s += (c[static_cast<std::size_t>(3 * i + j)] * c[static_cast<std::size_t>(3 * j + i)]).eigen();

  const double h2 = e.hbar() * e.hbar();
  const CMatrix inner(-s / (8.0 * h2 * h2));
  const CMatrix inv_sq = g.inv_sq();
  return inv_sq * inner * inv_sq;
}

CMatrix axisym_K_factored(const AxisymRepresentation& rep, const GammaFactors& g, const Tolerances& tol) {
  const CMatrix f = matfun_diag(rep.Z, rep.ffprime, tol);
  const CMatrix w_dag = dagger(rep.W);
  const CMatrix c = commutator(rep.W, f);
  const Complex half_inv_hbar(0.5 / rep.hbar, 0.0);
  const CMatrix inner = f * f + half_inv_hbar * (c * w_dag + w_dag * c);
  const CMatrix inv_sq = g.inv_sq();
  const CMatrix k_hat = inv_sq * inner * inv_sq;

  const double off = max_offdiagonal(k_hat);
  if (off > tol.diagonal * operator_norm(k_hat)) {
    throw ConsistencyError("axisymmetric K-hat is not diagonal (off-diagonal mass " + std::to_string(off) + ")");
  }
  return k_hat;
}

void require_psd(double min_eigenvalue, double radius, const Tolerances& tol) {
  if (min_eigenvalue < -tol.psd * radius) {
    throw DefinitenessError("gamma^2 has negative eigenvalue " + std::to_string(min_eigenvalue) +
                            "; the embedding is invalid or N is too small");
  }
}

CurvatureReport assemble(Index n, double hbar, CMatrix k_hat, CMatrix gamma_sq, const GammaFactors& g,
                         const Tolerances& tol) {
  const Complex chi = hbar * trace_of_product(g.root(), k_hat);
  const auto k_cert = certify_hermitian(k_hat, tol);
  const auto g_cert = certify_hermitian(gamma_sq, tol);
  return CurvatureReport{n,         hbar,       std::move(k_hat),     std::move(gamma_sq),  CMatrix::zero(n),
                         chi.real(), std::abs(chi.imag()), k_cert.max_asymmetry, g_cert.max_asymmetry,
                         g.min_eigenvalue()};
}

void require_flat_r3(const EmbeddingSet& e) {
  if (e.ambient_dim() != 3) {
    throw ArgumentError("formula needs an embedding in R^3, got ambient dimension " +
                        std::to_string(e.ambient_dim()));
  }
}

}  // namespace

double ClassicalAxisymGeometry::antiderivative(double z) const {
  const double half_slope = 0.5 * fsq.derivative()(z);  // f f'
  return -half_slope / std::sqrt(fsq(z) + half_slope * half_slope);
}

double ClassicalAxisymGeometry::gauss_bonnet_integral(double tolerance) const {
  auto integrand = [this](double z) { return K(z) * sqrt_g(z); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, domain.lower, domain.upper,
                                                                        15, tolerance);
}

CMatrix gamma_sq_from_embedding(const EmbeddingSet& e, const Tolerances& tol) {
  CMatrix gamma_sq(gamma_sq_unchecked(e));
  const auto values = hermitian_eigenvalues(gamma_sq, tol);
  require_psd(values.front(), std::max(std::abs(values.front()), std::abs(values.back())), tol);
  return gamma_sq;
}

CMatrix tr_S_sq_flat(const EmbeddingSet& e, std::size_t normal, const Tolerances&) {
  const auto& normals = e.normals();
  if (normal >= normals.size()) {
    throw ArgumentError("normal index " + std::to_string(normal) + " out of range");
  }
  return CMatrix(tr_S_sq_unchecked(e, normals[normal]));
}

CMatrix discrete_K(const EmbeddingSet& e, const CMatrix& gamma_sq,
                   const std::optional<CMatrix>& ambient_sectional, const Tolerances& tol) {
  const Index n = e.N();
  if (gamma_sq.dim() != n) throw ShapeError("discrete_K: gamma^2 has the wrong dimension");
  const CMatrix sectional = ambient_sectional.value_or(CMatrix::zero(n));
  if (sectional.dim() != n) throw ShapeError("discrete_K: sectional curvature term has the wrong dimension");
  if (e.normals().empty()) return sectional;
  return discrete_K_factored(e, factor_gamma(gamma_sq, tol), sectional);
}

CMatrix discrete_K_r3(const EmbeddingSet& e, const CMatrix& gamma_sq, const Tolerances& tol) {
  require_flat_r3(e);
  if (gamma_sq.dim() != e.N()) throw ShapeError("discrete_K_r3: gamma^2 has the wrong dimension");
  return discrete_K_r3_factored(e, factor_gamma(gamma_sq, tol));
}

CMatrix axisym_K(const AxisymRepresentation& rep, const Tolerances& tol) {
  return axisym_K(rep, gamma_sq_from_embedding(axisym_embedding(rep, tol), tol), tol);
}

CMatrix axisym_K(const AxisymRepresentation& rep, const CMatrix& gamma_sq, const Tolerances& tol) {
  if (gamma_sq.dim() != rep.N) throw ShapeError("axisym_K: gamma^2 has the wrong dimension");
  return axisym_K_factored(rep, factor_gamma(gamma_sq, tol), tol);
}

EulerCharacteristic euler_characteristic(const CMatrix& K_hat, const CMatrix& gamma_sq, double hbar,
                                         const Tolerances& tol) {
  const CMatrix gamma = hermitian_sqrt(gamma_sq, tol);
  const Complex chi = hbar * trace(gamma * K_hat);
  return {chi.real(), std::abs(chi.imag())};
}

ClassicalAxisymGeometry classical_axisym(const SurfaceSpec& spec) {
  if (spec.kind() != SurfaceKind::Axisymmetric) throw ArgumentError("classical_axisym needs an axisymmetric surface");
  const RealPolynomial p = spec.fsq();
  const RealPolynomial p1 = p.derivative();
  const RealPolynomial p2 = p1.derivative();
  const Interval d = spec.domain();

  constexpr int kGrid = 1000;
  for (int k = 1; k < kGrid; ++k) {
    const double z = d.lower + (d.upper - d.lower) * k / kGrid;
    if (!(p(z) > 0.0)) throw DomainError("f^2 is not positive inside the domain at z=" + std::to_string(z));
  }
  // f' -> -inf at the top and +inf at the bottom: f^2 vanishes there with
  // nonzero slope of the right sign.
  if (!(p1(d.lower) > 0.0) || !(p1(d.upper) < 0.0)) {
    throw DomainError("f^2 must vanish with nonzero slope at both ends for spherical topology");
  }

  ClassicalAxisymGeometry geo;
  geo.fsq = p;
  geo.domain = d;
  geo.chi_classical = 2.0;
  // With P = f^2: g = P + P'^2/4 and K = (P'^2/4 - P P''/2) / g^2.
  geo.sqrt_g = [p, p1](double z) {
    const double ffp = 0.5 * p1(z);
    return std::sqrt(p(z) + ffp * ffp);
  };
  geo.K = [p, p1, p2](double z) {
    const double ffp = 0.5 * p1(z);
    const double g = p(z) + ffp * ffp;
    return (ffp * ffp - 0.5 * p(z) * p2(z)) / (g * g);
  };
  return geo;
}

CurvatureReport curvature_report(const EmbeddingSet& e, CurvatureRoute route, const Tolerances& tol) {
  if (route == CurvatureRoute::Axisymmetric) {
    throw ArgumentError("the axisymmetric route needs an AxisymRepresentation");
  }
  if (route == CurvatureRoute::EpsilonR3) require_flat_r3(e);
  CMatrix gamma_sq(gamma_sq_unchecked(e));
  const GammaFactors g = factor_gamma(gamma_sq, tol);
  CMatrix k_hat = route == CurvatureRoute::Normals ? discrete_K_factored(e, g, CMatrix::zero(e.N()))
                                                   : discrete_K_r3_factored(e, g);
  return assemble(e.N(), e.hbar(), std::move(k_hat), std::move(gamma_sq), g, tol);
}

CurvatureReport curvature_report(const AxisymRepresentation& rep, const Tolerances& tol) {
  const EmbeddingSet e = axisym_embedding(rep, tol);
  CMatrix gamma_sq(gamma_sq_unchecked(e));
  const GammaFactors g = factor_gamma(gamma_sq, tol);
  CMatrix k_hat = axisym_K_factored(rep, g, tol);
  return assemble(rep.N, rep.hbar, std::move(k_hat), std::move(gamma_sq), g, tol);
}

}  // namespace fuzzygb
