#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fuzzygb/curvature.hpp"
#include "generators.hpp"

using namespace fuzzygb;
using std::numbers::pi;

namespace {

const RealPolynomial kSphere{1.0, 0.0, -1.0};
const RealPolynomial kQuartic{1.0, 0.0, 0.0, 0.0, -1.0};

double dist(const CMatrix& a, const CMatrix& b) { return operator_norm(a - b); }

int levi_civita(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  return ((a + 1) % 3 == b) ? 1 : -1;
}

// Every (i,j,k,l,p,q) in {0,1,2}^6, including the zero terms.
CMatrix epsilon_bruteforce(const EmbeddingSet& e, const CMatrix& gamma_sq) {
  const CMatrix inv_sq = hermitian_eigensystem(gamma_sq).apply([](double x) { return 1.0 / x; });
  CMatrix acc = CMatrix::zero(e.N());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q) {
              const int sign = levi_civita(j, k, l) * levi_civita(i, p, q);
              const CMatrix term = commutator(e.X(i), commutator(e.X(k), e.X(l))) *
                                   commutator(e.X(j), commutator(e.X(p), e.X(q)));
              acc = acc + Complex(sign, 0) * term;
            }
  const double h4 = std::pow(e.hbar(), 4);
  return Complex(-1.0 / (8.0 * h4), 0) * (inv_sq * acc * inv_sq);
}

double leading_K(double z) {
  const double d = 1 - std::pow(z, 4) + 4 * std::pow(z, 6);
  return (6 * z * z - 2 * std::pow(z, 6)) / (d * d);
}

}  // namespace

TEST_CASE("gamma^2 of the three families") {
  for (Index n : {2, 5, 16}) {
    CHECK(dist(gamma_sq_from_embedding(sphere_embedding(n)), CMatrix::identity(n)) < 1e-12);
    CHECK(dist(gamma_sq_from_embedding(torus_embedding(n)), CMatrix::identity(n)) < 1e-12);
    const auto rep = axisym_representation(SurfaceSpec::axisymmetric(kQuartic), n, HbarRule::sphere().value(n));
    const CMatrix expected = fhat_squared(rep) + matfun_diag(rep.Z, rep.ffprime * rep.ffprime);
    CHECK(dist(gamma_sq_from_embedding(axisym_embedding(rep)), expected) < 1e-12);
  }
}

TEST_CASE("commuting coordinates give zero gamma^2") {
  const CMatrix d = CMatrix::diagonal(std::vector<double>{1.0, -0.5, 2.0});
  CHECK(gamma_sq_from_embedding(EmbeddingSet({d, d * d, CMatrix::identity(3)}, 1.0)) == CMatrix::zero(3));
}

TEST_CASE("tr S^2 examples") {
  for (Index n : {3, 8, 21}) {
    const auto t = torus_embedding(n);
    CHECK(dist(Complex(-0.5, 0) * tr_S_sq_flat(t, 0), CMatrix::identity(n)) < 1e-12);
    CHECK(dist(Complex(-0.5, 0) * tr_S_sq_flat(t, 1), -CMatrix::identity(n)) < 1e-12);
    const auto s = sphere_embedding(n);
    CHECK(dist(tr_S_sq_flat(s, 0), Complex(-2, 0) * CMatrix::identity(n)) < 1e-12);
    CHECK(certify_hermitian(tr_S_sq_flat(t, 0)).passes());
  }
  const auto rep = axisym_representation(SurfaceSpec::axisymmetric(kQuartic), 4, 0.3);
  CHECK_THROWS_AS(tr_S_sq_flat(axisym_embedding(rep), 0), ArgumentError);
  CHECK_THROWS_AS(tr_S_sq_flat(sphere_embedding(4), 1), ArgumentError);
}

TEST_CASE("discrete K examples") {
  for (Index n : {2, 6, 32}) {
    const auto s = sphere_embedding(n);
    CHECK(dist(discrete_K(s, gamma_sq_from_embedding(s)), CMatrix::identity(n)) < 1e-11);
    const auto t = torus_embedding(n);
    CHECK(operator_norm(discrete_K(t, gamma_sq_from_embedding(t))) < 1e-11);
  }
  const CMatrix i3 = CMatrix::identity(3);
  const EmbeddingSet flat({i3, i3}, 0.5, EmbeddingSet::NormalList{});
  CHECK(discrete_K(flat, i3) == CMatrix::zero(3));
  const CMatrix sectional = CMatrix::diagonal(std::vector<double>{1.0, 2.0, 3.0});
  CHECK(discrete_K(flat, i3, sectional) == sectional);
}

TEST_CASE("discrete K errors") {
  const auto s = sphere_embedding(4);
  CHECK_THROWS_AS(discrete_K(s, CMatrix::identity(3)), ShapeError);
  CHECK_THROWS_AS(discrete_K(s, CMatrix::identity(4), CMatrix::identity(3)), ShapeError);
  CHECK_THROWS_AS(discrete_K(s, CMatrix::diagonal(std::vector<double>{1.0, 1.0, 1.0, 0.0})), ConditioningError);
  CHECK_THROWS_AS(discrete_K_r3(s, CMatrix::diagonal(std::vector<double>{1.0, 1.0, 1.0, 0.0})), ConditioningError);
  CHECK_THROWS_AS(discrete_K_r3(torus_embedding(4), CMatrix::identity(4)), ArgumentError);
  CHECK_THROWS_AS(discrete_K_r3(s, CMatrix::identity(5)), ShapeError);
}

TEST_CASE("epsilon formula matches the brute-force contraction") {
  for (Index n : {2, 3, 4, 5}) {
    const auto s = sphere_embedding(n);
    const CMatrix g = gamma_sq_from_embedding(s);
    const CMatrix k = discrete_K_r3(s, g);
    CHECK(dist(k, epsilon_bruteforce(s, g)) < 1e-11);
    CHECK(dist(k, CMatrix::identity(n)) < 1e-12);
    CHECK(dist(k, discrete_K(s, g)) < 1e-12);
  }
  gen::Engine rng(401);
  for (Index n : {4, 6}) {
    const auto rep = axisym_representation(SurfaceSpec::axisymmetric(kQuartic), n, HbarRule::sphere().value(n));
    const auto e = axisym_embedding(rep).conjugated(gen::unitary(rng, n));
    const CMatrix g = gamma_sq_from_embedding(e);
    const CMatrix k = discrete_K_r3(e, g);
    CHECK(dist(k, epsilon_bruteforce(e, g)) < 1e-10 * operator_norm(k));
  }
}

TEST_CASE("axisymmetric K is diagonal and agrees with the epsilon formula") {
  for (const auto& p : {kSphere, kQuartic}) {
    for (Index n : {3, 16, 32, 64}) {
      const auto rep = axisym_representation(SurfaceSpec::axisymmetric(p), n, HbarRule::sphere().value(n));
      const auto e = axisym_embedding(rep);
      const CMatrix g = gamma_sq_from_embedding(e);
      const CMatrix k = axisym_K(rep, g);
      CHECK(max_offdiagonal(k) == 0.0);
      CHECK(certify_hermitian(k).passes());
      CHECK(dist(k, discrete_K_r3(e, g)) <= 1e-12 * operator_norm(k));
    }
  }
  // Single-argument overload builds gamma^2 itself.
  const auto rep = axisym_representation(SurfaceSpec::axisymmetric(kQuartic), 10, HbarRule::sphere().value(10));
  CHECK(axisym_K(rep) == axisym_K(rep, gamma_sq_from_embedding(axisym_embedding(rep))));
  CHECK_THROWS_AS(axisym_K(rep, CMatrix::identity(9)), ShapeError);
}

TEST_CASE("axisymmetric sphere converges to Euler characteristic 2") {
  double prev = INFINITY;
  for (Index n : {8, 16, 32, 64}) {
    const auto rep = axisym_representation(SurfaceSpec::axisymmetric(kSphere), n, HbarRule::sphere().value(n));
    const double err = std::abs(curvature_report(rep).chi_hat - 2.0);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-2);
}

TEST_CASE("quartic K and gamma^2 approach their leading order") {
  std::vector<double> k_err;
  std::vector<double> g_err;
  std::vector<double> hs;
  for (Index n : {16, 32, 64, 128}) {
    const double hbar = HbarRule::sphere().value(n);
    const auto rep = axisym_representation(SurfaceSpec::axisymmetric(kQuartic), n, hbar);
    const auto report = curvature_report(rep);
    double ke = 0.0;
    double ge = 0.0;
    for (Index k = 0; k < n; ++k) {
      const double z = rep.z[static_cast<std::size_t>(k)];
      ke = std::max(ke, std::abs(report.K_hat(k, k).real() - leading_K(z)));
      ge = std::max(ge, std::abs(report.gamma_sq(k, k).real() - (1 - std::pow(z, 4) + 4 * std::pow(z, 6))));
    }
    k_err.push_back(ke);
    g_err.push_back(ge);
    hs.push_back(hbar);
  }
  const auto k_rate = loglog_slope(hs, k_err);
  const auto g_rate = loglog_slope(hs, g_err);
  REQUIRE(k_rate);
  REQUIRE(g_rate);
  CHECK(*k_rate >= 0.9);
  CHECK(*g_rate >= 0.9);
}

TEST_CASE("euler characteristic examples") {
  const auto s = sphere_embedding(10);
  const CMatrix g = gamma_sq_from_embedding(s);
  const auto chi = euler_characteristic(discrete_K(s, g), g, s.hbar());
  CHECK(chi.value == doctest::Approx(20.0 / std::sqrt(99.0)).epsilon(1e-13));
  CHECK(chi.value == doctest::Approx(2.01008).epsilon(1e-5));
  CHECK(chi.imag_residual < 1e-12);
  for (Index n : {3, 8, 40}) {
    const auto t = torus_embedding(n);
    const CMatrix gt = gamma_sq_from_embedding(t);
    CHECK(std::abs(euler_characteristic(discrete_K(t, gt), gt, t.hbar()).value) < 1e-10);
  }
  CHECK(euler_characteristic(CMatrix::zero(4), CMatrix::identity(4), 0.3).value == 0.0);
  CHECK_THROWS_AS(euler_characteristic(CMatrix::identity(2), CMatrix::diagonal(std::vector<double>{1.0, -1.0}), 0.3),
                  DefinitenessError);
}

TEST_CASE("axisymmetric euler characteristic is a Riemann sum over the diagonal") {
  const Index n = 24;
  const auto rep = axisym_representation(SurfaceSpec::axisymmetric(kQuartic), n, HbarRule::sphere().value(n));
  const auto report = curvature_report(rep);
  double sum = 0.0;
  for (Index k = 0; k < n; ++k) sum += std::sqrt(report.gamma_sq(k, k).real()) * report.K_hat(k, k).real();
  CHECK(report.chi_hat == doctest::Approx(rep.hbar * sum).epsilon(1e-13));
}

TEST_CASE("classical axisymmetric geometry") {
  for (const auto& p : {kSphere, kQuartic}) {
    const auto geo = classical_axisym(SurfaceSpec::axisymmetric(p));
    CHECK(geo.chi_classical == 2.0);
    CHECK(geo.gauss_bonnet_integral() == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(geo.antiderivative(geo.domain.upper) - geo.antiderivative(geo.domain.lower) == doctest::Approx(2.0));
  }
  // Unit sphere: K = 1, sqrt(g) = 1 in (z, v) coordinates.
  const auto sphere = classical_axisym(SurfaceSpec::axisymmetric(kSphere));
  for (double z : {-0.9, 0.0, 0.3}) {
    CHECK(sphere.K(z) == doctest::Approx(1.0));
    CHECK(sphere.sqrt_g(z) == doctest::Approx(1.0));
  }
  const auto quartic = classical_axisym(SurfaceSpec::axisymmetric(kQuartic));
  for (double z : {-0.95, -0.4, 0.0, 0.2, 0.7}) {
    CHECK(quartic.K(z) * quartic.sqrt_g(z) * quartic.sqrt_g(z) * quartic.sqrt_g(z) * quartic.sqrt_g(z) ==
          doctest::Approx(6 * z * z - 2 * std::pow(z, 6)).epsilon(1e-12));
    // d/dz of the antiderivative is K sqrt(g)
    const double h = 1e-6;
    const double fd = (quartic.antiderivative(z + h) - quartic.antiderivative(z - h)) / (2 * h);
    CHECK(fd == doctest::Approx(quartic.K(z) * quartic.sqrt_g(z)).epsilon(1e-6));
  }
}

TEST_CASE("classical geometry errors") {
  CHECK_THROWS_AS(classical_axisym(SurfaceSpec::round_sphere()), ArgumentError);
  // f = 1 - z^2 has conical tips: f^2 vanishes with zero slope.
  const auto spindle = SurfaceSpec::axisymmetric(kSphere * kSphere, Interval{-1.0, 1.0});
  CHECK_THROWS_AS(classical_axisym(spindle), DomainError);
}

TEST_CASE("curvature reports") {
  const auto s = curvature_report(sphere_embedding(12), CurvatureRoute::Normals);
  CHECK(s.N == 12);
  CHECK(s.chi_hat == doctest::Approx(24.0 / std::sqrt(143.0)).epsilon(1e-13));
  CHECK(s.ambient_sectional == CMatrix::zero(12));
  CHECK(s.gamma_min_eigenvalue == doctest::Approx(1.0));
  const auto r3 = curvature_report(sphere_embedding(12), CurvatureRoute::EpsilonR3);
  CHECK(r3.chi_hat == doctest::Approx(s.chi_hat).epsilon(1e-12));
  CHECK_THROWS_AS(curvature_report(sphere_embedding(4), CurvatureRoute::Axisymmetric), ArgumentError);
  for (Index n : {4, 8, 16, 32}) {
    const auto t = curvature_report(torus_embedding(n), CurvatureRoute::Normals);
    CHECK(t.K_hermiticity <= 1e-10 * std::max(1.0, operator_norm(t.K_hat)));
    CHECK(t.gamma_hermiticity <= 1e-10);
    const auto a = curvature_report(
        axisym_representation(SurfaceSpec::axisymmetric(kQuartic), n, HbarRule::sphere().value(n)));
    CHECK(a.K_hermiticity == 0.0);
    CHECK(a.chi_imag_residual < 1e-12);
  }
}

TEST_CASE("property: gauge invariance under random unitaries") {
  gen::Engine rng(402);
  for (int trial = 0; trial < 6; ++trial) {
    const Index n = gen::size(rng, 3, 14);
    const CMatrix u = gen::unitary(rng, n);
    const auto s = sphere_embedding(n);
    CHECK(curvature_report(s.conjugated(u), CurvatureRoute::Normals).chi_hat ==
          doctest::Approx(curvature_report(s, CurvatureRoute::Normals).chi_hat).epsilon(1e-10));
    const auto t = torus_embedding(n);
    CHECK(std::abs(curvature_report(t.conjugated(u), CurvatureRoute::Normals).chi_hat) < 1e-9);
    const auto rep = axisym_representation(SurfaceSpec::axisymmetric(kQuartic), n, HbarRule::sphere().value(n));
    const auto e = axisym_embedding(rep);
    const auto base = curvature_report(e, CurvatureRoute::EpsilonR3);
    const auto moved = curvature_report(e.conjugated(u), CurvatureRoute::EpsilonR3);
    CHECK(moved.chi_hat == doctest::Approx(base.chi_hat).epsilon(1e-10));
    const auto before = hermitian_eigenvalues(base.gamma_sq);
    const auto after = hermitian_eigenvalues(moved.gamma_sq);
    for (std::size_t k = 0; k < before.size(); ++k) CHECK(std::abs(before[k] - after[k]) < 1e-10);
    CHECK(operator_norm(moved.K_hat) == doctest::Approx(operator_norm(base.K_hat)).epsilon(1e-10));
  }
}
