#include "fuzzygb/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/tools/minima.hpp>
#include <unsupported/Eigen/Polynomials>

namespace fuzzygb {
namespace {

constexpr int kDomainGridPoints = 1000;

void require_size(Index n, const char* what) {
  if (n < 2) throw DomainError(std::string(what) + ": N must be at least 2, got " + std::to_string(n));
}

void validate_domain(const RealPolynomial& fsq, const Interval& d) {
  if (!(d.lower < d.upper)) throw DomainError("axisymmetric domain must satisfy z- < z+");
  double scale = 0.0;
  for (int k = 1; k < kDomainGridPoints; ++k) {
    const double t = static_cast<double>(k) / kDomainGridPoints;
    const double z = d.lower + t * (d.upper - d.lower);
    const double v = fsq(z);
    if (!(v > 0.0)) {
      throw DomainError("f^2 must be positive inside the domain; f^2(" + std::to_string(z) +
                        ") = " + std::to_string(v));
    }
    scale = std::max(scale, v);
  }
  const double endpoint_tol = 1e-9 * scale;
  if (std::abs(fsq(d.lower)) > endpoint_tol || std::abs(fsq(d.upper)) > endpoint_tol) {
    throw DomainError("f^2 must vanish at both domain endpoints");
  }
}

}  // namespace

SurfaceSpec SurfaceSpec::round_sphere() { return SurfaceSpec(SurfaceKind::RoundSphere, {}, {}); }

SurfaceSpec SurfaceSpec::clifford_torus() { return SurfaceSpec(SurfaceKind::CliffordTorus, {}, {}); }

SurfaceSpec SurfaceSpec::axisymmetric(RealPolynomial fsq, std::optional<Interval> domain) {
  if (!domain) domain = default_domain(fsq);
  if (!domain) {
    throw DomainError("f^2 = " + fsq.to_string() +
                      " does not have exactly two simple real roots; an explicit domain is required");
  }
  validate_domain(fsq, *domain);
  return SurfaceSpec(SurfaceKind::Axisymmetric, std::move(fsq), *domain);
}

const RealPolynomial& SurfaceSpec::fsq() const {
  if (kind_ != SurfaceKind::Axisymmetric) throw ArgumentError("only axisymmetric surfaces carry f^2");
  return fsq_;
}

const Interval& SurfaceSpec::domain() const {
  if (kind_ != SurfaceKind::Axisymmetric) throw ArgumentError("only axisymmetric surfaces carry a domain");
  return domain_;
}

std::optional<Interval> default_domain(const RealPolynomial& fsq) {
  if (fsq.degree() < 2) return std::nullopt;
  const auto& c = fsq.coefficients();
  Eigen::VectorXd coeffs = Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Index>(c.size()));
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(coeffs);

  double coeff_scale = 0.0;
  for (double v : c) coeff_scale = std::max(coeff_scale, std::abs(v));
  std::vector<double> roots;
  solver.realRoots(roots, 1e-9 * std::max(1.0, coeff_scale));
  std::sort(roots.begin(), roots.end());

  const RealPolynomial slope = fsq.derivative();
  if (roots.size() != 2) return std::nullopt;
  if (std::abs(roots[1] - roots[0]) <= 1e-8 * std::max(1.0, std::abs(roots[0]))) return std::nullopt;
  for (double r : roots) {
    if (std::abs(slope(r)) <= 1e-8 * coeff_scale) return std::nullopt;
  }
  return Interval{roots[0], roots[1]};
}

EmbeddingSet::EmbeddingSet(std::vector<CMatrix> coordinates, double hbar,
                           std::optional<NormalList> normals, const Tolerances& tol)
    : coords_(std::move(coordinates)), hbar_(hbar), normals_(std::move(normals)) {
  if (coords_.size() < 2) throw ShapeError("an embedding needs at least two coordinate matrices");
  if (!(hbar_ > 0.0) || !std::isfinite(hbar_)) throw DomainError("hbar must be positive and finite");
  const Index n = coords_.front().dim();
  auto check = [&](const CMatrix& m, const std::string& label) {
    if (m.dim() != n) throw ShapeError(label + " has dimension " + std::to_string(m.dim()) +
                                       ", expected " + std::to_string(n));
    const auto cert = certify_hermitian(m, tol);
    if (!cert.passes()) throw CertificationError(label + " is not hermitian");
  };
  for (std::size_t i = 0; i < coords_.size(); ++i) check(coords_[i], "X^" + std::to_string(i + 1));
  if (normals_) {
    if (normals_->size() != coords_.size() - 2) {
      throw ShapeError("expected " + std::to_string(coords_.size() - 2) + " normals, got " +
                       std::to_string(normals_->size()));
    }
    for (std::size_t a = 0; a < normals_->size(); ++a) {
      const auto& normal = (*normals_)[a];
      if (normal.size() != coords_.size()) throw ShapeError("normal has wrong number of components");
      for (std::size_t i = 0; i < normal.size(); ++i)
        check(normal[i], "N_" + std::to_string(a + 1) + "^" + std::to_string(i + 1));
    }
  }
}

const EmbeddingSet::NormalList& EmbeddingSet::normals() const {
  if (!normals_) throw ArgumentError("embedding has no normal matrices");
  return *normals_;
}

EmbeddingSet EmbeddingSet::conjugated(const CMatrix& unitary) const {
  const CMatrix u_dag = dagger(unitary);
  auto conj = [&](const CMatrix& m) { return unitary * m * u_dag; };
  std::vector<CMatrix> coords;
  for (const auto& x : coords_) coords.push_back(conj(x));
  std::optional<NormalList> normals;
  if (normals_) {
    normals.emplace();
    for (const auto& normal : *normals_) {
      std::vector<CMatrix> comps;
      for (const auto& c : normal) comps.push_back(conj(c));
      normals->push_back(std::move(comps));
    }
  }
  return EmbeddingSet(std::move(coords), hbar_, std::move(normals));
}

std::array<CMatrix, 3> su2_generators(Index n) {
  require_size(n, "su2_generators");
  const double j = 0.5 * static_cast<double>(n - 1);
  Eigen::MatrixXcd raise = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd s3 = Eigen::MatrixXcd::Zero(n, n);
  for (Index k = 0; k < n; ++k) {
    const double m = j - static_cast<double>(k);
    s3(k, k) = m;
    if (k > 0) raise(k - 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  const Eigen::MatrixXcd lower = raise.adjoint();
  return {CMatrix(0.5 * (raise + lower)), CMatrix(Complex(0.0, -0.5) * (raise - lower)),
          CMatrix(std::move(s3))};
}

EmbeddingSet sphere_embedding(Index n) {
  const auto s = su2_generators(n);
  const double hbar = HbarRule::sphere().value(n);
  std::vector<CMatrix> x;
  for (const auto& si : s) x.push_back(Complex(hbar, 0.0) * si);
  EmbeddingSet::NormalList normals{x};
  return EmbeddingSet(x, hbar, std::move(normals));
}

EmbeddingSet torus_embedding(Index n) {
  const auto [g, h] = clock_shift(n);
  const CMatrix g_dag = dagger(g);
  const CMatrix h_dag = dagger(h);
  const double c = 1.0 / (2.0 * std::numbers::sqrt2);
  const Complex ic(0.0, c);
  std::vector<CMatrix> x{Complex(c, 0.0) * (g_dag + g), ic * (g_dag - g), Complex(c, 0.0) * (h_dag + h),
                         ic * (h_dag - h)};
  std::vector<CMatrix> minus{x[0], x[1], -x[2], -x[3]};
  EmbeddingSet::NormalList normals{x, std::move(minus)};
  return EmbeddingSet(x, HbarRule::torus().value(n), std::move(normals));
}

AxisymRepresentation axisym_representation(const SurfaceSpec& spec, Index n, double hbar,
                                           const Tolerances& tol) {
  if (spec.kind() != SurfaceKind::Axisymmetric) throw ArgumentError("axisym_representation needs an axisymmetric surface");
  require_size(n, "axisym_representation");
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw DomainError("hbar must be positive and finite");

  AxisymRepresentation rep{spec.fsq(), spec.fsq().derivative().scaled(0.5), n, hbar,
                           {}, {}, {}, 0.0, CMatrix::zero(n), CMatrix::zero(n)};
  const auto size = static_cast<std::size_t>(n);
  rep.z.resize(size);
  rep.Q.resize(size);
  rep.w_squared.assign(size + 1, 0.0);
  for (std::size_t k = 1; k <= size; ++k) {
    const double zk = 0.5 * hbar * static_cast<double>(n + 1 - 2 * static_cast<Index>(k));
    rep.z[k - 1] = zk;
    rep.Q[k - 1] = -2.0 * hbar * rep.ffprime(zk);
    rep.w_squared[k] = rep.w_squared[k - 1] + rep.Q[k - 1];
  }

  double scale = 0.0;
  for (double w2 : rep.w_squared) scale = std::max(scale, std::abs(w2));
  const double tol_closure = tol.closure * scale;
  for (std::size_t k = 1; k < size; ++k) {
    if (rep.w_squared[k] < -tol_closure) {
      throw AdmissibilityError("w_" + std::to_string(k) + "^2 = " + std::to_string(rep.w_squared[k]) +
                               " is negative for N=" + std::to_string(n) +
                               ", hbar=" + std::to_string(hbar));
    }
    rep.w_squared[k] = std::max(rep.w_squared[k], 0.0);
  }
  rep.closure_residual = rep.w_squared[size];
  if (std::abs(rep.closure_residual) > tol_closure) {
    throw ClosureError("w_N^2 = " + std::to_string(rep.closure_residual) + " does not vanish for N=" +
                       std::to_string(n) + ", hbar=" + std::to_string(hbar));
  }
  rep.w_squared[size] = 0.0;

  rep.Z = CMatrix::diagonal(std::span<const double>(rep.z));
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(n, n);
  for (Index k = 1; k < n; ++k) w(k - 1, k) = std::sqrt(rep.w_squared[static_cast<std::size_t>(k)]);
  rep.W = CMatrix(std::move(w));
  return rep;
}

EmbeddingSet axisym_embedding(const AxisymRepresentation& rep, const Tolerances& tol) {
  const CMatrix w_dag = dagger(rep.W);
  const CMatrix x = Complex(0.5, 0.0) * (rep.W + w_dag);
  const CMatrix y = Complex(0.0, -0.5) * (rep.W - w_dag);
  const CMatrix& z = rep.Z;

  const Complex ih(0.0, rep.hbar);
  const CMatrix ffz = matfun_diag(z, rep.ffprime, tol);
  const double bound =
      tol.commutation * rep.hbar * std::max({operator_norm(x), operator_norm(y), operator_norm(z)});
  // The recursion fixes [W, W^dagger] = -2 hbar ff'(Z), hence [X, Y] = -i hbar ff'(Z).
  const double r_xy = operator_norm(commutator(x, y) + ih * ffz);
  const double r_yz = operator_norm(commutator(y, z) - ih * x);
  const double r_zx = operator_norm(commutator(z, x) - ih * y);
  if (r_xy > bound || r_yz > bound || r_zx > bound) {
    throw ConstructionError("axisymmetric embedding violates its commutation relations (residuals " +
                            std::to_string(r_xy) + ", " + std::to_string(r_yz) + ", " +
                            std::to_string(r_zx) + ")");
  }
  return EmbeddingSet({x, y, z}, rep.hbar, std::nullopt, tol);
}

CMatrix fhat_squared(const AxisymRepresentation& rep) {
  std::vector<double> d(static_cast<std::size_t>(rep.N));
  for (std::size_t k = 1; k <= d.size(); ++k) d[k - 1] = 0.5 * (rep.w_squared[k] + rep.w_squared[k - 1]);
  return CMatrix::diagonal(std::span<const double>(d));
}

double casimir_defect(const AxisymRepresentation& rep, const Tolerances& tol) {
  if (rep.fsq != RealPolynomial{1.0, 0.0, 0.0, 0.0, -1.0}) {
    throw ArgumentError("casimir_defect is defined for f^2 = 1 - z^4 only");
  }
  const EmbeddingSet e = axisym_embedding(rep, tol);
  const CMatrix& x = e.X(0);
  const CMatrix& y = e.X(1);
  const CMatrix& z = e.X(2);
  const CMatrix z2 = z * z;
  const double h = rep.hbar;
  const double nn = static_cast<double>(rep.N) * static_cast<double>(rep.N) - 1.0;
  const double scalar = h * h * h * h * nn * nn / 16.0;
  const CMatrix casimir = x * x + y * y + z2 * z2 + Complex(h * h, 0.0) * z2;
  return operator_norm(casimir - Complex(scalar, 0.0) * CMatrix::identity(rep.N));
}

double fsq_mismatch(const SurfaceSpec& spec, Index n, double hbar, const Tolerances& tol) {
  try {
    const auto rep = axisym_representation(spec, n, hbar, tol);
    double worst = 0.0;
    for (std::size_t k = 1; k <= rep.z.size(); ++k) {
      const double fhat2 = 0.5 * (rep.w_squared[k] + rep.w_squared[k - 1]);
      worst = std::max(worst, std::abs(fhat2 - rep.fsq(rep.z[k - 1])));
    }
    return worst;
  } catch (const AdmissibilityError&) {
    return std::numeric_limits<double>::infinity();
  } catch (const ClosureError&) {
    return std::numeric_limits<double>::infinity();
  }
}

double calibrate_hbar(const SurfaceSpec& spec, Index n, const Tolerances& tol) {
  require_size(n, "calibrate_hbar");
  const double upper = 2.0 / static_cast<double>(n - 1);
  const double lower = 1e-6 * upper;
  auto objective = [&](double h) { return fsq_mismatch(spec, n, h, tol); };
  const auto [best, value] = boost::math::tools::brent_find_minima(objective, lower, upper, std::numeric_limits<double>::digits / 2);
  if (!std::isfinite(value)) {
    throw AdmissibilityError("no hbar in (0, 2/(N-1)] gives a valid representation for N=" +
                             std::to_string(n));
  }
  return best;
}

}  // namespace fuzzygb
