#include "fuzzygb/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>

namespace fuzzygb {
namespace {

// Eigen's tridiagonal QL iteration gives up after 30 sweeps per eigenvalue.
constexpr long kEigenMaxSweepsPerValue = 30;

void require_same_dim(const CMatrix& a, const CMatrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw ShapeError(std::string(op) + ": dimension mismatch (" + std::to_string(a.dim()) +
                     " vs " + std::to_string(b.dim()) + ")");
  }
}

Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& m) {
  return 0.5 * (m + m.adjoint());
}

// Decomposes an exactly hermitian matrix. Exactly diagonal input skips the
// tridiagonalization, which matters for the axisymmetric sweeps where most
// matrices are diagonal by construction.
HermitianEigensystem decompose(const Eigen::MatrixXcd& h, bool want_vectors) {
  const Index n = h.rows();
  HermitianEigensystem sys;
  if (is_exactly_diagonal(h)) {
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index i, Index j) { return h(i, i).real() < h(j, j).real(); });
    sys.values.reserve(order.size());
    for (Index i : order) sys.values.push_back(h(i, i).real());
    if (want_vectors) {
      sys.vectors = Eigen::MatrixXcd::Zero(n, n);
      for (Index c = 0; c < n; ++c) sys.vectors(order[static_cast<std::size_t>(c)], c) = 1.0;
    }
    return sys;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      h, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("hermitian eigensolver did not converge for N=" + std::to_string(n),
                       kEigenMaxSweepsPerValue * static_cast<long>(n));
  }
  const auto& ev = solver.eigenvalues();
  sys.values.assign(ev.data(), ev.data() + ev.size());
  if (want_vectors) sys.vectors = solver.eigenvectors();
  return sys;
}

double max_abs_eigenvalue(const Eigen::MatrixXcd& h) {
  const auto sys = decompose(h, false);
  if (sys.values.empty()) return 0.0;
  return std::max(std::abs(sys.values.front()), std::abs(sys.values.back()));
}

// Operator norm of an arbitrary matrix: sqrt of the top eigenvalue of A^dagger A.
double norm_of(const Eigen::MatrixXcd& m) {
  if (m.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  if (m == m.adjoint()) return max_abs_eigenvalue(m);
  const Eigen::MatrixXcd gram = hermitian_part(m.adjoint() * m);
  const auto sys = decompose(gram, false);
  return std::sqrt(std::max(sys.values.back(), 0.0));
}

}  // namespace

bool is_exactly_diagonal(const Eigen::MatrixXcd& a) {
  for (Index c = 0; c < a.cols(); ++c)
    for (Index r = 0; r < a.rows(); ++r)
      if (r != c && a(r, c) != Complex(0.0, 0.0)) return false;
  return true;
}

namespace {

// Below this size the dense kernel wins outright.
constexpr Index kSparseMinDim = 24;

// True when at most n^2/8 entries are nonzero. Stops counting early.
bool is_sparse(const Eigen::MatrixXcd& a) {
  const Index n = a.rows();
  if (n < kSparseMinDim) return false;
  const Index budget = n * n / 8;
  Index nnz = 0;
  for (Index c = 0; c < n; ++c)
    for (Index r = 0; r < n; ++r)
      if (a(r, c) != Complex(0.0, 0.0) && ++nnz > budget) return false;
  return true;
}

// Diagonal factors (Z, the clock matrix, S3) and sparse ones (ladder
// operators, the shift matrix, W) skip the O(N^3) dense kernel.
Eigen::MatrixXcd product(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (is_exactly_diagonal(a)) return a.diagonal().asDiagonal() * b;
  if (is_exactly_diagonal(b)) return a * b.diagonal().asDiagonal();
  // The sparse operand must be materialized; a bare sparseView() product
  // falls back to a coefficient-wise path as slow as the dense kernel.
  if (is_sparse(a)) {
    const Eigen::SparseMatrix<Complex> sa = a.sparseView(0.0);
    return sa * b;
  }
  if (is_sparse(b)) {
    const Eigen::SparseMatrix<Complex> sb = b.sparseView(0.0);
    return a * sb;
  }
  return a * b;
}

}  // namespace

CMatrix::CMatrix(Eigen::MatrixXcd entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) {
    throw ShapeError("matrix must be square, got " + std::to_string(m_.rows()) + "x" +
                     std::to_string(m_.cols()));
  }
  if (m_.rows() < 1) throw ShapeError("matrix dimension must be at least 1");
  if (!m_.allFinite()) throw DomainError("matrix has non-finite entries");
}

CMatrix CMatrix::identity(Index n) { return CMatrix(Eigen::MatrixXcd::Identity(n, n)); }

CMatrix CMatrix::zero(Index n) { return CMatrix(Eigen::MatrixXcd::Zero(n, n)); }

CMatrix CMatrix::diagonal(std::span<const Complex> entries) {
  const auto n = static_cast<Index>(entries.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Index k = 0; k < n; ++k) m(k, k) = entries[static_cast<std::size_t>(k)];
  return CMatrix(std::move(m));
}

CMatrix CMatrix::diagonal(std::span<const double> entries) {
  std::vector<Complex> c(entries.begin(), entries.end());
  return diagonal(std::span<const Complex>(c));
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a, b, "add");
  return CMatrix(a.m_ + b.m_);
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a, b, "subtract");
  return CMatrix(a.m_ - b.m_);
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a, b, "multiply");
  return CMatrix(product(a.m_, b.m_));
}

CMatrix operator*(Complex s, const CMatrix& a) { return CMatrix(s * a.m_); }

CMatrix operator-(const CMatrix& a) { return CMatrix(-a.m_); }

bool operator==(const CMatrix& a, const CMatrix& b) {
  return a.dim() == b.dim() && a.m_ == b.m_;
}

double HermitianEigensystem::spectral_radius() const {
  if (values.empty()) return 0.0;
  return std::max(std::abs(values.front()), std::abs(values.back()));
}

CMatrix HermitianEigensystem::apply(const std::function<double(double)>& f) const {
  Eigen::VectorXd mapped(static_cast<Index>(values.size()));
  for (std::size_t k = 0; k < values.size(); ++k) mapped(static_cast<Index>(k)) = f(values[k]);
  const Eigen::MatrixXcd scaled = vectors * mapped.cast<Complex>().asDiagonal();
  return CMatrix(product(scaled, vectors.adjoint()));
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a, b, "commutator");
  return CMatrix(product(a.eigen(), b.eigen()) - product(b.eigen(), a.eigen()));
}

CMatrix dagger(const CMatrix& a) { return CMatrix(a.eigen().adjoint()); }

Complex trace(const CMatrix& a) { return a.eigen().trace(); }

double operator_norm(const CMatrix& a, const Tolerances&) { return norm_of(a.eigen()); }

HermitianCertificate certify_hermitian(const CMatrix& a, const Tolerances& tol) {
  const Eigen::MatrixXcd& m = a.eigen();
  const Eigen::MatrixXcd skew = m - m.adjoint();
  // i(A - A^dagger) is hermitian, so its norm is a spectral radius.
  const double asymmetry =
      skew.cwiseAbs().maxCoeff() == 0.0 ? 0.0 : max_abs_eigenvalue(Complex(0.0, 1.0) * skew);
  const double scale = max_abs_eigenvalue(hermitian_part(m)) + 0.5 * asymmetry;
  return HermitianCertificate{a, asymmetry, tol.herm * scale};
}

HermitianEigensystem hermitian_eigensystem(const CMatrix& a, const Tolerances& tol) {
  const auto cert = certify_hermitian(a, tol);
  if (!cert.passes()) {
    throw CertificationError("matrix is not hermitian: ||A - A^dagger|| = " +
                             std::to_string(cert.max_asymmetry) + " exceeds " +
                             std::to_string(cert.threshold));
  }
  return decompose(hermitian_part(a.eigen()), true);
}

std::vector<double> hermitian_eigenvalues(const CMatrix& a, const Tolerances& tol) {
  const auto cert = certify_hermitian(a, tol);
  if (!cert.passes()) {
    throw CertificationError("matrix is not hermitian: ||A - A^dagger|| = " +
                             std::to_string(cert.max_asymmetry) + " exceeds " +
                             std::to_string(cert.threshold));
  }
  return decompose(hermitian_part(a.eigen()), false).values;
}

CMatrix hermitian_sqrt(const CMatrix& a, const Tolerances& tol) {
  const auto sys = hermitian_eigensystem(a, tol);
  const double floor = -tol.psd * sys.spectral_radius();
  if (sys.values.front() < floor) {
    throw DefinitenessError("matrix is not positive semidefinite: smallest eigenvalue " +
                            std::to_string(sys.values.front()));
  }
  return sys.apply([](double x) { return std::sqrt(std::max(x, 0.0)); });
}

double max_offdiagonal(const CMatrix& a) {
  const auto& m = a.eigen();
  double worst = 0.0;
  for (Index c = 0; c < m.cols(); ++c)
    for (Index r = 0; r < m.rows(); ++r)
      if (r != c) worst = std::max(worst, std::abs(m(r, c)));
  return worst;
}

CMatrix matfun_diag(const CMatrix& z, const RealPolynomial& p, const Tolerances& tol) {
  const auto& m = z.eigen();
  const double scale = m.diagonal().cwiseAbs().maxCoeff();
  if (max_offdiagonal(z) > tol.herm * scale) {
    throw ShapeError("matfun_diag: input is not diagonal");
  }
  std::vector<Complex> d(static_cast<std::size_t>(z.dim()));
  for (Index k = 0; k < z.dim(); ++k) d[static_cast<std::size_t>(k)] = p(m(k, k));
  return CMatrix::diagonal(std::span<const Complex>(d));
}

}  // namespace fuzzygb
