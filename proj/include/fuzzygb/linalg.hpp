#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fuzzygb/errors.hpp"
#include "fuzzygb/polynomial.hpp"
#include "fuzzygb/tolerances.hpp"

namespace fuzzygb {

using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Dense square complex matrix. Value type; every operation returns a new
/// matrix and the stored entries are never modified after construction.
/// Construction rejects non-square, empty, and non-finite input.
class CMatrix {
 public:
  explicit CMatrix(Eigen::MatrixXcd entries);

  static CMatrix identity(Index n);
  static CMatrix zero(Index n);
  static CMatrix diagonal(std::span<const Complex> entries);
  static CMatrix diagonal(std::span<const double> entries);

  Index dim() const { return m_.rows(); }
  Complex operator()(Index row, Index col) const { return m_(row, col); }
  const Eigen::MatrixXcd& eigen() const { return m_; }

  friend CMatrix operator+(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator-(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator*(Complex s, const CMatrix& a);
  friend CMatrix operator*(const CMatrix& a, Complex s) { return s * a; }
  friend CMatrix operator-(const CMatrix& a);

  // Exact, entrywise equality.
  friend bool operator==(const CMatrix& a, const CMatrix& b);

 private:
  Eigen::MatrixXcd m_;
};

struct HermitianCertificate {
  CMatrix subject;
  double max_asymmetry;  // ||A - A^dagger||
  double threshold;      // tol.herm * ||A|| at certification time

  bool passes() const { return max_asymmetry <= threshold; }
};

/// Eigen-decomposition of a hermitian matrix. Eigenvalues ascending,
/// eigenvectors in the matching columns.
struct HermitianEigensystem {
  std::vector<double> values;
  Eigen::MatrixXcd vectors;

  double spectral_radius() const;
  // V f(Lambda) V^dagger
  CMatrix apply(const std::function<double(double)>& f) const;
};

CMatrix commutator(const CMatrix& a, const CMatrix& b);
CMatrix dagger(const CMatrix& a);
Complex trace(const CMatrix& a);

/// Largest singular value.
double operator_norm(const CMatrix& a, const Tolerances& tol = {});

HermitianCertificate certify_hermitian(const CMatrix& a, const Tolerances& tol = {});

/// Throws CertificationError when `a` is not hermitian within tolerance.
/// The decomposition is taken of the hermitian part (A + A^dagger)/2.
HermitianEigensystem hermitian_eigensystem(const CMatrix& a, const Tolerances& tol = {});

std::vector<double> hermitian_eigenvalues(const CMatrix& a, const Tolerances& tol = {});

/// Principal square root of a positive semidefinite hermitian matrix.
/// Eigenvalues in [-tol.psd * ||a||, 0) are clamped to zero; anything more
/// negative raises DefinitenessError.
CMatrix hermitian_sqrt(const CMatrix& a, const Tolerances& tol = {});

/// Applies `p` to the diagonal of a diagonal matrix.
/// Throws ShapeError when an off-diagonal entry exceeds tol.herm * ||z||.
CMatrix matfun_diag(const CMatrix& z, const RealPolynomial& p, const Tolerances& tol = {});

/// Largest |a_ij| with i != j.
double max_offdiagonal(const CMatrix& a);

bool is_exactly_diagonal(const Eigen::MatrixXcd& a);

}  // namespace fuzzygb
