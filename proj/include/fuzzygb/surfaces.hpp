#pragma once

#include <array>
#include <optional>
#include <vector>

#include "fuzzygb/linalg.hpp"
#include "fuzzygb/polynomial.hpp"
#include "fuzzygb/regularization.hpp"

namespace fuzzygb {

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

enum class SurfaceKind { RoundSphere, CliffordTorus, Axisymmetric };

/// Declarative choice of surface. Axisymmetric surfaces are the level sets
/// x^2 + y^2 = f^2(z) over z in [lower, upper], described by the polynomial
/// f^2 (not f).
class SurfaceSpec {
 public:
  static SurfaceSpec round_sphere();
  static SurfaceSpec clifford_torus();

  /// Throws DomainError unless f^2 > 0 on the open interval and vanishes at
  /// both endpoints. Without an explicit interval, default_domain is used.
  static SurfaceSpec axisymmetric(RealPolynomial fsq, std::optional<Interval> domain = {});

  SurfaceKind kind() const { return kind_; }
  const RealPolynomial& fsq() const;
  const Interval& domain() const;

 private:
  SurfaceSpec(SurfaceKind kind, RealPolynomial fsq, Interval domain)
      : kind_(kind), fsq_(std::move(fsq)), domain_(domain) {}
  SurfaceKind kind_;
  RealPolynomial fsq_;
  Interval domain_;
};

/// The two real roots of f^2 when it has exactly two simple real roots.
std::optional<Interval> default_domain(const RealPolynomial& fsq);

/// Matrix images X^1..X^m of the embedding coordinates, plus optional
/// normal-vector matrices N_A^i (A = 1..p, p = m - 2).
class EmbeddingSet {
 public:
  using NormalList = std::vector<std::vector<CMatrix>>;

  EmbeddingSet(std::vector<CMatrix> coordinates, double hbar,
               std::optional<NormalList> normals = std::nullopt, const Tolerances& tol = {});

  int ambient_dim() const { return static_cast<int>(coords_.size()); }
  Index N() const { return coords_.front().dim(); }
  double hbar() const { return hbar_; }
  const std::vector<CMatrix>& coordinates() const { return coords_; }
  const CMatrix& X(int i) const { return coords_.at(static_cast<std::size_t>(i)); }

  bool has_normals() const { return normals_.has_value(); }
  const NormalList& normals() const;

  /// U X^i U^dagger (and the same for every normal component).
  EmbeddingSet conjugated(const CMatrix& unitary) const;

 private:
  std::vector<CMatrix> coords_;
  double hbar_;
  std::optional<NormalList> normals_;
};

/// Diagonal Z and upper-bidiagonal W realizing an axially symmetric
/// surface: [Z, W] = hbar W, [W, W^dagger] = -2 hbar (f f')(Z).
struct AxisymRepresentation {
  RealPolynomial fsq;
  RealPolynomial ffprime;  // (f^2)' / 2
  Index N = 0;
  double hbar = 0.0;
  std::vector<double> z;          // Z_kk, k = 1..N
  std::vector<double> Q;          // Q_k = -2 hbar (f f')(z_k)
  std::vector<double> w_squared;  // w_0^2 .. w_N^2, both ends exactly zero
  double closure_residual = 0.0;  // computed sum of all Q_k before zeroing w_N^2
  CMatrix Z;
  CMatrix W;
};

/// Spin-(N-1)/2 representation: S3 = diag(j, j-1, ..., -j), [S1, S2] = i S3.
std::array<CMatrix, 3> su2_generators(Index n);

/// X^i = 2 S^i / sqrt(N^2 - 1), hbar = 2 / sqrt(N^2 - 1), normals N^i = X^i.
EmbeddingSet sphere_embedding(Index n);

/// Clifford torus in R^4 from clock and shift matrices, hbar = sin(pi/N),
/// with the two normals N_+ = (X1, X2, X3, X4) and N_- = (X1, X2, -X3, -X4).
EmbeddingSet torus_embedding(Index n);

AxisymRepresentation axisym_representation(const SurfaceSpec& spec, Index n, double hbar,
                                           const Tolerances& tol = {});

/// X = (W + W^dagger)/2, Y = (W - W^dagger)/(2i), Z. Verifies
/// [X, Y] = -i hbar (f f')(Z), [Y, Z] = i hbar X, [Z, X] = i hbar Y.
/// No normals are attached.
EmbeddingSet axisym_embedding(const AxisymRepresentation& rep, const Tolerances& tol = {});

/// (W W^dagger + W^dagger W) / 2, diagonal with entries (w_k^2 + w_{k-1}^2)/2.
CMatrix fhat_squared(const AxisymRepresentation& rep);

/// ||X^2 + Y^2 + Z^4 + hbar^2 Z^2 - hbar^4 (N^2 - 1)^2 / 16||. Only defined
/// for f^2 = 1 - z^4; other inputs raise ArgumentError.
double casimir_defect(const AxisymRepresentation& rep, const Tolerances& tol = {});

/// max_k |fhat^2_k - f^2(z_k)|, +inf when no valid representation exists.
double fsq_mismatch(const SurfaceSpec& spec, Index n, double hbar, const Tolerances& tol = {});

/// hbar in (0, 2/(N-1)] minimizing fsq_mismatch.
double calibrate_hbar(const SurfaceSpec& spec, Index n, const Tolerances& tol = {});

}  // namespace fuzzygb
