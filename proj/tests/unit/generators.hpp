#pragma once

// Hand-rolled generators for property tests. Every generator takes the
// engine explicitly so each test case fixes its own seed.

#include <random>

#include "fuzzygb/linalg.hpp"

namespace gen {

using Engine = std::mt19937_64;

inline Eigen::MatrixXcd gaussian(Engine& rng, fuzzygb::Index n) {
  std::normal_distribution<double> d(0.0, 1.0);
  Eigen::MatrixXcd m(n, n);
  for (fuzzygb::Index r = 0; r < n; ++r)
    for (fuzzygb::Index c = 0; c < n; ++c) m(r, c) = {d(rng), d(rng)};
  return m;
}

inline fuzzygb::CMatrix any_matrix(Engine& rng, fuzzygb::Index n) { return fuzzygb::CMatrix(gaussian(rng, n)); }

inline fuzzygb::CMatrix hermitian(Engine& rng, fuzzygb::Index n) {
  const Eigen::MatrixXcd g = gaussian(rng, n);
  return fuzzygb::CMatrix((g + g.adjoint()) / 2.0);
}

// Q from the QR factorization of a gaussian matrix, with the phases of R's
// diagonal divided out so the distribution is Haar.
inline fuzzygb::CMatrix unitary(Engine& rng, fuzzygb::Index n) {
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(gaussian(rng, n));
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR();
  for (fuzzygb::Index k = 0; k < n; ++k) {
    const auto d = r(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return fuzzygb::CMatrix(q);
}

// A A^dagger + shift, comfortably positive definite.
inline fuzzygb::CMatrix positive_definite(Engine& rng, fuzzygb::Index n, double shift = 0.5) {
  const Eigen::MatrixXcd g = gaussian(rng, n);
  return fuzzygb::CMatrix(g * g.adjoint() + shift * Eigen::MatrixXcd::Identity(n, n));
}

inline int size(Engine& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace gen
