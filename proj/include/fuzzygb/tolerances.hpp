#pragma once

namespace fuzzygb {

/// Numerical thresholds shared by all modules.
///
/// `herm`, `eig` and `psd` are relative to the operator norm of the matrix
/// being tested. `closure` is relative to max_k |w_k^2|. `commutation` is
/// relative to hbar * max_i ||X^i||. `diagonal` bounds the off-diagonal mass
/// of a matrix that must be diagonal, relative to its norm.
struct Tolerances {
  double herm = 1e-10;
  double eig = 1e-10;
  double psd = 1e-8;
  double closure = 1e-9;
  double commutation = 1e-9;
  double diagonal = 1e-8;

  Tolerances scaled(double factor) const {
    return {herm * factor,    eig * factor,         psd * factor,
            closure * factor, commutation * factor, diagonal * factor};
  }
};

}  // namespace fuzzygb
