#pragma once

#include <complex>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace fuzzygb {

/// Real polynomial with coefficients stored in ascending degree.
/// Trailing zero coefficients are trimmed; the zero polynomial has an empty
/// coefficient list.
class RealPolynomial {
 public:
  RealPolynomial() = default;
  explicit RealPolynomial(std::vector<double> ascending);
  RealPolynomial(std::initializer_list<double> ascending);

  /// Parses "c0,c1,...,cd" (ascending coefficients).
  static RealPolynomial parse(std::string_view text);

  const std::vector<double>& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  double operator()(double x) const;
  std::complex<double> operator()(std::complex<double> x) const;

  RealPolynomial derivative() const;
  RealPolynomial scaled(double factor) const;

  // Every odd (resp. even) coefficient vanishes.
  bool is_even() const;
  bool is_odd() const;

  std::string to_string() const;

  friend RealPolynomial operator+(const RealPolynomial& a, const RealPolynomial& b);
  friend RealPolynomial operator-(const RealPolynomial& a, const RealPolynomial& b);
  friend RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b);
  friend bool operator==(const RealPolynomial&, const RealPolynomial&) = default;

 private:
  void trim();
  std::vector<double> coeffs_;
};

}  // namespace fuzzygb
