#include "fuzzygb/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "fuzzygb/errors.hpp"

namespace fuzzygb {

RealPolynomial::RealPolynomial(std::vector<double> ascending) : coeffs_(std::move(ascending)) {
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw ArgumentError("polynomial coefficient is not finite");
  }
  trim();
}

RealPolynomial::RealPolynomial(std::initializer_list<double> ascending)
    : RealPolynomial(std::vector<double>(ascending)) {}

RealPolynomial RealPolynomial::parse(std::string_view text) {
  std::vector<double> coeffs;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string token(text.substr(pos, comma - pos));
    token.erase(0, token.find_first_not_of(" \t"));
    token.erase(token.find_last_not_of(" \t") + 1);
    if (token.empty()) throw ConfigError("empty coefficient in polynomial '" + std::string(text) + "'");
    char* end = nullptr;
    double value = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || !std::isfinite(value)) {
      throw ConfigError("cannot parse coefficient '" + token + "'");
    }
    coeffs.push_back(value);
    pos = comma + 1;
  }
  return RealPolynomial(std::move(coeffs));
}

void RealPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double RealPolynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<double> RealPolynomial::operator()(std::complex<double> x) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RealPolynomial RealPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return RealPolynomial(std::move(d));
}

RealPolynomial RealPolynomial::scaled(double factor) const {
  std::vector<double> c = coeffs_;
  for (double& v : c) v *= factor;
  return RealPolynomial(std::move(c));
}

bool RealPolynomial::is_even() const {
  for (std::size_t k = 1; k < coeffs_.size(); k += 2)
    if (coeffs_[k] != 0.0) return false;
  return true;
}

bool RealPolynomial::is_odd() const {
  for (std::size_t k = 0; k < coeffs_.size(); k += 2)
    if (coeffs_[k] != 0.0) return false;
  return true;
}

std::string RealPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  char buf[64];
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", coeffs_[k]);
    if (k) out += ',';
    out += buf;
  }
  return out;
}

RealPolynomial operator+(const RealPolynomial& a, const RealPolynomial& b) {
  std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
  return RealPolynomial(std::move(c));
}

RealPolynomial operator-(const RealPolynomial& a, const RealPolynomial& b) {
  return a + b.scaled(-1.0);
}

RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return RealPolynomial(std::move(c));
}

}  // namespace fuzzygb
