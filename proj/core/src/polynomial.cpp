#include "calcverify/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace calcverify {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) { trim(); }

Polynomial Polynomial::monomial(int degree, double c) {
  if (degree < 0 || c == 0.0) return {};
  std::vector<double> coeffs(static_cast<std::size_t>(degree) + 1, 0.0);
  coeffs.back() = c;
  return Polynomial(std::move(coeffs));
}

void Polynomial::trim() noexcept {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::operator()(double x) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  std::vector<double> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
  return Polynomial(std::move(out));
}

double poly_eval(const Polynomial& p, double x) noexcept { return p(x); }

Polynomial poly_derivative(const Polynomial& p) {
  const auto c = p.coeffs();
  if (c.size() <= 1) return {};
  std::vector<double> out(c.size() - 1);
  for (std::size_t i = 0; i + 1 < c.size(); ++i) out[i] = static_cast<double>(i + 1) * c[i + 1];
  return Polynomial(std::move(out));
}

double integral_unit(const Polynomial& p) noexcept {
  double sum = 0.0;
  const auto c = p.coeffs();
  for (std::size_t i = 0; i < c.size(); i += 2) sum += c[i] * monomial_moment(static_cast<int>(i));
  return sum;
}

double inner_product(const Polynomial& p, const Polynomial& q) noexcept {
  // Sum over coefficient pairs directly rather than forming p*q, so each
  // term is rounded once.
  double sum = 0.0;
  const auto a = p.coeffs();
  const auto b = q.coeffs();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = i % 2; j < b.size(); j += 2) sum += a[i] * b[j] * monomial_moment(static_cast<int>(i + j));
  }
  return sum;
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  char buf[64];
  const auto c = p.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0.0) continue;
    double mag = c[i];
    if (!out.empty()) {
      out += mag < 0 ? " - " : " + ";
      mag = std::abs(mag);
    }
    std::snprintf(buf, sizeof buf, "%.17g", mag);
    out += buf;
    if (i == 1) out += "*x";
    if (i > 1) out += "*x^" + std::to_string(i);
  }
  return out;
}

}  // namespace calcverify
