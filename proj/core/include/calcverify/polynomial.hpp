#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace calcverify {

/// Dense real polynomial in the monomial basis; coefficient i multiplies x^i.
///
/// The coefficient vector is kept trimmed: the highest stored coefficient
/// is nonzero, and the zero polynomial stores nothing (degree -1).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);
  Polynomial(std::initializer_list<double> coeffs);

  /// c * x^degree
  static Polynomial monomial(int degree, double c = 1.0);

  std::span<const double> coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// Coefficient of x^i; zero beyond the degree.
  double operator[](std::size_t i) const noexcept {
    return i < coeffs_.size() ? coeffs_[i] : 0.0;
  }

  /// Horner evaluation.
  double operator()(double x) const noexcept;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(double s);

  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
  friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
  friend Polynomial operator*(Polynomial p, double s) { return p *= s; }
  friend Polynomial operator*(double s, Polynomial p) { return p *= s; }
  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim() noexcept;

  std::vector<double> coeffs_;
};

double poly_eval(const Polynomial& p, double x) noexcept;

/// Termwise derivative: coefficient i of the result is (i+1) * p[i+1].
Polynomial poly_derivative(const Polynomial& p);

/// Exact moment of the monomial x^m over [-1, 1]: 2/(m+1) for even m, else 0.
constexpr double monomial_moment(int m) noexcept {
  return (m % 2 != 0) ? 0.0 : 2.0 / static_cast<double>(m + 1);
}

/// Integral of p over [-1, 1], computed from the coefficients with the exact
/// monomial moments.
double integral_unit(const Polynomial& p) noexcept;

/// L2 inner product over [-1, 1], computed analytically from coefficients.
double inner_product(const Polynomial& p, const Polynomial& q) noexcept;

/// Human-readable form, e.g. "-0.5 + 1.5*x^2".
std::string to_string(const Polynomial& p);

}  // namespace calcverify
