#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace nqc {

using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws ParseError.
Rational parse_rational(std::string_view text);

/// Always "p/q" (with q = 1 for integers), so serialized output is uniform.
std::string format_rational(const Rational& value);

/// Gaussian rational re + i*im. Both parts are kept in canonical reduced form,
/// so equality is plain structural equality.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(Rational re, Rational im = 0);

  static Scalar imaginary_unit() { return Scalar(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Scalar conj() const;
  /// Squared modulus re^2 + im^2; always rational.
  Rational norm2() const;
  /// Throws ArgumentError on division by zero.
  Scalar inverse() const;

  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other) { return *this *= other.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Human-readable form such as "3/2", "-i", "1/2+3/4i".
  std::string to_string() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Polynomial in epsilon with Scalar coefficients, degree 0 first.
/// Trailing zero coefficients are never stored; the zero polynomial is empty.
class EpsScalar {
 public:
  EpsScalar() = default;
  EpsScalar(const Scalar& constant);  // NOLINT(google-explicit-constructor)
  EpsScalar(long constant) : EpsScalar(Scalar(constant)) {}  // NOLINT
  explicit EpsScalar(std::vector<Scalar> coeffs);

  /// The monomial c * eps^degree.
  static EpsScalar monomial(const Scalar& c, std::size_t degree);

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree of the polynomial; -1 for zero.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  /// Lowest degree with a nonzero coefficient; -1 for zero.
  long valuation() const;
  /// Coefficient of eps^d (zero past the degree).
  Scalar coefficient(std::size_t d) const;
  const std::vector<Scalar>& coefficients() const { return coeffs_; }

  /// Drops every term of degree > max_degree.
  EpsScalar truncated(std::size_t max_degree) const;
  /// Product with all terms above max_degree discarded.
  static EpsScalar truncated_product(const EpsScalar& a, const EpsScalar& b,
                                     std::size_t max_degree);

  EpsScalar& operator+=(const EpsScalar& other);
  EpsScalar& operator-=(const EpsScalar& other);
  EpsScalar& operator*=(const EpsScalar& other);
  EpsScalar& operator*=(const Scalar& factor);

  friend EpsScalar operator+(EpsScalar a, const EpsScalar& b) { return a += b; }
  friend EpsScalar operator-(EpsScalar a, const EpsScalar& b) { return a -= b; }
  friend EpsScalar operator*(EpsScalar a, const EpsScalar& b) { return a *= b; }
  friend EpsScalar operator*(EpsScalar a, const Scalar& b) { return a *= b; }
  EpsScalar operator-() const;

  friend bool operator==(const EpsScalar& a, const EpsScalar& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const EpsScalar& a, const EpsScalar& b) { return !(a == b); }

  std::string to_string() const;

 private:
  void trim();
  std::vector<Scalar> coeffs_;
};

}  // namespace nqc
