#include "nqc/scalar.hpp"

#include <algorithm>
#include <cctype>

#include "nqc/error.hpp"

namespace nqc {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
  mpz_class d(std::string(den), 10);
  if (sgn(d) == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational value(n, d);
  value.canonicalize();
  return value;
}

std::string format_rational(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Scalar::Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

Scalar Scalar::conj() const { return Scalar(re_, -im_); }

Rational Scalar::norm2() const { return re_ * re_ + im_ * im_; }

Scalar Scalar::inverse() const {
  if (is_zero()) throw ArgumentError("division by zero scalar");
  if (is_real()) return Scalar(1 / re_);
  const Rational n = norm2();
  return Scalar(re_ / n, -im_ / n);
}

Scalar& Scalar::operator+=(const Scalar& other) {
  re_ += other.re_;
  if (sgn(other.im_) != 0) im_ += other.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
  re_ -= other.re_;
  if (sgn(other.im_) != 0) im_ -= other.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& other) {
  if (is_real() && other.is_real()) {
    re_ *= other.re_;
    return *this;
  }
  Rational re = re_ * other.re_ - im_ * other.im_;
  Rational im = re_ * other.im_ + im_ * other.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Scalar Scalar::operator-() const { return Scalar(-re_, -im_); }

std::string Scalar::to_string() const {
  if (is_real()) return re_.get_str();
  std::string out;
  if (sgn(re_) != 0) out = re_.get_str();
  if (im_ == 1) {
    out += out.empty() ? "i" : "+i";
  } else if (im_ == -1) {
    out += "-i";
  } else {
    if (!out.empty() && sgn(im_) > 0) out += "+";
    out += im_.get_str() + "i";
  }
  return out;
}

EpsScalar::EpsScalar(const Scalar& constant) {
  if (!constant.is_zero()) coeffs_.push_back(constant);
}

EpsScalar::EpsScalar(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

EpsScalar EpsScalar::monomial(const Scalar& c, std::size_t degree) {
  std::vector<Scalar> coeffs(degree + 1);
  coeffs[degree] = c;
  return EpsScalar(std::move(coeffs));
}

long EpsScalar::valuation() const {
  for (std::size_t d = 0; d < coeffs_.size(); ++d) {
    if (!coeffs_[d].is_zero()) return static_cast<long>(d);
  }
  return -1;
}

Scalar EpsScalar::coefficient(std::size_t d) const {
  return d < coeffs_.size() ? coeffs_[d] : Scalar();
}

EpsScalar EpsScalar::truncated(std::size_t max_degree) const {
  if (coeffs_.size() <= max_degree + 1) return *this;
  return EpsScalar(std::vector<Scalar>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(max_degree + 1)));
}

EpsScalar EpsScalar::truncated_product(const EpsScalar& a, const EpsScalar& b, std::size_t max_degree) {
  if (a.is_zero() || b.is_zero()) return {};
  const std::size_t top = std::min(a.coeffs_.size() + b.coeffs_.size() - 2, max_degree);
  std::vector<Scalar> out(top + 1);
  for (std::size_t i = 0; i < a.coeffs_.size() && i <= top; ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size() && i + j <= top; ++j) {
      if (b.coeffs_[j].is_zero()) continue;
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return EpsScalar(std::move(out));
}

EpsScalar& EpsScalar::operator+=(const EpsScalar& other) {
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t d = 0; d < other.coeffs_.size(); ++d) coeffs_[d] += other.coeffs_[d];
  trim();
  return *this;
}

EpsScalar& EpsScalar::operator-=(const EpsScalar& other) {
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t d = 0; d < other.coeffs_.size(); ++d) coeffs_[d] -= other.coeffs_[d];
  trim();
  return *this;
}

EpsScalar& EpsScalar::operator*=(const EpsScalar& other) {
  if (is_zero() || other.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  *this = truncated_product(*this, other, coeffs_.size() + other.coeffs_.size());
  return *this;
}

EpsScalar& EpsScalar::operator*=(const Scalar& factor) {
  for (auto& c : coeffs_) c *= factor;
  trim();
  return *this;
}

EpsScalar EpsScalar::operator-() const {
  EpsScalar out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

std::string EpsScalar::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t d = 0; d < coeffs_.size(); ++d) {
    if (coeffs_[d].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + coeffs_[d].to_string() + ")";
    if (d == 1) out += "e";
    if (d > 1) out += "e^" + std::to_string(d);
  }
  return out;
}

void EpsScalar::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

}  // namespace nqc
