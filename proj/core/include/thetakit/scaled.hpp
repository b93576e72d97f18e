#pragma once

#include <complex>
#include <iosfwd>
#include <limits>

namespace thetakit {

using cplx = std::complex<double>;

/// Complex number stored as mantissa * exp(exponent).
///
/// The mantissa is either exactly zero or has modulus in [1, 2); the exponent
/// is a real number on the natural-log scale.  Products and quotients add and
/// subtract exponents, so theta quotients whose factors individually overflow
/// double range stay representable.
class ScaledComplex {
 public:
  ScaledComplex() = default;
  ScaledComplex(cplx value);  // NOLINT(google-explicit-constructor)
  ScaledComplex(cplx mantissa, double exponent);

  /// exp(w) for complex w, without materializing the exponential.
  static ScaledComplex from_exp(cplx w);
  static ScaledComplex zero() { return {}; }
  static ScaledComplex one() { return ScaledComplex(cplx(1.0, 0.0)); }

  const cplx& mantissa() const noexcept { return mantissa_; }
  double exponent() const noexcept { return exponent_; }
  bool is_zero() const noexcept { return mantissa_ == cplx(0.0, 0.0); }

  /// log|value|; -inf for zero.
  double log_abs() const noexcept;
  /// Plain complex value; overflows to inf/0 outside double range.
  cplx value() const noexcept;

  ScaledComplex& operator*=(const ScaledComplex& rhs);
  ScaledComplex& operator/=(const ScaledComplex& rhs);
  ScaledComplex& operator+=(const ScaledComplex& rhs);
  ScaledComplex& operator-=(const ScaledComplex& rhs);
  ScaledComplex operator-() const { return ScaledComplex(-mantissa_, exponent_); }

  ScaledComplex pow(int k) const;
  /// Principal square root.
  ScaledComplex sqrt() const;

  friend ScaledComplex operator*(ScaledComplex a, const ScaledComplex& b) { return a *= b; }
  friend ScaledComplex operator/(ScaledComplex a, const ScaledComplex& b) { return a /= b; }
  friend ScaledComplex operator+(ScaledComplex a, const ScaledComplex& b) { return a += b; }
  friend ScaledComplex operator-(ScaledComplex a, const ScaledComplex& b) { return a -= b; }

 private:
  void normalize();

  cplx mantissa_{0.0, 0.0};
  double exponent_ = 0.0;
};

/// |a - b| / max(|a|, |b|), evaluated without leaving scaled form.
/// Returns 0 when both are zero.
double relative_difference(const ScaledComplex& a, const ScaledComplex& b);

/// |a| / |b| as a double (may be inf or 0 when out of range).
double abs_ratio(const ScaledComplex& a, const ScaledComplex& b);

std::ostream& operator<<(std::ostream& os, const ScaledComplex& v);

}  // namespace thetakit
