#include "thetakit/scaled.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "thetakit/errors.hpp"

namespace thetakit {

namespace {
constexpr double kLn2 = std::numbers::ln2;
}

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::WrongDegree: return "WrongDegree";
    case ErrorCode::EvaluationAtBranchPoint: return "EvaluationAtBranchPoint";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::IllConditionedAPeriods: return "IllConditionedAPeriods";
    case ErrorCode::PathTooCloseToBranchPoint: return "PathTooCloseToBranchPoint";
    case ErrorCode::InvalidTau: return "InvalidTau";
    case ErrorCode::RadiusOverflow: return "RadiusOverflow";
    case ErrorCode::PathDegenerate: return "PathDegenerate";
    case ErrorCode::RiemannVectorAmbiguous: return "RiemannVectorAmbiguous";
    case ErrorCode::SamplingExhausted: return "SamplingExhausted";
    case ErrorCode::NoNonsingularOddCharacteristic: return "NoNonsingularOddCharacteristic";
    case ErrorCode::HalfDiffVanishes: return "HalfDiffVanishes";
    case ErrorCode::DenominatorOnThetaDivisor: return "DenominatorOnThetaDivisor";
    case ErrorCode::DiagonalEvaluation: return "DiagonalEvaluation";
    case ErrorCode::WeightLedgerMismatch: return "WeightLedgerMismatch";
    case ErrorCode::NotImplemented: return "NotImplemented";
    case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::NonSquareBlocks: return "NonSquareBlocks";
    case ErrorCode::NotEvenPartition: return "NotEvenPartition";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

ScaledComplex::ScaledComplex(cplx value) : mantissa_(value), exponent_(0.0) { normalize(); }

ScaledComplex::ScaledComplex(cplx mantissa, double exponent)
    : mantissa_(mantissa), exponent_(exponent) {
  normalize();
}

ScaledComplex ScaledComplex::from_exp(cplx w) {
  const double k = std::floor(w.real() / kLn2);
  const double rest = w.real() - k * kLn2;
  ScaledComplex out;
  out.mantissa_ = std::polar(std::exp(rest), w.imag());
  out.exponent_ = k * kLn2;
  out.normalize();
  return out;
}

void ScaledComplex::normalize() {
  const double a = std::abs(mantissa_);
  if (a == 0.0 || !std::isfinite(a)) {
    if (a == 0.0) {
      mantissa_ = cplx(0.0, 0.0);
      exponent_ = 0.0;
    }
    return;
  }
  const double total = std::log(a) + exponent_;
  const double k = std::floor(total / kLn2);
  const double target = k * kLn2;
  mantissa_ *= std::exp(exponent_ - target);
  exponent_ = target;
  // Rounding can push the modulus to exactly 2 or just below 1.
  const double m = std::abs(mantissa_);
  if (m >= 2.0) {
    mantissa_ *= 0.5;
    exponent_ += kLn2;
  } else if (m < 1.0) {
    mantissa_ *= 2.0;
    exponent_ -= kLn2;
  }
}

double ScaledComplex::log_abs() const noexcept {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return std::log(std::abs(mantissa_)) + exponent_;
}

cplx ScaledComplex::value() const noexcept {
  if (is_zero()) return {0.0, 0.0};
  return mantissa_ * std::exp(exponent_);
}

ScaledComplex& ScaledComplex::operator*=(const ScaledComplex& rhs) {
  if (is_zero() || rhs.is_zero()) {
    *this = ScaledComplex();
    return *this;
  }
  mantissa_ *= rhs.mantissa_;
  exponent_ += rhs.exponent_;
  normalize();
  return *this;
}

ScaledComplex& ScaledComplex::operator/=(const ScaledComplex& rhs) {
  if (rhs.is_zero()) throw Error(ErrorCode::InvalidArgument, "scaled division by zero");
  if (is_zero()) return *this;
  mantissa_ /= rhs.mantissa_;
  exponent_ -= rhs.exponent_;
  normalize();
  return *this;
}

ScaledComplex& ScaledComplex::operator+=(const ScaledComplex& rhs) {
  if (rhs.is_zero()) return *this;
  if (is_zero()) {
    *this = rhs;
    return *this;
  }
  const double e = std::max(exponent_, rhs.exponent_);
  mantissa_ = mantissa_ * std::exp(exponent_ - e) + rhs.mantissa_ * std::exp(rhs.exponent_ - e);
  exponent_ = e;
  normalize();
  return *this;
}

ScaledComplex& ScaledComplex::operator-=(const ScaledComplex& rhs) { return *this += -rhs; }

ScaledComplex ScaledComplex::pow(int k) const {
  if (k == 0) return one();
  if (is_zero()) return {};
  ScaledComplex base = k > 0 ? *this : one() / *this;
  unsigned n = static_cast<unsigned>(k > 0 ? k : -k);
  ScaledComplex acc = one();
  while (n != 0) {
    if (n & 1U) acc *= base;
    base *= base;
    n >>= 1U;
  }
  return acc;
}

ScaledComplex ScaledComplex::sqrt() const {
  if (is_zero()) return {};
  return ScaledComplex(std::sqrt(mantissa_), 0.5 * exponent_);
}

double relative_difference(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.is_zero() && b.is_zero()) return 0.0;
  const double e = std::max(a.log_abs(), b.log_abs());
  const cplx ra = a.is_zero() ? cplx{} : a.mantissa() * std::exp(a.exponent() - e);
  const cplx rb = b.is_zero() ? cplx{} : b.mantissa() * std::exp(b.exponent() - e);
  return std::abs(ra - rb);
}

double abs_ratio(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.is_zero()) return 0.0;
  if (b.is_zero()) return std::numeric_limits<double>::infinity();
  return std::exp(a.log_abs() - b.log_abs());
}

std::ostream& operator<<(std::ostream& os, const ScaledComplex& v) {
  return os << v.mantissa() << "*exp(" << v.exponent() << ")";
}

}  // namespace thetakit
