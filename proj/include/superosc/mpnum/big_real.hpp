#pragma once

#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

namespace superosc {

/// Working precision in bits. Never below 64.
class Precision {
 public:
  static constexpr long kMinimumBits = 64;

  constexpr explicit Precision(long bits) : bits_(bits < kMinimumBits ? kMinimumBits : bits) {}

  constexpr long bits() const noexcept { return bits_; }

  /// Decimal digits carried when serializing a value at this precision.
  int decimal_digits() const noexcept;

  friend constexpr auto operator<=>(Precision, Precision) = default;

 private:
  long bits_;
};

constexpr Precision max(Precision a, Precision b) { return a < b ? b : a; }

/// Arbitrary-precision real backed by an MPFR value.
///
/// Binary arithmetic yields a result at the larger of the two operand
/// precisions; mixed arithmetic with machine integers keeps the precision
/// of the BigReal operand. Rounding is always to nearest.
class BigReal {
 public:
  BigReal();
  explicit BigReal(Precision precision);
  BigReal(long value, Precision precision);
  ~BigReal();

  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;

  /// Parses a decimal ("-0.125", "1e-3") or rational ("-3/10") literal,
  /// correctly rounded at the given precision. Throws Error(ParseError).
  static BigReal parse(std::string_view text, Precision precision);

  /// Rational p/q correctly rounded.
  static BigReal rational(long numerator, long denominator, Precision precision);

  /// Exact conversion of a machine double (used only for random draws in tests
  /// and benchmarks, never for user input).
  static BigReal from_double(double value, Precision precision);

  Precision precision() const noexcept { return Precision(mpfr_get_prec(value_)); }

  /// Re-rounds the value to a new precision.
  BigReal rounded_to(Precision precision) const;

  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_ptr get() noexcept { return value_; }

  double to_double() const;
  long to_long() const;

  /// Scientific notation with the given number of significant digits.
  std::string to_string(int significant_digits) const;
  /// Scientific notation with the precision's serialization digit count.
  std::string to_string() const;

  bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(value_) != 0; }
  int sign() const noexcept { return mpfr_sgn(value_); }

  BigReal& operator+=(const BigReal& rhs);
  BigReal& operator-=(const BigReal& rhs);
  BigReal& operator*=(const BigReal& rhs);
  BigReal& operator/=(const BigReal& rhs);
  BigReal& operator+=(long rhs);
  BigReal& operator-=(long rhs);
  BigReal& operator*=(long rhs);
  BigReal& operator/=(long rhs);

  BigReal operator-() const;

  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);
  friend BigReal operator+(const BigReal& a, long b);
  friend BigReal operator-(const BigReal& a, long b);
  friend BigReal operator*(const BigReal& a, long b);
  friend BigReal operator/(const BigReal& a, long b);
  friend BigReal operator+(long a, const BigReal& b) { return b + a; }
  friend BigReal operator-(long a, const BigReal& b);
  friend BigReal operator*(long a, const BigReal& b) { return b * a; }
  friend BigReal operator/(long a, const BigReal& b);

  friend bool operator==(const BigReal& a, const BigReal& b);
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);
  friend bool operator==(const BigReal& a, long b);
  friend std::partial_ordering operator<=>(const BigReal& a, long b);

 private:
  void ensure_precision_at_least(mpfr_prec_t bits);

  mpfr_t value_;
};

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
void sin_cos(const BigReal& x, BigReal& s, BigReal& c);
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);
BigReal log2(const BigReal& x);
BigReal pow(const BigReal& x, long n);
BigReal pow(const BigReal& x, const BigReal& y);
BigReal floor(const BigReal& x);
BigReal round(const BigReal& x);
/// x * 2^e, exact.
BigReal ldexp(const BigReal& x, long e);
BigReal pi(Precision precision);
BigReal factorial(long n, Precision precision);
BigReal min(const BigReal& a, const BigReal& b);
BigReal max(const BigReal& a, const BigReal& b);

/// 2^(-bits/2): the solve and eigen tolerance for a working precision.
BigReal half_precision_epsilon(Precision precision);

}  // namespace superosc
