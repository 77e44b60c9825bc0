#include "superosc/mpnum/big_real.hpp"

#include <gmp.h>

#include <algorithm>
#include <cctype>
#include <string>
#include <utility>

#include "superosc/errors.hpp"

namespace superosc {

namespace {

constexpr mpfr_rnd_t kRound = MPFR_RNDN;

mpfr_prec_t max_prec(const BigReal& a, const BigReal& b) {
  return std::max(mpfr_get_prec(a.get()), mpfr_get_prec(b.get()));
}

/// RAII holder for an mpq_t.
struct Rational {
  mpq_t q;
  Rational() { mpq_init(q); }
  ~Rational() { mpq_clear(q); }
  Rational(const Rational&) = delete;
  Rational& operator=(const Rational&) = delete;
};

/// Exact decimal literal -> rational. Returns false on malformed input and
/// sets `bad` to the offending offset.
bool decimal_to_rational(std::string_view s, mpq_t out, std::size_t& bad) {
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    negative = s[i] == '-';
    ++i;
  }
  std::string digits;
  long fraction_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      any_digit = true;
      if (seen_point) ++fraction_digits;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) {
    bad = i;
    return false;
  }
  long exponent = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      exp_negative = s[i] == '-';
      ++i;
    }
    bool exp_digit = false;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
      exponent = exponent * 10 + (s[i] - '0');
      exp_digit = true;
      if (exponent > 100000) {
        bad = i;
        return false;
      }
    }
    if (!exp_digit) {
      bad = i;
      return false;
    }
    if (exp_negative) exponent = -exponent;
  }
  if (i != s.size()) {
    bad = i;
    return false;
  }

  mpz_t num, scale;
  mpz_init_set_str(num, digits.c_str(), 10);
  mpz_init(scale);
  long shift = exponent - fraction_digits;
  mpz_ui_pow_ui(scale, 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  if (shift >= 0) {
    mpz_mul(num, num, scale);
    mpq_set_z(out, num);
  } else {
    mpq_set_num(out, num);
    mpq_set_den(out, scale);
    mpq_canonicalize(out);
  }
  if (negative) mpq_neg(out, out);
  mpz_clear(num);
  mpz_clear(scale);
  return true;
}

}  // namespace

int Precision::decimal_digits() const noexcept {
  return static_cast<int>((bits_ * 3 + 9) / 10);
}

BigReal::BigReal() : BigReal(Precision(Precision::kMinimumBits)) {}

BigReal::BigReal(Precision precision) {
  mpfr_init2(value_, precision.bits());
  mpfr_set_zero(value_, 1);
}

BigReal::BigReal(long value, Precision precision) {
  mpfr_init2(value_, precision.bits());
  mpfr_set_si(value_, value, kRound);
}

BigReal::~BigReal() { mpfr_clear(value_); }

BigReal::BigReal(const BigReal& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, kRound);
}

BigReal::BigReal(BigReal&& other) noexcept {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_swap(value_, other.value_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, kRound);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigReal BigReal::parse(std::string_view text, Precision precision) {
  std::size_t slash = text.find('/');
  Rational value;
  std::size_t bad = 0;
  std::string literal(text);
  if (slash == std::string_view::npos) {
    if (!decimal_to_rational(text, value.q, bad)) {
      throw ParseError("malformed number '" + literal + "'", 1, static_cast<int>(bad) + 1);
    }
  } else {
    Rational den;
    if (!decimal_to_rational(text.substr(0, slash), value.q, bad)) {
      throw ParseError("malformed numerator in '" + literal + "'", 1, static_cast<int>(bad) + 1);
    }
    if (!decimal_to_rational(text.substr(slash + 1), den.q, bad)) {
      throw ParseError("malformed denominator in '" + literal + "'", 1,
                       static_cast<int>(slash + bad) + 2);
    }
    if (mpq_sgn(den.q) == 0) {
      throw ParseError("zero denominator in '" + literal + "'", 1, static_cast<int>(slash) + 2);
    }
    mpq_div(value.q, value.q, den.q);
  }
  BigReal out(precision);
  mpfr_set_q(out.value_, value.q, kRound);
  return out;
}

BigReal BigReal::rational(long numerator, long denominator, Precision precision) {
  Rational q;
  mpq_set_si(q.q, numerator, 1);
  Rational d;
  mpq_set_si(d.q, denominator, 1);
  mpq_div(q.q, q.q, d.q);
  BigReal out(precision);
  mpfr_set_q(out.value_, q.q, kRound);
  return out;
}

BigReal BigReal::from_double(double value, Precision precision) {
  BigReal out(precision);
  mpfr_set_d(out.value_, value, kRound);
  return out;
}

BigReal BigReal::rounded_to(Precision precision) const {
  BigReal out(precision);
  mpfr_set(out.value_, value_, kRound);
  return out;
}

double BigReal::to_double() const { return mpfr_get_d(value_, kRound); }

long BigReal::to_long() const { return mpfr_get_si(value_, kRound); }

std::string BigReal::to_string(int significant_digits) const {
  if (significant_digits < 1) significant_digits = 1;
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%.*Re", significant_digits - 1, value_);
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

std::string BigReal::to_string() const { return to_string(precision().decimal_digits()); }

void BigReal::ensure_precision_at_least(mpfr_prec_t bits) {
  if (mpfr_get_prec(value_) < bits) mpfr_prec_round(value_, bits, kRound);
}

BigReal& BigReal::operator+=(const BigReal& rhs) {
  ensure_precision_at_least(mpfr_get_prec(rhs.value_));
  mpfr_add(value_, value_, rhs.value_, kRound);
  return *this;
}

BigReal& BigReal::operator-=(const BigReal& rhs) {
  ensure_precision_at_least(mpfr_get_prec(rhs.value_));
  mpfr_sub(value_, value_, rhs.value_, kRound);
  return *this;
}

BigReal& BigReal::operator*=(const BigReal& rhs) {
  ensure_precision_at_least(mpfr_get_prec(rhs.value_));
  mpfr_mul(value_, value_, rhs.value_, kRound);
  return *this;
}

BigReal& BigReal::operator/=(const BigReal& rhs) {
  ensure_precision_at_least(mpfr_get_prec(rhs.value_));
  mpfr_div(value_, value_, rhs.value_, kRound);
  return *this;
}

BigReal& BigReal::operator+=(long rhs) {
  mpfr_add_si(value_, value_, rhs, kRound);
  return *this;
}

BigReal& BigReal::operator-=(long rhs) {
  mpfr_sub_si(value_, value_, rhs, kRound);
  return *this;
}

BigReal& BigReal::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, kRound);
  return *this;
}

BigReal& BigReal::operator/=(long rhs) {
  mpfr_div_si(value_, value_, rhs, kRound);
  return *this;
}

BigReal BigReal::operator-() const {
  BigReal out(precision());
  mpfr_neg(out.value_, value_, kRound);
  return out;
}

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal out(Precision(max_prec(a, b)));
  mpfr_add(out.value_, a.value_, b.value_, kRound);
  return out;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal out(Precision(max_prec(a, b)));
  mpfr_sub(out.value_, a.value_, b.value_, kRound);
  return out;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal out(Precision(max_prec(a, b)));
  mpfr_mul(out.value_, a.value_, b.value_, kRound);
  return out;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
  BigReal out(Precision(max_prec(a, b)));
  mpfr_div(out.value_, a.value_, b.value_, kRound);
  return out;
}

BigReal operator+(const BigReal& a, long b) {
  BigReal out(a.precision());
  mpfr_add_si(out.value_, a.value_, b, kRound);
  return out;
}

BigReal operator-(const BigReal& a, long b) {
  BigReal out(a.precision());
  mpfr_sub_si(out.value_, a.value_, b, kRound);
  return out;
}

BigReal operator*(const BigReal& a, long b) {
  BigReal out(a.precision());
  mpfr_mul_si(out.value_, a.value_, b, kRound);
  return out;
}

BigReal operator/(const BigReal& a, long b) {
  BigReal out(a.precision());
  mpfr_div_si(out.value_, a.value_, b, kRound);
  return out;
}

BigReal operator-(long a, const BigReal& b) {
  BigReal out(b.precision());
  mpfr_si_sub(out.value_, a, b.value_, kRound);
  return out;
}

BigReal operator/(long a, const BigReal& b) {
  BigReal out(b.precision());
  mpfr_si_div(out.value_, a, b.value_, kRound);
  return out;
}

bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

bool operator==(const BigReal& a, long b) { return !mpfr_nan_p(a.value_) && mpfr_cmp_si(a.value_, b) == 0; }

std::partial_ordering operator<=>(const BigReal& a, long b) {
  if (mpfr_nan_p(a.value_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp_si(a.value_, b);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

BigReal abs(const BigReal& x) {
  BigReal out(x.precision());
  mpfr_abs(out.get(), x.get(), kRound);
  return out;
}

BigReal sqrt(const BigReal& x) {
  BigReal out(x.precision());
  mpfr_sqrt(out.get(), x.get(), kRound);
  return out;
}

BigReal sin(const BigReal& x) {
  BigReal out(x.precision());
  mpfr_sin(out.get(), x.get(), kRound);
  return out;
}

BigReal cos(const BigReal& x) {
  BigReal out(x.precision());
  mpfr_cos(out.get(), x.get(), kRound);
  return out;
}

void sin_cos(const BigReal& x, BigReal& s, BigReal& c) {
  s = BigReal(x.precision());
  c = BigReal(x.precision());
  mpfr_sin_cos(s.get(), c.get(), x.get(), kRound);
}

BigReal exp(const BigReal& x) {
  BigReal out(x.precision());
  mpfr_exp(out.get(), x.get(), kRound);
  return out;
}

BigReal log(const BigReal& x) {
  BigReal out(x.precision());
  mpfr_log(out.get(), x.get(), kRound);
  return out;
}

BigReal log2(const BigReal& x) {
  BigReal out(x.precision());
  mpfr_log2(out.get(), x.get(), kRound);
  return out;
}

BigReal pow(const BigReal& x, long n) {
  BigReal out(x.precision());
  mpfr_pow_si(out.get(), x.get(), n, kRound);
  return out;
}

BigReal pow(const BigReal& x, const BigReal& y) {
  BigReal out(max(x.precision(), y.precision()));
  mpfr_pow(out.get(), x.get(), y.get(), kRound);
  return out;
}

BigReal floor(const BigReal& x) {
  BigReal out(x.precision());
  mpfr_floor(out.get(), x.get());
  return out;
}

BigReal round(const BigReal& x) {
  BigReal out(x.precision());
  mpfr_round(out.get(), x.get());
  return out;
}

BigReal ldexp(const BigReal& x, long e) {
  BigReal out(x.precision());
  mpfr_mul_2si(out.get(), x.get(), e, kRound);
  return out;
}

BigReal pi(Precision precision) {
  BigReal out(precision);
  mpfr_const_pi(out.get(), kRound);
  return out;
}

BigReal factorial(long n, Precision precision) {
  BigReal out(precision);
  mpfr_fac_ui(out.get(), static_cast<unsigned long>(n), kRound);
  return out;
}

BigReal min(const BigReal& a, const BigReal& b) { return b < a ? b : a; }

BigReal max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }

BigReal half_precision_epsilon(Precision precision) {
  return ldexp(BigReal(1, precision), -precision.bits() / 2);
}

}  // namespace superosc
