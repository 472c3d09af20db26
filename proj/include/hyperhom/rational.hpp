#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hyperhom {

using BigInt = mpz_class;

/// Exact rational number, always held in lowest terms with a positive
/// denominator. Serializes as "num/den", with "/den" omitted when den == 1.
class Rational {
public:
  Rational() = default;
  Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : v_(v) {}   // NOLINT(google-explicit-constructor)
  explicit Rational(const BigInt& v) : v_(v) {}
  Rational(const BigInt& num, const BigInt& den);

  /// Parses "num" or "num/den" (optional leading '-', den > 0).
  static Rational parse(std::string_view text);

  [[nodiscard]] BigInt numerator() const { return v_.get_num(); }
  [[nodiscard]] BigInt denominator() const { return v_.get_den(); }
  [[nodiscard]] int sign() const { return sgn(v_); }
  [[nodiscard]] bool is_zero() const { return sgn(v_) == 0; }
  [[nodiscard]] bool is_integer() const { return v_.get_den() == 1; }
  [[nodiscard]] std::string to_string() const;

  [[nodiscard]] Rational pow(unsigned long e) const;

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { Rational r; r.v_ = -a.v_; return r; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

  [[nodiscard]] const mpq_class& raw() const { return v_; }

private:
  mpq_class v_;
};

/// Decimal string of an arbitrary-precision integer.
std::string to_string(const BigInt& v);

BigInt pow(const BigInt& base, unsigned long e);

}  // namespace hyperhom
