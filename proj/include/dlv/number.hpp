#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace dlv {

// Reduced fraction with positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static std::optional<Rational> make(std::int64_t n, std::int64_t d);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

// A real parameter that stays exact while every operation it went through
// was rational. Overflow or an irrational operation drops to plain double.
class Number {
 public:
  Number() = default;
  Number(double v);  // NOLINT(google-explicit-constructor)
  Number(int v);     // NOLINT(google-explicit-constructor)
  Number(std::int64_t n, std::int64_t d);
  explicit Number(Rational q);

  // Accepts "3", "-2/7", "0.125", "1e-3", "inf" is rejected.
  static std::optional<Number> parse(const std::string& text);

  double value() const { return v_; }
  bool exact() const { return q_.has_value(); }
  const std::optional<Rational>& rational() const { return q_; }

  bool is_zero() const;
  int sign() const;

  // Exact "p/q" when rational, otherwise 17 significant digits.
  std::string str() const;

  friend Number operator+(const Number& a, const Number& b);
  friend Number operator-(const Number& a, const Number& b);
  friend Number operator*(const Number& a, const Number& b);
  friend Number operator/(const Number& a, const Number& b);
  Number operator-() const;

  Number& operator+=(const Number& o) { return *this = *this + o; }
  Number& operator-=(const Number& o) { return *this = *this - o; }
  Number& operator*=(const Number& o) { return *this = *this * o; }
  Number& operator/=(const Number& o) { return *this = *this / o; }

  // Equality is exact when both sides are exact, bitwise otherwise.
  friend bool operator==(const Number& a, const Number& b);
  friend bool operator<(const Number& a, const Number& b);
  friend bool operator>(const Number& a, const Number& b) { return b < a; }
  friend bool operator<=(const Number& a, const Number& b) { return !(b < a); }
  friend bool operator>=(const Number& a, const Number& b) { return !(a < b); }

 private:
  double v_ = 0.0;
  std::optional<Rational> q_ = Rational{0, 1};
};

// Square root that stays exact for perfect-square rationals.
Number sqrt(const Number& x);
Number abs(const Number& x);

// Equality with a relative tolerance, exact when both sides are rational.
bool near_equal(const Number& a, const Number& b, double tol = 1e-12);

std::string format_double(double v);

using ParamMap = std::map<std::string, Number>;

}  // namespace dlv
