#include "dlv/number.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace dlv {

namespace {

using i128 = __int128;

std::optional<Rational> reduce128(i128 n, i128 d) {
  if (d == 0) return std::nullopt;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 a = n < 0 ? -n : n;
  i128 b = d;
  while (b != 0) {
    i128 r = a % b;
    a = b;
    b = r;
  }
  if (a > 1) {
    n /= a;
    d /= a;
  }
  constexpr i128 lim = static_cast<i128>(INT64_MAX);
  if (n > lim || n < -lim || d > lim) return std::nullopt;
  return Rational{static_cast<std::int64_t>(n), static_cast<std::int64_t>(d)};
}

// Exact integer square root, or nullopt.
std::optional<std::int64_t> isqrt_exact(std::int64_t n) {
  if (n < 0) return std::nullopt;
  auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<long double>(n))));
  for (std::int64_t c = r > 1 ? r - 1 : 0; c <= r + 1; ++c) {
    if (static_cast<i128>(c) * c == n) return c;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Rational> Rational::make(std::int64_t n, std::int64_t d) {
  return reduce128(n, d);
}

Number::Number(double v) : v_(v), q_(std::nullopt) {
  // Small integers written as doubles are common in parameter tables.
  if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 9.0e15) {
    q_ = Rational{static_cast<std::int64_t>(v), 1};
  }
}

Number::Number(int v) : v_(v), q_(Rational{v, 1}) {}

Number::Number(std::int64_t n, std::int64_t d) {
  auto q = Rational::make(n, d);
  if (!q) throw std::invalid_argument("zero denominator");
  q_ = q;
  v_ = q->value();
}

Number::Number(Rational q) : v_(q.value()), q_(q) {}

std::optional<Number> Number::parse(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '\t') s.push_back(c);
  }
  if (s.empty()) return std::nullopt;

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    auto a = parse(s.substr(0, slash));
    auto b = parse(s.substr(slash + 1));
    if (!a || !b || b->is_zero()) return std::nullopt;
    return *a / *b;
  }

  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;

  // Exact decimal: mantissa digits times a power of ten.
  std::size_t epos = s.find_first_of("eE");
  std::string mant = s.substr(0, epos);
  long exp10 = 0;
  if (epos != std::string::npos) {
    auto r = std::from_chars(s.data() + epos + 1 + (s[epos + 1] == '+' ? 1 : 0), last, exp10);
    if (r.ec != std::errc()) return Number(v);
  }
  bool neg = false;
  std::size_t i = 0;
  if (i < mant.size() && (mant[i] == '-' || mant[i] == '+')) {
    neg = mant[i] == '-';
    ++i;
  }
  i128 digits = 0;
  int frac = 0;
  bool seen_dot = false;
  for (; i < mant.size(); ++i) {
    char c = mant[i];
    if (c == '.') {
      if (seen_dot) return Number(v);
      seen_dot = true;
      continue;
    }
    if (c < '0' || c > '9') return Number(v);
    digits = digits * 10 + (c - '0');
    if (digits > static_cast<i128>(INT64_MAX)) return Number(v);
    if (seen_dot) ++frac;
  }
  long e = exp10 - frac;
  if (e > 18 || e < -18) return Number(v);
  i128 num = neg ? -digits : digits;
  i128 den = 1;
  for (long k = 0; k < std::labs(e); ++k) (e > 0 ? num : den) *= 10;
  auto q = reduce128(num, den);
  if (!q) return Number(v);
  return Number(*q);
}

bool Number::is_zero() const { return q_ ? q_->num == 0 : v_ == 0.0; }

int Number::sign() const {
  if (q_) return (q_->num > 0) - (q_->num < 0);
  return (v_ > 0) - (v_ < 0);
}

std::string Number::str() const {
  if (q_) {
    if (q_->den == 1) return std::to_string(q_->num);
    return std::to_string(q_->num) + "/" + std::to_string(q_->den);
  }
  return format_double(v_);
}

Number operator+(const Number& a, const Number& b) {
  if (a.q_ && b.q_) {
    auto q = reduce128(static_cast<i128>(a.q_->num) * b.q_->den + static_cast<i128>(b.q_->num) * a.q_->den,
                       static_cast<i128>(a.q_->den) * b.q_->den);
    if (q) return Number(*q);
  }
  Number r;
  r.v_ = a.v_ + b.v_;
  r.q_.reset();
  return r;
}

Number operator-(const Number& a, const Number& b) { return a + (-b); }

Number operator*(const Number& a, const Number& b) {
  if (a.q_ && b.q_) {
    auto q = reduce128(static_cast<i128>(a.q_->num) * b.q_->num, static_cast<i128>(a.q_->den) * b.q_->den);
    if (q) return Number(*q);
  }
  Number r;
  r.v_ = a.v_ * b.v_;
  r.q_.reset();
  return r;
}

Number operator/(const Number& a, const Number& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.q_ && b.q_) {
    auto q = reduce128(static_cast<i128>(a.q_->num) * b.q_->den, static_cast<i128>(a.q_->den) * b.q_->num);
    if (q) return Number(*q);
  }
  Number r;
  r.v_ = a.v_ / b.v_;
  r.q_.reset();
  return r;
}

Number Number::operator-() const {
  Number r = *this;
  r.v_ = -v_;
  if (q_) r.q_ = Rational{-q_->num, q_->den};
  return r;
}

bool operator==(const Number& a, const Number& b) {
  if (a.q_ && b.q_) return *a.q_ == *b.q_;
  return a.v_ == b.v_;
}

bool operator<(const Number& a, const Number& b) {
  if (a.q_ && b.q_) {
    return static_cast<i128>(a.q_->num) * b.q_->den < static_cast<i128>(b.q_->num) * a.q_->den;
  }
  return a.v_ < b.v_;
}

Number sqrt(const Number& x) {
  if (x.sign() < 0) throw std::domain_error("square root of a negative number");
  if (x.exact()) {
    auto n = isqrt_exact(x.rational()->num);
    auto d = isqrt_exact(x.rational()->den);
    if (n && d) return Number(*n, *d);
  }
  return Number(std::sqrt(x.value()));
}

Number abs(const Number& x) { return x.sign() < 0 ? -x : x; }

bool near_equal(const Number& a, const Number& b, double tol) {
  if (a.exact() && b.exact()) return a == b;
  double scale = std::max({1.0, std::fabs(a.value()), std::fabs(b.value())});
  return std::fabs(a.value() - b.value()) <= tol * scale;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace dlv
