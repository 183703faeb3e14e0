#include "lpot/exponent.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace lpot {

namespace {

__extension__ typedef __int128 i128;

std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational exponent overflow");
  return static_cast<std::int64_t>(v);
}

Rational make(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 a = num < 0 ? -num : num;
  i128 b = den;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Rational(narrow(num), narrow(den));
}

bool near_integer(double v, std::int64_t& out) {
  double r = std::round(v);
  if (std::abs(v - r) <= Exponent::kExponentEps * std::max(1.0, std::abs(v))) {
    out = static_cast<std::int64_t>(r);
    return true;
  }
  return false;
}

std::optional<Rational> recognize(double v) {
  if (!std::isfinite(v) || std::abs(v) > 1e12) return std::nullopt;
  for (std::int64_t den = 1; den <= 64; ++den) {
    double scaled = v * static_cast<double>(den);
    double r = std::round(scaled);
    if (std::abs(scaled - r) <= 1e-13 * std::max(1.0, std::abs(scaled))) {
      return Rational(static_cast<std::int64_t>(r), den);
    }
  }
  return std::nullopt;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = num;
  den_ = den;
}

std::int64_t Rational::floor() const noexcept {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

Rational operator+(const Rational& a, const Rational& b) {
  return make(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
              static_cast<i128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return make(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  return make(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  i128 lhs = static_cast<i128>(a.num_) * b.den_;
  i128 rhs = static_cast<i128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Exponent Exponent::from_double(double re, double im) {
  auto rq = recognize(re);
  auto iq = recognize(im);
  if (rq && iq) return Exponent(*rq, *iq);
  return inexact(re, im);
}

Exponent Exponent::inexact(double re, double im) {
  if (!std::isfinite(re) || !std::isfinite(im)) throw std::invalid_argument("non-finite exponent");
  Exponent e;
  e.exact_ = false;
  e.re_d_ = re;
  e.im_d_ = im;
  return e;
}

Exponent operator+(const Exponent& a, const Exponent& b) {
  if (a.exact_ && b.exact_) return Exponent(a.re_q_ + b.re_q_, a.im_q_ + b.im_q_);
  return Exponent::inexact(a.re() + b.re(), a.im() + b.im());
}

Exponent operator-(const Exponent& a, const Exponent& b) { return a + (-b); }

Exponent Exponent::operator-() const {
  if (exact_) return Exponent(-re_q_, -im_q_);
  return inexact(-re_d_, -im_d_);
}

Exponent Exponent::times(std::int64_t factor) const {
  if (exact_) return Exponent(re_q_ * Rational(factor), im_q_ * Rational(factor));
  return inexact(re_d_ * static_cast<double>(factor), im_d_ * static_cast<double>(factor));
}

Exponent Exponent::divided_by(std::int64_t divisor) const {
  if (divisor == 0) throw std::domain_error("exponent divided by zero");
  if (exact_) return Exponent(re_q_ / Rational(divisor), im_q_ / Rational(divisor));
  return inexact(re_d_ / static_cast<double>(divisor), im_d_ / static_cast<double>(divisor));
}

std::optional<std::int64_t> Exponent::integer_offset_from(const Exponent& base) const {
  if (exact_ && base.exact_) {
    Rational dre = re_q_ - base.re_q_;
    Rational dim = im_q_ - base.im_q_;
    if (dim.num() != 0 || !dre.is_integer()) return std::nullopt;
    return dre.num();
  }
  std::int64_t q = 0;
  if (std::abs(im() - base.im()) > kExponentEps * std::max(1.0, std::abs(im()))) return std::nullopt;
  if (!near_integer(re() - base.re(), q)) return std::nullopt;
  return q;
}

int Exponent::compare_re(const Exponent& other) const {
  if (exact_ && other.exact_) {
    auto c = re_q_ <=> other.re_q_;
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  return compare_re(other.re());
}

int Exponent::compare_re(double value) const {
  double a = re();
  if (std::abs(a - value) <= kExponentEps * std::max(1.0, std::abs(value))) return 0;
  return a < value ? -1 : 1;
}

bool operator==(const Exponent& a, const Exponent& b) {
  if (a.exact_ && b.exact_) return a.re_q_ == b.re_q_ && a.im_q_ == b.im_q_;
  auto close = [](double x, double y) {
    return std::abs(x - y) <= Exponent::kExponentEps * std::max(1.0, std::abs(y));
  };
  return close(a.re(), b.re()) && close(a.im(), b.im());
}

bool operator<(const Exponent& a, const Exponent& b) {
  int c = a.compare_re(b);
  if (c != 0) return c < 0;
  if (a.exact_ && b.exact_) return a.im_q_ < b.im_q_;
  double ai = a.im();
  double bi = b.im();
  if (std::abs(ai - bi) <= Exponent::kExponentEps * std::max(1.0, std::abs(bi))) return false;
  return ai < bi;
}

std::string Exponent::to_string() const {
  std::ostringstream os;
  if (exact_) {
    os << re_q_.to_string();
    if (im_q_.num() != 0) os << (im_q_.num() > 0 ? "+" : "-") << (im_q_.num() > 0 ? im_q_ : -im_q_).to_string() << "i";
  } else {
    os.precision(15);
    os << re_d_;
    if (im_d_ != 0.0) os << (im_d_ > 0 ? "+" : "-") << std::abs(im_d_) << "i";
  }
  return os.str();
}

}  // namespace lpot
