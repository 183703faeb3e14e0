#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace lpot {

/// Normalized fraction num/den with den > 0. Arithmetic throws std::overflow_error
/// rather than wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_integer() const noexcept { return den_ == 1; }
  std::int64_t floor() const noexcept;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  std::string to_string() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Complex exponent z of an index pair (z, p).
///
/// Exponents built from rationals stay exact under +, - and division by integers, so
/// real-part comparisons and "differs by an integer" tests are decided exactly. Once an
/// inexact (double) operand enters, the result is a double pair and comparisons use the
/// tolerance kExponentEps.
class Exponent {
 public:
  static constexpr double kExponentEps = 1e-12;

  Exponent() = default;
  Exponent(std::int64_t re) : re_q_(re) {}  // NOLINT(google-explicit-constructor)
  Exponent(Rational re, Rational im = Rational{}) : re_q_(re), im_q_(im) {}

  /// Recognizes values that are fractions with denominator <= 64 and keeps them exact.
  static Exponent from_double(double re, double im = 0.0);
  static Exponent inexact(double re, double im = 0.0);

  bool is_exact() const noexcept { return exact_; }
  double re() const noexcept { return exact_ ? re_q_.to_double() : re_d_; }
  double im() const noexcept { return exact_ ? im_q_.to_double() : im_d_; }
  /// Only meaningful when is_exact().
  const Rational& re_exact() const noexcept { return re_q_; }
  const Rational& im_exact() const noexcept { return im_q_; }

  friend Exponent operator+(const Exponent& a, const Exponent& b);
  friend Exponent operator-(const Exponent& a, const Exponent& b);
  Exponent operator-() const;
  Exponent times(std::int64_t factor) const;
  Exponent divided_by(std::int64_t divisor) const;

  /// Returns q when *this - base is the integer q (of either sign).
  std::optional<std::int64_t> integer_offset_from(const Exponent& base) const;

  /// Three-way comparison of real parts.
  int compare_re(const Exponent& other) const;
  int compare_re(double value) const;

  /// Total order used for canonical sorting: real part, then imaginary part.
  friend bool operator<(const Exponent& a, const Exponent& b);
  friend bool operator==(const Exponent& a, const Exponent& b);

  std::string to_string() const;

 private:
  bool exact_ = true;
  Rational re_q_{};
  Rational im_q_{};
  double re_d_ = 0.0;
  double im_d_ = 0.0;
};

}  // namespace lpot
