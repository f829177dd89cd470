#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace foa {

// Exact rational arithmetic for the arithmetic-puzzle environments. The
// 24-check must not rely on floating point, so intermediate results are
// kept as normalized fractions (denominator > 0, gcd(num, den) == 1).
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den);
  static Rational from_int(std::int64_t v) { return Rational(v, 1); }

  // Accepts integers ("12", "-3"), fractions ("8/3") and finite decimals
  // ("0.91" -> 91/100). Returns nullopt on anything else.
  static std::optional<Rational> parse(const std::string& text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  // Precondition: o != 0.
  Rational operator/(const Rational& o) const;

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;

  bool is_zero() const { return num_ == 0; }

  // Exact text form: integers plain, fractions as "num/den".
  std::string str() const;

 private:
  void normalize();

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::string join_rationals(const std::vector<Rational>& values, char sep = ' ');

}  // namespace foa
