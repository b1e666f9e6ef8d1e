#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace srk {

// Exact rational with canonical reduced form and positive denominator.
// Coefficient tables keep entries rational so consistency sums and
// round-trips are exact; conversion to double happens once, at use.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den);
  Rational(std::int64_t num) : num_(num) {}  // NOLINT: implicit by design

  // Accepts "3", "-5", "4/3", "-1/2" and decimal forms like "1.5", "2.0".
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  // Canonical text: "n" when integral, "n/d" otherwise.
  std::string str() const;

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator-() const { return Rational(-num_, den_); }
  bool operator==(const Rational&) const = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Rounds x to the given number of significant decimal digits.
double round_significant(double x, int digits);

}  // namespace srk
