#include "rational.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <numeric>

#include "error.hpp"

namespace srk {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  if (text.empty()) throw InvalidError("malformed fraction '" + std::string(whole) + "'");
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) throw InvalidError("malformed fraction '" + std::string(whole) + "'");
  std::int64_t value = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw InvalidError("malformed fraction '" + std::string(whole) + "'");
    value = value * 10 + (text[i] - '0');
  }
  return text[0] == '-' ? -value : value;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  require(den_ != 0, "rational denominator must be nonzero");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

Rational Rational::parse(std::string_view text) {
  // strip surrounding whitespace
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw InvalidError("malformed fraction ''");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t n = parse_int(text.substr(0, slash), text);
    std::int64_t d = parse_int(text.substr(slash + 1), text);
    if (d == 0) throw InvalidError("malformed fraction '" + std::string(text) + "': zero denominator");
    return Rational(n, d);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    std::int64_t whole = parse_int(text.substr(0, dot), text);
    std::int64_t scale = 1;
    std::int64_t digits = frac.empty() ? 0 : parse_int(frac, text);
    if (digits < 0) throw InvalidError("malformed fraction '" + std::string(text) + "'");
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    bool negative = text[0] == '-';
    std::int64_t n = (negative ? -whole : whole) * scale + digits;
    return Rational(negative ? -n : n, scale);
  }
  return Rational(parse_int(text, text), 1);
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  return Rational(num_ * o.num_, den_ * o.den_);
}

double round_significant(double x, int digits) {
  if (x == 0.0 || digits <= 0) return x == 0.0 ? 0.0 : x;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*e", digits - 1, x);
  return std::strtod(buf, nullptr);
}

}  // namespace srk
