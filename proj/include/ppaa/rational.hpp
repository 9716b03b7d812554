#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ppaa {

/// Exact, always-reduced fraction with a positive denominator.
class Rational {
 public:
  using Int = boost::multiprecision::cpp_int;

  Rational() = default;
  Rational(std::int64_t n) : value_(n) {}  // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    value_ = Value(Int(n), Int(d));
  }

  static Rational from_parts(const Int& n, const Int& d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    Rational r;
    r.value_ = Value(n, d);
    return r;
  }

  /// Parses "0.3", "1", "1.0", ".25" or "3/10" exactly. Returns nullopt on
  /// malformed text. Signs are accepted so callers can range-check.
  static std::optional<Rational> parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    bool negative = false;
    if (text.front() == '-' || text.front() == '+') {
      negative = text.front() == '-';
      text.remove_prefix(1);
    }
    if (text.empty()) return std::nullopt;
    auto is_digits = [](std::string_view s) {
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    Rational r;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      auto num = text.substr(0, slash);
      auto den = text.substr(slash + 1);
      if (!is_digits(num) || !is_digits(den)) return std::nullopt;
      Int d = decimal_int(den);
      if (d == 0) return std::nullopt;
      r = from_parts(decimal_int(num), d);
    } else {
      auto dot = text.find('.');
      std::string_view whole = text.substr(0, dot);
      std::string_view frac =
          dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
      if (whole.empty() && frac.empty()) return std::nullopt;
      if (!whole.empty() && !is_digits(whole)) return std::nullopt;
      if (dot != std::string_view::npos && !frac.empty() && !is_digits(frac))
        return std::nullopt;
      if (dot != std::string_view::npos && whole.empty() && frac.empty())
        return std::nullopt;
      std::string digits = std::string(whole) + std::string(frac);
      Int num = decimal_int(digits);
      Int den = boost::multiprecision::pow(Int(10), static_cast<unsigned>(frac.size()));
      r = from_parts(num, den);
    }
    if (negative) r = -r;
    return r;
  }

  Int numerator() const { return boost::multiprecision::numerator(value_); }
  Int denominator() const { return boost::multiprecision::denominator(value_); }

  bool is_zero() const { return value_ == 0; }

  Rational operator-() const {
    Rational r;
    r.value_ = -value_;
    return r;
  }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    value_ /= o.value_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// "n/d", or just "n" for integers.
  std::string str() const {
    auto d = denominator();
    if (d == 1) return numerator().str();
    return numerator().str() + "/" + d.str();
  }

  /// Exact decimal expansion if the denominator has only factors 2 and 5.
  std::optional<std::string> exact_decimal() const {
    Int d = denominator();
    unsigned twos = 0, fives = 0;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d != 1) return std::nullopt;
    unsigned places = std::max(twos, fives);
    Int scaled = numerator() * boost::multiprecision::pow(Int(10), places) / denominator();
    return render_fixed(scaled, places);
  }

  /// Decimal rendering rounded (half away from zero) to `significant` digits,
  /// trailing zeros stripped. Uses plain positional notation.
  std::string to_decimal(int significant = 12) const {
    if (is_zero()) return "0";
    Int num = Int(abs(numerator()));
    Int den = denominator();
    // Position of the leading digit: 10^lead <= num/den < 10^(lead+1).
    int lead = 0;
    {
      Int n = num, d = den;
      while (n >= d * 10) { d *= 10; ++lead; }
      while (n < d) { n *= 10; --lead; }
    }
    int places = significant - 1 - lead;  // digits after the point
    Int scaled;
    if (places >= 0) {
      Int p = boost::multiprecision::pow(Int(10), static_cast<unsigned>(places));
      scaled = round_div(num * p, den);
    } else {
      Int p = boost::multiprecision::pow(Int(10), static_cast<unsigned>(-places));
      scaled = round_div(num, den * p) * p;
      places = 0;
    }
    std::string out = render_fixed(scaled, static_cast<unsigned>(places));
    return numerator() < 0 ? "-" + out : out;
  }

  double to_double() const { return static_cast<double>(value_); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  using Value = boost::multiprecision::cpp_rational;

  // cpp_int reads a leading 0 as an octal prefix.
  static Int decimal_int(std::string_view digits) {
    while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
    return digits.empty() ? Int(0) : Int(std::string(digits));
  }

  static Int round_div(const Int& n, const Int& d) {
    Int q = n / d;
    Int rem = n - q * d;
    if (rem * 2 >= d) ++q;
    return q;
  }

  // scaled / 10^places as text, trailing fractional zeros removed.
  static std::string render_fixed(const Int& scaled, unsigned places) {
    bool neg = scaled < 0;
    std::string digits = Int(abs(scaled)).str();
    if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
    std::string whole = digits.substr(0, digits.size() - places);
    std::string frac = digits.substr(digits.size() - places);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    std::string out = frac.empty() ? whole : whole + "." + frac;
    return neg ? "-" + out : out;
  }

  Value value_{0};
};

}  // namespace ppaa
