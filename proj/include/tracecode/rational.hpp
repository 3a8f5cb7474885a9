#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "tracecode/errors.hpp"

namespace tracecode {

// Exact rational parameters so derived quantities are bit-reproducible.
// Parses "3/4", "0.25" and plain integers.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw parameter_error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double value() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  bool positive() const { return num > 0; }

  // a <= b without overflow on the sizes used here.
  friend bool operator<=(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den <=
           static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den <
           static_cast<__int128>(b.num) * a.den;
  }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  static Rational parse(const std::string& text) {
    if (text.empty()) throw parameter_error("empty rational");
    if (const auto slash = text.find('/'); slash != std::string::npos) {
      return Rational(std::stoll(text.substr(0, slash)),
                      std::stoll(text.substr(slash + 1)));
    }
    if (const auto dot = text.find('.'); dot != std::string::npos) {
      const std::string frac = text.substr(dot + 1);
      if (frac.size() > 15) throw parameter_error("decimal too long");
      long long den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
      const long long whole = dot == 0 ? 0 : std::stoll(text.substr(0, dot));
      const long long neg = text[0] == '-' ? -1 : 1;
      const long long part = frac.empty() ? 0 : std::stoll(frac);
      return Rational(whole * den + neg * part, den);
    }
    return Rational(std::stoll(text), 1);
  }
};

}  // namespace tracecode
