#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <string>

#include "dirichlet/errors.hpp"

namespace dirichlet {

/// Exact rational with 64-bit numerator/denominator, always normalized:
/// gcd(num, den) = 1 and den > 0. Intermediates use __int128 and throw on
/// overflow of the reduced result, so semigroup arithmetic is exact or fails
/// loudly, never silently wrong.
class Rational {
public:
  Rational() : num_(0), den_(1) {}

  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    num_ = g ? num / g : num;
    den_ = g ? den / g : den;
  }

  // NOLINTNEXTLINE: implicit integer promotion is intended
  Rational(std::int64_t n) : num_(n), den_(1) {}

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double toDouble() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    const __int128 n = static_cast<__int128>(a.num_) * b.den_ +
                       static_cast<__int128>(b.num_) * a.den_;
    const __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return fromWide(n, d);
  }

  friend Rational operator-(const Rational& a, const Rational& b) {
    const __int128 n = static_cast<__int128>(a.num_) * b.den_ -
                       static_cast<__int128>(b.num_) * a.den_;
    const __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return fromWide(n, d);
  }

  friend Rational operator*(const Rational& a, const Rational& b) {
    const __int128 n = static_cast<__int128>(a.num_) * b.num_;
    const __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return fromWide(n, d);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <
           static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return !(a < b);
  }

  /// Renders as "num/den", the on-disk form.
  std::string toString() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Parses "num/den" or a bare integer.
  static Rational parse(const std::string& text) {
    try {
      const auto slash = text.find('/');
      if (slash == std::string::npos) {
        std::size_t pos = 0;
        const std::int64_t n = std::stoll(text, &pos);
        if (pos != text.size()) throw ParseError("bad rational: " + text);
        return Rational(n);
      }
      std::size_t posN = 0, posD = 0;
      const std::string numText = text.substr(0, slash);
      const std::string denText = text.substr(slash + 1);
      const std::int64_t n = std::stoll(numText, &posN);
      const std::int64_t d = std::stoll(denText, &posD);
      if (posN != numText.size() || posD != denText.size() || denText.empty() ||
          d == 0)
        throw ParseError("bad rational: " + text);
      return Rational(n, d);
    } catch (const std::invalid_argument&) {
      throw ParseError("bad rational: " + text);
    } catch (const std::out_of_range&) {
      throw ParseError("rational out of range: " + text);
    }
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.toString();
  }

private:
  static Rational fromWide(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const __int128 g = gcdWide(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
      throw Error("rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  static __int128 gcdWide(__int128 a, __int128 b) {
    while (a) {
      const __int128 t = b % a;
      b = a;
      a = t;
    }
    return b;
  }

  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace dirichlet

template <>
struct std::hash<dirichlet::Rational> {
  std::size_t operator()(const dirichlet::Rational& r) const noexcept {
    const std::size_t h1 = std::hash<std::int64_t>{}(r.num());
    const std::size_t h2 = std::hash<std::int64_t>{}(r.den());
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
  }
};
