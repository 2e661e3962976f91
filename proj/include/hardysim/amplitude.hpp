// Copyright 2026 The hardysim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file amplitude.hpp
 * @brief Exact amplitudes in Q(i, sqrt2, sqrt3).
 *
 * A RadicalComplex holds eight rationals: real and imaginary coefficients
 * over the basis {1, sqrt2, sqrt3, sqrt6}. Basis index bit 0 stands for a
 * factor sqrt2 and bit 1 for sqrt3, so the product of two basis elements
 * is the element at (i XOR j) times 2 and/or 3 for every shared factor.
 *
 * Values are always canonical (each coefficient is a reduced fraction), so
 * equality is coefficient-wise equality.
 *
 * Text form, used by the CLI, JSON and circuit files:
 *
 *     (-1/2)*sqrt(3)+(1/6)*sqrt(6)*i
 *
 * The parser accepts a wider grammar with integer literals, `+ - * /`,
 * parentheses, `i` and `sqrt(<rational>)`; for example
 * `(-3/1)*sqrt(1)/sqrt(12)` reads back as `(-1/2)*sqrt(3)`.
 */

#pragma once

#include <array>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "hardysim/error.hpp"

namespace hardysim {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Renders a rational as `p/q` (always with a denominator).
inline std::string format_rational(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

inline double rational_to_double(const Rational& r) {
  return r.convert_to<double>();
}

/// Raised by parse_amplitude(); `offset` is a 0-based index into the input.
class AmplitudeSyntaxError : public Error {
 public:
  AmplitudeSyntaxError(std::size_t offset, const std::string& message)
      : Error("bad-amplitude", message), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class RadicalComplex {
 public:
  /// Radicands of the basis elements, in coefficient order.
  static constexpr std::array<int, 4> kRadicands = {1, 2, 3, 6};

  RadicalComplex() = default;
  RadicalComplex(const Rational& r) { re_[0] = r; }  // NOLINT: implicit by intent
  RadicalComplex(long long n) { re_[0] = n; }        // NOLINT

  static RadicalComplex i() {
    RadicalComplex out;
    out.im_[0] = 1;
    return out;
  }

  /// i^k for any integer k (quarter-turn phase).
  static RadicalComplex i_pow(long long k) {
    switch (((k % 4) + 4) % 4) {
      case 0: return RadicalComplex(1);
      case 1: return i();
      case 2: return RadicalComplex(-1);
      default: return -i();
    }
  }

  /// sqrt(k) for k in {1, 2, 3, 6}.
  static RadicalComplex basis(int radicand) {
    RadicalComplex out;
    out.re_[index_of(radicand)] = 1;
    return out;
  }

  /// Coefficient accessors; `radicand` is one of 1, 2, 3, 6.
  const Rational& re(int radicand) const { return re_[index_of(radicand)]; }
  const Rational& im(int radicand) const { return im_[index_of(radicand)]; }
  Rational& re(int radicand) { return re_[index_of(radicand)]; }
  Rational& im(int radicand) { return im_[index_of(radicand)]; }

  bool is_zero() const {
    for (std::size_t k = 0; k < 4; ++k) {
      if (re_[k] != 0 || im_[k] != 0) return false;
    }
    return true;
  }

  bool is_rational() const {
    for (std::size_t k = 0; k < 4; ++k) {
      if (im_[k] != 0 || (k > 0 && re_[k] != 0)) return false;
    }
    return true;
  }

  Rational as_rational() const {
    if (!is_rational()) {
      throw NotRational("amplitude " + to_string() + " is not rational");
    }
    return re_[0];
  }

  RadicalComplex conj() const {
    RadicalComplex out = *this;
    for (auto& c : out.im_) c = -c;
    return out;
  }

  /// a * conj(a). Imaginary coefficients of the result are zero.
  RadicalComplex norm_sq() const { return *this * conj(); }

  /// this / sqrt(q) for q > 0 with sqrt(q) in the basis span.
  RadicalComplex div_sqrt(const Rational& q) const;

  std::complex<double> to_float() const {
    static const std::array<double, 4> roots = {1.0, std::sqrt(2.0),
                                                std::sqrt(3.0), std::sqrt(6.0)};
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      re += rational_to_double(re_[k]) * roots[k];
      im += rational_to_double(im_[k]) * roots[k];
    }
    return {re, im};
  }

  std::string to_string() const;

  RadicalComplex operator-() const {
    RadicalComplex out = *this;
    for (std::size_t k = 0; k < 4; ++k) {
      out.re_[k] = -out.re_[k];
      out.im_[k] = -out.im_[k];
    }
    return out;
  }

  RadicalComplex& operator+=(const RadicalComplex& o) {
    for (std::size_t k = 0; k < 4; ++k) {
      re_[k] += o.re_[k];
      im_[k] += o.im_[k];
    }
    return *this;
  }
  RadicalComplex& operator-=(const RadicalComplex& o) { return *this += -o; }
  RadicalComplex& operator*=(const RadicalComplex& o) { return *this = *this * o; }

  friend RadicalComplex operator+(RadicalComplex a, const RadicalComplex& b) { return a += b; }
  friend RadicalComplex operator-(RadicalComplex a, const RadicalComplex& b) { return a -= b; }

  friend RadicalComplex operator*(const RadicalComplex& a, const RadicalComplex& b) {
    RadicalComplex out;
    for (std::size_t x = 0; x < 4; ++x) {
      for (std::size_t y = 0; y < 4; ++y) {
        const bool a_zero = a.re_[x] == 0 && a.im_[x] == 0;
        const bool b_zero = b.re_[y] == 0 && b.im_[y] == 0;
        if (a_zero || b_zero) continue;
        // sqrt2 shared -> 2, sqrt3 shared -> 3
        const std::size_t shared = x & y;
        const int scale = ((shared & 1U) ? 2 : 1) * ((shared & 2U) ? 3 : 1);
        const std::size_t z = x ^ y;
        out.re_[z] += scale * (a.re_[x] * b.re_[y] - a.im_[x] * b.im_[y]);
        out.im_[z] += scale * (a.re_[x] * b.im_[y] + a.im_[x] * b.re_[y]);
      }
    }
    return out;
  }

  bool operator==(const RadicalComplex& o) const { return re_ == o.re_ && im_ == o.im_; }
  bool operator!=(const RadicalComplex& o) const { return !(*this == o); }

  /// Multiplicative inverse of a value with exactly one nonzero coefficient.
  /// General inversion in the degree-8 field is intentionally unsupported.
  RadicalComplex inverse_monomial() const;

 private:
  static std::size_t index_of(int radicand) {
    switch (radicand) {
      case 1: return 0;
      case 2: return 1;
      case 3: return 2;
      case 6: return 3;
      default:
        throw UnsupportedRadical("sqrt(" + std::to_string(radicand) +
                                 ") is not a basis element");
    }
  }

  std::array<Rational, 4> re_{};
  std::array<Rational, 4> im_{};
};

/// Exact sqrt(q) when it lies in span{1, sqrt2, sqrt3, sqrt6}, i.e. when
/// q = s^2 * k with s rational and k in {1, 2, 3, 6}.
inline RadicalComplex sqrt_rational(const Rational& q) {
  if (q < 0) {
    throw UnsupportedRadical("sqrt of negative rational " + format_rational(q));
  }
  if (q == 0) return RadicalComplex();
  const BigInt den = boost::multiprecision::denominator(q);
  // sqrt(n/d) = sqrt(n*d)/d
  BigInt rest = boost::multiprecision::numerator(q) * den;
  BigInt square_part = 1;
  int radicand = 1;
  for (const int p : {2, 3}) {
    while (rest % (p * p) == 0) {
      rest /= p * p;
      square_part *= p;
    }
    if (rest % p == 0) {
      rest /= p;
      radicand *= p;
    }
  }
  const BigInt root = boost::multiprecision::sqrt(rest);
  if (root * root != rest) {
    throw UnsupportedRadical("sqrt(" + format_rational(q) +
                             ") is outside span{1, sqrt2, sqrt3, sqrt6}");
  }
  return RadicalComplex::basis(radicand) * RadicalComplex(Rational(square_part * root, den));
}

inline RadicalComplex RadicalComplex::inverse_monomial() const {
  std::size_t found = 4;
  bool imaginary = false;
  for (std::size_t k = 0; k < 4; ++k) {
    for (const bool imag : {false, true}) {
      if ((imag ? im_[k] : re_[k]) == 0) continue;
      if (found != 4) {
        throw UnsupportedRadical("cannot invert non-monomial amplitude " + to_string());
      }
      found = k;
      imaginary = imag;
    }
  }
  if (found == 4) throw ZeroState("division by zero amplitude");
  const int radicand = kRadicands[found];
  const Rational coeff = imaginary ? im_[found] : re_[found];
  // 1/(c*sqrt(k)) = sqrt(k)/(c*k); 1/i = -i
  RadicalComplex out = basis(radicand) * RadicalComplex(Rational(1) / (coeff * radicand));
  return imaginary ? out * -i() : out;
}

inline RadicalComplex RadicalComplex::div_sqrt(const Rational& q) const {
  if (q <= 0) {
    throw UnsupportedRadical("cannot divide by sqrt(" + format_rational(q) + ")");
  }
  return *this * sqrt_rational(q).inverse_monomial();
}

inline std::string RadicalComplex::to_string() const {
  std::string out;
  for (const bool imag : {false, true}) {
    for (std::size_t k = 0; k < 4; ++k) {
      const Rational& c = imag ? im_[k] : re_[k];
      if (c == 0) continue;
      if (!out.empty()) out += '+';
      out += '(' + format_rational(c) + ')';
      if (k > 0) out += "*sqrt(" + std::to_string(kRadicands[k]) + ')';
      if (imag) out += "*i";
    }
  }
  return out.empty() ? std::string("(0/1)") : out;
}

namespace detail {

class AmplitudeParser {
 public:
  explicit AmplitudeParser(std::string_view text) : text_(text) {}

  RadicalComplex parse() {
    RadicalComplex value = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw AmplitudeSyntaxError(pos_, what);
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  RadicalComplex expr() {
    RadicalComplex value = term();
    for (;;) {
      if (accept('+')) {
        value += term();
      } else if (accept('-')) {
        value -= term();
      } else {
        return value;
      }
    }
  }

  RadicalComplex term() {
    RadicalComplex value = factor();
    for (;;) {
      if (accept('*')) {
        value *= factor();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        const RadicalComplex divisor = factor();
        try {
          value *= divisor.inverse_monomial();
        } catch (const Error& e) {
          throw AmplitudeSyntaxError(at, e.what());
        }
      } else {
        return value;
      }
    }
  }

  RadicalComplex factor() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of amplitude");
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    if (accept('(')) {
      RadicalComplex inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return RadicalComplex(Rational(BigInt(std::string(text_.substr(start, pos_ - start)))));
    }
    if (text_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      expect('(');
      const std::size_t at = pos_;
      const RadicalComplex radicand = expr();
      expect(')');
      try {
        return sqrt_rational(radicand.as_rational());
      } catch (const Error& e) {
        throw AmplitudeSyntaxError(at, e.what());
      }
    }
    if (text_[pos_] == 'i') {
      ++pos_;
      return RadicalComplex::i();
    }
    fail("expected a number, '(', 'sqrt' or 'i'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the amplitude grammar; throws AmplitudeSyntaxError.
inline RadicalComplex parse_amplitude(std::string_view text) {
  return detail::AmplitudeParser(text).parse();
}

/// Parses `p/q`, `p` or `(p/q)` as a rational.
inline Rational parse_rational(std::string_view text) {
  const RadicalComplex value = parse_amplitude(text);
  if (!value.is_rational()) throw AmplitudeSyntaxError(0, "expected a rational");
  return value.as_rational();
}

}  // namespace hardysim
