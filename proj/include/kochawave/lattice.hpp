// Copyright 2026 The Kochawave Authors.
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

#pragma once

#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>

namespace kochawave {

using Int128 = __int128;

/// Overflow-checked integer primitives. Every function throws OverflowError
/// instead of wrapping.
namespace checked {
std::int64_t add(std::int64_t x, std::int64_t y);
std::int64_t sub(std::int64_t x, std::int64_t y);
std::int64_t mul(std::int64_t x, std::int64_t y);
Int128 add(Int128 x, Int128 y);
Int128 sub(Int128 x, Int128 y);
Int128 mul(Int128 x, Int128 y);
std::int64_t narrow(Int128 x);
std::int64_t pow3(int e);
}  // namespace checked

std::string to_string(Int128 x);

/// Rational number kept in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n);  // NOLINT(google-explicit-constructor)
  Rational(Int128 num, Int128 den);

  Int128 num() const { return num_; }
  Int128 den() const { return den_; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  bool operator==(const Rational& o) const = default;
  std::strong_ordering operator<=>(const Rational& o) const;

  double to_double() const;
  std::string to_string() const;

 private:
  Int128 num_ = 0;
  Int128 den_ = 1;
};

Rational pow(const Rational& base, int e);

/// Lattice point a + b*omega with omega = exp(i*pi/3), omega^2 = omega - 1.
struct EisensteinInt {
  std::int64_t a = 0;
  std::int64_t b = 0;

  constexpr EisensteinInt() = default;
  constexpr EisensteinInt(std::int64_t a_, std::int64_t b_) : a(a_), b(b_) {}
  // Implicit so that integer literals read naturally in formulas.
  constexpr EisensteinInt(std::int64_t a_)  // NOLINT(google-explicit-constructor)
      : a(a_), b(0) {}

  EisensteinInt operator+(const EisensteinInt& o) const;
  EisensteinInt operator-(const EisensteinInt& o) const;
  EisensteinInt operator-() const;
  EisensteinInt operator*(const EisensteinInt& o) const;
  EisensteinInt& operator+=(const EisensteinInt& o) { return *this = *this + o; }
  EisensteinInt& operator-=(const EisensteinInt& o) { return *this = *this - o; }

  /// Complex conjugate: mirror in the real axis.
  EisensteinInt conj() const;
  /// Integer norm a^2 + ab + b^2 = |z|^2.
  Int128 norm() const;
  bool divisible_by(std::int64_t d) const { return a % d == 0 && b % d == 0; }
  /// Componentwise exact division; throws PreconditionError if inexact.
  EisensteinInt exact_div(std::int64_t d) const;
  std::complex<double> to_complex() const;

  constexpr bool operator==(const EisensteinInt& o) const = default;
  constexpr auto operator<=>(const EisensteinInt& o) const = default;
};

EisensteinInt eis_mul(const EisensteinInt& x, const EisensteinInt& y);

/// omega^k for any integer k; one of the six units.
EisensteinInt omega_pow(std::int64_t k);

/// (1+omega)^k for k >= 0.
EisensteinInt one_plus_omega_pow(int k);

/// Imaginary part in units of sqrt(3)/2.
inline std::int64_t im_half_sqrt3(const EisensteinInt& x) { return x.b; }

std::ostream& operator<<(std::ostream& os, const EisensteinInt& z);
std::string to_string(const EisensteinInt& z);

struct EisensteinHash {
  std::size_t operator()(const EisensteinInt& z) const noexcept {
    auto h = static_cast<std::uint64_t>(z.a) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(z.b) + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

/// a + b*omega with rational coefficients; the field Q(omega).
struct QOmega {
  Rational a;
  Rational b;

  QOmega() = default;
  QOmega(Rational a_, Rational b_) : a(a_), b(b_) {}
  explicit QOmega(Rational a_) : a(a_), b(0) {}
  QOmega(std::int64_t a_) : a(a_), b(0) {}  // NOLINT(google-explicit-constructor)
  QOmega(const EisensteinInt& z) : a(z.a), b(z.b) {}  // NOLINT(google-explicit-constructor)

  QOmega operator+(const QOmega& o) const;
  QOmega operator-(const QOmega& o) const;
  QOmega operator-() const;
  QOmega operator*(const QOmega& o) const;
  QOmega operator/(const QOmega& o) const;
  QOmega conj() const;
  Rational norm() const;
  QOmega inverse() const;
  bool is_zero() const { return a.is_zero() && b.is_zero(); }
  /// Real part a + b/2.
  Rational re() const;
  std::complex<double> to_complex() const;
  std::string to_string() const;

  bool operator==(const QOmega& o) const = default;
};

/// Exact p + q*sqrt(3) with rational p, q.
struct SqrtThreeScalar {
  Rational p;
  Rational q;

  SqrtThreeScalar() = default;
  SqrtThreeScalar(Rational p_, Rational q_) : p(p_), q(q_) {}
  SqrtThreeScalar(std::int64_t p_) : p(p_), q(0) {}  // NOLINT(google-explicit-constructor)
  explicit SqrtThreeScalar(Rational p_) : p(p_), q(0) {}

  static SqrtThreeScalar sqrt3() { return {Rational(0), Rational(1)}; }
  /// sqrt(3)^k for any integer k.
  static SqrtThreeScalar sqrt3_pow(int k);

  SqrtThreeScalar operator+(const SqrtThreeScalar& o) const;
  SqrtThreeScalar operator-(const SqrtThreeScalar& o) const;
  SqrtThreeScalar operator-() const;
  SqrtThreeScalar operator*(const SqrtThreeScalar& o) const;
  SqrtThreeScalar operator/(const SqrtThreeScalar& o) const;
  SqrtThreeScalar& operator+=(const SqrtThreeScalar& o) { return *this = *this + o; }

  /// Exact sign of p + q*sqrt(3).
  int sign() const;
  double to_double() const;
  std::string to_string() const;

  bool operator==(const SqrtThreeScalar& o) const = default;
  std::strong_ordering operator<=>(const SqrtThreeScalar& o) const;
};

SqrtThreeScalar pow(const SqrtThreeScalar& base, int e);

}  // namespace kochawave
