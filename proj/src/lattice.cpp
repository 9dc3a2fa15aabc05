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

#include "kochawave/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "kochawave/errors.hpp"

namespace kochawave {

namespace checked {

std::int64_t add(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r)) throw OverflowError("int64 addition overflow");
  return r;
}

std::int64_t sub(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_sub_overflow(x, y, &r)) throw OverflowError("int64 subtraction overflow");
  return r;
}

std::int64_t mul(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r)) throw OverflowError("int64 multiplication overflow");
  return r;
}

Int128 add(Int128 x, Int128 y) {
  Int128 r;
  if (__builtin_add_overflow(x, y, &r)) throw OverflowError("int128 addition overflow");
  return r;
}

Int128 sub(Int128 x, Int128 y) {
  Int128 r;
  if (__builtin_sub_overflow(x, y, &r)) throw OverflowError("int128 subtraction overflow");
  return r;
}

Int128 mul(Int128 x, Int128 y) {
  Int128 r;
  if (__builtin_mul_overflow(x, y, &r)) throw OverflowError("int128 multiplication overflow");
  return r;
}

std::int64_t narrow(Int128 x) {
  if (x > INT64_MAX || x < INT64_MIN) throw OverflowError("value does not fit in int64");
  return static_cast<std::int64_t>(x);
}

std::int64_t pow3(int e) {
  if (e < 0) throw PreconditionError("pow3: negative exponent");
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r = mul(r, 3);
  return r;
}

}  // namespace checked

std::string to_string(Int128 x) {
  if (x == 0) return "0";
  bool neg = x < 0;
  // Work with negative values so INT128_MIN is representable.
  std::string s;
  Int128 v = neg ? x : -x;
  while (v != 0) {
    int digit = -static_cast<int>(v % 10);
    s.push_back(static_cast<char>('0' + digit));
    v /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

namespace {

Int128 abs128(Int128 x) {
  if (x == -x && x != 0) throw OverflowError("int128 abs overflow");
  return x < 0 ? -x : x;
}

Int128 gcd128(Int128 x, Int128 y) {
  x = abs128(x);
  y = abs128(y);
  while (y != 0) {
    Int128 t = x % y;
    x = y;
    y = t;
  }
  return x;
}

}  // namespace

Rational::Rational(std::int64_t n) : num_(n), den_(1) {}

Rational::Rational(Int128 num, Int128 den) {
  if (den == 0) throw PreconditionError("rational with zero denominator");
  if (den < 0) {
    num = checked::mul(num, -1);
    den = checked::mul(den, -1);
  }
  Int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = num;
  den_ = den;
}

Rational Rational::operator-() const { return {checked::mul(num_, -1), den_}; }

Rational Rational::operator+(const Rational& o) const {
  Int128 g = gcd128(den_, o.den_);
  Int128 l = den_ / g;
  return {checked::add(checked::mul(num_, o.den_ / g), checked::mul(o.num_, l)),
          checked::mul(l, o.den_)};
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  // Cross-reduce first to keep intermediates small.
  Int128 g1 = gcd128(num_, o.den_);
  Int128 g2 = gcd128(o.num_, den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return {checked::mul(num_ / g1, o.num_ / g2), checked::mul(den_ / g2, o.den_ / g1)};
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw PreconditionError("rational division by zero");
  return *this * Rational(o.den_, o.num_);
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
  Int128 lhs = checked::mul(num_, o.den_);
  Int128 rhs = checked::mul(o.num_, den_);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double Rational::to_double() const {
  return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

std::string Rational::to_string() const {
  if (den_ == 1) return kochawave::to_string(num_);
  return kochawave::to_string(num_) + "/" + kochawave::to_string(den_);
}

Rational pow(const Rational& base, int e) {
  if (e < 0) return Rational(1) / pow(base, -e);
  Rational r(1);
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

EisensteinInt EisensteinInt::operator+(const EisensteinInt& o) const {
  return {checked::add(a, o.a), checked::add(b, o.b)};
}

EisensteinInt EisensteinInt::operator-(const EisensteinInt& o) const {
  return {checked::sub(a, o.a), checked::sub(b, o.b)};
}

EisensteinInt EisensteinInt::operator-() const { return {checked::sub(0, a), checked::sub(0, b)}; }

EisensteinInt EisensteinInt::operator*(const EisensteinInt& o) const {
  // (a+bw)(c+dw) = (ac-bd) + (ad+bc+bd)w
  Int128 ac = static_cast<Int128>(a) * o.a;
  Int128 bd = static_cast<Int128>(b) * o.b;
  Int128 ad = static_cast<Int128>(a) * o.b;
  Int128 bc = static_cast<Int128>(b) * o.a;
  return {checked::narrow(ac - bd), checked::narrow(ad + bc + bd)};
}

EisensteinInt EisensteinInt::conj() const {
  // conj(w) = 1 - w
  return {checked::add(a, b), checked::sub(0, b)};
}

Int128 EisensteinInt::norm() const {
  Int128 x = a;
  Int128 y = b;
  return x * x + x * y + y * y;
}

EisensteinInt EisensteinInt::exact_div(std::int64_t d) const {
  if (d == 0 || !divisible_by(d)) {
    throw PreconditionError("lattice point " + kochawave::to_string(*this) +
                            " is not divisible by " + std::to_string(d));
  }
  return {a / d, b / d};
}

std::complex<double> EisensteinInt::to_complex() const {
  static const double kHalfSqrt3 = std::sqrt(3.0) / 2.0;
  return {static_cast<double>(a) + static_cast<double>(b) / 2.0,
          static_cast<double>(b) * kHalfSqrt3};
}

EisensteinInt eis_mul(const EisensteinInt& x, const EisensteinInt& y) { return x * y; }

EisensteinInt omega_pow(std::int64_t k) {
  static const EisensteinInt kUnits[6] = {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
  return kUnits[((k % 6) + 6) % 6];
}

EisensteinInt one_plus_omega_pow(int k) {
  if (k < 0) throw PreconditionError("one_plus_omega_pow: negative exponent");
  // (1+w)^2 = 3w, so (1+w)^k = (3w)^(k/2) * (1+w)^(k%2).
  EisensteinInt r = omega_pow(k / 2) * EisensteinInt(checked::pow3(k / 2));
  if (k % 2 == 1) r = r * EisensteinInt(1, 1);
  return r;
}

std::ostream& operator<<(std::ostream& os, const EisensteinInt& z) { return os << to_string(z); }

std::string to_string(const EisensteinInt& z) {
  std::ostringstream os;
  os << z.a << (z.b < 0 ? "-" : "+") << (z.b < 0 ? -z.b : z.b) << "w";
  return os.str();
}

QOmega QOmega::operator+(const QOmega& o) const { return {a + o.a, b + o.b}; }
QOmega QOmega::operator-(const QOmega& o) const { return {a - o.a, b - o.b}; }
QOmega QOmega::operator-() const { return {-a, -b}; }

QOmega QOmega::operator*(const QOmega& o) const {
  Rational bd = b * o.b;
  return {a * o.a - bd, a * o.b + b * o.a + bd};
}

QOmega QOmega::conj() const { return {a + b, -b}; }

Rational QOmega::norm() const { return a * a + a * b + b * b; }

QOmega QOmega::inverse() const {
  if (is_zero()) throw PreconditionError("QOmega division by zero");
  Rational n = norm();
  QOmega c = conj();
  return {c.a / n, c.b / n};
}

QOmega QOmega::operator/(const QOmega& o) const { return *this * o.inverse(); }

Rational QOmega::re() const { return a + b * Rational(1, 2); }

std::complex<double> QOmega::to_complex() const {
  static const double kHalfSqrt3 = std::sqrt(3.0) / 2.0;
  double ad = a.to_double();
  double bd = b.to_double();
  return {ad + bd / 2.0, bd * kHalfSqrt3};
}

std::string QOmega::to_string() const {
  return "(" + a.to_string() + ")+(" + b.to_string() + ")w";
}

SqrtThreeScalar SqrtThreeScalar::sqrt3_pow(int k) {
  Rational three_half = pow(Rational(3), (k >= 0 ? k : -k) / 2);
  bool odd = (k % 2) != 0;
  if (k >= 0) return odd ? SqrtThreeScalar(0, three_half) : SqrtThreeScalar(three_half, 0);
  // 3^(-m) or 3^(-m) / sqrt(3) = 3^(-m-1) * sqrt(3)
  Rational inv = Rational(1) / three_half;
  return odd ? SqrtThreeScalar(0, inv / Rational(3)) : SqrtThreeScalar(inv, 0);
}

SqrtThreeScalar SqrtThreeScalar::operator+(const SqrtThreeScalar& o) const {
  return {p + o.p, q + o.q};
}
SqrtThreeScalar SqrtThreeScalar::operator-(const SqrtThreeScalar& o) const {
  return {p - o.p, q - o.q};
}
SqrtThreeScalar SqrtThreeScalar::operator-() const { return {-p, -q}; }

SqrtThreeScalar SqrtThreeScalar::operator*(const SqrtThreeScalar& o) const {
  return {p * o.p + Rational(3) * q * o.q, p * o.q + q * o.p};
}

SqrtThreeScalar SqrtThreeScalar::operator/(const SqrtThreeScalar& o) const {
  Rational d = o.p * o.p - Rational(3) * o.q * o.q;
  if (d.is_zero()) throw PreconditionError("SqrtThreeScalar division by zero");
  SqrtThreeScalar conj{o.p / d, -o.q / d};
  return *this * conj;
}

int SqrtThreeScalar::sign() const {
  int sp = p.sign();
  int sq = q.sign();
  if (sq == 0) return sp;
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  // Opposite signs: compare p^2 with 3 q^2.
  auto c = (p * p) <=> (Rational(3) * q * q);
  if (c == std::strong_ordering::equal) return 0;
  return c == std::strong_ordering::greater ? sp : sq;
}

double SqrtThreeScalar::to_double() const {
  return static_cast<double>(static_cast<long double>(p.to_double()) +
                             static_cast<long double>(q.to_double()) * std::sqrt(3.0L));
}

std::string SqrtThreeScalar::to_string() const {
  return p.to_string() + " + (" + q.to_string() + ")*sqrt3";
}

std::strong_ordering SqrtThreeScalar::operator<=>(const SqrtThreeScalar& o) const {
  int s = (*this - o).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

SqrtThreeScalar pow(const SqrtThreeScalar& base, int e) {
  if (e < 0) return SqrtThreeScalar(1) / pow(base, -e);
  SqrtThreeScalar r(1);
  for (int i = 0; i < e; ++i) r = r * base;
  return r;
}

}  // namespace kochawave
