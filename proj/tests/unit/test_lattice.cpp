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

#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include "doctest.h"
#include "kochawave/errors.hpp"
#include "kochawave/lattice.hpp"

using namespace kochawave;

namespace {
const EisensteinInt w(0, 1);
}

TEST_CASE("eis_mul worked examples") {
  CHECK(eis_mul(EisensteinInt(1, 1), EisensteinInt(1, 1)) == EisensteinInt(0, 3));
  CHECK(w * w * w == EisensteinInt(-1));
  CHECK(EisensteinInt(1, 1) * (-w) == EisensteinInt(1, -2));
  // Cross-check the last one against complex floats.
  auto z = EisensteinInt(1, 1).to_complex() * (-w).to_complex();
  CHECK(std::abs(z - EisensteinInt(1, -2).to_complex()) < 1e-12);
}

TEST_CASE("omega powers") {
  CHECK(omega_pow(0) == EisensteinInt(1));
  CHECK(omega_pow(-2) == EisensteinInt(0, -1));
  CHECK(omega_pow(2) == EisensteinInt(-1, 1));
  for (int k = -40; k <= 40; ++k) {
    CHECK(omega_pow(k + 6) == omega_pow(k));
    CHECK(omega_pow(k) * omega_pow(1) == omega_pow(k + 1));
    CHECK(omega_pow(k).norm() == 1);
  }
  CHECK(one_plus_omega_pow(2) == EisensteinInt(0, 3));
  for (int k = 0; k < 20; ++k) {
    CHECK(one_plus_omega_pow(k + 1) == one_plus_omega_pow(k) * EisensteinInt(1, 1));
  }
}

TEST_CASE("imaginary part in half-root-three units") {
  CHECK(im_half_sqrt3(EisensteinInt(2, 1)) == 1);
  CHECK(im_half_sqrt3(EisensteinInt(4, 4)) == 4);
  CHECK(im_half_sqrt3(EisensteinInt(0)) == 0);
  CHECK(EisensteinInt(4, 4).to_complex().imag() == doctest::Approx(4 * std::sqrt(3.0) / 2));
}

TEST_CASE("norm is multiplicative and matches the float embedding") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<std::int64_t> coef(-1000, 1000);
  for (int i = 0; i < 10000; ++i) {
    EisensteinInt x(coef(rng), coef(rng));
    EisensteinInt y(coef(rng), coef(rng));
    EisensteinInt p = x * y;
    CHECK(p.norm() == x.norm() * y.norm());
    CHECK(x.norm() >= 0);
    std::complex<double> fp = x.to_complex() * y.to_complex();
    CHECK(std::abs(fp - p.to_complex()) < 1e-9 * std::max(1.0, std::abs(fp)));
    CHECK(std::abs(std::norm(x.to_complex()) - static_cast<double>(x.norm())) < 1e-6);
  }
}

TEST_CASE("conjugate mirrors in the real axis") {
  EisensteinInt z(3, 5);
  CHECK(std::abs(z.conj().to_complex() - std::conj(z.to_complex())) < 1e-12);
  CHECK(z.conj().conj() == z);
}

TEST_CASE("overflow is detected") {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max() / 2 + 1;
  EisensteinInt x(big, 0);
  CHECK_THROWS_AS(x + x, OverflowError);
  CHECK_THROWS_AS(x * EisensteinInt(0, 3), OverflowError);
  CHECK_THROWS_AS(checked::pow3(50), OverflowError);
  CHECK_THROWS_AS(EisensteinInt(3, 1).exact_div(3), PreconditionError);
}

TEST_CASE("rationals stay in lowest terms") {
  Rational r(6, -4);
  CHECK(r.num() == -3);
  CHECK(r.den() == 2);
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-7, 21).to_string() == "-1/3");
  CHECK_THROWS_AS(Rational(1, 0), PreconditionError);
}

TEST_CASE("QOmega is a field") {
  QOmega x(Rational(2, 3), Rational(-5, 7));
  QOmega y(Rational(1, 2), Rational(3));
  CHECK((x * y) / y == x);
  CHECK(x * x.inverse() == QOmega(1));
  CHECK(QOmega(EisensteinInt(1, 1)) * QOmega(EisensteinInt(1, 1)) == QOmega(EisensteinInt(0, 3)));
  CHECK(std::abs((x * y).to_complex() - x.to_complex() * y.to_complex()) < 1e-12);
  CHECK(QOmega(EisensteinInt(4, 4)).re() == Rational(6));
  CHECK_THROWS_AS(QOmega().inverse(), PreconditionError);
}

TEST_CASE("sqrt3 scalars compare exactly") {
  SqrtThreeScalar s3 = SqrtThreeScalar::sqrt3();
  CHECK(s3 * s3 == SqrtThreeScalar(3));
  // 989/571 < sqrt3 < 26/15, both close.
  CHECK(SqrtThreeScalar(Rational(989, 571)) < s3);
  CHECK(s3 < SqrtThreeScalar(Rational(26, 15)));
  CHECK((SqrtThreeScalar(Rational(1351, 780)) - s3).sign() == 1);
  CHECK((SqrtThreeScalar(Rational(989, 571)) - s3).sign() == -1);
  CHECK(SqrtThreeScalar(Rational(-2), Rational(1)).sign() == -1);
  CHECK(SqrtThreeScalar(Rational(2), Rational(-1)).sign() == 1);
  CHECK(SqrtThreeScalar(0).sign() == 0);
  SqrtThreeScalar x(Rational(1), Rational(1, 3));
  CHECK((x / x) == SqrtThreeScalar(1));
  CHECK(SqrtThreeScalar::sqrt3_pow(-1) == SqrtThreeScalar(Rational(0), Rational(1, 3)));
  CHECK(SqrtThreeScalar::sqrt3_pow(-2) == SqrtThreeScalar(Rational(1, 3)));
  CHECK(SqrtThreeScalar::sqrt3_pow(5) == SqrtThreeScalar(Rational(0), Rational(9)));
  for (int k = -6; k <= 6; ++k) {
    CHECK(SqrtThreeScalar::sqrt3_pow(k).to_double() == doctest::Approx(std::pow(std::sqrt(3.0), k)));
  }
}
