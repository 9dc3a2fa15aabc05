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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <iterator>
#include <string>
#include <vector>

#include "kochawave/lattice.hpp"

namespace kochawave {

/// Vertices of an approximant. Coordinates are lattice points of the unit
/// curve scaled by 3^scale_exp.
struct Polyline {
  int scale_exp = 0;
  std::vector<EisensteinInt> vertices;

  bool operator==(const Polyline&) const = default;
};

/// Equilateral triangle with vertices p, p+u, p+u*omega (counterclockwise).
struct Triangle {
  EisensteinInt p;
  EisensteinInt u;

  std::array<EisensteinInt, 3> corners() const;
  bool operator==(const Triangle&) const = default;
};

/// Word over {S, *, /, +}.
struct LSystemWord {
  std::string symbols;

  std::uint64_t step_count() const;
  bool operator==(const LSystemWord&) const = default;
};

struct TurtleState {
  EisensteinInt pos;
  int a = 0;  // exponent of (1+omega); step length sqrt(3)^a
  int h = 0;  // heading in 30 degree units, kept in [0, 12)
};

/// Per-symbol effect of the turtle. The standard table is the curve's rule;
/// other tables exist only so tests can inject faults.
struct TurtleRules {
  int star_da = 1, star_dh = 1;
  int slash_da = -1, slash_dh = -5;
  int plus_dh = 4;

  static TurtleRules standard() { return {}; }
};

/// Base-4 digit statistics of an index k, updated incrementally.
class DigitCounters {
 public:
  DigitCounters() = default;
  static DigitCounters from_index(std::uint64_t k);

  /// k -> k+1, touching only the carry chain.
  void increment();

  std::uint64_t k() const { return k_; }
  int u() const { return u_; }  // number of digit 1
  int v() const { return v_; }  // number of digit 2

  bool operator==(const DigitCounters& o) const {
    return k_ == o.k_ && u_ == o.u_ && v_ == o.v_;
  }

 private:
  std::uint64_t k_ = 0;
  int u_ = 0;
  int v_ = 0;
  std::array<std::uint8_t, 32> digits_{};
};

/// Increment (1+omega)^u * omega^(-2v) between consecutive vertices.
EisensteinInt z_increment(int u, int v);

/// Streaming z_0, z_1, ... with constant state.
class ZStream {
 public:
  class Iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = EisensteinInt;
    using difference_type = std::ptrdiff_t;
    using pointer = const EisensteinInt*;
    using reference = const EisensteinInt&;

    Iterator() = default;
    reference operator*() const { return z_; }
    pointer operator->() const { return &z_; }
    Iterator& operator++();
    void operator++(int) { ++*this; }
    bool operator==(std::default_sentinel_t) const { return remaining_ == 0; }

   private:
    friend class ZStream;
    EisensteinInt z_;
    DigitCounters counters_;
    std::uint64_t remaining_ = 0;
  };

  explicit ZStream(std::uint64_t count);

  Iterator begin() const;
  std::default_sentinel_t end() const { return {}; }
  std::uint64_t size() const { return count_; }

 private:
  std::uint64_t count_;
};

/// Convenience wrapper; count >= 1.
ZStream z_stream(std::uint64_t count);

/// Materializes z_0..z_{4^n} as a Polyline.
Polyline numeric_polyline(int n, std::uint64_t max_vertices = 0);

struct GenerationLimits {
  /// Largest vertex or triangle count a call may allocate.
  std::uint64_t max_vertices = std::uint64_t{1} << 28;
  /// Worker threads for subtree expansion; 0 picks the hardware default.
  unsigned threads = 1;
};

/// One substitution step: A, A+v, A+(2+omega)v, A+2v, E with v = (E-A)/3.
std::array<EisensteinInt, 5> subdivide_segment(const EisensteinInt& A, const EisensteinInt& E);

Polyline generate_segments(int n, const GenerationLimits& limits = {});

LSystemWord rewrite_lsystem(int n);

Polyline turtle_run(const LSystemWord& word, const TurtleRules& rules = TurtleRules::standard());

std::array<Triangle, 4> subdivide_triangle(const Triangle& t);

std::vector<Triangle> generate_triangles(int n, const GenerationLimits& limits = {});

std::uint64_t pow4(int n);

/// CSV rows "k,a,b" with a header line.
void write_vertices_csv(std::ostream& os, const std::vector<EisensteinInt>& vertices);
/// Streams z_0..z_{4^n} as CSV without materializing the polyline.
void stream_numeric_csv(std::ostream& os, int n);

/// Unsigned thread count from KOCHAWAVE_THREADS, or fallback when unset.
unsigned threads_from_env(unsigned fallback = 1);

}  // namespace kochawave
