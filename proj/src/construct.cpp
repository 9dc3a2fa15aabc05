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

#include "kochawave/construct.hpp"

#include <charconv>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <thread>

#include "kochawave/errors.hpp"

namespace kochawave {

namespace {

constexpr int kMaxPowerTable = 40;

// (1+w)^a for 0 <= a < kMaxPowerTable.
const std::array<EisensteinInt, kMaxPowerTable>& power_table() {
  static const std::array<EisensteinInt, kMaxPowerTable> table = [] {
    std::array<EisensteinInt, kMaxPowerTable> t;
    for (int a = 0; a < kMaxPowerTable; ++a) t[a] = one_plus_omega_pow(a);
    return t;
  }();
  return table;
}

EisensteinInt scaled_unit(int a) {
  if (a < 0) throw InvariantError("turtle scale exponent went negative");
  if (a < kMaxPowerTable) return power_table()[a];
  return one_plus_omega_pow(a);
}

void check_budget(std::uint64_t count, const GenerationLimits& limits, const char* what) {
  if (count > limits.max_vertices) {
    throw ResourceError(std::string(what) + ": " + std::to_string(count) +
                        " items exceed the budget of " + std::to_string(limits.max_vertices));
  }
}

unsigned effective_threads(unsigned requested) {
  if (requested == 0) requested = std::max(1u, std::thread::hardware_concurrency());
  return std::min(requested, 4u);
}

// Runs body(i) for i in [0, 4), on up to `threads` workers. Each body writes a
// disjoint slice, so the merged result is independent of the schedule.
void for_each_subtree(unsigned threads, const std::function<void(int)>& body) {
  if (threads <= 1) {
    for (int i = 0; i < 4; ++i) body(i);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (int i = static_cast<int>(w); i < 4; i += static_cast<int>(threads)) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void expand_segment(const EisensteinInt& A, const EisensteinInt& E, int depth,
                    EisensteinInt*& out) {
  if (depth == 0) {
    *out++ = E;
    return;
  }
  auto s = subdivide_segment(A, E);
  for (int i = 0; i < 4; ++i) expand_segment(s[i], s[i + 1], depth - 1, out);
}

void expand_triangle(const Triangle& t, int depth, Triangle*& out) {
  if (depth == 0) {
    *out++ = t;
    return;
  }
  for (const Triangle& c : subdivide_triangle(t)) expand_triangle(c, depth - 1, out);
}

}  // namespace

std::uint64_t pow4(int n) {
  if (n < 0 || n > 31) throw PreconditionError("4^n out of range for n=" + std::to_string(n));
  return std::uint64_t{1} << (2 * n);
}

std::array<EisensteinInt, 3> Triangle::corners() const { return {p, p + u, p + u * EisensteinInt(0, 1)}; }

std::uint64_t LSystemWord::step_count() const {
  std::uint64_t c = 0;
  for (char s : symbols) c += (s == 'S');
  return c;
}

DigitCounters DigitCounters::from_index(std::uint64_t k) {
  DigitCounters d;
  d.k_ = k;
  for (std::size_t i = 0; k != 0; ++i, k >>= 2) {
    auto digit = static_cast<std::uint8_t>(k & 3);
    d.digits_[i] = digit;
    d.u_ += (digit == 1);
    d.v_ += (digit == 2);
  }
  return d;
}

void DigitCounters::increment() {
  ++k_;
  std::size_t i = 0;
  while (digits_[i] == 3) digits_[i++] = 0;  // trailing 3s carry out
  std::uint8_t& d = digits_[i];
  if (d == 0) {
    ++u_;
  } else if (d == 1) {
    --u_;
    ++v_;
  } else {
    --v_;
  }
  ++d;
}

EisensteinInt z_increment(int u, int v) { return scaled_unit(u) * omega_pow(-2 * static_cast<std::int64_t>(v)); }

ZStream::ZStream(std::uint64_t count) : count_(count) {
  if (count == 0) throw PreconditionError("z_stream requires count >= 1");
}

ZStream::Iterator ZStream::begin() const {
  Iterator it;
  it.remaining_ = count_;
  return it;
}

ZStream::Iterator& ZStream::Iterator::operator++() {
  --remaining_;
  if (remaining_ != 0) {
    z_ += z_increment(counters_.u(), counters_.v());
    counters_.increment();
  }
  return *this;
}

ZStream z_stream(std::uint64_t count) { return ZStream(count); }

Polyline numeric_polyline(int n, std::uint64_t max_vertices) {
  std::uint64_t count = pow4(n) + 1;
  GenerationLimits limits;
  if (max_vertices != 0) limits.max_vertices = max_vertices;
  check_budget(count, limits, "numeric construction");
  Polyline p;
  p.scale_exp = n;
  p.vertices.reserve(count);
  for (const EisensteinInt& z : z_stream(count)) p.vertices.push_back(z);
  return p;
}

std::array<EisensteinInt, 5> subdivide_segment(const EisensteinInt& A, const EisensteinInt& E) {
  EisensteinInt d = E - A;
  if (!d.divisible_by(3)) {
    throw PreconditionError("segment " + to_string(A) + " -> " + to_string(E) +
                            " is not divisible by 3; pre-scale by 3^n");
  }
  EisensteinInt v = d.exact_div(3);
  return {A, A + v, A + EisensteinInt(2, 1) * v, A + v + v, E};
}

Polyline generate_segments(int n, const GenerationLimits& limits) {
  if (n < 0) throw PreconditionError("generate_segments requires n >= 0");
  const std::uint64_t count = pow4(n) + 1;
  check_budget(count, limits, "segment construction");
  Polyline p;
  p.scale_exp = n;
  p.vertices.resize(count);
  const EisensteinInt end(checked::pow3(n));
  p.vertices[0] = EisensteinInt(0);
  if (n == 0) {
    p.vertices[1] = end;
    return p;
  }
  auto top = subdivide_segment(EisensteinInt(0), end);
  const std::uint64_t slice = pow4(n - 1);
  unsigned threads = n >= 6 ? effective_threads(limits.threads) : 1;
  for_each_subtree(threads, [&](int i) {
    EisensteinInt* out = p.vertices.data() + 1 + static_cast<std::uint64_t>(i) * slice;
    expand_segment(top[i], top[i + 1], n - 1, out);
  });
  return p;
}

LSystemWord rewrite_lsystem(int n) {
  if (n < 0) throw PreconditionError("rewrite_lsystem requires n >= 0");
  const std::uint64_t length = 2 * pow4(n) - 1;
  check_budget(length, GenerationLimits{}, "L-system word");
  static const std::string kRule = "S*S/S+S";
  std::string word = "S";
  for (int i = 0; i < n; ++i) {
    std::string next;
    next.reserve(word.size() * 4 + 3);
    for (char c : word) {
      if (c == 'S') {
        next += kRule;
      } else {
        next.push_back(c);
      }
    }
    word.swap(next);
  }
  return {word};
}

Polyline turtle_run(const LSystemWord& word, const TurtleRules& rules) {
  Polyline p;
  TurtleState st;
  std::uint64_t steps = 0;
  p.vertices.reserve(word.step_count() + 1);
  p.vertices.push_back(st.pos);
  for (char c : word.symbols) {
    switch (c) {
      case 'S': {
        int twice = st.h - st.a;
        if (twice % 2 != 0) {
          throw InvariantError("turtle parity violated after step " + std::to_string(steps) +
                               ": heading " + std::to_string(st.h) + ", scale " +
                               std::to_string(st.a));
        }
        st.pos += scaled_unit(st.a) * omega_pow(twice / 2);
        p.vertices.push_back(st.pos);
        ++steps;
        break;
      }
      case '*':
        st.a += rules.star_da;
        st.h += rules.star_dh;
        break;
      case '/':
        st.a += rules.slash_da;
        st.h += rules.slash_dh;
        break;
      case '+':
        st.h += rules.plus_dh;
        break;
      default:
        throw PreconditionError(std::string("unknown L-system symbol '") + c + "'");
    }
    st.h = ((st.h % 12) + 12) % 12;
  }
  // A word with 4^n steps draws the curve at scale 3^n.
  int n = 0;
  while (n < 32 && pow4(n) < steps) ++n;
  p.scale_exp = (n < 32 && pow4(n) == steps) ? n : 0;
  return p;
}

std::array<Triangle, 4> subdivide_triangle(const Triangle& t) {
  if (!t.u.divisible_by(3)) {
    throw PreconditionError("triangle edge " + to_string(t.u) + " is not divisible by 3");
  }
  const EisensteinInt v = t.u.exact_div(3);
  const EisensteinInt w(0, 1);
  const EisensteinInt top = t.p + v * EisensteinInt(0, 2);
  return {Triangle{t.p, v}, Triangle{t.p + v + v, v}, Triangle{top, v},
          Triangle{top, v * (EisensteinInt(1) - w - w)}};
}

std::vector<Triangle> generate_triangles(int n, const GenerationLimits& limits) {
  if (n < 0) throw PreconditionError("generate_triangles requires n >= 0");
  const std::uint64_t count = pow4(n);
  check_budget(count, limits, "triangle construction");
  std::vector<Triangle> out(count);
  Triangle root{EisensteinInt(0), EisensteinInt(checked::pow3(n))};
  if (n == 0) {
    out[0] = root;
    return out;
  }
  auto top = subdivide_triangle(root);
  const std::uint64_t slice = pow4(n - 1);
  unsigned threads = n >= 6 ? effective_threads(limits.threads) : 1;
  for_each_subtree(threads, [&](int i) {
    Triangle* dst = out.data() + static_cast<std::uint64_t>(i) * slice;
    expand_triangle(top[i], n - 1, dst);
  });
  return out;
}

namespace {

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) { buf_.reserve(kFlush + 128); }
  ~CsvWriter() { flush(); }

  void header() { buf_ += "k,a,b\n"; }

  void row(std::uint64_t k, const EisensteinInt& z) {
    // Each field needs at most 20 characters plus a separator.
    char tmp[72];
    char* p = tmp;
    p = std::to_chars(p, p + 20, k).ptr;
    *p++ = ',';
    p = std::to_chars(p, p + 20, z.a).ptr;
    *p++ = ',';
    p = std::to_chars(p, p + 20, z.b).ptr;
    *p++ = '\n';
    buf_.append(tmp, p);
    if (buf_.size() >= kFlush) flush();
  }

  void flush() {
    os_.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
    buf_.clear();
  }

 private:
  static constexpr std::size_t kFlush = 1 << 16;
  std::ostream& os_;
  std::string buf_;
};

}  // namespace

void write_vertices_csv(std::ostream& os, const std::vector<EisensteinInt>& vertices) {
  CsvWriter w(os);
  w.header();
  for (std::size_t k = 0; k < vertices.size(); ++k) w.row(k, vertices[k]);
}

void stream_numeric_csv(std::ostream& os, int n) {
  CsvWriter w(os);
  w.header();
  std::uint64_t k = 0;
  for (const EisensteinInt& z : z_stream(pow4(n) + 1)) w.row(k++, z);
}

unsigned threads_from_env(unsigned fallback) {
  const char* env = std::getenv("KOCHAWAVE_THREADS");
  if (env == nullptr || *env == '\0') return fallback;
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(env, env + std::char_traits<char>::length(env), value);
  if (ec != std::errc() || *ptr != '\0') {
    throw PreconditionError(std::string("KOCHAWAVE_THREADS is not a number: ") + env);
  }
  return value;
}

}  // namespace kochawave
