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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace kochawave::internal {

// Sample points of the triangular cells in cell units.
inline constexpr double kUpX = 0.3, kUpY = 0.2;
inline constexpr double kDownX = 0.7, kDownY = 0.8;

// Even-odd scan of a closed polygon given in cell units. For every row
// j in [j_lo, j_hi] and both cell kinds, calls run(up, j, from, to) for each
// maximal run of cell indices whose sample point is inside.
template <typename Run>
void scan_even_odd(const std::vector<std::pair<double, double>>& poly, std::int64_t j_lo,
                   std::int64_t j_hi, Run&& run) {
  const std::size_t n = poly.size();
  if (n < 3) return;
  // Bucket edges by the rows they can cross.
  std::vector<std::vector<std::size_t>> by_row(static_cast<std::size_t>(j_hi - j_lo + 1));
  for (std::size_t e = 0; e < n; ++e) {
    const auto& p = poly[e];
    const auto& q = poly[(e + 1) % n];
    double lo = std::min(p.second, q.second);
    double hi = std::max(p.second, q.second);
    auto first = std::max<std::int64_t>(j_lo, static_cast<std::int64_t>(std::floor(lo)) - 1);
    auto last = std::min<std::int64_t>(j_hi, static_cast<std::int64_t>(std::floor(hi)) + 1);
    for (std::int64_t j = first; j <= last; ++j) by_row[static_cast<std::size_t>(j - j_lo)].push_back(e);
  }
  std::vector<double> xs;
  for (std::int64_t j = j_lo; j <= j_hi; ++j) {
    for (bool up : {true, false}) {
      const double y = static_cast<double>(j) + (up ? kUpY : kDownY);
      const double off = up ? kUpX : kDownX;
      xs.clear();
      for (std::size_t e : by_row[static_cast<std::size_t>(j - j_lo)]) {
        const auto& p = poly[e];
        const auto& q = poly[(e + 1) % n];
        if ((p.second < y) == (q.second < y)) continue;
        xs.push_back(p.first + (y - p.second) * (q.first - p.first) / (q.second - p.second));
      }
      std::sort(xs.begin(), xs.end());
      for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
        auto from = static_cast<std::int64_t>(std::floor(xs[k] - off)) + 1;
        auto to = static_cast<std::int64_t>(std::ceil(xs[k + 1] - off)) - 1;
        if (from <= to) run(up, j, from, to);
      }
    }
  }
}

}  // namespace kochawave::internal
