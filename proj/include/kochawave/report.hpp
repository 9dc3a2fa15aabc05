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

// JSON forms of the exact values, property reports and coverings. Numbers
// that do not fit a 64-bit integer are written as decimal strings.

#include "json.hpp"
#include "kochawave/analyze.hpp"
#include "kochawave/lattice.hpp"
#include "kochawave/tiling.hpp"

namespace kochawave {

inline constexpr const char* kPropertiesSchema = "kochawave.properties/1";
inline constexpr const char* kCoveringSchema = "kochawave.covering/1";

nlohmann::json to_json_value(Int128 x);
Int128 int128_from_json(const nlohmann::json& j);

/// {"num": n, "den": d}
nlohmann::json to_json_value(const Rational& r);
Rational rational_from_json(const nlohmann::json& j);

/// {"p": rational, "q": rational} for p + q sqrt3.
nlohmann::json to_json_value(const SqrtThreeScalar& s);
SqrtThreeScalar sqrt3_scalar_from_json(const nlohmann::json& j);

/// {"a": rational, "b": rational} for a + b omega.
nlohmann::json to_json_value(const QOmega& z);
QOmega qomega_from_json(const nlohmann::json& j);

nlohmann::json to_json_value(const PropertyReport& r);
PropertyReport property_report_from_json(const nlohmann::json& j);

nlohmann::json to_json_value(const Placement& p);
Placement placement_from_json(const nlohmann::json& j);

nlohmann::json to_json_value(const Window& w);
Window window_from_json(const nlohmann::json& j);

nlohmann::json to_json_value(const Covering& c);
Covering covering_from_json(const nlohmann::json& j);

nlohmann::json to_json_value(const CoveringCheck& r);

}  // namespace kochawave
