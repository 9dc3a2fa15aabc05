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

#include <stdexcept>
#include <string>

namespace kochawave {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed arguments outside the documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Checked integer arithmetic would have wrapped.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Request exceeds the configured vertex or memory budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// An internal invariant failed; indicates a bug or a wrong rule table.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Tile boundary could not be assembled into a simple closed polygon.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

// A covering failed the validity checker.
class CoveringError : public Error {
 public:
  using Error::Error;
};

}  // namespace kochawave
