// Copyright 2026 The hiddenphase Authors
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

namespace hp {

/// Base class of every error raised by the simulator.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid user input: grid sizes, configuration fields, CLI arguments.
/// The CLI maps these to exit code 1; every other Error maps to 2.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Posterior vanished on the whole grid after reweighting.
class DegenerateUpdateError : public Error {
  public:
    using Error::Error;
};

/// Outcome with exactly zero likelihood under a delta distribution.
class ImpossibleOutcomeError : public Error {
  public:
    using Error::Error;
};

class BudgetError : public Error {
  public:
    using Error::Error;
};

/// The requested operation has no meaning for this initial state
/// (e.g. a GHZ state has no phase-distribution representation).
class UnsupportedStateError : public Error {
  public:
    using Error::Error;
};

/// Enumeration size cap exceeded.
class ResourceError : public Error {
  public:
    using Error::Error;
};

class EmptySeriesError : public Error {
  public:
    using Error::Error;
};

class UndefinedDirectionError : public Error {
  public:
    using Error::Error;
};

} // namespace hp
