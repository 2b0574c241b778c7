/*
Copyright 2026 The swapmc Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace swapmc {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text or a value that violates a type invariant.
class parse_error : public error {
public:
    using error::error;
};

/// Well-formed input that has no realization.
class infeasible_error : public error {
public:
    using error::error;
};

/// An exhaustive routine was asked to go beyond its size budget.
class budget_error : public error {
public:
    using error::error;
};

/// A move was requested that is not legal in the current state.
class illegal_move_error : public error {
public:
    using error::error;
};

/// An argument does not satisfy the documented precondition.
class precondition_error : public error {
public:
    using error::error;
};

/// Raised when a proof-backed construction finds no eligible step.
/// Reaching this means the hypotheses of the mixing theorem do not hold
/// for the instance, or the implementation is wrong.
class condition_violated_error : public error {
public:
    using error::error;
};

}  // namespace swapmc
