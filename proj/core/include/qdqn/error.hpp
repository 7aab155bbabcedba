// Copyright 2026 The qdqn Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file error.hpp
 * Exception type and precondition macro shared by every qdqn module.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace qdqn {

/// Raised on violated preconditions: bad indices, shape mismatches,
/// stepping a finished episode, malformed configuration.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

[[noreturn]] inline void abort(const std::string &message) {
    throw Error(message);
}

} // namespace qdqn

#define QDQN_ABORT_IF(condition, message)                                     \
    do {                                                                       \
        if (condition) {                                                       \
            ::qdqn::abort(message);                                            \
        }                                                                      \
    } while (false)

#define QDQN_ABORT_IF_NOT(condition, message)                                 \
    QDQN_ABORT_IF(!(condition), message)
