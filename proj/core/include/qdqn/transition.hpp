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
#pragma once

#include <cstddef>
#include <vector>

namespace qdqn {

/// Environment observation: one cell index for Frozen Lake, four reals for
/// Cart Pole.
using Observation = std::vector<double>;

/// (s, a, r, s', done). `truncated` marks a done caused only by the step cap.
struct Transition {
    Observation state;
    std::size_t action = 0;
    double reward = 0.0;
    Observation next_state;
    bool done = false;
    bool truncated = false;
};

} // namespace qdqn
