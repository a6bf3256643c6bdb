// Copyright 2026 The betacoal Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "betacoal/random.hpp"

#include <cmath>

namespace betacoal {

double Stream::exponential() { return -std::log(uniform()); }

std::uint64_t Stream::below(std::uint64_t bound) {
  // Reject the lowest 2^64 mod bound outputs so every residue is equally
  // likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= threshold) {
      return r % bound;
    }
  }
}

}  // namespace betacoal
