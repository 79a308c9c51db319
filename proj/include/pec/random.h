// Copyright 2026 The pec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PEC_RANDOM_H_
#define PEC_RANDOM_H_

#include <cstdint>
#include <random>
#include <vector>

#include "pec/element.h"
#include "pec/oracle.h"

namespace pec {

// Seeded generator with the same output on every platform. The engine's
// sequence is fixed by the C++ standard; distributions are not, so values are
// mapped with plain modulo arithmetic instead.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }
  // Uniform enough in [0, n) for n much smaller than 2^64. Requires n > 0.
  uint64_t Below(uint64_t n) { return engine_() % n; }
  bool Percent(uint32_t p) { return Below(100) < p; }

  template <typename T>
  void Shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[Below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

// Each digit is '*' with probability star_percent / 100, else 0 or 1.
Tbv RandomTbv(Rng& rng, uint32_t width, uint32_t star_percent);

// Up to max_clauses clauses of 1..max_literals literals over num_vars
// variables.
DnfFormula RandomDnf(Rng& rng, uint32_t num_vars, uint32_t max_clauses,
                     uint32_t max_literals);

}  // namespace pec

#endif  // PEC_RANDOM_H_
