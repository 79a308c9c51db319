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

#include "pec/random.h"

#include <algorithm>

namespace pec {

Tbv RandomTbv(Rng& rng, uint32_t width, uint32_t star_percent) {
  Tbv::Words care(Tbv::WordCount(width), 0);
  Tbv::Words value(Tbv::WordCount(width), 0);
  for (uint32_t i = 0; i < width; ++i) {
    if (rng.Percent(star_percent)) continue;
    const uint64_t bit = uint64_t{1} << (i % 64);
    care[i / 64] |= bit;
    if (rng.Below(2)) value[i / 64] |= bit;
  }
  return Tbv::FromWords(width, std::move(care), std::move(value));
}

DnfFormula RandomDnf(Rng& rng, uint32_t num_vars, uint32_t max_clauses,
                     uint32_t max_literals) {
  DnfFormula f;
  f.num_vars = num_vars;
  const uint64_t clauses = 1 + rng.Below(max_clauses);
  const uint64_t literals_cap = std::min(num_vars, max_literals);
  for (uint64_t c = 0; c < clauses; ++c) {
    std::vector<int> clause;
    const uint64_t literals = 1 + rng.Below(literals_cap);
    for (uint64_t l = 0; l < literals; ++l) {
      const int v = 1 + static_cast<int>(rng.Below(num_vars));
      clause.push_back(rng.Below(2) ? v : -v);
    }
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

}  // namespace pec
