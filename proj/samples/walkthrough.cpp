// Copyright 2026 The gqd Authors
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
// Computes the discord of a few states by each route and prints them side by
// side. Run with no arguments.

#include <cstdio>

#include "gqd/gqd.hpp"

int main() {
  using namespace gqd;

  struct Case {
    const char *label;
    TwoQubitState state;
  };
  const Case cases[] = {
      {"werner(0.6)", make_family("werner", {0.6})},
      {"bell_diagonal", make_family("bell_diagonal", {-0.6, -0.4, -0.2})},
      {"random rank 2", random_state(11, 2)},
      {"random rank 4", random_state(12, 4)},
  };

  std::printf("%-16s %5s %14s %14s %14s %14s\n", "state", "side", "closed form", "scheme", "sampled", "std_err");
  for (const Case &c : cases) {
    for (Side side : {Side::A, Side::B}) {
      const double closed = gqd_exact(c.state, side).value;
      const double scheme = estimate_gqd(c.state, {.which = side}).value;
      const GqdEstimate s =
          estimate_gqd(c.state, {.which = side, .sampled = true, .shots = 200000, .repeats = 10, .seed = 42});
      std::printf("%-16s %5s %14.8f %14.8f %14.8f %14.8f\n", c.label, to_string(side), closed, scheme, s.value,
                  s.std_err);
    }
  }

  std::printf("\n%s", render_layout(standard_layout(11)).c_str());
  return 0;
}
