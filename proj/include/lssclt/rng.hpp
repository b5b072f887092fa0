// Copyright 2026 the lssclt authors
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

#ifndef LSSCLT_RNG_HPP_
#define LSSCLT_RNG_HPP_

#include <cstdint>
#include <random>

namespace lssclt {

// One round of the splitmix64 output function.  Used to spread consecutive
// integer seeds (base_seed + replicate) over the seed space before feeding
// the main engine.
std::uint64_t splitmix64_mix(std::uint64_t x);

// Deterministic sampler.  All transforms (Box-Muller, Marsaglia-Tsang) are
// implemented here instead of <random>'s distributions because the standard
// only pins down the engines, not the distributions -- and the determinism
// contract covers every output byte.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64_mix(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; the paired value is cached.
  double normal();

  // +1 or -1 with equal probability.
  double rademacher() { return (engine_() & 1u) ? 1.0 : -1.0; }

  // Gamma(shape, 1) by Marsaglia-Tsang squeeze; requires shape >= 1.
  double gamma(double shape);

  double chi_square(double df) { return 2.0 * gamma(0.5 * df); }

  // Student-t with nu degrees of freedom (unit scale, variance nu/(nu-2)).
  double student_t(double nu);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace lssclt

#endif  // LSSCLT_RNG_HPP_
