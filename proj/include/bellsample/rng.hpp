// Copyright 2026 The Bellsample Authors
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

#include <cmath>
#include <cstdint>

namespace bellsample {

/// splitmix64 step; used for seeding and for deriving independent streams.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Deterministic stream derivation: hash(seed, index). Used so that chunked or
/// parallel sampling produces identical results regardless of scheduling.
inline uint64_t derive_stream(uint64_t seed, uint64_t index) {
    uint64_t s = seed ^ (0x2545f4914f6cdd1dull * (index + 1));
    return splitmix64(s);
}

/// xoshiro256** generator. All randomized operations in this library take an
/// explicit 64-bit seed and use this generator, so results are reproducible
/// across platforms (std::random distributions are implementation-defined).
class Rng {
  public:
    explicit Rng(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& word : s_) {
            word = splitmix64(sm);
        }
        // Avoid the all-zero state (cannot occur from splitmix64, but cheap to enforce).
        s_[0] |= 1;
    }

    uint64_t next_u64() {
        uint64_t result = rotl(s_[1] * 5, 7) * 9;
        uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound). Masked rejection keeps this exactly uniform.
    uint64_t uniform_below(uint64_t bound) {
        if (bound <= 1) {
            return 0;
        }
        uint64_t mask = ~uint64_t{0} >> __builtin_clzll((bound - 1) | 1);
        uint64_t v;
        do {
            v = next_u64() & mask;
        } while (v >= bound);
        return v;
    }

    bool bit() {
        return next_u64() >> 63;
    }

    int pm_one() {
        return bit() ? 1 : -1;
    }

    /// Standard normal via Box-Muller (deterministic; used for Ginibre matrices).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1, u2;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(6.283185307179586477 * u2);
        have_spare_ = true;
        return r * std::cos(6.283185307179586477 * u2);
    }

  private:
    static uint64_t rotl(uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }

    uint64_t s_[4];
    double spare_ = 0;
    bool have_spare_ = false;
};

}  // namespace bellsample
