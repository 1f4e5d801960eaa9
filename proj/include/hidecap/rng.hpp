// Copyright 2026 The hidecap developers.
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

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace hidecap {

/// Seeded random stream. All distributions are generated from raw mt19937_64
/// output with fixed arithmetic (no std::*_distribution), so a given seed
/// reproduces the same values on every standard library.
///
/// Parallel workers derive independent sub-streams with child(index); results
/// are then identical for any thread count as long as work item i always uses
/// child(i).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1) with 53 bits of resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (one spare cached).
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    /// Complex standard normal: independent N(0, 1/2) real and imaginary parts,
    /// so E|z|^2 = 1 (the Ginibre convention).
    std::complex<double> complex_gaussian() {
        const double s = std::numbers::sqrt2;
        return {gaussian() / s, gaussian() / s};
    }

    /// Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n) {
        // Rejection sampling keeps the draw exactly uniform.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = gen_();
        while (v >= limit) v = gen_();
        return v % n;
    }

    /// Independent sub-stream for work item `index`. Deterministic in
    /// (seed, index) and decorrelated from the parent by a splitmix64 scramble.
    Rng child(std::uint64_t index) const {
        return Rng(scramble(seed_ + 0x9E3779B97F4A7C15ULL * (index + 1)));
    }

    /// Independent sub-stream drawn from the current position; advances the
    /// parent, so successive spawns are decorrelated even within one call.
    Rng spawn() { return Rng(scramble(gen_())); }

  private:
    static std::uint64_t scramble(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace hidecap
