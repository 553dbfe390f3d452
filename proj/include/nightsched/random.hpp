// SPDX-License-Identifier: Apache-2.0
//
// Seeded random source shared by all stochastic operators. The engine is
// std::mt19937_64, whose output sequence is fixed by the standard; the
// distribution mappings below are implemented here rather than taken from
// <random> so a seed yields the same run with any standard library.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace nightsched {

class Rng {
  public:
    static constexpr std::string_view kAlgorithm = "mt19937_64";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n). n must be > 0.
    std::size_t index(std::size_t n);

    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi);

    /// Uniform real in [0, 1).
    double unit();

    /// Uniform real in [lo, hi].
    double uniform(double lo, double hi);

    bool bernoulli(double p) { return unit() < p; }

  private:
    std::mt19937_64 engine_;
};

}  // namespace nightsched
