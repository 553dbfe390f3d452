// SPDX-License-Identifier: Apache-2.0

#include "nightsched/random.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace nightsched {

std::size_t Rng::index(std::size_t n)
{
    if (n == 0) {
        throw std::invalid_argument("Rng::index requires n > 0");
    }
    // Rejection sampling removes the modulo bias.
    const std::uint64_t bound = n;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = next();
    while (x >= limit) {
        x = next();
    }
    return static_cast<std::size_t>(x % bound);
}

int Rng::uniform_int(int lo, int hi)
{
    if (hi < lo) {
        throw std::invalid_argument("Rng::uniform_int requires lo <= hi");
    }
    const auto span = static_cast<std::size_t>(static_cast<long long>(hi) - lo + 1);
    return lo + static_cast<int>(index(span));
}

double Rng::unit()
{
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi)
{
    return std::min(hi, lo + unit() * (hi - lo));
}

}  // namespace nightsched
