#pragma once
#include <random>

#include "dipgp/field.hpp"

namespace dipgp::test {

inline std::mt19937_64 rng(unsigned seed = 12345) { return std::mt19937_64(seed); }

inline Field random_field(const Grid3& g, unsigned seed = 12345) {
    auto gen = rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    Field f(g, Space::position);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = cplx{nd(gen), nd(gen)};
    return f;
}

} // namespace dipgp::test
