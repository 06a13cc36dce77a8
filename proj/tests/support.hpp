#pragma once

#include <complex>
#include <random>
#include <vector>

#include "qpg/pulses.hpp"

namespace testing {

using cplx = std::complex<double>;

inline std::vector<cplx> random_complex(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    std::vector<cplx> v(n);
    for (auto& x : v) x = {g(rng), g(rng)};
    return v;
}

inline std::vector<double> random_real(std::size_t n, std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

// Dimensionless grid centred on 0 that covers Hermite orders up to ~20 at unit width.
inline qpg::FrequencyGrid unit_grid(std::size_t n = 801, double span = 24.0) { return {0.0, span, n}; }

}  // namespace testing
