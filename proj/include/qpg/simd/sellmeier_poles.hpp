#pragma once

namespace qpg::simd {

/// Two-pole Sellmeier series at a fixed temperature:
/// n^2 = a + b1/(l2 - c1) + b2/(l2 - c2) - d*l2 with l2 = (lambda/um)^2.
struct SellmeierPoles {
    double a = 0.0;
    double b1 = 0.0;
    double c1 = 0.0;
    double b2 = 0.0;
    double c2 = 0.0;
    double d = 0.0;
};

}  // namespace qpg::simd
