#pragma once

// One-sided (Hestenes) Jacobi SVD on plain nested vectors. Shares no code
// with the library so it can serve as an independent reference.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Columns = std::vector<std::vector<cplx>>;  // column-major: cols[j][i]

inline std::vector<double> jacobi_singular_values(Columns cols, double tol = 1e-15, int max_sweeps = 100) {
    const std::size_t n = cols.size();
    auto dot = [](const std::vector<cplx>& a, const std::vector<cplx>& b) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
        return s;
    };
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double alpha = std::real(dot(cols[p], cols[p]));
                const double beta = std::real(dot(cols[q], cols[q]));
                const cplx gamma = dot(cols[p], cols[q]);
                const double g = std::abs(gamma);
                if (g <= tol * std::sqrt(alpha * beta) || g == 0.0) continue;
                rotated = true;
                // make the pair's inner product real, then a real Jacobi rotation
                const cplx w = std::conj(gamma) / g;
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < cols[p].size(); ++i) {
                    const cplx ap = cols[p][i];
                    const cplx aq = cols[q][i] * w;
                    cols[p][i] = c * ap - s * aq;
                    cols[q][i] = s * ap + c * aq;
                }
            }
        }
        if (!rotated) break;
    }
    std::vector<double> sv;
    for (const auto& c : cols) sv.push_back(std::sqrt(std::real(dot(c, c))));
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

}  // namespace oracle
