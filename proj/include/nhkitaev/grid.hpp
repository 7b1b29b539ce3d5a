#pragma once

// Momentum grid of an N-site ring: k = 2*pi*m/N reduced to (-pi, pi].
// Momenta with 0 < k < pi pair with -k into 4-dimensional sectors; k = 0
// (and k = pi when N is even) are their own partner and stay single-mode.

#include <cmath>
#include <numbers>
#include <vector>

#include "params.hpp"

namespace nhkitaev {

struct MomentumGrid {
    int n_sites = 0;
    std::vector<double> paired;       // k in (0, pi), ascending
    std::vector<double> self_paired;  // {0} plus {pi} for even N
};

inline MomentumGrid momentum_grid(int n_sites) {
    if (n_sites < 2) throw validation_error("momentum_grid: need n_sites >= 2");
    MomentumGrid g;
    g.n_sites = n_sites;
    g.self_paired.push_back(0.0);
    const double step = 2.0 * std::numbers::pi / n_sites;
    // m in (0, N/2) gives 0 < k < pi exactly; m = N/2 (even N) is k = pi
    for (int m = 1; 2 * m < n_sites; ++m) g.paired.push_back(step * m);
    if (n_sites % 2 == 0) g.self_paired.push_back(std::numbers::pi);
    return g;
}

}  // namespace nhkitaev
