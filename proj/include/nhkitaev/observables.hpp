#pragma once

// Pair-generation observables and the overlap diagnostic.
//
// Everything funnels through one scalar
//
//   q(k,t) = | Delta sin k * t * sinc(eps_k t) |^2 ,
//
// in terms of which  N_k(t) = q / (1/4 + 2q)  and  |a|^2+|b|^2 = 1 + 8q.
// The eps^2 in the usual closed form cancels against the sinc, so the same
// expression covers real eps (oscillation), imaginary eps (sinh growth) and
// the exceptional point eps = 0, where q = (Delta sin k * t)^2 gives
// N = tau^2/(1+2tau^2) with tau = 2 Delta^2 t / mu.

#include <cmath>
#include <numbers>
#include <complex>
#include <cstdlib>
#include <limits>
#include <utility>
#include <vector>

#include "dynamics.hpp"
#include "grid.hpp"
#include "model.hpp"
#include "params.hpp"

namespace nhkitaev {

struct PairDensityRecord {
    double k = 0.0, t = 0.0;
    double n_k = 0.0;      // N_k(t) in [0, 1/2]
    double norm_sq = 1.0;  // squared Dirac norm of the evolved sector vacuum
    double period = std::numeric_limits<double>::infinity();  // pi/eps_k when real
};

struct QuadSettings {
    int t_nodes = 2048;  // Simpson subintervals for time averages
    int k_nodes = 4096;  // Simpson subintervals for momentum averages
};

struct AverageRecord {
    double k = std::numeric_limits<double>::quiet_NaN();  // set for N-bar_k
    double t = std::numeric_limits<double>::quiet_NaN();  // set for N-bar(t)
    double value = 0.0;
    const char* rule = "simpson";
    int nodes = 0;
    double est_error = 0.0;
    bool ep_asymptote = false;  // value is the t->inf limit 1/2, not a quadrature
};

struct ModeOverlap {
    double k = 0.0;
    double o_k = 0.0;
};

struct OverlapRecord {
    double t = 0.0;
    double o_total = 0.0;
    std::vector<ModeOverlap> modes;  // ascending k over the full grid
};

namespace detail {

inline double q_factor(double k, const NhParams& p, double t) {
    const cplx eps = dispersion_nh(k, p);
    check_overflow(eps, t);
    PropagatorRegime regime = PropagatorRegime::generic;
    return std::norm(p.delta * std::sin(k) * t * sinc_stable(eps * t, regime));
}

template <class F>
double simpson(F&& f, double a, double b, int n) {
    if (n < 2 || n % 2) throw validation_error("simpson: subinterval count must be even, >= 2");
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return acc * h / 3.0;
}

// Composite Simpson at n and n/2 subintervals; fourth-order Richardson gap
// serves as the error estimate for the finer rule.
template <class F>
std::pair<double, double> simpson_with_error(F&& f, double a, double b, int n) {
    if (n < 4 || n % 4) throw validation_error("quadrature: node count must be a multiple of 4");
    const double fine = simpson(f, a, b, n);
    const double coarse = simpson(f, a, b, n / 2);
    return {fine, std::abs(fine - coarse) / 15.0};
}

}  // namespace detail

inline PairDensityRecord pair_density(double k, const NhParams& p, double t) {
    p.validate();
    if (!std::isfinite(t)) throw validation_error("pair_density: t must be finite");
    PairDensityRecord r;
    r.k = k;
    r.t = t;
    const double q = detail::q_factor(k, p, t);
    // reciprocal form survives q = 0 (0.25/q = inf -> 0) and q = inf (-> 1/2)
    r.n_k = 1.0 / (2.0 + 0.25 / q);
    r.norm_sq = 1.0 + 8.0 * q;
    const cplx eps = dispersion_nh(k, p);
    if (eps.imag() == 0.0 && eps.real() > 0.0) r.period = std::numbers::pi / eps.real();
    return r;
}

inline double sector_norm(double k, const NhParams& p, double t) {
    p.validate();
    if (!std::isfinite(t)) throw validation_error("sector_norm: t must be finite");
    return 1.0 + 8.0 * detail::q_factor(k, p, t);
}

// (1/T) int_0^T N_k dt over one period T = pi/eps_k. Only defined for real
// nonzero eps; at an exceptional or PT-broken momentum the period diverges.
inline AverageRecord avg_pair_density_time(double k, const NhParams& p,
                                           const QuadSettings& quad = {}) {
    p.validate();
    const cplx eps = dispersion_nh(k, p);
    if (eps.imag() != 0.0 || eps.real() == 0.0)
        throw infinite_period_error("avg_pair_density_time: eps_k not real nonzero, period diverges");
    const double period = std::numbers::pi / eps.real();
    AverageRecord r;
    r.k = k;
    r.nodes = quad.t_nodes;
    auto f = [&](double t) { return pair_density(k, p, t).n_k; };
    const auto [val, err] = detail::simpson_with_error(f, 0.0, period, quad.t_nodes);
    r.value = val / period;
    r.est_error = err / period;
    return r;
}

// Same, but an exceptional momentum reports the known t->inf asymptote 1/2
// with the flag set instead of throwing. Convenience for sweeps over k grids
// that cross the EP.
inline AverageRecord avg_pair_density_time_or_asymptote(double k, const NhParams& p,
                                                        const QuadSettings& quad = {}) {
    try {
        return avg_pair_density_time(k, p, quad);
    } catch (const infinite_period_error&) {
        AverageRecord r;
        r.k = k;
        r.value = 0.5;
        r.rule = "ep-asymptote";
        r.ep_asymptote = true;
        return r;
    }
}

// (1/pi) int_0^pi N_k(t) dk. The integrand is bounded by 1/2 and continuous
// in k (q is entire in eps^2), so plain composite Simpson suffices.
inline AverageRecord avg_pair_density_momentum(const NhParams& p, double t,
                                               const QuadSettings& quad = {}) {
    p.validate();
    if (!std::isfinite(t)) throw validation_error("avg_pair_density_momentum: t must be finite");
    AverageRecord r;
    r.t = t;
    r.nodes = quad.k_nodes;
    auto f = [&](double k) { return pair_density(k, p, t).n_k; };
    const auto [val, err] = detail::simpson_with_error(f, 0.0, std::numbers::pi, quad.k_nodes);
    r.value = val / std::numbers::pi;
    r.est_error = err / std::numbers::pi;
    return r;
}

inline double total_pair_number(const NhParams& p, const MomentumGrid& g, double t) {
    double acc = 0.0;
    for (double k : g.paired) acc += pair_density(k, p, t).n_k;
    return acc;
}

// |<phi_k^- | psi_k(t)>| with both states at unit Dirac norm; phi^- is the
// Hermitian-chain ground mode, psi the evolved sector vacuum.
inline double overlap_mode(double k, const NhParams& p, const HermParams& hp, double t) {
    if (!(k > 0.0 && k < std::numbers::pi))
        throw validation_error("overlap_mode: k must lie strictly inside (0, pi)");
    const auto g = ground_mode_h(k, hp);
    const SectorState s = evolve_vacuum(k, p, t);
    // rescale first: amplitudes can reach ~e^700 in the broken phase, where
    // |a|^2 + |b|^2 would overflow even though the ratio is O(1)
    const double scale = std::max(std::abs(s.a), std::abs(s.b));
    const cplx a = s.a / scale, b = s.b / scale;
    const cplx inner = g[0] * a + g[1] * b;
    return std::abs(inner) / std::sqrt(std::norm(a) + std::norm(b));
}

// O(t) = (1/N) [ sum_self O_k + 2 sum_{0<k<pi} O_k ].  A self-paired momentum
// (k = 0, and pi for even N) has no pairing partner: the target product state
// carries no factor there and the quench never populates the mode, so each
// such term contributes 1 exactly.
inline OverlapRecord overlap_total(const NhParams& p, const HermParams& hp,
                                   const MomentumGrid& g, double t) {
    hp.validate();
    OverlapRecord r;
    r.t = t;
    double acc = 0.0;
    r.modes.push_back({0.0, 1.0});
    acc += 1.0;
    for (double k : g.paired) {
        const double o = overlap_mode(k, p, hp, t);
        r.modes.push_back({k, o});
        acc += 2.0 * o;
    }
    if (g.self_paired.size() > 1) {  // k = pi present for even N
        r.modes.push_back({std::numbers::pi, 1.0});
        acc += 1.0;
    }
    r.o_total = acc / g.n_sites;
    return r;
}

}  // namespace nhkitaev
