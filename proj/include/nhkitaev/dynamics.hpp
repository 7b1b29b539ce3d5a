#pragma once

// Exact sector propagators U_k(t) = exp(-i M_k t) and product-state many-body
// evolution.
//
// M_k is traceless with M_k^2 = (eps_k/2)^2 ... more precisely here the block
// satisfies M^2 = eps_k^2 I with eps_k the quasiparticle energy, so
//
//   U_k(t) = cos(eps_k t) I - i t sinc(eps_k t) M_k ,
//
// one formula that is exact for real eps (oscillation), imaginary eps
// (cosh/sinh growth in the broken phase) and eps = 0, where it degenerates to
// the Jordan-block result I - i M t because M becomes nilpotent. The only
// numerical care needed is the small-argument sinc, handled by its Taylor
// series; there is no generic/defective case split to go unstable at the EP.

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "grid.hpp"
#include "model.hpp"
#include "params.hpp"

namespace nhkitaev {

enum class PropagatorRegime { generic, near_ep_series };

struct SectorPropagator {
    Mat2 u;
    double k = 0.0, t = 0.0;
    PropagatorRegime regime = PropagatorRegime::generic;
};

struct SectorState {
    cplx a{1.0, 0.0};  // amplitude of |00>_{k,-k}
    cplx b{0.0, 0.0};  // amplitude of |11>_{k,-k}
    bool odd_occupation = false;  // |10>/|01> states: zero sector energy, frozen

    double norm_sq() const { return std::norm(a) + std::norm(b); }
};

namespace detail {

inline cplx sinc_stable(cplx x, PropagatorRegime& regime) {
    if (std::abs(x) < 1e-4) {
        regime = PropagatorRegime::near_ep_series;
        const cplx x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

inline void check_overflow(cplx eps, double t) {
    if (std::abs(eps.imag() * t) >= 700.0)
        throw numeric_range_error("sector evolution: |Im eps_k| * t >= 700 would overflow");
}

inline Mat2 propagator_matrix(const Mat2& m, cplx eps, double t, PropagatorRegime& regime) {
    check_overflow(eps, t);
    const cplx x = eps * t;
    const cplx c = std::cos(x);
    const cplx s = cplx(0.0, -1.0) * t * sinc_stable(x, regime);
    return {c + s * m.m00, s * m.m01, s * m.m10, c + s * m.m11};
}

}  // namespace detail

inline SectorPropagator sector_propagator(double k, const NhParams& p, double t) {
    p.validate();
    if (!std::isfinite(t)) throw validation_error("sector_propagator: t must be finite");
    SectorPropagator u;
    u.k = k;
    u.t = t;
    u.u = detail::propagator_matrix(sector_matrix_nh(k, p), dispersion_nh(k, p), t, u.regime);
    return u;
}

// Same formula driven by the Hermitian block (real eps_h); unitary.
inline SectorPropagator sector_propagator_h(double k, const HermParams& p, double t) {
    p.validate();
    if (!std::isfinite(t)) throw validation_error("sector_propagator_h: t must be finite");
    SectorPropagator u;
    u.k = k;
    u.t = t;
    u.u = detail::propagator_matrix(sector_matrix_h(k, p), cplx(dispersion_h(k, p), 0.0), t,
                                    u.regime);
    return u;
}

inline SectorState evolve_state(double k, const NhParams& p, double t, const SectorState& s) {
    if (s.odd_occupation) return s;  // odd-parity states carry zero sector energy
    const SectorPropagator u = sector_propagator(k, p, t);
    const auto v = u.u.apply({s.a, s.b});
    return {v[0], v[1], false};
}

// Quench from the sector vacuum, a(t)|00> + b(t)|11>. At an exceptional
// momentum this is (1 + i tau, -i tau) with tau = 2 delta^2 t / mu, drifting
// toward the coalescing direction (1, -1).
inline SectorState evolve_vacuum(double k, const NhParams& p, double t) {
    return evolve_state(k, p, t, SectorState{});
}

struct ManyBodyState {
    // aligned with MomentumGrid::paired / ::self_paired
    std::vector<SectorState> paired;
    std::vector<std::array<cplx, 2>> self_paired;  // (empty, occupied) amplitudes
};

inline ManyBodyState vacuum_state(const MomentumGrid& g) {
    ManyBodyState s;
    s.paired.assign(g.paired.size(), SectorState{});
    s.self_paired.assign(g.self_paired.size(), {cplx(1.0), cplx(0.0)});
    return s;
}

inline ManyBodyState evolve_many_body(const NhParams& p, const MomentumGrid& g, double t,
                                      const ManyBodyState& s) {
    if (s.paired.size() != g.paired.size() || s.self_paired.size() != g.self_paired.size())
        throw validation_error("evolve_many_body: state does not cover the grid");
    ManyBodyState out;
    out.paired.reserve(s.paired.size());
    for (std::size_t i = 0; i < g.paired.size(); ++i)
        out.paired.push_back(evolve_state(g.paired[i], p, t, s.paired[i]));
    out.self_paired.reserve(s.self_paired.size());
    for (std::size_t i = 0; i < g.self_paired.size(); ++i) {
        // single-mode sector: occupation energy 2(mu - J cos k)
        const double e = 2.0 * (p.mu - p.j * std::cos(g.self_paired[i]));
        const cplx phase = std::exp(cplx(0.0, -e * t));
        out.self_paired.push_back({s.self_paired[i][0], phase * s.self_paired[i][1]});
    }
    return out;
}

}  // namespace nhkitaev
