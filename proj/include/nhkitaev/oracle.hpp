#pragma once

// Brute-force real-space oracle: the full 2^L many-body Hamiltonian on the
// ring, dense exp(-iHt) evolution, the PT-symmetry check, and the
// momentum-space consistency report. Deliberately independent of the sector
// construction — this module never touches Mat2 propagators, only raw
// fermionic operators in the occupation basis.
//
// Basis convention (the one decision everything hinges on): bitstring states
// with site 0 as least significant bit, operator strings ordered by site
// index, so c_j / c_j^dag pick up (-1)^{# occupied sites below j}.

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "grid.hpp"
#include "model.hpp"
#include "observables.hpp"
#include "params.hpp"

namespace nhkitaev {

struct DenseHamiltonian {
    int n_sites = 0;
    std::size_t dim = 0;
    std::vector<cplx> h;  // row-major: h[r*dim + c] = <r|H|c>

    cplx& at(std::size_t r, std::size_t c) { return h[r * dim + c]; }
    const cplx& at(std::size_t r, std::size_t c) const { return h[r * dim + c]; }
};

using DenseState = std::vector<cplx>;

namespace detail {

inline int string_sign(std::uint32_t s, int j) {
    return std::popcount(s & ((1u << j) - 1u)) & 1 ? -1 : 1;
}

// coef * op_a op_b acting on every basis state (op_b applied first).
inline void add_quadratic(DenseHamiltonian& H, int a, bool dag_a, int b, bool dag_b, cplx coef) {
    const std::uint32_t ba = 1u << a, bb = 1u << b;
    for (std::uint32_t s = 0; s < H.dim; ++s) {
        const bool occ_b = s & bb;
        if (dag_b ? occ_b : !occ_b) continue;
        const int sgn_b = string_sign(s, b);
        const std::uint32_t s1 = dag_b ? (s | bb) : (s & ~bb);
        const bool occ_a = s1 & ba;
        if (dag_a ? occ_a : !occ_a) continue;
        const int sgn_a = string_sign(s1, a);
        const std::uint32_t s2 = dag_a ? (s1 | ba) : (s1 & ~ba);
        H.at(s2, s) += coef * double(sgn_a * sgn_b);
    }
}

inline DenseHamiltonian build_dense_impl(int L, double j, double mu, cplx pair_create,
                                         cplx pair_annih) {
    if (L < 2 || L > 12) throw validation_error("build_dense: need 2 <= L <= 12");
    DenseHamiltonian H;
    H.n_sites = L;
    H.dim = std::size_t{1} << L;
    H.h.assign(H.dim * H.dim, cplx{});
    for (int s = 0; s < L; ++s) {
        const int sn = (s + 1) % L;
        add_quadratic(H, s, true, sn, false, -j);           // -J c_j^dag c_{j+1}
        add_quadratic(H, sn, true, s, false, -j);           // -J c_{j+1}^dag c_j
        add_quadratic(H, s, true, sn, true, pair_create);   // c_j^dag c_{j+1}^dag
        add_quadratic(H, sn, false, s, false, pair_annih);  // c_{j+1} c_j
    }
    for (std::uint32_t s = 0; s < H.dim; ++s)
        H.at(s, s) += mu * (2.0 * std::popcount(s) - L);  // sum_j mu (2 n_j - 1)
    return H;
}

inline double inf_norm(const DenseHamiltonian& H) {
    double best = 0.0;
    for (std::size_t r = 0; r < H.dim; ++r) {
        double row = 0.0;
        for (std::size_t c = 0; c < H.dim; ++c) row += std::abs(H.at(r, c));
        best = std::max(best, row);
    }
    return best;
}

inline double state_norm(const DenseState& v) {
    double acc = 0.0;
    for (const cplx& z : v) acc += std::norm(z);
    return std::sqrt(acc);
}

// v <- exp(-i H dt) v by plain Taylor; caller keeps ||H dt|| ~ 1.
inline void taylor_step(const DenseHamiltonian& H, double dt, DenseState& v) {
    DenseState term = v, next(v.size());
    for (int n = 1; n <= 60; ++n) {
        const cplx f = cplx(0.0, -dt / n);
        for (std::size_t r = 0; r < H.dim; ++r) {
            cplx acc{};
            const cplx* row = H.h.data() + r * H.dim;
            for (std::size_t c = 0; c < H.dim; ++c) acc += row[c] * term[c];
            next[r] = f * acc;
        }
        term.swap(next);
        double tn = 0.0, vn = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] += term[i];
            tn += std::norm(term[i]);
            vn += std::norm(v[i]);
        }
        if (tn <= 1e-32 * vn) return;
    }
    throw numeric_error("dense_evolve: Taylor step failed to converge");
}

inline DenseState evolve_fixed_steps(const DenseHamiltonian& H, double t, const DenseState& s,
                                     long steps) {
    DenseState v = s;
    for (long i = 0; i < steps; ++i) taylor_step(H, t / steps, v);
    return v;
}

}  // namespace detail

inline DenseHamiltonian build_dense(const NhParams& p, int l) {
    p.validate();
    const cplx c(0.0, -p.delta);
    return detail::build_dense_impl(l, p.j, p.mu, c, c);  // both terms -i Delta: non-Hermitian
}

inline DenseHamiltonian build_dense(const HermParams& p, int l) {
    p.validate();
    return detail::build_dense_impl(l, p.j, p.mu_h, cplx(0.0, -p.delta_h), cplx(0.0, p.delta_h));
}

// Test hook: a complex on-site term z n_j, which breaks both Hermiticity and
// (for Im z != 0 or off-center j) PT symmetry.
inline void add_onsite_perturbation(DenseHamiltonian& H, int site, cplx z) {
    if (site < 0 || site >= H.n_sites) throw validation_error("add_onsite_perturbation: bad site");
    for (std::uint32_t s = 0; s < H.dim; ++s)
        if (s >> site & 1u) H.at(s, s) += z;
}

inline DenseState dense_vacuum(int l) {
    DenseState v(std::size_t{1} << l, cplx{});
    v[0] = 1.0;
    return v;
}

// exp(-i H t) s via scaled Taylor with step-halving backward-error control:
// the step count doubles until two consecutive resolutions agree to 1e-12.
inline DenseState dense_evolve(const DenseHamiltonian& H, double t, const DenseState& s) {
    if (s.size() != H.dim) throw validation_error("dense_evolve: state/Hamiltonian size mismatch");
    if (!std::isfinite(t)) throw validation_error("dense_evolve: t must be finite");
    if (t == 0.0) return s;
    long steps = std::max(1L, std::lround(std::ceil(detail::inf_norm(H) * std::abs(t))));
    DenseState coarse = detail::evolve_fixed_steps(H, t, s, steps);
    for (int tries = 0; tries < 3; ++tries) {
        steps *= 2;
        DenseState fine = detail::evolve_fixed_steps(H, t, s, steps);
        double dn = 0.0;
        for (std::size_t i = 0; i < fine.size(); ++i) dn += std::norm(fine[i] - coarse[i]);
        if (std::sqrt(dn) <= 1e-12 * detail::state_norm(fine)) return fine;
        coarse.swap(fine);
    }
    throw numeric_error("dense_evolve: step-halving did not reach 1e-12 backward error");
}

struct PtCheckResult {
    bool pass = false;
    double residual = std::numeric_limits<double>::infinity();
};

// PT: site reflection l -> N-l+1 plus complex conjugation. On occupation
// states the reflection permutes bits and reorders the creation string,
// giving the sign (-1)^{n(n-1)/2} for n occupied sites. Checks
// P conj(H) P^{-1} = H entrywise.
inline PtCheckResult pt_check(const DenseHamiltonian& H, int l, double tol) {
    if (l != H.n_sites) throw validation_error("pt_check: site count mismatch");
    if (l > 10) throw validation_error("pt_check: L <= 10");
    const std::uint32_t dim = std::uint32_t(H.dim);
    std::vector<std::uint32_t> perm(dim);
    std::vector<double> sgn(dim);
    for (std::uint32_t s = 0; s < dim; ++s) {
        std::uint32_t r = 0;
        for (int j = 0; j < l; ++j)
            if (s >> j & 1u) r |= 1u << (l - 1 - j);
        perm[s] = r;
        const int n = std::popcount(s);
        sgn[s] = (n * (n - 1) / 2) % 2 ? -1.0 : 1.0;
    }
    double res = 0.0;
    for (std::uint32_t r = 0; r < dim; ++r)
        for (std::uint32_t c = 0; c < dim; ++c) {
            const cplx lhs = sgn[r] * sgn[c] * std::conj(H.at(r, c));
            res = std::max(res, std::abs(lhs - H.at(perm[r], perm[c])));
        }
    return {res <= tol, res};
}

// --- functional momentum-space operators on dense states ---

namespace detail {

template <bool Dag>
DenseState apply_site(const DenseState& v, int j) {
    DenseState out(v.size(), cplx{});
    const std::uint32_t bit = 1u << j;
    for (std::uint32_t s = 0; s < v.size(); ++s) {
        if (v[s] == cplx{}) continue;
        const bool occ = s & bit;
        if (Dag ? occ : !occ) continue;
        out[Dag ? (s | bit) : (s & ~bit)] += double(string_sign(s, j)) * v[s];
    }
    return out;
}

}  // namespace detail

// c_k = (1/sqrt N) sum_j e^{-ikj} c_j ; pass -k for the partner mode.
inline DenseState apply_c_momentum(const DenseState& v, int l, double k) {
    DenseState out(v.size(), cplx{});
    const double w = 1.0 / std::sqrt(double(l));
    for (int j = 0; j < l; ++j) {
        const cplx phase = w * std::exp(cplx(0.0, -k * j));
        const DenseState part = detail::apply_site<false>(v, j);
        for (std::size_t s = 0; s < v.size(); ++s) out[s] += phase * part[s];
    }
    return out;
}

inline DenseState apply_cdag_momentum(const DenseState& v, int l, double k) {
    DenseState out(v.size(), cplx{});
    const double w = 1.0 / std::sqrt(double(l));
    for (int j = 0; j < l; ++j) {
        const cplx phase = w * std::exp(cplx(0.0, k * j));
        const DenseState part = detail::apply_site<true>(v, j);
        for (std::size_t s = 0; s < v.size(); ++s) out[s] += phase * part[s];
    }
    return out;
}

inline double dense_norm_sq(const DenseState& v) {
    double acc = 0.0;
    for (const cplx& z : v) acc += std::norm(z);
    return acc;
}

// N(t) = sum_{0<k<pi} ||c_k c_{-k} psi||^2 / ||psi||^2
inline double dense_pair_number(const DenseState& v, int l, const MomentumGrid& g) {
    const double n2 = dense_norm_sq(v);
    double acc = 0.0;
    for (double k : g.paired)
        acc += dense_norm_sq(apply_c_momentum(apply_c_momentum(v, l, -k), l, k)) / n2;
    return acc;
}

// O(t) rebuilt from dense expectation values: per paired sector
// |<phi^-|psi_k>|^2 = g0^2 p00 + g1^2 p11 + g0 g1 x with
// p00 = <(c_k c_{-k})(c_k c_{-k})^dag>, p11 = <n_k n_{-k}>,
// x = 2 Re <c_k^dag c_{-k}^dag>, all on the normalized state.
inline double dense_overlap_total(const DenseState& v, int l, const MomentumGrid& g,
                                  const HermParams& hp) {
    const double n2 = dense_norm_sq(v);
    double acc = double(g.self_paired.size());  // self-paired modes contribute 1 each
    for (double k : g.paired) {
        const auto gm = ground_mode_h(k, hp);
        const DenseState w11 = apply_c_momentum(apply_c_momentum(v, l, -k), l, k);
        const DenseState w00 = apply_cdag_momentum(apply_cdag_momentum(v, l, -k), l, k);
        const double p11 = dense_norm_sq(w11) / n2;
        const double p00 = dense_norm_sq(w00) / n2;
        cplx corr{};
        for (std::size_t s = 0; s < v.size(); ++s) corr += std::conj(v[s]) * w00[s];
        const double x = 2.0 * corr.real() / n2;
        const double o2 = gm[0] * gm[0] * p00 + gm[1] * gm[1] * p11 + gm[0] * gm[1] * x;
        acc += 2.0 * std::sqrt(std::max(0.0, o2));
    }
    return acc / l;
}

struct ConsistencyReport {
    int n_sites = 0;
    double t = 0.0;
    double dev_pair = 0.0;
    double dev_norm = 0.0;
    double dev_overlap = std::numeric_limits<double>::quiet_NaN();
    double max_dev = 0.0;
    bool pass = false;
};

// Evolve the dense vacuum and the momentum-space product vacuum under the
// same quench and compare N(t), the squared norm, and (given hp) O(t).
inline ConsistencyReport momentum_consistency(const NhParams& p, int l, double t, double tol,
                                              const std::optional<HermParams>& hp = std::nullopt) {
    if (l < 4 || l > 10) throw validation_error("momentum_consistency: need 4 <= L <= 10");
    if (!(t >= 0.0 && t <= 5.0)) throw validation_error("momentum_consistency: need 0 <= t <= 5");
    const MomentumGrid g = momentum_grid(l);
    const DenseHamiltonian H = build_dense(p, l);
    const DenseState psi = dense_evolve(H, t, dense_vacuum(l));

    ConsistencyReport r;
    r.n_sites = l;
    r.t = t;
    r.dev_pair = std::abs(dense_pair_number(psi, l, g) - total_pair_number(p, g, t));

    double prod = 1.0;  // self-paired sectors evolve by a phase: norm 1
    for (double k : g.paired) prod *= sector_norm(k, p, t);
    r.dev_norm = std::abs(dense_norm_sq(psi) - prod) / std::max(1.0, prod);

    r.max_dev = std::max(r.dev_pair, r.dev_norm);
    if (hp) {
        r.dev_overlap =
            std::abs(dense_overlap_total(psi, l, g, *hp) - overlap_total(p, *hp, g, t).o_total);
        r.max_dev = std::max(r.max_dev, r.dev_overlap);
    }
    r.pass = r.max_dev < tol;
    return r;
}

}  // namespace nhkitaev
