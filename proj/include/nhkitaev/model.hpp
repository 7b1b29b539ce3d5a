#pragma once

// Momentum-sector building blocks for the ring with Hamiltonian
//
//   H = sum_j [ -J c_j^+ c_{j+1} + h.c. - i delta (c_j^+ c_{j+1}^+ + c_{j+1} c_j)
//               + mu (2 n_j - 1) ],      c_{N+1} = c_1,
//
// and for its Hermitian sibling with pairing -i delta_h c_j^+ c_{j+1}^+ + h.c.
// Each pair (k, -k) closes on the even-parity doublet (|00>, |11>), where the
// dynamics reduces to a traceless 2x2 matrix; odd-parity states carry zero
// energy relative to the sector and never move.

#include <array>
#include <cmath>
#include <complex>
#include <limits>

#include "params.hpp"

namespace nhkitaev {

using cplx = std::complex<double>;

// 2x2 complex matrix on the ordered basis (|00>_{k,-k}, |11>_{k,-k}).
struct Mat2 {
    cplx m00{}, m01{}, m10{}, m11{};

    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
                a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
    }
    friend Mat2 operator*(cplx s, const Mat2& a) {
        return {s * a.m00, s * a.m01, s * a.m10, s * a.m11};
    }
    friend Mat2 operator+(const Mat2& a, const Mat2& b) {
        return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
    }
    friend Mat2 operator-(const Mat2& a, const Mat2& b) {
        return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
    }
    std::array<cplx, 2> apply(const std::array<cplx, 2>& v) const {
        return {m00 * v[0] + m01 * v[1], m10 * v[0] + m11 * v[1]};
    }
    cplx det() const { return m00 * m11 - m01 * m10; }
    double frobenius() const {
        return std::sqrt(std::norm(m00) + std::norm(m01) + std::norm(m10) + std::norm(m11));
    }
    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

using SectorMatrix = Mat2;

// Even-sector block of the non-Hermitian chain. The sign asymmetry of the
// off-diagonal (-2 delta sin k above, +2 delta sin k below) is the entire
// non-Hermiticity of the model.
inline SectorMatrix sector_matrix_nh(double k, const NhParams& p) {
    const double a = 2.0 * (p.j * std::cos(k) - p.mu);
    const double c = 2.0 * p.delta * std::sin(k);
    return {cplx(a), cplx(-c), cplx(c), cplx(-a)};
}

// Hermitian counterpart: real symmetric block.
inline SectorMatrix sector_matrix_h(double k, const HermParams& p) {
    const double a = 2.0 * (p.j * std::cos(k) - p.mu_h);
    const double c = 2.0 * p.delta_h * std::sin(k);
    return {cplx(a), cplx(c), cplx(c), cplx(-a)};
}

// eps_k^2 / 4, kept separate because its sign decides the PT character of
// the momentum and several formulas want it without the square root.
inline double dispersion_nh_sq_quarter(double k, const NhParams& p) {
    const double xi = p.mu - p.j * std::cos(k);
    const double ds = p.delta * std::sin(k);
    return xi * xi - ds * ds;
}

// eps_k = 2 sqrt((mu - J cos k)^2 - delta^2 sin^2 k), principal branch:
// real >= 0 in the unbroken region, +i |eps| in the broken one.
inline cplx dispersion_nh(double k, const NhParams& p) {
    const double v = dispersion_nh_sq_quarter(k, p);
    if (v >= 0.0) return cplx(2.0 * std::sqrt(v), 0.0);
    return cplx(0.0, 2.0 * std::sqrt(-v));
}

inline double dispersion_h(double k, const HermParams& p) {
    const double xi = p.mu_h - p.j * std::cos(k);
    const double ds = p.delta_h * std::sin(k);
    return 2.0 * std::hypot(xi, ds);
}

// Scale used to decide when eps_k is "numerically zero": |eps^2/4| is
// compared against this times a relative tolerance.
inline double dispersion_scale_sq(const NhParams& p) {
    const double s = std::abs(p.mu) + std::abs(p.j) + std::abs(p.delta);
    return std::max(1.0, s * s);
}

inline bool is_defective_momentum(double k, const NhParams& p, double rel_tol = 1e-12) {
    return std::abs(dispersion_nh_sq_quarter(k, p)) < rel_tol * dispersion_scale_sq(p);
}

// Complex Bogoliubov angle, branch fixed by
//   cos 2theta = 2 (mu - J cos k)/eps_k,  sin 2theta = 2 i delta sin k/eps_k,
// which satisfy cos^2 + sin^2 = 1 as complex numbers (not as moduli).
struct BogoliubovMode {
    cplx cos_theta, sin_theta;

    cplx cos_two_theta() const { return cos_theta * cos_theta - sin_theta * sin_theta; }
    cplx sin_two_theta() const { return 2.0 * cos_theta * sin_theta; }
};

inline BogoliubovMode bogoliubov_angle(double k, const NhParams& p) {
    p.validate();
    const double xi = p.mu - p.j * std::cos(k);
    const double ds = p.delta * std::sin(k);
    if (xi == 0.0 && ds == 0.0)
        throw validation_error("bogoliubov_angle: tan(2theta) undefined, (mu - J cos k, delta sin k) = (0,0)");
    if (is_defective_momentum(k, p))
        throw defective_mode_error("bogoliubov_angle: eps_k = 0 (exceptional momentum), mode is defective");
    const cplx eps = dispersion_nh(k, p);
    const cplx c2 = 2.0 * xi / eps;
    const cplx s2 = 2.0 * cplx(0.0, 1.0) * ds / eps;
    // half-angle via whichever of 1 +- cos 2theta is away from zero
    BogoliubovMode m;
    if (std::abs(1.0 + c2) >= std::abs(1.0 - c2)) {
        m.cos_theta = std::sqrt(0.5 * (1.0 + c2));
        m.sin_theta = s2 / (2.0 * m.cos_theta);
    } else {
        m.sin_theta = std::sqrt(0.5 * (1.0 - c2));
        m.cos_theta = s2 / (2.0 * m.sin_theta);
    }
    return m;
}

// Right eigenvectors of the even-sector block written as (1, beta^{+-}),
// with Dirac normalizations Omega^{+-} = 1 + |beta^{+-}|^2. For the
// non-Hermitian chain beta^+ beta^- = 1; the analogous Hermitian pair obeys
// b^+ b^- = -1.
struct EigenAmplitudes {
    cplx beta_plus, beta_minus;
    double omega_plus = 1.0, omega_minus = 1.0;
};

inline EigenAmplitudes eigen_amplitudes_nh(double k, const NhParams& p) {
    p.validate();
    if (is_defective_momentum(k, p))
        throw defective_mode_error("eigen_amplitudes_nh: eps_k = 0, eigenvectors coalesce");
    EigenAmplitudes e;
    const double ds = p.delta * std::sin(k);
    if (ds == 0.0) {
        // no pairing at this momentum: eigenstates are the basis states;
        // beta = 0 is the continuous limit of the formula
        return e;
    }
    const cplx half_eps = 0.5 * dispersion_nh(k, p);
    const double a = p.j * std::cos(k) - p.mu;
    e.beta_plus = ds / (a + half_eps);
    e.beta_minus = ds / (a - half_eps);
    e.omega_plus = 1.0 + std::norm(e.beta_plus);
    e.omega_minus = 1.0 + std::norm(e.beta_minus);
    return e;
}

// Ground-sector amplitudes of the Hermitian chain: the -eps_h(k) eigenvector
// (1, b_k^-)/sqrt(1 + (b_k^-)^2), real by construction. Away from the
// special points b^- = B/(A - eps_h) with A = 2(J cos k - mu_h),
// B = 2 delta_h sin k; A - eps_h < 0 strictly whenever B != 0.
//
// In the topological window |mu_h| < |J| this tends to the occupied doublet
// (0,1) as k -> 0, and in the trivial regime mu_h > |J| to the empty one; for
// mu_h < -|J| the band is filled and the k -> 0 limit is again (0,1).
inline std::array<double, 2> ground_mode_h(double k, const HermParams& p) {
    p.validate();
    const double a = 2.0 * (p.j * std::cos(k) - p.mu_h);
    const double b = 2.0 * p.delta_h * std::sin(k);
    if (b == 0.0) {
        // diagonal sector: pick the lower of (a, -a); degenerate a = 0 falls
        // back to the empty state
        return (a <= 0.0) ? std::array<double, 2>{1.0, 0.0} : std::array<double, 2>{0.0, 1.0};
    }
    const double eps = std::hypot(a, b);
    const double bm = b / (a - eps);
    const double nrm = std::sqrt(1.0 + bm * bm);
    return {1.0 / nrm, bm / nrm};
}

// Self-paired momenta (k = 0, pi) have no pairing partner; the Hermitian
// ground state occupies the single mode iff that lowers the energy
// 2(mu_h - J cos k) n. Returns (empty, occupied) amplitudes.
inline std::array<double, 2> ground_occupation_h(double k, const HermParams& p) {
    p.validate();
    return (p.mu_h < p.j * std::cos(k)) ? std::array<double, 2>{0.0, 1.0}
                                        : std::array<double, 2>{1.0, 0.0};
}

}  // namespace nhkitaev
