#pragma once

// PT-phase classification of the non-Hermitian chain and the winding number
// of the Hermitian reference chain.
//
// The spectrum is real for all k iff f(x) = (mu - J x)^2 - delta^2 (1 - x^2)
// stays positive on x = cos k in [-1, 1]. f is a quadratic in x, so the
// classification is done analytically (vertex + endpoints) instead of on a
// finite k grid that could alias the measure-zero boundary. The exceptional
// line mu^2 - delta^2 = J^2 is where f develops a double root x = J/mu,
// i.e. a defective momentum k_c = arccos(J/mu).

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "grid.hpp"
#include "model.hpp"
#include "params.hpp"

namespace nhkitaev {

enum class PhaseKind { Unbroken, ExceptionalLine, Broken };

struct PhaseLabel {
    PhaseKind kind = PhaseKind::Unbroken;
    double k_c = std::numeric_limits<double>::quiet_NaN();  // ExceptionalLine only
    double broken_fraction = 0.0;  // measure of k in (0,pi) with eps_k^2 < 0, over pi
};

namespace detail {

// min over x in [-1,1] of f(x) = (mu - J x)^2 - delta^2 (1 - x^2)
inline double min_eps_sq_quarter(const NhParams& p) {
    const double qa = p.j * p.j + p.delta * p.delta;
    auto f = [&](double x) {
        const double xi = p.mu - p.j * x;
        return xi * xi - p.delta * p.delta * (1.0 - x * x);
    };
    double m = std::min(f(-1.0), f(1.0));
    if (qa > 0.0) {
        const double xv = p.mu * p.j / qa;
        if (xv >= -1.0 && xv <= 1.0) m = std::min(m, f(xv));
    }
    return m;
}

}  // namespace detail

inline PhaseLabel classify(const NhParams& p, double tol = 1e-9) {
    p.validate();
    if (!(tol > 0.0)) throw validation_error("classify: tol must be > 0");

    const double onln = p.mu * p.mu - p.delta * p.delta - p.j * p.j;
    if (std::abs(onln) <= tol && std::abs(p.mu) >= std::abs(p.j)) {
        PhaseLabel l;
        l.kind = PhaseKind::ExceptionalLine;
        l.k_c = (p.mu != 0.0) ? std::acos(std::clamp(p.j / p.mu, -1.0, 1.0)) : 0.0;
        return l;
    }
    // strictly unbroken means eps_k^2 > 0 for every k. A zero minimum away
    // from the exceptional surface (only the band-touching line delta = 0,
    // |mu| < |J|) keeps the spectrum real but is the continuous limit of the
    // broken region, so it is labeled Broken with fraction 0.
    if (detail::min_eps_sq_quarter(p) > 0.0)
        return PhaseLabel{PhaseKind::Unbroken, std::numeric_limits<double>::quiet_NaN(), 0.0};

    // broken: eps^2 < 0 between the roots of the quadratic
    // (J^2 + delta^2) x^2 - 2 mu J x + (mu^2 - delta^2)
    PhaseLabel l;
    l.kind = PhaseKind::Broken;
    const double qa = p.j * p.j + p.delta * p.delta;
    const double disc = p.delta * p.delta * (qa - p.mu * p.mu);
    if (qa > 0.0 && disc > 0.0) {
        const double root = std::sqrt(disc);
        const double xlo = std::clamp((p.mu * p.j - root) / qa, -1.0, 1.0);
        const double xhi = std::clamp((p.mu * p.j + root) / qa, -1.0, 1.0);
        if (xhi > xlo)
            l.broken_fraction = (std::acos(xlo) - std::acos(xhi)) / std::numbers::pi;
    }
    return l;
}

// k_c = arccos(J/mu) on the exceptional line (paper convention mu >= J > 0).
inline double critical_momentum(const NhParams& p, double tol = 1e-9) {
    const PhaseLabel l = classify(p, tol);
    if (l.kind != PhaseKind::ExceptionalLine)
        throw validation_error("critical_momentum: parameters are not on mu^2 - delta^2 = J^2");
    if (!(p.mu >= p.j && p.j > 0.0))
        throw validation_error("critical_momentum: convention requires mu >= J > 0");
    return std::acos(std::clamp(p.j / p.mu, -1.0, 1.0));
}

struct ExceptionalCurve {
    struct Sample {
        double delta_c, mu_c;
    };
    std::vector<Sample> samples;  // both branches mu_c = +-sqrt(J^2 + delta_c^2)
};

inline ExceptionalCurve exceptional_curve(double j, double delta_min, double delta_max,
                                          double delta_step) {
    if (!(delta_step > 0.0)) throw validation_error("exceptional_curve: step must be > 0");
    if (!(delta_max >= delta_min)) throw validation_error("exceptional_curve: empty delta range");
    ExceptionalCurve c;
    const int n = static_cast<int>(std::floor((delta_max - delta_min) / delta_step + 1e-9)) + 1;
    for (int i = 0; i < n; ++i) {
        const double d = delta_min + i * delta_step;
        const double m = std::sqrt(j * j + d * d);
        c.samples.push_back({d, m});
        c.samples.push_back({d, -m});
    }
    return c;
}

inline std::vector<double> broken_momenta(const NhParams& p, const MomentumGrid& g) {
    p.validate();
    std::vector<double> out;
    auto check = [&](double k) {
        if (dispersion_nh_sq_quarter(k, p) < 0.0) out.push_back(k);
    };
    for (double k : g.self_paired) check(k);  // never trips: sin k = 0 there
    for (double k : g.paired) check(k);
    return out;
}

// Winding of d(k) = (delta_h sin k, mu_h - J cos k) around the origin as k
// runs over (-pi, pi]. Sign convention: counterclockwise in the (d_y, d_z)
// plane is positive, which gives +1 for delta_h > 0, |mu_h| < |J|.
inline int winding_number(const HermParams& p, int n_points = 1000) {
    p.validate();
    if (n_points < 8) throw validation_error("winding_number: too few discretization points");

    // gap closes iff d(k) = 0 for some k: requires sin k = 0 (or delta_h = 0)
    // and mu_h = J cos k, i.e. |mu_h| = |J| (or the collinear delta_h = 0 case)
    auto dvec = [&](double k) {
        return std::array<double, 2>{p.delta_h * std::sin(k), p.mu_h - p.j * std::cos(k)};
    };
    double min_d2 = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 4096; ++i) {
        const double k = -std::numbers::pi + 2.0 * std::numbers::pi * i / 4096.0;
        const auto d = dvec(k);
        min_d2 = std::min(min_d2, d[0] * d[0] + d[1] * d[1]);
    }
    const double scale = std::max({1.0, p.j * p.j, p.mu_h * p.mu_h, p.delta_h * p.delta_h});
    const bool collinear = p.delta_h == 0.0 && std::abs(p.mu_h) <= std::abs(p.j);
    if (min_d2 <= 1e-12 * scale || collinear)
        throw degenerate_error("winding_number: gap closes (|mu_h| = |J| or collinear d)");

    double total = 0.0;
    auto prev = dvec(-std::numbers::pi);
    for (int i = 1; i <= n_points; ++i) {
        const double k = -std::numbers::pi + 2.0 * std::numbers::pi * i / n_points;
        const auto cur = dvec(k);
        total += std::atan2(prev[0] * cur[1] - prev[1] * cur[0],
                            prev[0] * cur[0] + prev[1] * cur[1]);
        prev = cur;
    }
    const double w = total / (2.0 * std::numbers::pi);
    const int wi = static_cast<int>(std::lround(w));
    if (std::abs(w - wi) > 0.01)
        throw degenerate_error("winding_number: accumulated angle is not an integer multiple of 2 pi");
    return wi;
}

}  // namespace nhkitaev
