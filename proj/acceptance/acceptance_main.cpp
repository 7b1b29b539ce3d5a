// Acceptance gate: eight quantitative criteria, one PASS/FAIL line each.
// Exits nonzero if any criterion fails. Each criterion is self-contained and
// prints the worst observed deviation next to its tolerance.

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include <nhkitaev/nhkitaev.hpp>

using namespace nhkitaev;
using std::numbers::pi;

namespace {

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int idx, const char* name, bool pass, const char* detail, double secs) {
    std::printf("[%s] criterion %d: %-34s %s (%.2fs)\n", pass ? "PASS" : "FAIL", idx, name,
                detail, secs);
    if (!pass) ++g_failures;
}

// 1. Deep-quench overlap plateaus, N = 61, four reference chains, two times.
void criterion_overlap_plateaus() {
    Timer tm;
    const NhParams p{1.0, 1.0, std::sqrt(2.0)};
    const auto g = momentum_grid(61);
    const double mu_hs[4] = {-5.0, -0.5, 0.9, std::sqrt(2.0)};
    const double targets[4][2] = {
        {0.376, 0.390}, {0.771, 0.780}, {0.936, 0.939}, {0.964, 0.964}};
    const double times[2] = {50.0, 100.0};
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        const HermParams hp{1.0, 1.0, mu_hs[i]};
        for (int j = 0; j < 2; ++j) {
            const double o = overlap_total(p, hp, g, times[j]).o_total;
            worst = std::max(worst, std::abs(o - targets[i][j]));
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "max |O - target| = %.4f (tol 0.02)", worst);
    report(1, "overlap plateaus (N=61)", worst <= 0.02, buf, tm.seconds());
}

// 2. Unbroken/Broken interface of a 301 x 201 phase map tracks mu^2 - delta^2 = 1.
void criterion_phase_boundary() {
    Timer tm;
    struct Pt {
        double mu, delta;
    };
    std::vector<Pt> pts;
    pts.reserve(301 * 201);
    for (int i = 0; i < 301; ++i)
        for (int j = 0; j < 201; ++j) pts.push_back({-3.0 + 0.02 * i, -2.0 + 0.02 * j});
    const auto labels = indexed_parallel_map(pts, [](const Pt& q) {
        return int(classify(NhParams{1.0, q.delta, q.mu}, 1e-9).kind);
    });
    // a point farther than one cell from the curve must carry the analytic label;
    // |g| can change by at most lip over one cell diagonal
    const double diag = 0.02 * std::numbers::sqrt2;
    int misplaced = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double g = pts[i].mu * pts[i].mu - pts[i].delta * pts[i].delta - 1.0;
        const double lip =
            2.0 * (std::abs(pts[i].mu) + std::abs(pts[i].delta)) * diag + 2.0 * diag * diag;
        if (g > lip && labels[i] != int(PhaseKind::Unbroken)) ++misplaced;
        if (g < -lip && labels[i] != int(PhaseKind::Broken)) ++misplaced;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d/60501 cells off the analytic boundary", misplaced);
    report(2, "phase boundary (301x201 grid)", misplaced == 0, buf, tm.seconds());
}

// 3. At the exceptional momentum the pair density rises monotonically to 1/2.
void criterion_ep_saturation() {
    Timer tm;
    const NhParams p{1.0, std::sqrt(3.0), 2.0};
    const double k_c = pi / 3.0;  // arccos(J/mu)
    bool monotone = true, closed_form = true;
    double tail_dev = 0.0;
    double prev = -1.0;
    for (int i = 0; i <= 3000; ++i) {
        const double tau = 0.01 * i;               // tau = 2 delta^2 t / mu = 3 t
        const double t = tau * p.mu / (2.0 * p.delta * p.delta);
        const double n = pair_density(k_c, p, t).n_k;
        if (n < prev - 1e-14) monotone = false;
        prev = n;
        const double exact = tau * tau / (1.0 + 2.0 * tau * tau);
        if (std::abs(n - exact) > 1e-12) closed_form = false;
        if (tau >= 20.0) tail_dev = std::max(tail_dev, std::abs(n - 0.5));
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "tail |N-1/2| = %.2e (tol 1e-3), monotone=%d, algebraic=%d",
                  tail_dev, int(monotone), int(closed_form));
    report(3, "EP saturation N -> 1/2", monotone && closed_form && tail_dev < 1e-3, buf,
           tm.seconds());
}

// 4. Dense real-space evolution agrees with the momentum-sector product form.
void criterion_oracle_equivalence() {
    Timer tm;
    std::mt19937 rng(20260813);
    std::uniform_real_distribution<double> mu_d(-2.0, 2.0), de_d(-1.5, 1.5), t_d(0.0, 5.0);
    const int sizes[3] = {4, 6, 8};
    double worst = 0.0;
    int n_broken = 0, n_unbroken = 0, taken = 0;
    while (n_broken < 20 || n_unbroken < 20) {
        NhParams p{1.0, 0.0, 0.0};
        do {
            p = NhParams{1.0, de_d(rng), mu_d(rng)};
        } while (std::abs(p.delta) < 0.05);  // keep the pairing on
        int& bucket = classify(p).kind == PhaseKind::Broken ? n_broken : n_unbroken;
        if (bucket >= 20) continue;  // 20 random points in each phase
        ++bucket;
        const auto r = momentum_consistency(p, sizes[taken++ % 3], t_d(rng), 1e-8);
        worst = std::max(worst, r.max_dev);
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "max dev = %.2e (tol 1e-8), %d broken + %d unbroken points",
                  worst, n_broken, n_unbroken);
    report(4, "oracle equivalence L in {4,6,8}", worst < 1e-8 && n_broken == 20 && n_unbroken == 20,
           buf, tm.seconds());
}

// 5. The dense Hamiltonian commutes with PT in both phases.
void criterion_pt_symmetry() {
    Timer tm;
    const NhParams pts_list[5] = {{1.0, 1.0, 0.3},
                                  {1.0, 1.4, 0.2},
                                  {1.0, 0.5, 1.5},
                                  {1.0, 2.0, 1.0},
                                  {1.0, 1.0, std::sqrt(2.0)}};
    double worst = 0.0;
    for (int l : {4, 6})
        for (const auto& p : pts_list)
            worst = std::max(worst, pt_check(build_dense(p, l), l, 1e-10).residual);
    char buf[96];
    std::snprintf(buf, sizeof buf, "max residual = %.2e (tol 1e-10)", worst);
    report(5, "PT symmetry of dense H", worst < 1e-10, buf, tm.seconds());
}

// 6. The Hermitian sibling's sector propagator is unitary.
void criterion_hermitian_unitarity() {
    Timer tm;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> par(-2.0, 2.0), mom(-pi, pi), t_d(0.0, 100.0),
        amp(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const HermParams hp{par(rng), par(rng), par(rng)};
        const double k = mom(rng), t = t_d(rng);
        cplx a{amp(rng), amp(rng)}, b{amp(rng), amp(rng)};
        const double n0 = std::sqrt(std::norm(a) + std::norm(b));
        if (n0 < 1e-3) continue;
        a /= n0;
        b /= n0;
        const auto u = sector_propagator_h(k, hp, t).u;
        const auto [ua, ub] = u.apply({a, b});
        worst = std::max(worst, std::abs(std::norm(ua) + std::norm(ub) - 1.0));
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "max | ||U psi||^2 - 1 | = %.2e (tol 1e-10)", worst);
    report(6, "hermitian-limit unitarity", worst < 1e-10, buf, tm.seconds());
}

// 7. Randomized closed-form identities.
void criterion_property_suite() {
    Timer tm;
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> par(-2.0, 2.0), mom(-pi, pi), t_d(0.0, 8.0),
        pos(0.1, 1.0);
    bool ok = true;
    double worst = 0.0;
    auto note = [&](double dev, double tol) {
        worst = std::max(worst, dev / tol);
        if (dev > tol) ok = false;
    };
    for (int i = 0; i < 200; ++i) {
        const NhParams p{par(rng), par(rng), par(rng)};
        const double k = mom(rng), t = t_d(rng);

        // density and norm against the evolved amplitudes
        const auto s = evolve_vacuum(k, p, t);
        const double nrm = std::norm(s.a) + std::norm(s.b);
        note(std::abs(pair_density(k, p, t).n_k - std::norm(s.b) / nrm), 1e-10);
        note(std::abs(sector_norm(k, p, t) - nrm) / nrm, 1e-10);

        // propagator composition U(t1 + t2) = U(t2) U(t1)
        const double t2 = t_d(rng);
        const auto u1 = sector_propagator(k, p, t).u;
        const auto u2 = sector_propagator(k, p, t2).u;
        const auto u12 = sector_propagator(k, p, t + t2).u;
        const auto prod = u2 * u1;
        double comp = 0.0;
        comp = std::max(comp, std::abs(prod.m00 - u12.m00));
        comp = std::max(comp, std::abs(prod.m01 - u12.m01));
        comp = std::max(comp, std::abs(prod.m10 - u12.m10));
        comp = std::max(comp, std::abs(prod.m11 - u12.m11));
        note(comp / (1.0 + u1.frobenius() * u2.frobenius()), 1e-11);

        // eigen-amplitude products: beta+ beta- = 1 (non-Hermitian chain)
        if (!is_defective_momentum(k, p) && std::abs(p.delta * std::sin(k)) > 1e-3) {
            const auto e = eigen_amplitudes_nh(k, p);
            note(std::abs(e.beta_plus * e.beta_minus - 1.0), 1e-9);
        }

        // b+ b- = -1 (hermitian chain), from the sector matrix entries
        const HermParams hp{par(rng), par(rng), par(rng)};
        const double A = 2.0 * (hp.j * std::cos(k) - hp.mu_h);
        const double B = 2.0 * hp.delta_h * std::sin(k);
        if (std::abs(B) > 1e-3) {
            const double eh = std::hypot(A, B);
            note(std::abs((B / (A - eh)) * (B / (A + eh)) + 1.0), 1e-9);
        }

        // periodicity at a PT-unbroken point: N_k(t + pi/eps) = N_k(t)
        const double dd = par(rng), jj = par(rng);
        const NhParams up{jj, dd, std::copysign(std::sqrt(jj * jj + dd * dd) + pos(rng),
                                                par(rng))};
        const cplx eps = dispersion_nh(k, up);
        const double period = pi / eps.real();
        note(std::abs(pair_density(k, up, t + period).n_k - pair_density(k, up, t).n_k), 1e-10);
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "worst dev = %.2f x tol over 200 draws", worst);
    report(7, "closed-form property suite", ok, buf, tm.seconds());
}

// 8. Winding number over a 3 x 3 sample of the hermitian phase plane.
void criterion_winding_regions() {
    Timer tm;
    const double mus[3] = {-2.0, 0.4, 2.0};
    const double deltas[3] = {-0.8, 0.8, 1.5};
    bool ok = true;
    for (double mu_h : mus)
        for (double delta_h : deltas) {
            const int w = winding_number(HermParams{1.0, delta_h, mu_h});
            const int expect =
                (std::abs(mu_h) > 1.0) ? 0 : (delta_h > 0.0 ? 1 : -1);
            if (w != expect) ok = false;
        }
    report(8, "winding numbers 0 / +1 / -1", ok, "9/9 regions labeled", tm.seconds());
}

}  // namespace

int main() {
    criterion_overlap_plateaus();
    criterion_phase_boundary();
    criterion_ep_saturation();
    criterion_oracle_equivalence();
    criterion_pt_symmetry();
    criterion_hermitian_unitarity();
    criterion_property_suite();
    criterion_winding_regions();
    if (g_failures == 0) {
        std::printf("acceptance: all 8 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return 1;
}
