#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include <nhkitaev/dynamics.hpp>
#include <nhkitaev/grid.hpp>
#include <nhkitaev/model.hpp>

using namespace nhkitaev;
using Catch::Approx;
constexpr double pi = std::numbers::pi;

namespace {
double mat_dist(const Mat2& a, const Mat2& b) {
    return std::sqrt(std::norm(a.m00 - b.m00) + std::norm(a.m01 - b.m01) +
                     std::norm(a.m10 - b.m10) + std::norm(a.m11 - b.m11));
}
}  // namespace

TEST_CASE("propagator frozen point: half period is -identity") {
    const NhParams p{1.0, std::sqrt(3.0), 2.0};
    const auto u = sector_propagator(pi / 2, p, pi / 2);  // eps = 2, t = T = pi/eps
    CHECK(std::abs(u.u.m00 + 1.0) < 1e-12);
    CHECK(std::abs(u.u.m01) < 1e-12);
    CHECK(std::abs(u.u.m10) < 1e-12);
    CHECK(std::abs(u.u.m11 + 1.0) < 1e-12);
    CHECK(u.regime == PropagatorRegime::generic);
}

TEST_CASE("propagator at t = 0 is the identity") {
    const auto u = sector_propagator(1.0, NhParams{1.0, 2.0, 1.0}, 0.0);
    CHECK(mat_dist(u.u, Mat2::identity()) < 1e-15);
    CHECK(u.regime == PropagatorRegime::near_ep_series);  // |eps t| = 0 takes the series
}

TEST_CASE("propagator composition U(t1+t2) = U(t1) U(t2)") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> par(-2.0, 2.0), mom(-pi, pi), tm(0.0, 2.0);
    for (int i = 0; i < 300; ++i) {
        const NhParams p{par(rng), par(rng), par(rng)};
        const double k = mom(rng), t1 = tm(rng), t2 = tm(rng);
        const auto u1 = sector_propagator(k, p, t1).u;
        const auto u2 = sector_propagator(k, p, t2).u;
        const auto b = sector_propagator(k, p, t1 + t2).u;
        // roundoff in the product scales with ||U1|| ||U2|| (large when broken)
        CHECK(mat_dist(u1 * u2, b) <= 1e-11 * (1.0 + u1.frobenius() * u2.frobenius()));
    }
}

TEST_CASE("propagator determinant is exactly one (traceless generator)") {
    std::mt19937 rng(32);
    std::uniform_real_distribution<double> par(-2.0, 2.0), mom(-pi, pi), tm(0.0, 5.0);
    for (int i = 0; i < 300; ++i) {
        const NhParams p{par(rng), par(rng), par(rng)};
        const auto u = sector_propagator(mom(rng), p, tm(rng));
        const double f = u.u.frobenius();
        // det = 1 holds to roundoff relative to the entry products
        CHECK(std::abs(u.u.det() - 1.0) <= 1e-12 * (1.0 + f * f));
    }
}

TEST_CASE("exceptional momentum: polynomial Jordan-block evolution") {
    const NhParams p{1.0, std::sqrt(3.0), 2.0};  // k_c = pi/3, tau = 3t
    const double t = 0.7;
    const auto s = evolve_vacuum(pi / 3, p, t);
    const double tau = 2.0 * p.delta * p.delta * t / p.mu;
    CHECK(s.a.real() == Approx(1.0).margin(1e-9));
    CHECK(s.a.imag() == Approx(tau).margin(1e-9));
    CHECK(s.b.real() == Approx(0.0).margin(1e-9));
    CHECK(s.b.imag() == Approx(-tau).margin(1e-9));
}

TEST_CASE("structured exceptional matrix is exactly nilpotent in floating point") {
    // At k_c the sector matrix is (-2 delta^2/mu) [[1,1],[-1,-1]]; built from
    // the exact scalar its square vanishes identically, not just to roundoff.
    const double g = -3.0;  // -2 delta^2/mu at (1, sqrt 3, 2)
    const Mat2 m{g, g, -g, -g};
    const auto m2 = m * m;
    const double n2 = std::sqrt(std::norm(m2.m00) + std::norm(m2.m01) + std::norm(m2.m10) +
                                std::norm(m2.m11));
    CHECK(n2 < 1e-18 * m.frobenius() * m.frobenius());

    // the computed matrix at k_c agrees with the structured one to roundoff
    const auto mc = sector_matrix_nh(pi / 3, NhParams{1.0, std::sqrt(3.0), 2.0});
    CHECK(mat_dist(mc, m) < 1e-12);
}

TEST_CASE("continuity across the exceptional point") {
    const NhParams p{1.0, std::sqrt(3.0), 2.0};
    const double kc = pi / 3, t = 1.5;
    const auto uc = sector_propagator(kc, p, t);

    // full propagator: deviation is O(delta k) since M_k is smooth in k
    const double d1 = 1e-3, d2 = 1e-4;
    const double full1 = mat_dist(sector_propagator(kc + d1, p, t).u, uc.u);
    const double full2 = mat_dist(sector_propagator(kc + d2, p, t).u, uc.u);
    CHECK(full1 < 0.05);
    CHECK(full2 < full1);

    // series factor: sinc(eps t) - 1 scales as delta k^2 (eps^2 has a double
    // root in cos k on the exceptional line)
    auto sinc_dev = [&](double k) {
        PropagatorRegime reg = PropagatorRegime::generic;
        const cplx x = dispersion_nh(k, p) * t;
        return std::abs(detail::sinc_stable(x, reg) - 1.0);
    };
    const double s1 = sinc_dev(kc + d1), s2 = sinc_dev(kc + d2);
    REQUIRE(s2 > 0.0);
    CHECK(s1 / s2 == Approx(100.0).epsilon(0.2));

    // regime flag: the sinc series engages in a neighborhood of k_c
    CHECK(sector_propagator(kc + 1e-6, p, 1e-3).regime == PropagatorRegime::near_ep_series);
}

TEST_CASE("overflow guard throws instead of returning inf") {
    const NhParams broken{1.0, 2.0, 1.0};  // |Im eps| = 2 sqrt 3 at k = pi/2
    CHECK_THROWS_AS(sector_propagator(pi / 2, broken, 250.0), numeric_range_error);
    CHECK_NOTHROW(sector_propagator(pi / 2, broken, 100.0));
}

TEST_CASE("hermitian propagator is unitary") {
    std::mt19937 rng(33);
    std::uniform_real_distribution<double> par(-2.0, 2.0), mom(-pi, pi), tm(0.0, 100.0);
    for (int i = 0; i < 200; ++i) {
        const HermParams hp{par(rng), par(rng), par(rng)};
        const auto u = sector_propagator_h(mom(rng), hp, tm(rng)).u;
        // U U^dag = I
        const Mat2 udag{std::conj(u.m00), std::conj(u.m10), std::conj(u.m01), std::conj(u.m11)};
        CHECK(mat_dist(u * udag, Mat2::identity()) < 1e-10);
    }
}

TEST_CASE("evolve_state freezes odd-parity sectors and matches the propagator") {
    const NhParams p{1.0, 1.0, std::sqrt(2.0)};
    SectorState odd;
    odd.odd_occupation = true;
    odd.a = cplx(0.3, 0.1);
    const auto odd_out = evolve_state(1.0, p, 2.0, odd);
    CHECK(odd_out.a == odd.a);
    CHECK(odd_out.odd_occupation);

    SectorState s;
    s.a = cplx(0.6, -0.2);
    s.b = cplx(0.1, 0.4);
    const auto out = evolve_state(1.0, p, 2.0, s);
    const auto u = sector_propagator(1.0, p, 2.0).u;
    const auto v = u.apply({s.a, s.b});
    CHECK(std::abs(out.a - v[0]) < 1e-14);
    CHECK(std::abs(out.b - v[1]) < 1e-14);
}

TEST_CASE("many-body evolution: sectors match scalars, self-paired modes dephase") {
    const NhParams p{1.0, std::sqrt(3.0), 2.0};
    const auto g = momentum_grid(40);
    const double t = 2.0;
    const auto out = evolve_many_body(p, g, t, vacuum_state(g));
    REQUIRE(out.paired.size() == g.paired.size());
    for (std::size_t i = 0; i < g.paired.size(); ++i) {
        const auto ref = evolve_vacuum(g.paired[i], p, t);
        CHECK(std::abs(out.paired[i].a - ref.a) < 1e-13);
        CHECK(std::abs(out.paired[i].b - ref.b) < 1e-13);
    }
    REQUIRE(out.self_paired.size() == 2);
    for (const auto& sp : out.self_paired) {
        CHECK(std::abs(sp[0] - 1.0) < 1e-15);  // vacuum stays empty
        CHECK(std::abs(sp[1]) < 1e-15);
    }

    // an occupied self-paired mode only picks up a phase
    ManyBodyState st = vacuum_state(g);
    st.self_paired[0] = {cplx(0.0), cplx(1.0)};
    const auto out2 = evolve_many_body(p, g, t, st);
    CHECK(std::abs(std::abs(out2.self_paired[0][1]) - 1.0) < 1e-12);
    const double e0 = 2.0 * (p.mu - p.j);  // k = 0 single-mode energy
    CHECK(std::abs(out2.self_paired[0][1] - std::exp(cplx(0.0, -e0 * t))) < 1e-12);

    ManyBodyState bad = vacuum_state(g);
    bad.paired.pop_back();
    CHECK_THROWS_AS(evolve_many_body(p, g, t, bad), validation_error);
}
