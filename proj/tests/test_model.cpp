#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include <nhkitaev/grid.hpp>
#include <nhkitaev/model.hpp>
#include <nhkitaev/params.hpp>

using namespace nhkitaev;
using Catch::Approx;
constexpr double pi = std::numbers::pi;

TEST_CASE("momentum grid splits paired and self-paired momenta") {
    auto g61 = momentum_grid(61);
    REQUIRE(g61.n_sites == 61);
    REQUIRE(g61.paired.size() == 30);
    REQUIRE(g61.self_paired.size() == 1);
    CHECK(g61.self_paired[0] == 0.0);
    CHECK(g61.paired.front() == Approx(2 * pi / 61));
    CHECK(g61.paired.back() == Approx(2 * pi * 30 / 61));
    for (std::size_t i = 0; i < g61.paired.size(); ++i) {
        CHECK(g61.paired[i] > 0.0);
        CHECK(g61.paired[i] < pi);
        if (i) CHECK(g61.paired[i] > g61.paired[i - 1]);
    }

    auto g40 = momentum_grid(40);
    REQUIRE(g40.paired.size() == 19);
    REQUIRE(g40.self_paired.size() == 2);
    CHECK(g40.self_paired[1] == Approx(pi));

    auto g4 = momentum_grid(4);
    REQUIRE(g4.paired.size() == 1);
    CHECK(g4.paired[0] == Approx(pi / 2));
    REQUIRE(g4.self_paired.size() == 2);

    auto g3 = momentum_grid(3);
    REQUIRE(g3.paired.size() == 1);
    CHECK(g3.paired[0] == Approx(2 * pi / 3));
    REQUIRE(g3.self_paired.size() == 1);

    auto g2 = momentum_grid(2);
    CHECK(g2.paired.empty());
    REQUIRE(g2.self_paired.size() == 2);

    CHECK_THROWS_AS(momentum_grid(1), validation_error);
    CHECK_THROWS_AS(momentum_grid(0), validation_error);
}

TEST_CASE("parameter validation rejects non-finite values") {
    CHECK_THROWS_AS((NhParams{1.0, std::nan(""), 0.0}.validate()), validation_error);
    CHECK_THROWS_AS((NhParams{1.0, 0.0, INFINITY}.validate()), validation_error);
    CHECK_THROWS_AS((HermParams{std::nan(""), 1.0, 0.0}.validate()), validation_error);
    CHECK_NOTHROW((NhParams{1.0, 2.0, -0.5}.validate()));
}

TEST_CASE("sector matrices at frozen points") {
    const NhParams p{1.0, std::sqrt(3.0), 2.0};

    auto m = sector_matrix_nh(pi / 2, p);  // a = -4, c = 2*sqrt(3)
    CHECK(m.m00.real() == Approx(-4.0).margin(1e-12));
    CHECK(m.m01.real() == Approx(-2 * std::sqrt(3.0)));
    CHECK(m.m10.real() == Approx(2 * std::sqrt(3.0)));
    CHECK(m.m11.real() == Approx(4.0).margin(1e-12));

    auto mep = sector_matrix_nh(pi / 3, p);  // exceptional momentum: a = -c = -3
    CHECK(mep.m00.real() == Approx(-3.0));
    CHECK(mep.m01.real() == Approx(-3.0));
    CHECK(mep.m10.real() == Approx(3.0));
    CHECK(mep.m11.real() == Approx(3.0));

    const HermParams hp{1.0, std::sqrt(3.0), 2.0};
    auto mh = sector_matrix_h(pi / 2, hp);  // symmetric off-diagonal
    CHECK(mh.m01.real() == Approx(2 * std::sqrt(3.0)));
    CHECK(mh.m10.real() == Approx(2 * std::sqrt(3.0)));
    CHECK(mh.m00.real() == Approx(-4.0).margin(1e-12));
}

TEST_CASE("sector matrix is traceless with M^2 = eps^2 I") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> par(-2.5, 2.5), mom(-pi, pi);
    for (int i = 0; i < 200; ++i) {
        const NhParams p{par(rng), par(rng), par(rng)};
        const double k = mom(rng);
        const auto m = sector_matrix_nh(k, p);
        CHECK(std::abs(m.m00 + m.m11) < 1e-12);
        const auto m2 = m * m;
        const cplx eps = dispersion_nh(k, p);
        CHECK(std::abs(m2.m00 - eps * eps) < 1e-9);
        CHECK(std::abs(m2.m01) < 1e-9);
        CHECK(std::abs(m2.m10) < 1e-9);
    }
}

TEST_CASE("dispersion at frozen points") {
    const NhParams p{1.0, std::sqrt(3.0), 2.0};
    CHECK(std::abs(dispersion_nh(pi / 3, p)) < 1e-7);  // EP momentum
    CHECK(dispersion_nh(pi / 2, p).real() == Approx(2.0));
    CHECK(dispersion_nh(pi / 2, p).imag() == 0.0);

    const NhParams broken{1.0, 2.0, 1.0};
    const cplx eb = dispersion_nh(pi / 2, broken);
    CHECK(eb.real() == 0.0);
    CHECK(eb.imag() == Approx(2 * std::sqrt(3.0)));  // principal branch: +i side

    CHECK(dispersion_h(pi / 4, HermParams{1.0, 1.0, std::sqrt(2.0)}) == Approx(2.0));
    CHECK(dispersion_h(pi / 2, HermParams{1.0, 1.0, 0.0}) == Approx(2.0));
}

TEST_CASE("dispersion branch: real nonnegative or positive imaginary") {
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> par(-2.5, 2.5), mom(-pi, pi);
    for (int i = 0; i < 500; ++i) {
        const NhParams p{par(rng), par(rng), par(rng)};
        const cplx e = dispersion_nh(mom(rng), p);
        const bool real_branch = e.imag() == 0.0 && e.real() >= 0.0;
        const bool imag_branch = e.real() == 0.0 && e.imag() > 0.0;
        CHECK((real_branch || imag_branch));
    }
}

TEST_CASE("eigen amplitudes: frozen values and beta+ beta- = 1") {
    const NhParams p{1.0, std::sqrt(3.0), 2.0};
    const auto amp = eigen_amplitudes_nh(pi / 2, p);
    CHECK(amp.beta_plus.real() == Approx(-std::sqrt(3.0)));
    CHECK(std::abs(amp.beta_plus.imag()) < 1e-14);
    CHECK(amp.beta_minus.real() == Approx(-1.0 / std::sqrt(3.0)));

    std::mt19937 rng(13);
    std::uniform_real_distribution<double> par(-2.5, 2.5), mom(0.1, pi - 0.1);
    int tested = 0;
    while (tested < 200) {
        const NhParams q{par(rng), par(rng), par(rng)};
        const double k = mom(rng);
        if (std::abs(q.delta * std::sin(k)) < 1e-3) continue;
        if (is_defective_momentum(k, q, 1e-6)) continue;
        const auto a = eigen_amplitudes_nh(k, q);
        CHECK(std::abs(a.beta_plus * a.beta_minus - 1.0) < 1e-9);
        ++tested;
    }

    // pairing switched off: convention beta = 0 (diagonal sector matrix)
    const auto a0 = eigen_amplitudes_nh(pi / 2, NhParams{1.0, 0.0, 0.5});
    CHECK(a0.beta_plus == cplx{});
    CHECK(a0.beta_minus == cplx{});

    CHECK_THROWS_AS(eigen_amplitudes_nh(pi / 3, p), defective_mode_error);
}

TEST_CASE("bogoliubov angle: complex trig identity and |sin 2theta|^2") {
    const NhParams p{1.0, std::sqrt(3.0), 2.0};
    const auto b = bogoliubov_angle(pi / 2, p);
    CHECK(std::norm(b.sin_two_theta()) == Approx(3.0));

    std::mt19937 rng(14);
    std::uniform_real_distribution<double> par(-2.5, 2.5), mom(0.1, pi - 0.1);
    int tested = 0;
    while (tested < 200) {
        const NhParams q{par(rng), par(rng), par(rng)};
        const double k = mom(rng);
        if (std::abs(q.delta * std::sin(k)) < 1e-3) continue;
        if (is_defective_momentum(k, q, 1e-6)) continue;
        const auto a = bogoliubov_angle(k, q);
        const cplx c2 = a.cos_two_theta(), s2 = a.sin_two_theta();
        CHECK(std::abs(c2 * c2 + s2 * s2 - 1.0) < 1e-9);
        // |sin 2theta|^2 = |2 Delta sin k / eps|^2 drives the norm growth
        const cplx eps = dispersion_nh(k, q);
        CHECK(std::abs(s2) ==
              Approx(std::abs(2.0 * q.delta * std::sin(k) / eps)).epsilon(1e-8));
        ++tested;
    }

    CHECK_THROWS_AS(bogoliubov_angle(pi / 3, p), defective_mode_error);
}

TEST_CASE("is_defective_momentum flags exactly the exceptional momenta") {
    const NhParams p{1.0, std::sqrt(3.0), 2.0};
    CHECK(is_defective_momentum(pi / 3, p));
    CHECK_FALSE(is_defective_momentum(pi / 2, p));
    CHECK_FALSE(is_defective_momentum(pi / 3, NhParams{1.0, 1.0, 2.0}));
    // k = 0 never defective for generic params (pairing term vanishes)
    CHECK_FALSE(is_defective_momentum(0.0, p));
}

TEST_CASE("hermitian ground mode: frozen values and conventions") {
    const auto g = ground_mode_h(pi / 2, HermParams{1.0, 1.0, 0.0});
    CHECK(g[0] == Approx(1.0 / std::sqrt(2.0)));
    CHECK(g[1] == Approx(-1.0 / std::sqrt(2.0)));

    // b = 0 limits: empty when the diagonal favors |00>, filled otherwise
    const auto ge = ground_mode_h(pi / 2, HermParams{1.0, 0.0, 2.0});  // a < 0
    CHECK(ge[0] == 1.0);
    CHECK(ge[1] == 0.0);
    const auto gf = ground_mode_h(pi / 2, HermParams{1.0, 0.0, -2.0});  // a > 0
    CHECK(gf[0] == 0.0);
    CHECK(gf[1] == 1.0);

    std::mt19937 rng(15);
    std::uniform_real_distribution<double> par(-2.5, 2.5), mom(0.05, pi - 0.05);
    for (int i = 0; i < 200; ++i) {
        const HermParams hp{par(rng), par(rng), par(rng)};
        const double k = mom(rng);
        const auto v = ground_mode_h(k, hp);
        CHECK(v[0] * v[0] + v[1] * v[1] == Approx(1.0).epsilon(1e-12));
        // eigenvector check: (M - lambda_min I) v = 0
        const auto m = sector_matrix_h(k, hp);
        const double lam = -dispersion_h(k, hp);
        const cplx r0 = m.m00 * v[0] + m.m01 * v[1] - lam * v[0];
        const cplx r1 = m.m10 * v[0] + m.m11 * v[1] - lam * v[1];
        CHECK(std::abs(r0) < 1e-9);
        CHECK(std::abs(r1) < 1e-9);
    }
}

TEST_CASE("hermitian ground occupation follows the band filling rule") {
    // occupied iff mu_h < J cos k
    CHECK(ground_occupation_h(0.3, HermParams{1.0, 1.0, -5.0})[1] == 1.0);
    CHECK(ground_occupation_h(0.3, HermParams{1.0, 1.0, 5.0})[0] == 1.0);
    CHECK(ground_occupation_h(2.0, HermParams{1.0, 1.0, 0.5})[0] == 1.0);   // cos k < mu_h
    CHECK(ground_occupation_h(0.5, HermParams{1.0, 1.0, 0.5})[1] == 1.0);   // cos k > mu_h
}
