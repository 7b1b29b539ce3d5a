#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include <nhkitaev/grid.hpp>
#include <nhkitaev/model.hpp>
#include <nhkitaev/phase.hpp>

using namespace nhkitaev;
using Catch::Approx;
constexpr double pi = std::numbers::pi;

TEST_CASE("classify: frozen points in all three regions") {
    const auto el = classify(NhParams{1.0, std::sqrt(3.0), 2.0});
    REQUIRE(el.kind == PhaseKind::ExceptionalLine);
    CHECK(el.k_c == Approx(pi / 3));

    const auto un = classify(NhParams{1.0, 1.0, 2.0});  // mu^2 - Delta^2 = 3 > J^2
    CHECK(un.kind == PhaseKind::Unbroken);
    CHECK(un.broken_fraction == 0.0);

    const auto br = classify(NhParams{1.0, 2.0, 1.0});
    REQUIRE(br.kind == PhaseKind::Broken);
    CHECK(br.broken_fraction == Approx(0.70483276469913).epsilon(1e-10));

    // Hermitian limit Delta = 0: gapped |mu| > |J| is unbroken; the
    // band-touching window |mu| < |J| fails the strict eps^2 > 0 test and is
    // labeled with the adjoining broken region, fraction 0 (its Delta -> 0
    // limit); |mu| = |J| sits on the hyperbola vertex
    CHECK(classify(NhParams{1.0, 0.0, 1.7}).kind == PhaseKind::Unbroken);
    const auto touch = classify(NhParams{1.0, 0.0, 0.3});
    CHECK(touch.kind == PhaseKind::Broken);
    CHECK(touch.broken_fraction == 0.0);
    CHECK(classify(NhParams{1.0, 0.0, 1.0}).kind == PhaseKind::ExceptionalLine);
}

TEST_CASE("classify: broken fraction agrees with a dense momentum scan") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> par(-2.5, 2.5);
    int tested = 0;
    while (tested < 100) {
        const NhParams p{par(rng), par(rng), par(rng)};
        if (p.j == 0.0) continue;
        // keep away from the measure-zero exceptional surface
        if (std::abs(p.mu * p.mu - p.delta * p.delta - p.j * p.j) < 1e-3) continue;
        const auto lab = classify(p);
        int broken = 0;
        const int n = 20000;
        for (int i = 0; i < n; ++i) {
            const double k = pi * (i + 0.5) / n;
            if (dispersion_nh(k, p).imag() > 0.0) ++broken;
        }
        const double frac = double(broken) / n;
        if (lab.kind == PhaseKind::Unbroken) {
            CHECK(frac == 0.0);
        } else {
            REQUIRE(lab.kind == PhaseKind::Broken);
            CHECK(lab.broken_fraction == Approx(frac).margin(2e-4));
        }
        ++tested;
    }
}

TEST_CASE("critical momentum requires the exceptional line") {
    CHECK(critical_momentum(NhParams{1.0, std::sqrt(3.0), 2.0}) == Approx(pi / 3));
    CHECK(critical_momentum(NhParams{1.0, 1.0, std::sqrt(2.0)}) == Approx(pi / 4));
    CHECK_THROWS_AS(critical_momentum(NhParams{1.0, 1.0, 2.0}), validation_error);
    CHECK_THROWS_AS(critical_momentum(NhParams{1.0, 2.0, 1.0}), validation_error);
}

TEST_CASE("exceptional curve traces mu^2 - delta^2 = J^2 and classifies on-line") {
    const auto curve = exceptional_curve(1.0, 0.25, 2.0, 0.25);
    REQUIRE(!curve.samples.empty());
    for (const auto& s : curve.samples) {
        CHECK(s.mu_c * s.mu_c - s.delta_c * s.delta_c == Approx(1.0).margin(1e-12));
        CHECK(classify(NhParams{1.0, s.delta_c, s.mu_c}).kind == PhaseKind::ExceptionalLine);
    }
    // both signs of mu are represented
    bool pos = false, neg = false;
    for (const auto& s : curve.samples) (s.mu_c > 0 ? pos : neg) = true;
    CHECK(pos);
    CHECK(neg);
}

TEST_CASE("broken momenta subset matches the dispersion branch") {
    const NhParams p{1.0, 2.0, 1.0};
    const auto g = momentum_grid(40);
    const auto broken = broken_momenta(p, g);
    REQUIRE(!broken.empty());
    std::size_t idx = 0;
    for (double k : g.paired) {
        const bool is_broken = dispersion_nh(k, p).imag() > 0.0;
        const bool listed = idx < broken.size() && broken[idx] == k;
        CHECK(is_broken == listed);
        if (listed) ++idx;
    }
    CHECK(idx == broken.size());

    CHECK(broken_momenta(NhParams{1.0, 1.0, 2.0}, g).empty());
}

TEST_CASE("winding number over the three regions, sign flips with delta_h") {
    CHECK(winding_number(HermParams{1.0, 1.0, 0.5}) == 1);
    CHECK(winding_number(HermParams{1.0, -1.0, 0.5}) == -1);
    CHECK(winding_number(HermParams{1.0, 0.7, -0.3}) == 1);
    CHECK(winding_number(HermParams{1.0, 1.0, 2.0}) == 0);
    CHECK(winding_number(HermParams{1.0, 1.0, -2.0}) == 0);
    CHECK(winding_number(HermParams{1.0, -0.5, 1.8}) == 0);

    CHECK_THROWS_AS(winding_number(HermParams{1.0, 1.0, 1.0}), degenerate_error);
    CHECK_THROWS_AS(winding_number(HermParams{1.0, 0.0, 0.5}), degenerate_error);
}

TEST_CASE("classification tolerance window around the exceptional surface") {
    // parameters a hair off the line: tol decides the label
    const NhParams near{1.0, 1.0, std::sqrt(2.0) + 1e-12};
    CHECK(classify(near, 1e-9).kind == PhaseKind::ExceptionalLine);
    CHECK(classify(near, 1e-16).kind != PhaseKind::ExceptionalLine);
}
