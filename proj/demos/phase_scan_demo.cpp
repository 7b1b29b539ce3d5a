// Phase structure at a glance: an ASCII map of the PT phase diagram over
// (mu, delta), samples of the exceptional curve mu^2 - delta^2 = J^2, and the
// winding numbers of the Hermitian sibling's three regions.

#include <cmath>
#include <cstdio>

#include <nhkitaev/nhkitaev.hpp>

using namespace nhkitaev;

int main() {
    std::printf("PT phase map, J = 1 (rows delta in [-2,2], cols mu in [-3,3])\n");
    std::printf("  '.' unbroken   '#' broken   'X' exceptional line\n\n");
    for (int r = 16; r >= 0; --r) {
        const double delta = -2.0 + 0.25 * r;
        std::printf("  %+5.2f ", delta);
        for (int c = 0; c <= 48; ++c) {
            const double mu = -3.0 + 0.125 * c;
            const auto lab = classify(NhParams{1.0, delta, mu}, 5e-2);
            std::putchar(lab.kind == PhaseKind::Unbroken
                             ? '.'
                             : (lab.kind == PhaseKind::Broken ? '#' : 'X'));
        }
        std::putchar('\n');
    }

    std::printf("\nexceptional curve samples (positive branch):\n");
    const auto curve = exceptional_curve(1.0, 0.0, 2.0, 0.5);
    for (const auto& s : curve.samples)
        if (s.mu_c > 0.0)
            std::printf("  delta_c = %5.2f  mu_c = %8.5f  k_c = %8.5f\n", s.delta_c, s.mu_c,
                        critical_momentum(NhParams{1.0, s.delta_c, s.mu_c}));

    std::printf("\nwinding numbers of the Hermitian chain:\n");
    for (double mu_h : {-2.0, 0.5, 2.0})
        for (double delta_h : {-1.0, 1.0})
            std::printf("  mu_h = %+4.1f  delta_h = %+4.1f  ->  w = %+d\n", mu_h, delta_h,
                        winding_number(HermParams{1.0, delta_h, mu_h}));
    return 0;
}
