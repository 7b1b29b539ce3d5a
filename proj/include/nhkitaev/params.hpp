#pragma once

// Parameter bundles and the error taxonomy shared across the library.
//
// Conventions: hbar = 1, lattice constant = 1, energies in units of the
// hopping J unless stated otherwise. The non-Hermitian chain carries an
// imaginary p-wave pairing amplitude i*delta; its Hermitian counterpart
// (used as the overlap reference) has ordinary pairing delta_h.

#include <cmath>
#include <stdexcept>
#include <string>

namespace nhkitaev {

// Exit-code-relevant failure classes. The CLI maps validation_error -> 1
// and the numeric ones -> 2; library callers can catch them individually.
struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested an eigenmode decomposition at a defective (exceptional) momentum.
struct defective_mode_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Time average over one period requested where the period is infinite.
struct infinite_period_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Winding number requested at a gap closing.
struct degenerate_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Broken-phase growth exp(|Im eps| t) would overflow doubles.
struct numeric_range_error : std::range_error {
    using std::range_error::range_error;
};

// Iterative numerics (dense exponential) failed to converge.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NhParams {
    double j;      // hopping J
    double delta;  // imaginary-pairing strength (the Hamiltonian carries -i*delta c+ c+)
    double mu;     // chemical potential

    void validate() const {
        if (!(std::isfinite(j) && std::isfinite(delta) && std::isfinite(mu)))
            throw validation_error("NhParams: all of J, delta, mu must be finite");
    }
};

struct HermParams {
    double j;
    double delta_h;  // real p-wave pairing of the reference chain
    double mu_h;

    void validate() const {
        if (!(std::isfinite(j) && std::isfinite(delta_h) && std::isfinite(mu_h)))
            throw validation_error("HermParams: all of J, delta_h, mu_h must be finite");
    }
};

}  // namespace nhkitaev
