// params.hpp — model parameters and derived scalar quantities
//
// Convention: hbar = 1 throughout, so every energy is in angular-frequency
// units. The coupling g is strictly positive (a negative g would silently
// flip sideband phases); the chirality r is accepted at the endpoints +-1.

#pragma once

#include <cmath>
#include <stdexcept>

namespace rabi {

struct ModelParams {
    double omega{1.0};   // field-mode angular frequency, > 0
    double omega0{1.0};  // atomic transition angular frequency, > 0
    double g{0.1};       // coupling constant, > 0
    double r{0.0};       // chirality parameter, in [-1, 1]
};

struct DerivedParams {
    double alpha;      // (omega0 - omega) / (2 g), dimensionless detuning
    double alpha_bar;  // (omega0 + omega) / (2 g)
    double beta_sq;    // omega0 * omega / (4 g^2)
    double g_c;        // critical coupling, sqrt(omega0 * omega) / 2
};

inline void validate(const ModelParams& p) {
    if (!(p.omega > 0.0))
        throw std::invalid_argument("params: field frequency omega must be positive");
    if (!(p.omega0 > 0.0))
        throw std::invalid_argument("params: atomic frequency omega0 must be positive");
    if (!(p.g > 0.0))
        throw std::invalid_argument("params: coupling must be positive");
    if (!(p.r >= -1.0 && p.r <= 1.0))
        throw std::invalid_argument("params: chirality out of range [-1, 1]");
}

inline double critical_coupling(double omega, double omega0) {
    return 0.5 * std::sqrt(omega0 * omega);
}

inline DerivedParams derive(const ModelParams& p) {
    validate(p);
    return DerivedParams{
        (p.omega0 - p.omega) / (2.0 * p.g),
        (p.omega0 + p.omega) / (2.0 * p.g),
        p.omega0 * p.omega / (4.0 * p.g * p.g),
        critical_coupling(p.omega, p.omega0),
    };
}

}  // namespace rabi
