// sweep.hpp — coupling sweeps tracing the global phase factor and locating
// the critical coupling
//
// The phase factor exp(i pi (beta^2 - 1)) equals unity whenever beta^2 - 1
// is an even integer, so besides the principal point beta^2 = 1 (the
// critical coupling g_c = sqrt(omega0 omega)/2) the sweep reports every such
// crossing rather than hiding the family of solutions.

#pragma once

#include "rabi/format.hpp"
#include "rabi/operators.hpp"
#include "rabi/spectra.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace rabi {

struct SweepRow {
    double g{0.0};
    double beta_sq{0.0};
    cplx phase_factor;          // exp(i pi (beta^2 - 1)), modulus 1
    double phase_distance{0.0}; // |phase_factor - 1|
    double relation_residual{0.0};
    std::optional<double> gap;  // spacing of the two lowest certified levels
};

struct PhaseCrossing {
    int lower_index{0};   // rows bracketing the crossing
    int upper_index{0};
    long even_value{0};   // the even integer beta^2 - 1 passes through
    bool principal{false};  // beta^2 = 1, the critical coupling
};

struct SweepResult {
    std::vector<SweepRow> rows;
    int argmin_phase_distance{0};
    std::vector<PhaseCrossing> crossings;
};

// Uniform grid over [g_from, g_to] inclusive. Each row evaluates the phase
// factor and the interior Frobenius residual of
// exp(-i pi A^2) - exp(-i pi Abar^2) * exp(i pi (beta^2 - 1)).
inline SweepResult sweep_g(const ModelParams& base, double g_from, double g_to, int steps,
                           int n_max, int margin, bool with_gap = false) {
    if (!(g_from > 0.0) || !(g_from < g_to))
        throw std::invalid_argument("sweep_g: need 0 < g_from < g_to");
    if (steps < 2) throw std::invalid_argument("sweep_g: need at least 2 steps");
    const Space s = make_space(n_max);
    interior_cut(s, margin);  // margin bounds check

    SweepResult out;
    out.rows.reserve(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) {
        ModelParams p = base;
        p.g = g_from + static_cast<double>(k) * (g_to - g_from) / (steps - 1);
        validate(p);
        const DerivedParams d = derive(p);

        SweepRow row;
        row.g = p.g;
        row.beta_sq = d.beta_sq;
        row.phase_factor = std::polar(1.0, std::numbers::pi * (d.beta_sq - 1.0));
        row.phase_distance = std::abs(row.phase_factor - 1.0);

        const Op a_op = transition(s, d, TransKind::A);
        const Op abar_op = transition(s, d, TransKind::Abar);
        const Matrix exp_a = expm_hermitian(mul(a_op, a_op), std::numbers::pi).data;
        const Matrix exp_abar = expm_hermitian(mul(abar_op, abar_op), std::numbers::pi).data;
        row.relation_residual =
            interior_frobenius(exp_a - exp_abar * row.phase_factor, s, margin);

        if (with_gap) {
            const Spectrum spec = numeric_spectrum(Model::rabi, p, n_max);
            std::vector<double> certified;
            for (std::size_t j = 0; j < spec.eigenvalues.size() && certified.size() < 2; ++j)
                if (spec.certified[j]) certified.push_back(spec.eigenvalues[j]);
            if (certified.size() == 2) row.gap = certified[1] - certified[0];
        }
        out.rows.push_back(row);
    }

    for (std::size_t k = 0; k < out.rows.size(); ++k)
        if (out.rows[k].phase_distance <
            out.rows[static_cast<std::size_t>(out.argmin_phase_distance)].phase_distance)
            out.argmin_phase_distance = static_cast<int>(k);

    // beta^2 decreases with g; report every even integer that beta^2 - 1
    // passes through between consecutive rows (lower end exclusive).
    for (std::size_t k = 0; k + 1 < out.rows.size(); ++k) {
        const double f_hi = out.rows[k].beta_sq - 1.0;
        const double f_lo = out.rows[k + 1].beta_sq - 1.0;
        for (long j = static_cast<long>(std::floor(f_hi / 2.0));
             j >= static_cast<long>(std::ceil(f_lo / 2.0)); --j) {
            const double even = 2.0 * static_cast<double>(j);
            if (even > f_lo && even <= f_hi)
                out.crossings.push_back(
                    PhaseCrossing{static_cast<int>(k), static_cast<int>(k + 1), 2 * j, j == 0});
        }
    }
    return out;
}

struct CriticalRefinement {
    double g_c_bisect{0.0};
    double g_c_closed_form{0.0};
    double rel_difference{0.0};
    int iterations{0};
};

// Bisection on beta^2(g) - 1 over a bracketing interval, refined to 1e-12
// relative, with the closed form sqrt(omega0 omega)/2 reported alongside.
inline CriticalRefinement refine_critical(double omega, double omega0, double g_lo,
                                          double g_hi) {
    if (!(omega > 0.0) || !(omega0 > 0.0))
        throw std::invalid_argument("refine_critical: frequencies must be positive");
    if (!(g_lo > 0.0) || !(g_lo < g_hi))
        throw std::invalid_argument("refine_critical: need 0 < g_lo < g_hi");
    const auto f = [&](double g) { return omega0 * omega / (4.0 * g * g) - 1.0; };
    double flo = f(g_lo);
    double fhi = f(g_hi);
    if (flo * fhi > 0.0)
        throw std::invalid_argument("refine_critical: no sign change in bracket");

    CriticalRefinement out;
    out.g_c_closed_form = critical_coupling(omega, omega0);
    double lo = g_lo, hi = g_hi;
    int it = 0;
    while (hi - lo > 1e-13 * (0.5 * (lo + hi)) && it < 200) {
        ++it;
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) {
            lo = hi = mid;
            break;
        }
        if (fm * flo < 0.0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    out.g_c_bisect = 0.5 * (lo + hi);
    out.iterations = it;
    out.rel_difference =
        std::abs(out.g_c_bisect - out.g_c_closed_form) / out.g_c_closed_form;
    return out;
}

// CSV: "g,beta_sq,phase_re,phase_im,phase_distance,relation_residual[,gap]".
inline void write_sweep_csv(std::ostream& out, const SweepResult& sweep, bool with_gap = false) {
    out << "g,beta_sq,phase_re,phase_im,phase_distance,relation_residual";
    if (with_gap) out << ",gap";
    out << '\n';
    for (const SweepRow& row : sweep.rows) {
        out << format_double(row.g) << ',' << format_double(row.beta_sq) << ','
            << format_double(row.phase_factor.real()) << ','
            << format_double(row.phase_factor.imag()) << ','
            << format_double(row.phase_distance) << ','
            << format_double(row.relation_residual);
        if (with_gap) out << ',' << (row.gap ? format_double(*row.gap) : std::string("nan"));
        out << '\n';
    }
}

}  // namespace rabi
