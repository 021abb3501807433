// spectra.hpp — eigenvalue spectra: Jacobi eigensolver wrapper, analytic
// block-form oracles for the rotating/anti-rotating components, and
// numeric-vs-analytic comparison reports
//
// The rotating component is block diagonal over span{|n,e>, |n+1,g>} plus the
// singlet |0,g>; the anti-rotating component over span{|n+1,e>, |n,g>} plus
// |0,e>. Each 2x2 block diagonalizes in closed form, which gives an exact
// spectrum oracle independent of the dense eigensolver.

#pragma once

#include "rabi/format.hpp"
#include "rabi/jacobi.hpp"
#include "rabi/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rabi {

struct Spectrum {
    Model model;
    ModelParams params;
    int n_max{0};
    std::vector<double> eigenvalues;  // ascending
    Matrix eigenvectors;              // columns, empty for analytic spectra
    std::vector<int> parity;          // +-1 labels; 0 when not assigned
    std::vector<bool> certified;      // unaffected by truncation
    int valid_count{0};               // number of certified levels
};

// Eigendecomposition of a labeled operator (cyclic Jacobi underneath).
inline EighResult eigh(const Op& op) { return eigh_jacobi(op.data); }

namespace detail {

struct AnalyticLevel {
    double energy;
    int block_top_fock;  // highest Fock occupation the block touches
};

inline Spectrum assemble_analytic(Model model, const ModelParams& p, int n_max,
                                  std::vector<AnalyticLevel> levels) {
    std::sort(levels.begin(), levels.end(),
              [](const AnalyticLevel& a, const AnalyticLevel& b) { return a.energy < b.energy; });
    Spectrum s;
    s.model = model;
    s.params = p;
    s.n_max = n_max;
    for (const AnalyticLevel& l : levels) {
        s.eigenvalues.push_back(l.energy);
        s.certified.push_back(l.block_top_fock <= n_max - 2);
        s.parity.push_back(0);
    }
    s.valid_count = static_cast<int>(std::count(s.certified.begin(), s.certified.end(), true));
    return s;
}

}  // namespace detail

// Rotating-component spectrum: singlet |0,g> at -g*alpha - omega/2 and
// doublets E(n,+-) = omega*(n+1) - omega/2 +- 2g*sqrt(n+1 + alpha^2/4).
inline Spectrum jc_spectrum_analytic(const ModelParams& p, int n_max) {
    validate(p);
    make_space(n_max);  // bounds check only
    const DerivedParams d = derive(p);
    std::vector<detail::AnalyticLevel> levels;
    levels.push_back({-p.g * d.alpha - 0.5 * p.omega, 0});
    for (int n = 0; n + 1 <= n_max; ++n) {
        const double mid = p.omega * (n + 1) - 0.5 * p.omega;
        const double split = 2.0 * p.g * std::sqrt(n + 1 + 0.25 * d.alpha * d.alpha);
        levels.push_back({mid + split, n + 1});
        levels.push_back({mid - split, n + 1});
    }
    return detail::assemble_analytic(Model::jc, p, n_max, std::move(levels));
}

// Anti-rotating-component spectrum: singlet |0,e> at g*alpha_bar + omega/2
// and doublets E(n,+-) = omega*(n+1) + omega/2 +- 2g*sqrt(n+1 + alpha_bar^2/4).
inline Spectrum ajc_spectrum_analytic(const ModelParams& p, int n_max) {
    validate(p);
    make_space(n_max);  // bounds check only
    const DerivedParams d = derive(p);
    std::vector<detail::AnalyticLevel> levels;
    levels.push_back({p.g * d.alpha_bar + 0.5 * p.omega, 0});
    for (int n = 0; n + 1 <= n_max; ++n) {
        const double mid = p.omega * (n + 1) + 0.5 * p.omega;
        const double split = 2.0 * p.g * std::sqrt(n + 1 + 0.25 * d.alpha_bar * d.alpha_bar);
        levels.push_back({mid + split, n + 1});
        levels.push_back({mid - split, n + 1});
    }
    return detail::assemble_analytic(Model::ajc, p, n_max, std::move(levels));
}

namespace detail {

// Probability mass of a column vector on Fock levels above the cut.
inline double boundary_mass(const Matrix& vectors, Eigen::Index col, const Space& s, int cut) {
    double mass = 0.0;
    for (int i = 0; i < s.dim; ++i)
        if (fock_of_index(i) > cut) mass += std::norm(vectors(i, col));
    return mass;
}

}  // namespace detail

// Numeric spectrum of the tagged model with truncation certification and
// parity labels. A level is interior-certified when its eigenvector mass on
// Fock levels n > n_max - 2 is at most 1e-8. Near-degenerate levels
// (|gap| <= 1e-9) get their parity assigned by diagonalizing the parity
// operator inside the degenerate subspace.
inline Spectrum numeric_spectrum(Model model, const ModelParams& p, int n_max) {
    validate(p);
    const Space s = make_space(n_max);
    const Op h = hamiltonian(s, p, base_form(model));
    EighResult es = eigh(h);

    const Matrix pi = parity(s).data;
    const Eigen::Index dim = s.dim;

    // Rotate within near-degenerate clusters so every column has definite parity.
    Eigen::Index lo = 0;
    while (lo < dim) {
        Eigen::Index hi = lo + 1;
        while (hi < dim && es.eigenvalues(hi) - es.eigenvalues(hi - 1) <= 1e-9) ++hi;
        if (hi - lo > 1) {
            const Matrix block = es.eigenvectors.middleCols(lo, hi - lo);
            const Matrix pi_block = block.adjoint() * pi * block;
            const EighResult sub = eigh_jacobi(pi_block);
            es.eigenvectors.middleCols(lo, hi - lo) = block * sub.eigenvectors;
        }
        lo = hi;
    }

    Spectrum out;
    out.model = model;
    out.params = p;
    out.n_max = n_max;
    out.eigenvectors = es.eigenvectors;
    for (Eigen::Index k = 0; k < dim; ++k) {
        out.eigenvalues.push_back(es.eigenvalues(k));
        const cplx pv = (es.eigenvectors.col(k).adjoint() * pi * es.eigenvectors.col(k))(0, 0);
        const double pr = pv.real();
        out.parity.push_back(std::abs(std::abs(pr) - 1.0) <= 1e-8 ? (pr > 0 ? 1 : -1) : 0);
        out.certified.push_back(detail::boundary_mass(es.eigenvectors, k, s, n_max - 2) <= 1e-8);
    }
    out.valid_count =
        static_cast<int>(std::count(out.certified.begin(), out.certified.end(), true));
    return out;
}

struct SpectrumReport {
    Spectrum numeric;
    std::optional<Spectrum> analytic;  // only for jc / ajc
    double max_certified_deviation{0.0};
    bool comparison_ok{true};
};

// Numeric spectrum plus, for the jc/ajc models, the analytic oracle and the
// worst |numeric - analytic| / max(1, |analytic|) over certified levels.
inline SpectrumReport spectrum_report(Model model, const ModelParams& p, int n_max) {
    SpectrumReport rep;
    rep.numeric = numeric_spectrum(model, p, n_max);
    if (model == Model::rabi) return rep;

    rep.analytic = model == Model::jc ? jc_spectrum_analytic(p, n_max)
                                      : ajc_spectrum_analytic(p, n_max);

    std::vector<double> num_cert;
    for (std::size_t k = 0; k < rep.numeric.eigenvalues.size(); ++k)
        if (rep.numeric.certified[k]) num_cert.push_back(rep.numeric.eigenvalues[k]);
    std::vector<double> ana_cert;
    for (std::size_t k = 0; k < rep.analytic->eigenvalues.size(); ++k)
        if (rep.analytic->certified[k]) ana_cert.push_back(rep.analytic->eigenvalues[k]);

    if (num_cert.size() != ana_cert.size()) {
        rep.comparison_ok = false;
        rep.max_certified_deviation = std::numeric_limits<double>::infinity();
        return rep;
    }
    for (std::size_t k = 0; k < num_cert.size(); ++k) {
        const double dev =
            std::abs(num_cert[k] - ana_cert[k]) / std::max(1.0, std::abs(ana_cert[k]));
        rep.max_certified_deviation = std::max(rep.max_certified_deviation, dev);
    }
    return rep;
}

// CSV: "index,eigenvalue,parity,certified", one row per level, ascending.
inline void write_spectrum_csv(std::ostream& out, const Spectrum& s) {
    out << "index,eigenvalue,parity,certified\n";
    for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
        out << k << ',' << format_double(s.eigenvalues[k]) << ',' << s.parity[k] << ','
            << (s.certified[k] ? 1 : 0) << '\n';
    }
}

}  // namespace rabi
