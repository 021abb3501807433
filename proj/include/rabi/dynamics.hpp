// dynamics.hpp — state evolution, expectation trajectories and conservation
// traces
//
// Evolution goes through one eigendecomposition of the generator and exact
// phase rotation per grid point, so there is no time-step error: drifts in
// the conserved traces probe the operator algebra, not an integrator.

#pragma once

#include "rabi/format.hpp"
#include "rabi/jacobi.hpp"
#include "rabi/operators.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rabi {

struct StateVector {
    Space space;
    Vector amplitudes;
};

inline StateVector basis_state_vector(const Space& s, const BasisState& b) {
    Vector v = Vector::Zero(s.dim);
    v(basis_index(s, b)) = 1.0;
    return StateVector{s, std::move(v)};
}

inline StateVector make_state(const Space& s, Vector amplitudes) {
    if (amplitudes.size() != s.dim)
        throw std::invalid_argument("make_state: amplitude list length must equal dim");
    const double nrm = amplitudes.norm();
    if (nrm <= 0.0) throw std::invalid_argument("make_state: zero state");
    if (std::abs(nrm - 1.0) > 1e-12)
        throw std::invalid_argument("make_state: state must be normalized");
    return StateVector{s, std::move(amplitudes)};
}

// <psi|op|psi> for Hermitian op; the imaginary part is checked and dropped.
inline double expectation(const Op& op, const StateVector& psi) {
    if (!(op.space == psi.space))
        throw std::invalid_argument("expectation: space mismatch");
    const cplx val = (psi.amplitudes.adjoint() * op.data * psi.amplitudes)(0, 0);
    if (std::abs(val.imag()) > 1e-10)
        throw std::runtime_error("expectation: imaginary part " +
                                 format_double(val.imag()) + " exceeds 1e-10");
    return val.real();
}

// Spectral propagator: psi(t) = V exp(-i lambda t) V^dag psi(0).
class Propagator {
  public:
    Propagator(const Op& h, const StateVector& psi0) : space_(h.space) {
        if (!(h.space == psi0.space))
            throw std::invalid_argument("evolve: space mismatch");
        if (std::abs(psi0.amplitudes.norm() - 1.0) > 1e-12)
            throw std::invalid_argument("evolve: initial state must be normalized");
        EighResult es = eigh_jacobi(h.data);  // rejects non-Hermitian generators
        eigenvalues_ = std::move(es.eigenvalues);
        vectors_ = std::move(es.eigenvectors);
        coeffs_ = vectors_.adjoint() * psi0.amplitudes;
    }

    StateVector state_at(double t) const {
        Vector rotated(coeffs_.size());
        for (Eigen::Index k = 0; k < coeffs_.size(); ++k)
            rotated(k) = std::polar(1.0, -eigenvalues_(k) * t) * coeffs_(k);
        return StateVector{space_, vectors_ * rotated};
    }

  private:
    Space space_;
    RealVector eigenvalues_;
    Matrix vectors_;
    Vector coeffs_;
};

// Uniform grid t_k = k dt, k = 0..floor(t_max/dt); t_max = 0 gives the single
// point psi0. Norm is checked to 1e-12 at every step.
inline std::vector<StateVector> evolve(const Op& h, const StateVector& psi0, double t_max,
                                       double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
    if (t_max < 0.0) throw std::invalid_argument("evolve: t_max must be nonnegative");
    const Propagator prop(h, psi0);
    const int steps = static_cast<int>(std::floor(t_max / dt + 1e-9));
    std::vector<StateVector> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    for (int k = 0; k <= steps; ++k) {
        StateVector psi = prop.state_at(k * dt);
        if (std::abs(psi.amplitudes.norm() - 1.0) > 1e-12)
            throw std::runtime_error("evolve: norm drifted beyond 1e-12");
        out.push_back(std::move(psi));
    }
    return out;
}

// ----------------------------- conservation traces ---------------------------

enum class Observable { N, Nbar, A, Abar, parity, sz };

inline const char* observable_name(Observable o) {
    switch (o) {
        case Observable::N: return "N";
        case Observable::Nbar: return "Nbar";
        case Observable::A: return "A";
        case Observable::Abar: return "Abar";
        case Observable::parity: return "parity";
        case Observable::sz: return "sz";
    }
    throw std::invalid_argument("observable_name: unknown tag");
}

inline Observable parse_observable(const std::string& name) {
    if (name == "N") return Observable::N;
    if (name == "Nbar") return Observable::Nbar;
    if (name == "A") return Observable::A;
    if (name == "Abar") return Observable::Abar;
    if (name == "parity") return Observable::parity;
    if (name == "sz") return Observable::sz;
    throw std::invalid_argument("observable: expected one of N, Nbar, A, Abar, parity, sz");
}

inline Op observable_operator(const Space& s, const ModelParams& p, Observable o) {
    switch (o) {
        case Observable::N: return excitation_number(s, ExKind::N);
        case Observable::Nbar: return excitation_number(s, ExKind::Nbar);
        case Observable::A: return transition(s, derive(p), TransKind::A);
        case Observable::Abar: return transition(s, derive(p), TransKind::Abar);
        case Observable::parity: return parity(s);
        case Observable::sz: return spin(s, SpinKind::sz);
    }
    throw std::invalid_argument("observable_operator: unknown tag");
}

struct Trajectory {
    std::vector<double> times;
    std::vector<std::string> observable_names;
    std::vector<std::vector<double>> series;  // one per observable
    std::vector<double> leakage;              // mass on Fock levels n > n_max-2
    std::vector<double> max_drift;            // per observable
    bool truncation_reliable{true};           // leakage stayed <= 1e-6
};

// Expectation-value series of the chosen observables under the tagged model
// Hamiltonian. Leakage beyond 1e-6 flags the trajectory as truncation-
// unreliable; the data is still emitted.
inline Trajectory conservation_trace(Model h_tag, const std::vector<Observable>& observables,
                                     const StateVector& psi0, double t_max, double dt,
                                     const ModelParams& params, int n_max) {
    validate(params);
    const Space s = make_space(n_max);
    if (!(psi0.space == s))
        throw std::invalid_argument("conservation_trace: state space mismatch");
    for (int i = 0; i < s.dim; ++i)
        if (std::norm(psi0.amplitudes(i)) > 0.0 && 2 * fock_of_index(i) > n_max)
            throw std::invalid_argument(
                "conservation_trace: initial state must be supported on Fock levels <= n_max/2");

    const Op h = hamiltonian(s, params, base_form(h_tag));
    std::vector<Op> ops;
    ops.reserve(observables.size());
    for (Observable o : observables) ops.push_back(observable_operator(s, params, o));

    Trajectory traj;
    for (Observable o : observables) traj.observable_names.emplace_back(observable_name(o));
    traj.series.resize(observables.size());
    traj.max_drift.assign(observables.size(), 0.0);

    const std::vector<StateVector> states = evolve(h, psi0, t_max, dt);
    for (std::size_t k = 0; k < states.size(); ++k) {
        traj.times.push_back(static_cast<double>(k) * dt);
        double leak = 0.0;
        for (int i = 0; i < s.dim; ++i)
            if (fock_of_index(i) > n_max - 2) leak += std::norm(states[k].amplitudes(i));
        traj.leakage.push_back(leak);
        if (leak > 1e-6) traj.truncation_reliable = false;
        for (std::size_t j = 0; j < ops.size(); ++j) {
            const double val = expectation(ops[j], states[k]);
            traj.series[j].push_back(val);
            traj.max_drift[j] = std::max(traj.max_drift[j], std::abs(val - traj.series[j][0]));
        }
    }
    return traj;
}

// CSV: "t,<obs1>,...,leakage", one row per grid point, 17 significant digits.
inline void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << 't';
    for (const std::string& name : traj.observable_names) out << ',' << name;
    out << ",leakage\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        out << format_double17(traj.times[k]);
        for (const auto& series : traj.series) out << ',' << format_double17(series[k]);
        out << ',' << format_double17(traj.leakage[k]) << '\n';
    }
}

}  // namespace rabi
