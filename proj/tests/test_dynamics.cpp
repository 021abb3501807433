#include "rabi/dynamics.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace rabi;

namespace {

const ModelParams kDefaults{1.0, 1.0, 0.1, 0.0};

// Independent oracle: closed-form evolution of a real symmetric 2x2 block
// [[d1, c],[c, d2]] from (0, 1), occupation of the first component.
// exp(-iHt) = e^{-i mid t} (cos(W t) I - i sin(W t)/W (H - mid I)).
double two_level_upper_occupation(double d1, double d2, double c, double t) {
    const double half_gap = 0.5 * (d1 - d2);
    const double w = std::sqrt(half_gap * half_gap + c * c);
    const double amp = c / w * std::sin(w * t);
    return amp * amp;
}

}  // namespace

TEST_CASE("expectation: frozen basis-state values") {
    const Space s = make_space(10);
    const StateVector ground = basis_state_vector(s, {0, Level::g});
    const StateVector excited = basis_state_vector(s, {0, Level::e});
    CHECK(expectation(excitation_number(s, ExKind::N), ground) == 0.0);
    CHECK(expectation(excitation_number(s, ExKind::Nbar), ground) == 2.0);
    CHECK(expectation(parity(s), excited) == -1.0);
    CHECK(expectation(parity(s), ground) == 1.0);
    CHECK(expectation(spin(s, SpinKind::sz), ground) == -0.5);
}

TEST_CASE("evolve: |0,g> is stationary under the rotating component") {
    const Space s = make_space(12);
    const Op h = hamiltonian(s, kDefaults, HamForm::jc_1c);
    const StateVector psi0 = basis_state_vector(s, {0, Level::g});
    const auto states = evolve(h, psi0, 5.0, 0.5);
    const int ig = basis_index(s, {0, Level::g});
    for (const StateVector& psi : states) {
        CHECK(std::abs(std::abs(psi.amplitudes(ig)) - 1.0) <= 1e-12);
    }
}

TEST_CASE("evolve: t_max = 0 gives the single-point trajectory") {
    const Space s = make_space(6);
    const Op h = hamiltonian(s, kDefaults, HamForm::jc_1c);
    const StateVector psi0 = basis_state_vector(s, {1, Level::e});
    const auto states = evolve(h, psi0, 0.0, 0.1);
    REQUIRE(states.size() == 1);
    CHECK((states[0].amplitudes - psi0.amplitudes).norm() <= 1e-15);
    CHECK_THROWS_AS(evolve(h, psi0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("evolve: norm preserved to 1e-12 at every step") {
    const Space s = make_space(16);
    ModelParams p = kDefaults;
    p.g = 0.5;
    const Op h = hamiltonian(s, p, HamForm::rabi_r);
    const StateVector psi0 = basis_state_vector(s, {0, Level::g});
    for (const StateVector& psi : evolve(h, psi0, 20.0, 0.25))
        CHECK(std::abs(psi.amplitudes.norm() - 1.0) <= 1e-12);
}

TEST_CASE("anti-rotating dynamics from |0,g>: confined blue-sideband flopping") {
    const int n_max = 20;
    const Space s = make_space(n_max);
    const StateVector psi0 = basis_state_vector(s, {0, Level::g});
    const Trajectory traj = conservation_trace(
        Model::ajc, {Observable::Nbar, Observable::Abar, Observable::N}, psi0, 50.0, 0.05,
        kDefaults, n_max);

    CHECK(traj.truncation_reliable);
    CHECK(traj.max_drift[0] <= 1e-10);  // <Nbar> conserved
    CHECK(traj.max_drift[1] <= 1e-10);  // <Abar> conserved

    // <N>(t) follows the 2x2 block {|1,e>, |0,g>}: gap 2.0, coupling 0.2.
    const Matrix hbar = hamiltonian(s, kDefaults, HamForm::ajc_1d).data;
    const int ie = basis_index(s, {1, Level::e});
    const int ig = basis_index(s, {0, Level::g});
    const double d1 = hbar(ie, ie).real();
    const double d2 = hbar(ig, ig).real();
    const double c = hbar(ie, ig).real();
    CHECK(d1 - d2 == Catch::Approx(2.0).margin(1e-14));
    CHECK(c == Catch::Approx(0.2).margin(1e-14));
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const double expected = 2.0 * two_level_upper_occupation(d1, d2, c, traj.times[k]);
        CHECK(std::abs(traj.series[2][k] - expected) <= 1e-8);
    }
    CHECK(traj.max_drift[2] > 0.05);  // visibly oscillating even at g = 0.1
}

TEST_CASE("rotating dynamics from |0,e>: resonant red-sideband flopping") {
    const int n_max = 20;
    const Space s = make_space(n_max);
    const StateVector psi0 = basis_state_vector(s, {0, Level::e});
    const Trajectory traj = conservation_trace(
        Model::jc, {Observable::N, Observable::A, Observable::Nbar}, psi0, 50.0, 0.05,
        kDefaults, n_max);

    CHECK(traj.max_drift[0] <= 1e-10);
    CHECK(traj.max_drift[1] <= 1e-10);
    // resonant block {|0,e>, |1,g>}: <Nbar> swings across the full range 1..3
    CHECK(traj.max_drift[2] >= 1.9);
    const Matrix h = hamiltonian(s, kDefaults, HamForm::jc_1c).data;
    const int ie = basis_index(s, {0, Level::e});
    const int ig = basis_index(s, {1, Level::g});
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const double flip = two_level_upper_occupation(h(ig, ig).real(), h(ie, ie).real(),
                                                       h(ig, ie).real(), traj.times[k]);
        CHECK(std::abs(traj.series[2][k] - (1.0 + 2.0 * flip)) <= 1e-8);
    }
}

TEST_CASE("full model conserves parity and energy from |0,g>") {
    const int n_max = 20;
    const Space s = make_space(n_max);
    ModelParams p = kDefaults;
    p.r = 0.3;
    const StateVector psi0 = basis_state_vector(s, {0, Level::g});
    const Trajectory traj = conservation_trace(Model::rabi, {Observable::parity}, psi0, 50.0,
                                               0.05, p, n_max);
    CHECK(traj.max_drift[0] <= 1e-10);
    CHECK(traj.truncation_reliable);
    for (double leak : traj.leakage) CHECK(leak <= 1e-6);

    // energy drift under exact evolution
    const Op h = hamiltonian(s, p, HamForm::rabi_r);
    const auto states = evolve(h, psi0, 10.0, 0.5);
    const double e0 = expectation(h, states.front());
    for (const StateVector& psi : states)
        CHECK(std::abs(expectation(h, psi) - e0) <= 1e-10);
}

TEST_CASE("strong coupling in a small space flags truncation-unreliable data") {
    const int n_max = 4;
    const Space s = make_space(n_max);
    ModelParams p = kDefaults;
    p.g = 1.0;
    const StateVector psi0 = basis_state_vector(s, {0, Level::g});
    const Trajectory traj =
        conservation_trace(Model::rabi, {Observable::parity}, psi0, 10.0, 0.1, p, n_max);
    CHECK_FALSE(traj.truncation_reliable);
    CHECK(*std::max_element(traj.leakage.begin(), traj.leakage.end()) > 1e-6);
    // data still emitted in full
    CHECK(traj.times.size() == 101);
    CHECK(traj.series[0].size() == traj.times.size());
}

TEST_CASE("conservation_trace rejects states that crowd the truncation edge") {
    const int n_max = 12;
    const Space s = make_space(n_max);
    const StateVector high = basis_state_vector(s, {10, Level::g});
    CHECK_THROWS_AS(conservation_trace(Model::jc, {Observable::N}, high, 1.0, 0.1, kDefaults,
                                       n_max),
                    std::invalid_argument);
}

TEST_CASE("observable parsing round trips") {
    for (Observable o : {Observable::N, Observable::Nbar, Observable::A, Observable::Abar,
                         Observable::parity, Observable::sz})
        CHECK(parse_observable(observable_name(o)) == o);
    CHECK_THROWS_AS(parse_observable("Q"), std::invalid_argument);
}

TEST_CASE("trajectory CSV: header and 17-significant-digit payload") {
    const int n_max = 6;
    const Space s = make_space(n_max);
    const StateVector psi0 = basis_state_vector(s, {0, Level::g});
    const Trajectory traj = conservation_trace(Model::ajc, {Observable::Nbar, Observable::N},
                                               psi0, 0.2, 0.1, kDefaults, n_max);
    std::ostringstream out;
    write_trajectory_csv(out, traj);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,Nbar,N,leakage");
    std::getline(in, line);
    {
        std::istringstream cells(line);
        std::string cell;
        std::getline(cells, cell, ',');
        CHECK(std::stod(cell) == 0.0);
        std::getline(cells, cell, ',');
        CHECK(std::stod(cell) == Catch::Approx(2.0).margin(1e-12));
        std::getline(cells, cell, ',');
        CHECK(std::stod(cell) == Catch::Approx(0.0).margin(1e-12));
    }
    int rows = 1;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 3);
}

TEST_CASE("make_state validates length and normalization") {
    const Space s = make_space(2);
    Vector v = Vector::Zero(s.dim);
    v(0) = 1.0;
    CHECK_NOTHROW(make_state(s, v));
    v(0) = 2.0;
    CHECK_THROWS_AS(make_state(s, v), std::invalid_argument);
    CHECK_THROWS_AS(make_state(s, Vector::Zero(3)), std::invalid_argument);
}
