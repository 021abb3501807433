#include "rabi/sweep.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>

using namespace rabi;

namespace {
const ModelParams kBase{1.0, 1.0, 0.1, 0.0};
}

TEST_CASE("sweep over [0.3, 0.7]: phase distance minimized at the grid point 0.5") {
    const SweepResult sweep = sweep_g(kBase, 0.3, 0.7, 81, 20, 2);
    REQUIRE(sweep.rows.size() == 81);
    const SweepRow& best = sweep.rows[static_cast<std::size_t>(sweep.argmin_phase_distance)];
    CHECK(best.g == Catch::Approx(0.5).margin(1e-12));
    CHECK(best.phase_distance <= 1e-12);
    CHECK(sweep.rows.front().g == 0.3);
    CHECK(sweep.rows.back().g == 0.7);

    for (const SweepRow& row : sweep.rows) {
        CHECK(row.relation_residual <= 1e-10);
        CHECK(std::abs(std::abs(row.phase_factor) - 1.0) <= 1e-13);
    }

    REQUIRE(sweep.crossings.size() == 1);
    CHECK(sweep.crossings.front().principal);
    CHECK(sweep.crossings.front().even_value == 0);
    const int lo = sweep.crossings.front().lower_index;
    CHECK(sweep.rows[static_cast<std::size_t>(lo)].beta_sq - 1.0 >= 0.0);
    CHECK(sweep.rows[static_cast<std::size_t>(lo) + 1].beta_sq - 1.0 < 0.0);
}

TEST_CASE("beta_sq substitution value on the grid") {
    const SweepResult sweep = sweep_g(kBase, 0.5, 0.7, 2, 8, 2);
    CHECK(sweep.rows.front().beta_sq == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("secondary crossings are reported and labeled non-principal") {
    // beta^2 runs from 25 (g=0.1) down to about 1.56 (g=0.4): it passes the
    // odd values 3,5,...,25, i.e. beta^2-1 hits the even values 2..24.
    const SweepResult sweep = sweep_g(kBase, 0.1, 0.4, 61, 12, 2);
    CHECK(sweep.crossings.size() >= 10);
    for (const PhaseCrossing& c : sweep.crossings) {
        CHECK_FALSE(c.principal);
        CHECK(c.even_value % 2 == 0);
        CHECK(c.even_value > 0);
    }
}

TEST_CASE("phase factor has period 2 in beta_sq") {
    // pick couplings with beta^2 = x and x + 2; their phase factors agree
    for (double x : {0.7, 1.0, 2.3, 5.5}) {
        const double g1 = 0.5 * std::sqrt(1.0 / x);
        const double g2 = 0.5 * std::sqrt(1.0 / (x + 2.0));
        ModelParams p1 = kBase, p2 = kBase;
        p1.g = g1;
        p2.g = g2;
        const cplx f1 = std::polar(1.0, std::numbers::pi * (derive(p1).beta_sq - 1.0));
        const cplx f2 = std::polar(1.0, std::numbers::pi * (derive(p2).beta_sq - 1.0));
        CHECK(std::abs(f1 - f2) <= 1e-12);
    }
}

TEST_CASE("sweep argument validation") {
    CHECK_THROWS_AS(sweep_g(kBase, 0.0, 0.5, 10, 8, 2), std::invalid_argument);
    CHECK_THROWS_AS(sweep_g(kBase, 0.5, 0.4, 10, 8, 2), std::invalid_argument);
    CHECK_THROWS_AS(sweep_g(kBase, 0.3, 0.7, 1, 8, 2), std::invalid_argument);
}

TEST_CASE("refine_critical: bisection matches the closed form") {
    const CriticalRefinement r = refine_critical(1.0, 1.0, 0.45, 0.55);
    CHECK(r.g_c_bisect == Catch::Approx(0.5).epsilon(1e-12));
    CHECK(r.rel_difference <= 1e-12);

    const CriticalRefinement r2 = refine_critical(2.0, 1.0, 0.5, 0.9);
    CHECK(r2.g_c_bisect == Catch::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("refine_critical: ten randomized frequency pairs in [0.5, 2]^2") {
    std::mt19937 rng(90210);
    std::uniform_real_distribution<double> freq(0.5, 2.0);
    for (int k = 0; k < 10; ++k) {
        const double omega = freq(rng);
        const double omega0 = freq(rng);
        const double gc = critical_coupling(omega, omega0);
        const CriticalRefinement r = refine_critical(omega, omega0, 0.5 * gc, 1.7 * gc);
        CHECK(std::abs(r.g_c_bisect - gc) <= 1e-12 * gc);
    }
}

TEST_CASE("refine_critical: degenerate bracket reports no sign change") {
    CHECK_THROWS_WITH(refine_critical(1.0, 1.0, 0.6, 0.7),
                      Catch::Matchers::ContainsSubstring("no sign change"));
    CHECK_THROWS_AS(refine_critical(1.0, 1.0, 0.7, 0.6), std::invalid_argument);
    CHECK_THROWS_AS(refine_critical(-1.0, 1.0, 0.4, 0.6), std::invalid_argument);
}

TEST_CASE("sweep CSV: header and gap column toggle") {
    // n_max comfortably above the coupling so the low levels certify
    const SweepResult sweep = sweep_g(kBase, 0.4, 0.6, 3, 14, 2, true);
    std::ostringstream with_gap;
    write_sweep_csv(with_gap, sweep, true);
    std::istringstream in(with_gap.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "g,beta_sq,phase_re,phase_im,phase_distance,relation_residual,gap");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 3);
    for (const SweepRow& row : sweep.rows) {
        REQUIRE(row.gap.has_value());
        CHECK(*row.gap > 0.0);
    }

    std::ostringstream without;
    write_sweep_csv(without, sweep, false);
    std::istringstream in2(without.str());
    std::getline(in2, line);
    CHECK(line == "g,beta_sq,phase_re,phase_im,phase_distance,relation_residual");
}
