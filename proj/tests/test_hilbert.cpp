#include "rabi/hilbert.hpp"
#include "rabi/operators.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace rabi;

TEST_CASE("make_space dimensions") {
    CHECK(make_space(2).dim == 6);
    CHECK(make_space(20).dim == 42);
    CHECK_THROWS_AS(make_space(1), std::invalid_argument);
}

TEST_CASE("basis index convention") {
    const Space s = make_space(5);
    CHECK(basis_index(s, {3, Level::g}) == 7);
    CHECK(basis_index(s, {0, Level::e}) == 0);
    const BasisState b = basis_state(s, 4);
    CHECK(b.n == 2);
    CHECK(b.sigma == Level::e);
    CHECK_THROWS_AS(basis_index(s, {6, Level::g}), std::out_of_range);
    CHECK_THROWS_AS(basis_state(s, 12), std::out_of_range);
    CHECK_THROWS_AS(basis_state(s, -1), std::out_of_range);
}

TEST_CASE("index map is a bijection (exhaustive round trip)") {
    for (int n_max : {2, 5, 17, 64}) {
        const Space s = make_space(n_max);
        for (int idx = 0; idx < s.dim; ++idx) {
            const BasisState b = basis_state(s, idx);
            CHECK(basis_index(s, b) == idx);
        }
        for (int n = 0; n <= n_max; ++n) {
            for (Level sig : {Level::e, Level::g}) {
                const BasisState b{n, sig};
                CHECK(basis_state(s, basis_index(s, b)) == b);
            }
        }
    }
}

TEST_CASE("basis state text form round trip") {
    CHECK(to_string(BasisState{0, Level::g}) == "0,g");
    CHECK(to_string(BasisState{3, Level::e}) == "3,e");
    CHECK(parse_basis_state("0,g") == BasisState{0, Level::g});
    CHECK(parse_basis_state("12,e") == BasisState{12, Level::e});
    CHECK_THROWS_AS(parse_basis_state("3,x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_basis_state("e,3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_basis_state(""), std::invalid_argument);
}

TEST_CASE("interior projector selects the retained levels") {
    const Space s = make_space(2);
    const Op p0 = interior_projector(s, 0);
    CHECK((p0.data - Matrix::Identity(s.dim, s.dim)).norm() == 0.0);

    const Op p2 = interior_projector(s, 2);
    for (int i = 0; i < s.dim; ++i)
        CHECK(p2.data(i, i).real() == (i < 2 ? 1.0 : 0.0));

    CHECK_THROWS_AS(interior_projector(s, 3), std::out_of_range);
    CHECK_THROWS_AS(interior_projector(s, -1), std::out_of_range);
}

TEST_CASE("interior projector is idempotent and Hermitian, entrywise exact") {
    const Space s = make_space(7);
    for (int margin : {0, 1, 2, 5}) {
        const Op p = interior_projector(s, margin);
        CHECK((p.data * p.data - p.data).cwiseAbs().maxCoeff() == 0.0);
        CHECK((p.data - p.data.adjoint().eval()).cwiseAbs().maxCoeff() == 0.0);
    }
}
