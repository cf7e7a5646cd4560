#include "adscausal/lie_core.hpp"

#include <doctest.h>

using namespace adscausal;

TEST_CASE("labels round-trip and carry root eigenvalues") {
    for (const char* s : {"J1", "J2", "X++", "X+-", "X-+", "X--", "X0+:3", "X-0:5", "R:3:4"}) {
        BasisLabel l = BasisLabel::parse(s);
        CHECK(l.str() == s);
    }
    CHECK(BasisLabel::parse("X+-").alpha() == 1);
    CHECK(BasisLabel::parse("X+-").beta() == -1);
    CHECK(BasisLabel::parse("X0+:4").alpha() == 0);
    CHECK(BasisLabel::parse("X0+:4").beta() == 1);
    CHECK_THROWS_AS(BasisLabel::parse("X+0"), std::invalid_argument);
    CHECK_THROWS_AS(BasisLabel::parse("Y"), std::invalid_argument);
}

TEST_CASE("dimension is (n+2)(n+1)/2 and n < 2 is rejected") {
    for (int n = 2; n <= 6; ++n) CHECK(algebra(n)->dim == std::size_t((n + 2) * (n + 1) / 2));
    CHECK_THROWS_AS(build_algebra(1), InvalidDimension);
    CHECK(algebra(3).get() == algebra(3).get());
}

TEST_CASE("structure suite passes exactly for n = 2..6") {
    for (int n = 2; n <= 6; ++n) {
        Report r = verify_structure(*algebra(n));
        CAPTURE(n);
        for (const auto& c : r.checks) {
            CAPTURE(c.name);
            CAPTURE(c.counterexample);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("commutator table samples") {
    const Algebra& a = *algebra(3);
    CHECK(bracket(basis(a, "X0+:3"), basis(a, "X+-")) == basis(a, "X+0:3") * Q(2));
    CHECK(bracket(basis(a, "J1"), basis(a, "X++")) == basis(a, "X++"));
    CHECK(bracket(basis(a, "J2"), basis(a, "X+-")) == -basis(a, "X+-"));
    CHECK(bracket(basis(a, "J1"), basis(a, "J2")).is_zero());
}

TEST_CASE("centralizer generators act on slices with the realization's sign") {
    const Algebra& a = *algebra(5);
    ElemQ r = basis(a, "R:3:4");
    CHECK(bracket(r, basis(a, "X+0:4")) == -basis(a, "X+0:3"));
    CHECK(bracket(basis(a, "X0+:3"), basis(a, "X0-:4")) == r * Q(2));
    CHECK(bracket(r, basis(a, "X+0:5")).is_zero());
}

TEST_CASE("Killing values") {
    for (int n = 2; n <= 8; ++n) CHECK(killing(basis(*algebra(n), "J2"), basis(*algebra(n), "J2")) == 2 * n);
    CHECK(killing(basis(*algebra(3), "X++"), basis(*algebra(3), "X--")) == -24);
}

TEST_CASE("involutions and projections") {
    const Algebra& a = *algebra(4);
    ElemQ x = basis(a, "X++") + basis(a, "J2") * Q(3) + basis(a, "X0-:4");
    CHECK(apply_involution(Involution::Theta, apply_involution(Involution::Theta, x)) == x);
    CHECK(project(Subspace::H, x) + project(Subspace::Q, x) == x);
    CHECK(project(Subspace::K, x) + project(Subspace::P, x) == x);
    CHECK(apply_involution(Involution::Theta, basis(a, "X++")) == basis(a, "X--"));  // negative roots are theta images
}

TEST_CASE("matrix round trip") {
    const Algebra& a = *algebra(4);
    for (std::size_t i = 0; i < a.dim; ++i) CHECK(from_matrix(a, to_matrix(basis(a, i))) == basis(a, i));
}

TEST_CASE("mixing algebras is rejected") {
    CHECK_THROWS_AS(bracket(basis(*algebra(2), "J1"), basis(*algebra(3), "J1")), AlgebraMismatch);
}
