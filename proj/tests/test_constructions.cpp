#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgwb/cohomology.hpp"
#include "dgwb/constructions.hpp"
#include "fixtures.hpp"

using namespace dgwb;
using namespace dgwb::fixtures;

TEST_CASE("localize a polynomial ring") {
    auto A = plain({"x"});
    auto L = localize(A, A.base().parse("x"));
    CHECK(*L.algebra.base().vars() == VarNames{"x", "t"});
    REQUIRE(L.algebra.base().relations().size() == 1);
    CHECK(L.algebra.base().relations()[0] == L.algebra.base().parse("x*t-1"));

    // double localization picks the next inverse name
    auto L2 = localize(L.algebra, L.algebra.base().parse("1-x"));
    CHECK(*L2.algebra.base().vars() == VarNames{"x", "t", "u"});
    CHECK(L2.algebra.base().relations().size() == 2);

    CHECK_THROWS_AS(localize(A, Polynomial(A.base().vars())), invariant_violation);
}

TEST_CASE("localizing the koszul complex away from its support kills H^0") {
    auto K = koszul_x();
    auto L = localize(K, K.base().parse("x"));
    auto h0 = h0_ring(L.algebra);
    CHECK(h0.is_zero_ring());
}

TEST_CASE("tensor square of Q[x]") {
    auto A = plain({"x"});
    auto T = tensor_square(A);
    CHECK(T.algebra.base().arity() == 2);
    CHECK(T.algebra.base().relations().empty());
    // mult sends both copies to x
    CHECK(T.mult.apply(T.algebra.base().var(0)) == A.base().parse("x"));
    CHECK(T.mult.apply(T.algebra.base().var(1)) == A.base().parse("x"));
    CHECK(morphism_equal(compose(T.mult, T.left), DgMorphism::identity(A)));
    CHECK(morphism_equal(compose(T.mult, T.right), DgMorphism::identity(A)));
}

TEST_CASE("tensor square of the koszul complex has twin cohomology") {
    auto K = koszul_x();
    auto T = tensor_square(K);
    REQUIRE(T.algebra.gen_count() == 2);
    // base is Q[x, x_r]; H^{-1} of the twin-over-diagonal is not needed here,
    // just check the differentials landed right
    CHECK(element_equal(T.algebra, T.algebra.gen(0).diff,
                        parse_element(T.algebra, "x")));
    CHECK(element_equal(T.algebra, T.algebra.gen(1).diff,
                        parse_element(T.algebra, "x_r")));
}

TEST_CASE("recognize_fibration: free adjunction") {
    // Q[x,y] -> Q[x,y][eps], d eps = x-y
    auto A = plain({"x", "y"});
    BaseRing R = A.base();
    DgAlgebra shell = DgAlgebra::make(R, {Generator{"eps", -1, element_zero(0)}});
    DgAlgebra B = DgAlgebra::make(R, {Generator{"eps", -1, parse_element(shell, "x-y")}});
    auto phi = DgMorphism::make(A, B, {R.var(0), R.var(1)}, {});
    auto w = recognize_fibration(phi);
    REQUIRE(w.has_value());
    CHECK(w->new_gens.size() == 1);
    CHECK(w->stages.empty());
    CHECK(witness_replays(*w, phi));
}

TEST_CASE("recognize_fibration: variable and generator adjunction") {
    auto A = plain({"x"});
    auto B2 = plain({"x", "y"});
    DgAlgebra shell = DgAlgebra::make(B2.base(), {Generator{"eps", -1, element_zero(0)}});
    DgAlgebra B = DgAlgebra::make(B2.base(), {Generator{"eps", -1, parse_element(shell, "x-y")}});
    auto phi = DgMorphism::make(A, B, {B.base().var(0)}, {});
    auto w = recognize_fibration(phi);
    REQUIRE(w.has_value());
    CHECK(w->stages.size() == 1);
    CHECK(w->stages[0].kind == FibrationWitness::StageKind::FreshVar);
    CHECK(w->new_gens.size() == 1);
}

TEST_CASE("recognize_fibration: localization stage") {
    auto A = plain({"x"});
    auto L = localize(A, A.base().parse("x"));
    auto w = recognize_fibration(L.incl);
    REQUIRE(w.has_value());
    REQUIRE(w->stages.size() == 1);
    CHECK(w->stages[0].kind == FibrationWitness::StageKind::Localization);
}

TEST_CASE("recognize_fibration: quotient map is refused") {
    auto A = plain({"x", "y"});
    auto B = plain({"x"});
    auto phi = DgMorphism::make(A, B, {B.base().var(0), B.base().var(0)}, {});
    std::string reason;
    CHECK_FALSE(recognize_fibration(phi, &reason).has_value());
    CHECK(reason == "two base variables share an image");
}

TEST_CASE("pushout: disjoint adjunction") {
    // B = Q[x,y] <- A = Q[x] -> C = Koszul(x) gives Q[x,y][e]
    auto A = plain({"x"});
    auto B = plain({"x", "y"});
    auto K = koszul_x();
    auto phi = DgMorphism::make(A, B, {B.base().var(0)}, {});
    auto psi = DgMorphism::make(A, K, {K.base().var(0)}, {});
    auto P = pushout(phi, psi);
    CHECK(P.algebra.base().arity() == 2);
    CHECK(P.algebra.gen_count() == 1);
    CHECK(element_equal(P.algebra, P.algebra.gen(0).diff, parse_element(P.algebra, "x")));
    CHECK(morphism_equal(compose(P.from_witnessed, phi), compose(P.from_other, psi)));
}

TEST_CASE("pushout: A tensor_A A is A") {
    auto A = koszul_x();
    auto id = DgMorphism::identity(A);
    auto P = pushout(id, id);
    CHECK(P.algebra.structurally_equal(A));
}

TEST_CASE("pushout: koszul against koszul is the twin") {
    auto A = plain({"x"});
    auto K = koszul_x();
    auto incl = DgMorphism::make(A, K, {K.base().var(0)}, {});
    auto P = pushout(incl, incl);
    CHECK(P.algebra.base().arity() == 1);
    REQUIRE(P.algebra.gen_count() == 2);
    auto h1 = cohomology(P.algebra, -1);
    REQUIRE(h1.module.has_value());
    CHECK(h1.module->rank == 1);
    REQUIRE(h1.module->relations.size() == 1);
    CHECK(h1.module->relations[0][0] == P.algebra.base().parse("x"));
}

TEST_CASE("pushout universal property on random cocones") {
    auto A = plain({"x"});
    auto K = koszul_x();
    auto incl = DgMorphism::make(A, K, {K.base().var(0)}, {});
    auto P = pushout(incl, incl);
    // cocone: both legs collapse to K itself
    auto idK = DgMorphism::identity(K);
    auto induced = pushout_induce(P, incl, incl, idK, idK);
    CHECK(morphism_equal(compose(induced, P.from_witnessed), idK));
    CHECK(morphism_equal(compose(induced, P.from_other), idK));

    // cocone into the twin koszul: left to e1, right to e2
    auto T = twin_koszul();
    auto to1 = DgMorphism::make(K, T, {T.base().var(0)}, {element_gen(T, 0)});
    auto to2 = DgMorphism::make(K, T, {T.base().var(0)}, {element_gen(T, 1)});
    auto ind2 = pushout_induce(P, incl, incl, to1, to2);
    CHECK(morphism_equal(compose(ind2, P.from_witnessed), to1));
    CHECK(morphism_equal(compose(ind2, P.from_other), to2));
}

TEST_CASE("pushout stability: replayed leg is recognized") {
    SplitMix64 rng(17);
    auto A = plain({"x"});
    // a small corpus of witnessed extensions over A
    std::vector<DgMorphism> fibrations;
    {
        auto B = plain({"x", "y"});
        fibrations.push_back(DgMorphism::make(A, B, {B.base().var(0)}, {}));
        auto K = koszul_x();
        fibrations.push_back(DgMorphism::make(A, K, {K.base().var(0)}, {}));
        auto L = localize(A, A.base().parse("1+x"));
        fibrations.push_back(L.incl);
    }
    // arbitrary other legs
    std::vector<DgMorphism> others;
    {
        auto C = plain({"x"});
        others.push_back(DgMorphism::make(A, C, {C.base().parse("x")}, {}));
        auto C2 = plain({"z", "x"});
        others.push_back(DgMorphism::make(A, C2, {C2.base().parse("x+z^2")}, {}));
        auto Czero = DgAlgebra::make(BaseRing::make({"x"}, {plain({"x"}).base().constant(1)}), {});
        others.push_back(DgMorphism::make(A, Czero, {Czero.base().var(0)}, {}));
    }
    for (const auto& phi : fibrations) {
        for (const auto& psi : others) {
            auto w = recognize_fibration(phi);
            REQUIRE(w.has_value());
            auto P = pushout(phi, *w, psi);
            auto wp = recognize_fibration(P.from_other);
            CHECK(wp.has_value());
        }
    }
    (void)rng;
}

TEST_CASE("relative kahler: koszul inclusion is not acyclic") {
    auto A = plain({"x"});
    auto K = koszul_x();
    auto phi = DgMorphism::make(A, K, {K.base().var(0)}, {});
    auto rep = relative_kahler(phi, 2);
    CHECK_FALSE(rep.acyclic_in_range());
    CHECK(rep.degrees[0].acyclic);   // degree 0 fine: dx is a relation
    CHECK_FALSE(rep.degrees[1].acyclic);  // d(e) survives at degree -1
}

TEST_CASE("relative kahler: contractible extension is acyclic") {
    auto A = plain({"x"});
    BaseRing R2 = BaseRing::make({"x", "y"}, {});
    DgAlgebra shell = DgAlgebra::make(R2, {Generator{"eps", -1, element_zero(0)}});
    DgAlgebra B = DgAlgebra::make(R2, {Generator{"eps", -1, parse_element(shell, "x-y")}});
    auto phi = DgMorphism::make(A, B, {B.base().var(0)}, {});
    auto rep = relative_kahler(phi, 2);
    CHECK(rep.acyclic_in_range());
}

TEST_CASE("relative kahler: identity gives the zero module") {
    auto K = koszul_x();
    auto rep = relative_kahler(DgMorphism::identity(K), 2);
    CHECK(rep.acyclic_in_range());
}
