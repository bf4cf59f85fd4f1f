#include <quartlat/discriminant.hpp>

#include <doctest.h>

#include <random>

using namespace quartlat;

TEST_CASE("discriminant of <2> and <-2>") {
    auto f = discriminant_form(make_standard("<2>"));
    REQUIRE(f.size() == 2);
    CHECK(f.q(GroupElement{1}).value() == Rat(1, 2));
    auto g = discriminant_form(make_standard("<-2>"));
    CHECK(g.q(GroupElement{1}).value() == Rat(3, 2));
    CHECK(half(g.q(GroupElement{1})).value() == Rat(3, 4));
    auto w = represents(g, Rat(-1, 4), Normalization::Half);
    REQUIRE(w.has_value());
    CHECK(*w == GroupElement{1});
    CHECK_FALSE(represents(f, Rat(-1, 4), Normalization::Half).has_value());
}

TEST_CASE("unimodular lattices have trivial discriminant") {
    CHECK(discriminant_form(make_standard("E8")).size() == 1);
    CHECK(discriminant_form(make_standard("U")).size() == 1);
}

TEST_CASE("D8 discriminant form") {
    auto f = discriminant_form(make_standard("D8"));
    CHECK(f.size() == 4);
    CHECK(f.orders() == std::vector<std::int64_t>{2, 2});
    std::map<Rat, int> counts;
    for (std::uint64_t i = 0; i < f.size(); ++i) ++counts[f.q(f.element(i)).value()];
    // D8: vector class q = 1, spinor classes q = 8/4 = 2 = 0 mod 2
    CHECK(counts[Rat(0)] == 3);
    CHECK(counts[Rat(1)] == 1);
    CHECK(check_form_axioms(f));
}

TEST_CASE("E6 and A2 forms are anti-isometric and glue to E8-like lattices") {
    auto e6 = make_standard("E6"), a2 = make_standard("A2");
    auto fe = discriminant_form(e6), fa = discriminant_form(a2);
    CHECK(fe.size() == 3);
    CHECK(isometric(fe, fa) == false);
    auto glued = glue_overlattices(e6, a2);
    CHECK(glued.size() == 2);
    for (const auto& g : glued) {
        CHECK(g.overlattice.even());
        CHECK(g.overlattice.unimodular());
        CHECK(signature(g.overlattice) == Signature{8, 0, 0});
    }
    CHECK(count_glue_maps(e6, a2, std::nullopt) == 2);
}

TEST_CASE("gluing <2> and <-2> gives the hyperbolic plane") {
    auto glued = glue_overlattices(make_standard("<2>"), make_standard("<-2>"));
    REQUIRE(glued.size() == 1);
    CHECK(glued[0].overlattice.even());
    CHECK(glued[0].overlattice.unimodular());
    CHECK(signature(glued[0].overlattice) == Signature{1, 1, 0});
}

TEST_CASE("glue rejects determinant mismatch") {
    CHECK_THROWS_AS(glue_overlattices(make_standard("A2"), make_standard("<2>")), std::invalid_argument);
}

TEST_CASE("reference form U(2)+U(2)+D8(-1)") {
    IntegerLattice ref = direct_sum({rescale(make_standard("U"), 2), rescale(make_standard("U"), 2), rescale(make_standard("D8"), -1)});
    auto f = discriminant_form(ref);
    CHECK(f.size() == 64);
    CHECK(check_form_axioms(f));
    for (std::uint64_t i = 0; i < f.size(); ++i) CHECK(half(f.q(f.element(i))) != QmodZ(Rat(-1, 4)));
}

TEST_CASE("property: discriminant forms are invariant under base change") {
    std::mt19937 g(11);
    for (const char* name : {"D8", "E7", "A3", "<2,-2,-2>"}) {
        IntegerLattice l = make_standard(name);
        for (int trial = 0; trial < 5; ++trial) {
            IntMatrix p = IntMatrix::identity(l.rank());
            for (int k = 0; k < 8; ++k) {
                IntMatrix e = IntMatrix::identity(l.rank());
                std::size_t i = g() % l.rank(), j = (i + 1 + g() % (l.rank() - 1)) % l.rank();
                e(i, j) = static_cast<int>(g() % 3) - 1;
                p = p * e;
            }
            CHECK(isometric(discriminant_form(l), discriminant_form(change_basis(l, p))));
        }
    }
}

TEST_CASE("finite form construction validates its data") {
    CHECK_THROWS(FiniteQuadraticForm({1}, {Qmod2Z(Rat(0))}, {{QmodZ(Rat(0))}}));
    CHECK_THROWS(FiniteQuadraticForm({2}, {Qmod2Z(Rat(1, 2))}, {{QmodZ(Rat(0))}}));
}
