#include <quartlat/lattice.hpp>

#include <doctest.h>

#include <random>

using namespace quartlat;

TEST_CASE("root lattice determinants and signatures") {
    CHECK(make_standard("E8").determinant() == 1);
    CHECK(make_standard("E7").determinant() == 2);
    CHECK(make_standard("E6").determinant() == 3);
    CHECK(make_standard("D8").determinant() == 4);
    CHECK(make_standard("D4").determinant() == 4);
    CHECK(make_standard("A2").determinant() == 3);
    CHECK(make_standard("A5").determinant() == 6);
    CHECK(signature(make_standard("E8")) == Signature{8, 0, 0});
    CHECK(signature(make_standard("U")) == Signature{1, 1, 0});
    CHECK(signature(rescale(make_standard("D8"), -1)) == Signature{0, 8, 0});
    CHECK(make_standard("E8").even());
    CHECK(make_standard("E8").unimodular());
    CHECK_FALSE(make_standard("<1,-1>").even());
}

TEST_CASE("diagonal names") {
    IntegerLattice l = make_standard("<2,-2,-2>");
    CHECK(l.rank() == 3);
    CHECK(l.determinant() == 8);
    CHECK(signature(l) == Signature{1, 2, 0});
    CHECK_THROWS(make_standard("<2,,3>"));
    CHECK_THROWS(make_standard("<0>"));
    CHECK_THROWS(make_standard("E9"));
    CHECK_THROWS(make_standard("Q3"));
}

TEST_CASE("invalid Gram matrices") {
    CHECK_THROWS_AS(IntegerLattice(IntMatrix{{1, 2}, {3, 4}}), std::invalid_argument);
    CHECK_THROWS_AS(IntegerLattice(IntMatrix{{1, 1}, {1, 1}}), std::invalid_argument);
    IntegerLattice d(IntMatrix{{1, 1}, {1, 1}}, "deg", true);
    CHECK(d.degenerate());
    CHECK(signature(d) == Signature{1, 0, 1});
}

TEST_CASE("Smith normal form of D8 and E7") {
    auto s = smith_normal_form(make_standard("D8").gram());
    Int prod = 1;
    std::size_t nontrivial = 0;
    for (const auto& d : s.diagonal) {
        prod *= d;
        if (d != 1) ++nontrivial;
    }
    CHECK(prod == 4);
    CHECK(nontrivial == 2);
    CHECK(s.U * make_standard("D8").gram() * s.V == s.D);
    auto e7 = smith_normal_form(make_standard("E7").gram());
    CHECK(e7.diagonal.back() == 2);
}

TEST_CASE("direct sum and orthogonal complement") {
    IntegerLattice uu = direct_sum({make_standard("U"), make_standard("U")});
    CHECK(uu.rank() == 4);
    CHECK(uu.unimodular());
    IntVector v{1, 1, 0, 0};  // norm 2
    CHECK(uu.norm(v) == 2);
    Sublattice c = orthogonal_complement(uu, {v});
    CHECK(c.lattice.rank() == 3);
    CHECK(abs_int(c.lattice.determinant()) == 2);
    CHECK(signature(c.lattice) == Signature{1, 2, 0});
    for (std::size_t i = 0; i < c.basis.rows(); ++i) CHECK(uu.inner(c.basis.row(i), v) == 0);
}

TEST_CASE("isometry helpers") {
    IntegerLattice u = make_standard("U");
    IntMatrix swap{{0, 1}, {1, 0}};
    CHECK(is_isometry(u, swap));
    CHECK(matrix_power(swap, 2) == IntMatrix::identity(2));
    CHECK(trace(swap) == 0);
    CHECK_FALSE(is_isometry(u, IntMatrix{{2, 0}, {0, 1}}));
}

IntMatrix random_unimodular(std::mt19937& g, std::size_t n) {
    IntMatrix p = IntMatrix::identity(n);
    for (int k = 0; k < 12; ++k) {
        IntMatrix e = IntMatrix::identity(n);
        std::size_t i = g() % n, j = (i + 1 + g() % (n - 1)) % n;
        e(i, j) = static_cast<int>(g() % 5) - 2;
        p = p * e;
    }
    return p;
}

TEST_CASE("property: unimodular base change preserves determinant, parity and signature") {
    std::mt19937 g(7);
    for (const char* name : {"E8", "D8", "E7", "A5", "<2,-2,-2,-2>"}) {
        IntegerLattice l = make_standard(name);
        for (int trial = 0; trial < 10; ++trial) {
            IntMatrix p = random_unimodular(g, l.rank());
            CHECK(abs_int(determinant(p)) == 1);
            IntegerLattice m = change_basis(l, p);
            CHECK(m.determinant() == l.determinant());
            CHECK(m.even() == l.even());
            CHECK(signature(m) == signature(l));
        }
    }
}

TEST_CASE("saturation and kernel") {
    IntMatrix a{{2, 4, 6}};
    IntMatrix k = integer_kernel(a);
    CHECK(k.rows() == 2);
    for (std::size_t i = 0; i < k.rows(); ++i) CHECK((a * k.row(i))[0] == 0);
    IntMatrix s = saturate_rows(IntMatrix{{2, 4, 6}});
    CHECK(s.rows() == 1);
    CHECK(abs_int(s(0, 0)) == 1);
}
