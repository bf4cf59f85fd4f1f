#include <quartlat/hermitian.hpp>

#include <doctest.h>

using namespace quartlat;

TEST_CASE("Gaussian integer arithmetic") {
    GaussianInt a(1, 1), b(1, -1);
    CHECK(a * b == GaussianInt(2));
    CHECK(a.conj() == b);
    CHECK(a.norm() == 2);
    CHECK(is_unit(GaussianInt(0, -1)));
    CHECK_FALSE(is_unit(a));
    CHECK(GaussianInt(3, -4).str() == "3-4i");
    GaussianInt q = round_quotient(GaussianInt(7, 3), GaussianInt(2, 1));
    CHECK((GaussianInt(7, 3) - q * GaussianInt(2, 1)).norm() < GaussianInt(2, 1).norm());
}

TEST_CASE("Gaussian rational division and square roots") {
    GaussianRat z = GaussianRat(Rat(1), Rat(2)) / GaussianRat(Rat(3), Rat(-1));
    CHECK(z * GaussianRat(Rat(3), Rat(-1)) == GaussianRat(Rat(1), Rat(2)));
    GaussianRat r;
    REQUIRE(exact_sqrt(GaussianRat(Rat(-1)), r));
    CHECK(r * r == GaussianRat(Rat(-1)));
    REQUIRE(exact_sqrt(GaussianRat(Rat(0), Rat(2)), r));
    CHECK(r * r == GaussianRat(Rat(0), Rat(2)));
    REQUIRE(exact_sqrt(GaussianRat(Rat(-5, 9), Rat(12, 9)), r));
    CHECK(r * r == GaussianRat(Rat(-5, 9), Rat(12, 9)));
    CHECK_FALSE(exact_sqrt(GaussianRat(Rat(2)), r));
}

TEST_CASE("Heckman lattice") {
    HermitianLattice h = heckman_lattice();
    CHECK(h.rank() == 7);
    CHECK(hermitian_signature(h) == Signature{1, 6, 0});
    TraceLattice t = trace_lattice(h);
    CHECK(t.lattice.rank() == 14);
    CHECK(t.lattice.even());
    CHECK(signature(t.lattice) == Signature{2, 12, 0});
    CHECK(abs_int(t.lattice.determinant()) == 256);
    CHECK(is_isometry(t.lattice, t.mu4));
    CHECK(t.mu4 * t.mu4 == -IntMatrix::identity(14));
}

TEST_CASE("relabelling the E7 graph preserves the invariants") {
    HermitianLattice h = heckman_lattice_relabeled({6, 5, 4, 3, 2, 1, 0});
    CHECK(hermitian_signature(h) == Signature{1, 6, 0});
    CHECK(abs_int(trace_lattice(h).lattice.determinant()) == 256);
}

TEST_CASE("conjugate symmetry is enforced") {
    GaussianIntMatrix g(2, 2);
    g(0, 0) = GaussianInt(-2);
    g(1, 1) = GaussianInt(-2);
    g(0, 1) = GaussianInt(1, 1);
    g(1, 0) = GaussianInt(1, 1);
    CHECK_THROWS_AS(HermitianLattice{g}, std::invalid_argument);
    g(1, 0) = GaussianInt(1, -1);
    CHECK_NOTHROW(HermitianLattice{g});
}

TEST_CASE("round trip: trace lattice with mu4 recovers a Hermitian lattice of the same type") {
    HermitianLattice h = heckman_lattice();
    TraceLattice t = trace_lattice(h);
    OStructure o = hermitian_from_mu4(t.lattice, t.mu4);
    CHECK(o.hermitian.rank() == 7);
    CHECK(hermitian_signature(o.hermitian) == Signature{1, 6, 0});
    for (std::size_t k = 0; k < 7; ++k) {
        IntVector b = o.basis.row(k);
        CHECK(o.hermitian.gram()(k, k) == GaussianInt(t.lattice.norm(b)));
    }
    OVector v(7, GaussianInt(0));
    v[2] = GaussianInt(1, -1);
    v[5] = GaussianInt(2);
    CHECK(o.to_module(o.to_lattice(v)) == v);
}

TEST_CASE("mu4 structure validation") {
    IntegerLattice l = make_standard("<-2,-2>");
    IntMatrix j{{0, -1}, {1, 0}};
    CHECK_NOTHROW(hermitian_from_mu4(l, j));
    CHECK_THROWS(hermitian_from_mu4(l, IntMatrix{{0, 1}, {1, 0}}));
    CHECK_THROWS(hermitian_from_mu4(make_standard("<-2,-4>"), j));
}

TEST_CASE("orthogonal summand check") {
    GaussianIntMatrix g(2, 2);
    g(0, 0) = GaussianInt(-2);
    g(1, 1) = GaussianInt(-2);
    HermitianLattice diag(g);
    CHECK(orthogonal_summand_check(diag, OVector{GaussianInt(1), GaussianInt(0)}));
    CHECK_FALSE(orthogonal_summand_check(diag, OVector{GaussianInt(1), GaussianInt(1)}));
    CHECK_THROWS(orthogonal_summand_check(diag, OVector{GaussianInt(0), GaussianInt(0)}));
}
