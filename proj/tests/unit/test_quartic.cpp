#include <quartlat/quartic.hpp>

#include <doctest.h>

#include <random>

using namespace quartlat;

namespace {

GaussianRat gr(long long n, long long d = 1) { return GaussianRat(Rat(n, d)); }
GaussianRat gi(long long re, long long im) { return GaussianRat(Rat(re), Rat(im)); }

UPoly poly(std::initializer_list<GaussianRat> c) { return UPoly(c); }

TernaryQuartic conic_pair(const GaussianRat& s, const GaussianRat& t) {
    TernaryForm c(2), d(2);
    c.set({0, 1, 1}, gr(1));
    c.set({2, 0, 0}, gr(-1));
    d.set({0, 1, 1}, s);
    d.set({2, 0, 0}, -t);
    return c * d;
}

TernaryQuartic fermat() { return make_quartic({{{4, 0, 0}, gr(1)}, {{0, 4, 0}, gr(1)}, {{0, 0, 4}, gr(1)}}); }
TernaryQuartic cusp() { return make_quartic({{{2, 0, 2}, gr(1)}, {{0, 3, 1}, gr(1)}, {{0, 4, 0}, gr(1)}, {{4, 0, 0}, gr(1)}}); }
TernaryQuartic tacnode() { return make_quartic({{{2, 0, 2}, gr(1)}, {{0, 4, 0}, gr(1)}}); }
TernaryQuartic three_nodes() { return make_quartic({{{2, 2, 0}, gr(1)}, {{0, 2, 2}, gr(1)}, {{2, 0, 2}, gr(1)}}); }

GaussianRatMatrix random_sl3(std::mt19937& g) {
    GaussianRatMatrix m = GaussianRatMatrix::identity(3);
    for (int k = 0; k < 4; ++k) {
        GaussianRatMatrix e = GaussianRatMatrix::identity(3);
        int i = static_cast<int>(g() % 3);
        int j = (i + 1 + static_cast<int>(g() % 2)) % 3;
        e(i, j) = GaussianRat(Rat(static_cast<int>(g() % 5) - 2), Rat(static_cast<int>(g() % 3) - 1));
        m = m * e;
    }
    return m;
}

GVector pt(long long a, long long b, long long c) { return GVector{gr(a), gr(b), gr(c)}; }

}  // namespace

TEST_CASE("univariate gcd, resultant and roots") {
    UPoly a = poly({gr(2), gr(-3), gr(1)});         // (x-1)(x-2)
    UPoly b = poly({gi(0, -1), gi(-1, 1), gr(1)});  // (x-1)(x+i)
    CHECK(gcd(a, b) == poly({gr(-1), gr(1)}));
    CHECK(degree(gcd(a, poly({gr(5), gr(1)}))) == 0);
    CHECK(resultant(poly({gr(1), gr(0), gr(1)}), poly({gr(-2), gr(1)})) == gr(5));
    CHECK(resultant(poly({gr(1), gr(0), gr(1)}), poly({gi(0, -1), gr(1)})) == gr(0));
    // (x - 1/2)(x - i)^2 (x^2 - 2)
    UPoly p = poly({gr(-1, 2), gr(1)}) * poly({gi(0, -1), gr(1)}) * poly({gi(0, -1), gr(1)}) * poly({gr(-2), gr(0), gr(1)});
    RootExtraction r = gaussian_rational_roots(p);
    REQUIRE(r.roots.size() == 2);
    CHECK(r.irrational == 2);
    for (const auto& z : r.roots) CHECK(evaluate(p, z).is_zero());
    CHECK(degree(squarefree_part(p)) == 4);
}

TEST_CASE("interpolation reproduces a polynomial") {
    UPoly p = poly({gr(3), gi(0, 2), gr(-1, 3), gr(1)});
    std::vector<GaussianRat> xs, ys;
    for (int k = 0; k < 4; ++k) {
        xs.push_back(gr(k));
        ys.push_back(evaluate(p, gr(k)));
    }
    CHECK(interpolate(xs, ys) == p);
}

TEST_CASE("substitution composes") {
    std::mt19937 g(3);
    TernaryQuartic f = cusp();
    GaussianRatMatrix a = random_sl3(g), b = random_sl3(g);
    CHECK(f.substitute(a).substitute(b) == f.substitute(a * b));
    GVector p = pt(1, 2, -1);
    CHECK(f.substitute(a)(p) == f(mat_vec(a, p)));
}

TEST_CASE("local types") {
    PlaneSingularity t = local_type(tacnode(), pt(0, 0, 1));
    CHECK(t.type == SingularityType::A3OrWorse);
    CHECK(t.a_index == 3);
    CHECK(local_type(cusp(), pt(0, 0, 1)).type == SingularityType::A2);
    auto sp = singular_points(three_nodes());
    CHECK(sp.size() == 3);
    for (const auto& p : sp) CHECK(local_type(three_nodes(), p).type == SingularityType::A1);
    CHECK(singular_points(fermat()).empty());
    CHECK(local_type(make_quartic({{{3, 1, 0}, gr(1)}, {{1, 3, 0}, gr(-1)}}), pt(0, 0, 1)).type == SingularityType::TriplePoint);
}

TEST_CASE("non-reduced quartics are rejected where a reduced curve is required") {
    TernaryQuartic dbl = conic_pair(gr(1), gr(1));
    CHECK_FALSE(is_reduced(dbl));
    CHECK_THROWS_AS(singular_points(dbl), NonReducedError);
    CHECK(is_reduced(fermat()));
}

TEST_CASE("stability of the fixtures") {
    CHECK(classify_stability(fermat()).cls == StabilityClass::Stable);
    StabilityVerdict c = classify_stability(cusp());
    CHECK(c.cls == StabilityClass::Stable);
    CHECK(classify_stability(three_nodes()).cls == StabilityClass::Stable);
    CHECK(classify_stability(tacnode()).cls == StabilityClass::StrictlySemistable);
    CHECK(classify_stability(conic_pair(gr(2), gr(1))).cls == StabilityClass::StrictlySemistable);
    StabilityVerdict d = classify_stability(conic_pair(gr(1), gr(1)));
    CHECK(d.cls == StabilityClass::StrictlySemistable);
    CHECK_FALSE(d.reduced);
    for (const auto& f : {make_quartic({{{4, 0, 0}, gr(1)}}), make_quartic({{{3, 1, 0}, gr(1)}}),
                          make_quartic({{{2, 2, 0}, gr(1)}, {{2, 0, 2}, gr(1)}}),
                          make_quartic({{{2, 0, 2}, gr(1)}, {{0, 3, 1}, gr(-1)}}),
                          make_quartic({{{3, 1, 0}, gr(1)}, {{1, 3, 0}, gr(-1)}})}) {
        StabilityVerdict v = classify_stability(f);
        CHECK(v.cls == StabilityClass::Unstable);
        REQUIRE(v.witness.has_value());
        CHECK(hilbert_mumford(f, v.witness->frame, v.witness->weights) == v.witness->mu);
        CHECK(v.witness->mu > 0);
    }
}

TEST_CASE("Hilbert-Mumford input validation") {
    GaussianRatMatrix id = GaussianRatMatrix::identity(3);
    CHECK(hilbert_mumford(make_quartic({{{4, 0, 0}, gr(1)}}), id, {2, -1, -1}) == 8);
    CHECK_THROWS(hilbert_mumford(fermat(), id, {1, 1, 1}));
    CHECK_THROWS(hilbert_mumford(fermat(), id, {0, 0, 0}));
    CHECK_THROWS(hilbert_mumford(fermat(), GaussianRatMatrix(3, 3), {1, 0, -1}));
}

TEST_CASE("closed orbit normal forms") {
    auto nf = closed_orbit_normal_form(conic_pair(gr(2), gr(1)));
    REQUIRE(nf);
    CHECK(nf->s == gr(1));
    CHECK(nf->t == gr(1, 2));
    nf = closed_orbit_normal_form(conic_pair(gr(1), gr(3)));
    REQUIRE(nf);
    CHECK(nf->t == gr(1, 3));
    nf = closed_orbit_normal_form(conic_pair(gr(1), gr(1)));
    REQUIRE(nf);
    CHECK(nf->t == gr(1));
    nf = closed_orbit_normal_form(tacnode());
    REQUIRE(nf);
    CHECK(nf->t == gr(-1));
    CHECK_FALSE(closed_orbit_normal_form(fermat()).has_value());
}

TEST_CASE("property: verdicts and normal forms are frame independent") {
    std::mt19937 g(99);
    const std::vector<TernaryQuartic> fx{fermat(), cusp(), conic_pair(gr(3), gr(-2)), conic_pair(gr(1), gr(1)),
                                         make_quartic({{{3, 1, 0}, gr(1)}})};
    for (const auto& f : fx) {
        StabilityVerdict base = classify_stability(f);
        auto nf = base.cls == StabilityClass::StrictlySemistable ? closed_orbit_normal_form(f) : std::nullopt;
        for (int k = 0; k < 6; ++k) {
            TernaryQuartic h = f.substitute(random_sl3(g));
            CHECK(classify_stability(h).cls == base.cls);
            if (nf) {
                auto other = closed_orbit_normal_form(h);
                REQUIRE(other);
                CHECK(other->t == nf->t);
            }
        }
    }
}

TEST_CASE("scalar grading residue") {
    for (long long k = 0; k <= 30; ++k) CHECK((scalar_grading_residue(k).residue == 0) == (k % 3 == 0));
    CHECK(scalar_grading_residue(4).residue == 1);
    CHECK(scalar_grading_residue(5).residue == 2);
    CHECK_THROWS(scalar_grading_residue(-1));
}
