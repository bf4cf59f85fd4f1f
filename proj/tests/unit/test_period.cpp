#include <quartlat/lemmas.hpp>

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace quartlat;

namespace {

struct Fixture {
    Construction c = construct(16);
    MinusPart mp = minus_part(c.k3);
    HyperellipticEnumeration en = enumerate_hyperelliptic(c.k3, mp, Rat(4));
};

const Fixture& fixture() {
    static const Fixture f;
    return f;
}

}  // namespace

TEST_CASE("positive part involution") {
    PositivePart p = positive_part();
    CHECK(p.lattice.norm(p.eta) == 4);
    CHECK(p.rho * p.eta == p.eta);
    CHECK(p.rho * p.rho == IntMatrix::identity(8));
    CHECK(is_isometry(p.lattice, p.rho));
    CHECK(trace(p.rho) == -6);
    CHECK_THROWS(reflection_through(make_standard("<5,-1>"), IntVector{1, 1}));
    CHECK_THROWS(reflection_through(make_standard("U"), IntVector{1, 0}));
}

TEST_CASE("constructed period lattice satisfies every invariant") {
    const auto& f = fixture();
    VerificationReport r = verify_invariants(f.c.k3, 8);
    for (const auto& c : r.claims) {
        INFO(c.name);
        CHECK(c.ok());
    }
    CHECK(f.c.glue_maps >= 1);
    CHECK(f.c.plus_embedding.rows() == 8);
    CHECK(f.c.minus_embedding.rows() == 14);
    IntegerLattice plus = induced_lattice(f.c.k3.lattice, f.c.plus_embedding);
    CHECK(plus.gram() == positive_part().lattice.gram());
}

TEST_CASE("tampered rho is refuted") {
    MuFourK3Lattice m = fixture().c.k3;
    m.rho(0, 0) += 1;
    VerificationReport r = verify_invariants(m, 4);
    CHECK(r.any_refuted());
    REQUIRE(r.find("rho-isometry"));
    CHECK_FALSE(r.find("rho-isometry")->ok());
    LemmaRun run = verify_lemmas(m, 4, 4);
    CHECK(run.report.any_refuted());
}

TEST_CASE("bound zero yields incomplete claims carrying the bound") {
    LemmaRun run = verify_lemmas(fixture().c.k3, 0, 4);
    std::size_t incomplete = 0;
    for (const auto& c : run.report.claims)
        if (c.status == ClaimStatus::Incomplete) {
            ++incomplete;
            REQUIRE(c.bound.has_value());
            CHECK(*c.bound == 0);
        }
    CHECK(incomplete == 4);
    CHECK_FALSE(run.report.any_refuted());
}

TEST_CASE("discriminant obstruction") {
    VerificationReport r = check_hstrata_obstruction();
    CHECK(r.all_verified());
    CHECK(r.find("not-represented")->witness.at("table").size() == 64);
}

TEST_CASE("hyperelliptic enumeration") {
    const auto& f = fixture();
    const auto& vs = f.en.vectors;
    const auto& l = f.c.k3.lattice;
    REQUIRE_FALSE(vs.empty());
    CHECK(vs.size() == 192);
    CHECK(std::is_sorted(vs.begin(), vs.end()));
    CHECK(std::adjacent_find(vs.begin(), vs.end()) == vs.end());
    std::set<IntVector> set(vs.begin(), vs.end());
    for (const auto& e : vs) {
        CHECK(l.norm(e) == 0);
        CHECK(l.inner(e, f.c.k3.eta) == 2);
        CHECK(detail::content(e) == 1);
        CHECK(f.c.k3.rho * (f.c.k3.rho * e) != e);
        CHECK(set.count(f.c.k3.rho * e) == 1);
        CHECK(is_hyperelliptic_candidate(f.c.k3, e));
    }
    CHECK(enumerate_hyperelliptic(f.c.k3, f.mp, Rat(0)).vectors.empty());
}

TEST_CASE("decomposition structure") {
    const auto& f = fixture();
    const auto& l = f.c.k3.lattice;
    for (std::size_t i = 0; i < f.en.vectors.size(); i += 17) {
        Decomposition d = decompose_hyperelliptic(f.c.k3, f.mp, f.en.vectors[i]);
        CHECK(d.checks.find("sum")->ok());
        CHECK(d.checks.find("alpha-anti")->ok());
        CHECK(d.checks.find("beta-anti")->ok());
        CHECK(d.checks.find("primitive")->ok());
        // eta is characteristic in the halved rho^2-fixed lattice, so eps.rho^2(eps) is even
        Int p = l.inner(d.hv.eps, f.c.k3.rho * (f.c.k3.rho * d.hv.eps));
        CHECK(p % 2 == 0);
        CHECK(l.norm(d.hv.alpha) == -2 * p);
    }
    CHECK_THROWS(decompose_hyperelliptic(f.c.k3, f.mp, IntVector(22, 0)));
}

TEST_CASE("complement genus") {
    const auto& f = fixture();
    for (std::size_t i = 0; i < f.en.vectors.size(); i += 31) {
        Decomposition d = decompose_hyperelliptic(f.c.k3, f.mp, f.en.vectors[i]);
        ComplementGenus g = hyperelliptic_complement_genus(f.c.k3, f.mp, d.hv);
        CHECK(g.signature == Signature{2, 10, 0});
        CHECK(g.checks.all_verified());
    }
}

TEST_CASE("rigid check bookkeeping") {
    const auto& f = fixture();
    RigidCheck same = check_rigid(f.c.k3, f.en.vectors[0], f.en.vectors[0]);
    CHECK_FALSE(same.distinct);
    CHECK_FALSE(same.hypothesis);
    std::size_t qualifying = 0;
    for (std::size_t b = 1; b < f.en.vectors.size(); ++b) {
        RigidCheck rc = check_rigid(f.c.k3, f.en.vectors[0], f.en.vectors[b]);
        CHECK(rc.distinct);
        if (rc.hypothesis) {
            ++qualifying;
            CHECK(rc.product >= 1);
        }
    }
    CHECK(qualifying > 0);
}
