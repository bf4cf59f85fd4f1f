#include <quartlat/io.hpp>

#include <doctest.h>

using namespace quartlat;

namespace {

GaussianRat gr(long long n) { return GaussianRat(Rat(n)); }
GVector v3(long long a, long long b, long long c) { return GVector{gr(a), gr(b), gr(c)}; }

GaussianRatMatrix diag(long long a, long long b, long long c) {
    GaussianRatMatrix g(3, 3);
    g(0, 0) = gr(a);
    g(1, 1) = gr(b);
    g(2, 2) = gr(c);
    return g;
}

// <1> + <-1> + <-1>, one hyperplane e2^perp and the isotropic line through (1,1,0) inside it
ArrangementModel toy() { return ArrangementModel{diag(1, -1, -1), {v3(0, 0, 1)}, {v3(1, 1, 0)}}; }

}  // namespace

TEST_CASE("subspace algebra") {
    Subspace a(3, {v3(1, 0, 0), v3(0, 1, 0)}), b(3, {v3(0, 1, 0), v3(0, 0, 1)});
    Subspace c = intersect(a, b);
    CHECK(c.dim() == 1);
    CHECK(c.contains(v3(0, 5, 0)));
    CHECK(Subspace::whole(3).contains(a));
    CHECK(Subspace(3, {v3(2, 0, 0), v3(1, 1, 0)}) == a);
}

TEST_CASE("model validation") {
    CHECK_NOTHROW(toy().validate());
    CHECK_THROWS(ArrangementModel{diag(1, 1, -1), {}, {}}.validate());
    CHECK_THROWS(ArrangementModel{diag(1, -1, -1), {v3(1, 0, 0)}, {}}.validate());
    CHECK_THROWS(ArrangementModel{diag(1, -1, -1), {}, {v3(1, 0, 0)}}.validate());
    CHECK_THROWS(ArrangementModel{diag(1, -1, -1), {}, {v3(1, 1, 0), v3(2, 2, 0)}}.validate());
}

TEST_CASE("contraction hypothesis") {
    ArrangementModel meet{diag(1, -1, -1), {v3(0, 1, 0), v3(0, 0, 1)}, {}};
    ContractionResult r = contraction_hypothesis(meet);
    CHECK_FALSE(r.holds);
    REQUIRE(r.offending);
    CHECK(r.offending->first == 0);
    CHECK(r.offending->second == 1);
    ArrangementModel apart{diag(1, -1, -1), {v3(0, 1, 0), v3(1, 2, 0)}, {}};
    CHECK(contraction_hypothesis(apart).holds);
}

TEST_CASE("intersection poset") {
    StratumPoset p = intersection_poset(toy());
    REQUIRE(p.nodes.size() == 2);
    CHECK(p.nodes[0].label == "V");
    CHECK(p.nodes[1].label == "H1");
    CHECK(p.nodes[1].space.dim() == 2);
    CHECK(p.edges.size() == 1);
}

TEST_CASE("extension strata") {
    ArrangementModel m = toy();
    CHECK(isotropic_trace(m, 0).dim() == 1);
    CHECK(boundary_strata(strata_of_extension(m, Extension::Arrangement, true)) == 2);
    CHECK(boundary_strata(strata_of_extension(m, Extension::Arrangement, false)) == 3);
    CHECK(boundary_strata(strata_of_extension(m, Extension::BailyBorel, true)) == 1);
    CHECK(boundary_strata(strata_of_extension(m, Extension::ArrangementLiteral, true)) == 3);
    CHECK(pairs_LI(m).size() == 2);
}

TEST_CASE("isotropic local model and meromorphy codimension") {
    ArrangementModel m = toy();
    IsotropicLocalModel lm = isotropic_local_model(m, 0);
    CHECK(lm.members == std::vector<std::size_t>{0});
    CHECK(lm.classes.size() == 1);
    CHECK(lm.trace.dim() == 1);
    CHECK(lm.finite);
    CHECK_THROWS(isotropic_local_model(m, 1));
    MeromCodimension mc = merom_codimension(m);
    CHECK(mc.minimum == 1);
    CHECK_FALSE(mc.exceeds_one);
    CHECK_THROWS(merom_codimension(ArrangementModel{diag(1, -1, -1), {}, {}}));
}

TEST_CASE("quartic models from the period lattice") {
    ArrangementModel pair = model_from_json(read_json_file(QUARTLAT_DATA_DIR "/quartic_pair_model.json"));
    ArrangementModel single = model_from_json(read_json_file(QUARTLAT_DATA_DIR "/quartic_single_model.json"));
    CHECK(pair.dim() == 7);
    CHECK(pair.hyperplanes.size() == 2);
    CHECK(contraction_hypothesis(pair).holds);
    CHECK(boundary_strata(strata_of_extension(single, Extension::Arrangement, true)) == 2);
    CHECK(isotropic_local_model(single, 0).lifted == 1);
    CHECK(merom_codimension(single).minimum == 5);
}
