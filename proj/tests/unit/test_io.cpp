#include <quartlat/io.hpp>

#include <doctest.h>

#include <filesystem>

using namespace quartlat;

namespace {

nlohmann::json parse(const char* s) { return nlohmann::json::parse(s); }

std::string data(const char* name) { return std::string(QUARTLAT_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("integers") {
    CHECK(parse_int(parse("12")) == 12);
    CHECK(parse_int(parse("\"-123456789012345678901234567890\"")) == Int("-123456789012345678901234567890"));
    CHECK_THROWS_AS(parse_int(parse("1.5")), FormatError);
    CHECK_THROWS_AS(parse_int(parse("\"1e3\"")), FormatError);
    CHECK_THROWS_AS(parse_int(parse("\"-\"")), FormatError);
    CHECK_THROWS_AS(parse_num_den(parse("1"), parse("0")), FormatError);
    CHECK(parse_rat_pair(parse("[6, -4]")) == Rat(-3, 2));
}

TEST_CASE("lattice round trip") {
    IntegerLattice e8 = make_standard("E8");
    nlohmann::json j = lattice_to_json(e8);
    CHECK(j.at("rank") == 8);
    IntegerLattice back = lattice_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back == e8);
    CHECK(back.label() == "E8");
    CHECK_THROWS_AS(lattice_from_json(parse(R"({"gram": [[2, 1.0], [1, 2]]})")), FormatError);
    CHECK_THROWS_AS(lattice_from_json(parse(R"({"gram": [[2, 1], [1]]})")), FormatError);
    CHECK_THROWS_AS(lattice_from_json(parse(R"({"gram": [[2, 1], [0, 2]]})")), FormatError);
    CHECK_THROWS_AS(lattice_from_json(parse(R"({"rank": 3, "gram": [[2]]})")), FormatError);
    CHECK(lattice_from_json(read_json_file(data("u.json"))) == make_standard("U"));
}

TEST_CASE("Hermitian round trip") {
    HermitianLattice h = heckman_lattice();
    CHECK(hermitian_from_json(nlohmann::json::parse(hermitian_to_json(h).dump())) == h);
    CHECK_THROWS_AS(hermitian_from_json(parse(R"({"gram": [[[-2,0],[1,1]],[[1,1],[-2,0]]]})")), FormatError);
}

TEST_CASE("finite quadratic form dump") {
    nlohmann::json j = fqf_to_json(discriminant_form(make_standard("<-2>")));
    CHECK(j.at("orders") == nlohmann::json::array({2}));
    REQUIRE(j.at("q").size() == 2);
    CHECK(j.at("q")[1].at("num") == 3);
    CHECK(j.at("q")[1].at("den") == 2);
}

TEST_CASE("bundle round trip") {
    Construction c = construct(1);
    MuFourK3Lattice back = bundle_from_json(nlohmann::json::parse(bundle_to_json(c.k3).dump()));
    CHECK(back.lattice == c.k3.lattice);
    CHECK(back.rho == c.k3.rho);
    CHECK(back.eta == c.k3.eta);
    CHECK(bundle_to_json(back).dump() == bundle_to_json(c.k3).dump());
    CHECK_THROWS_AS(bundle_from_json(parse(R"({"lattice": {"gram": [[2]]}, "rho": [[1]]})")), FormatError);
    CHECK_THROWS_AS(bundle_from_json(parse(R"({"lattice": {"gram": [[2]]}, "rho": [[1, 0]], "eta": [1]})")), FormatError);
}

TEST_CASE("quartic coefficient files") {
    TernaryQuartic f = quartic_from_json(read_json_file(data("family_2_1.json")));
    CHECK(f.coeff({0, 2, 2}) == GaussianRat(Rat(2)));
    CHECK(f.coeff({2, 1, 1}) == GaussianRat(Rat(-3)));
    CHECK(f.coeff({4, 0, 0}) == GaussianRat(Rat(1)));
    TernaryForm g(4);
    g.set({1, 2, 1}, GaussianRat(Rat(-3, 7), Rat(5, 2)));
    g.set({0, 0, 4}, GaussianRat(Rat(0), Rat(1)));
    CHECK(quartic_from_json(nlohmann::json::parse(quartic_to_json(g).dump())) == g);
    CHECK_THROWS_AS(quartic_from_json(parse(R"({"coeffs": [{"exp": [1, 1, 1], "re_num": 1}]})")), FormatError);
    CHECK_THROWS_AS(quartic_from_json(parse(R"({"coeffs": [{"exp": [4, 0, 0]}, {"exp": [4, 0, 0]}]})")), FormatError);
    CHECK_THROWS_AS(quartic_from_json(parse(R"({"coeffs": [{"exp": [4, 0, 0], "re_num": 1, "re_den": 0}]})")), FormatError);
    CHECK_THROWS_AS(quartic_from_json(parse(R"({"coefficients": []})")), FormatError);
}

TEST_CASE("model round trip") {
    ArrangementModel m = model_from_json(read_json_file(data("quartic_single_model.json")));
    ArrangementModel back = model_from_json(nlohmann::json::parse(model_to_json(m).dump()));
    CHECK(back.gram == m.gram);
    CHECK(back.hyperplanes == m.hyperplanes);
    CHECK(back.isotropics == m.isotropics);
    CHECK_THROWS_AS(model_from_json(read_json_file(data("fermat.json"))), FormatError);
    CHECK_THROWS_AS(model_from_json(parse(R"({"gram": [[[[1,1],[0,1]]]], "hyperplanes": [[[[1,1],[0,1]]]]})")), FormatError);
}

TEST_CASE("poset and verdict output") {
    ArrangementModel m = model_from_json(read_json_file(data("quartic_single_model.json")));
    nlohmann::json p = poset_to_json(strata_of_extension(m, Extension::Arrangement));
    CHECK(p.at("nodes").size() == 3);
    for (const auto& e : p.at("edges")) CHECK(e.size() == 2);
    StabilityVerdict v = classify_stability(quartic_from_json(read_json_file(data("z0_3_z1.json"))));
    nlohmann::json j = verdict_to_json(v);
    CHECK(j.at("class") == "unstable");
    CHECK(j.contains("witness"));
    CHECK(j.at("witness").at("mu").get<long long>() > 0);
}

TEST_CASE("file errors") {
    CHECK_THROWS_AS(read_json_file(data("does_not_exist.json")), IoError);
    auto path = (std::filesystem::temp_directory_path() / "quartlat_test_bad.json").string();
    write_text_file(path, "{ not json");
    CHECK_THROWS_AS(read_json_file(path), FormatError);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(write_text_file("/nonexistent-dir/x.json", "{}"), IoError);
}
