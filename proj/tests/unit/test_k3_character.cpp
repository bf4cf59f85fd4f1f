#include <quartlat/k3_character.hpp>

#include <doctest.h>

using namespace quartlat;

TEST_CASE("smooth quartic") {
    SingularityProfile p(0, 0);
    CHECK(euler_curve(p) == -4);
    CHECK(euler_cover(p) == 24);
    CHECK(character_H2_singular(p) == Character4{{1, 7, 7, 7}});
    CHECK(character_H2_resolved(p).at_identity() == 22);
    CHECK(character_H2_singular(p).at_i() == GaussianInt(-6));
    CHECK(lefschetz_check(p).all_verified());
}

TEST_CASE("tabled profiles") {
    SingularityProfile node(1, 0);
    CHECK(euler_cover(node) == 21);
    CHECK(character_H2_resolved(node) == Character4{{4, 6, 6, 6}});
    SingularityProfile cusp(0, 1);
    CHECK(cusp.d() == 2);
    CHECK(euler_cover(cusp) == 18);
    CHECK(character_H2_resolved(cusp) == Character4{{5, 5, 7, 5}});
    CHECK(exceptional_character(cusp) == Character4{{4, 0, 2, 0}});
    SingularityProfile seven(7, 0);
    CHECK(character_H2_singular(seven) == Character4{{1, 0, 0, 0}});
    CHECK(character_H2_resolved(seven) == Character4{{22, 0, 0, 0}});
    SingularityProfile mixed(1, 3);
    CHECK(mixed.admissible());
    CHECK(character_H2_resolved(mixed) == Character4{{16, 0, 6, 0}});
}

TEST_CASE("exhaustive Lefschetz identity for d <= 7") {
    int n = 0;
    for (long long a1 = 0; a1 <= 7; ++a1)
        for (long long a2 = 0; a2 <= 3; ++a2) {
            SingularityProfile p(a1, a2);
            if (!p.admissible()) continue;
            ++n;
            VerificationReport r = lefschetz_check(p);
            CHECK(r.all_verified());
            CHECK(character_H2_resolved(p).self_conjugate());
            CHECK(character_H2_singular(p).at_identity() + 3 * p.d() == 22);
        }
    CHECK(n == 20);
}

TEST_CASE("character evaluation") {
    Character4 c{{1, 2, 3, 4}};
    CHECK(c.at_power(0) == GaussianInt(10));
    CHECK(c.at_power(1) == c.at_i());
    CHECK(c.at_power(1) == GaussianInt(-2, -2));
    CHECK(c.at_power(2) == GaussianInt(-2));
    CHECK(c.at_power(3) == GaussianInt(-2, 2));
    CHECK_FALSE(c.self_conjugate());
}

TEST_CASE("profile validation") {
    CHECK_THROWS_AS(SingularityProfile(-1, 0), std::invalid_argument);
    CHECK_FALSE(SingularityProfile(8, 0).admissible());
    CHECK_FALSE(SingularityProfile(2, 3).admissible());
}
