#pragma once

#include "gaussian.hpp"
#include "report.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace quartlat {

// Virtual character of mu4: multiplicities of (1, chi, chi^2, chi^3).
struct Character4 {
    std::array<long long, 4> c{0, 0, 0, 0};

    long long at_identity() const { return c[0] + c[1] + c[2] + c[3]; }
    // value at the generator i
    GaussianInt at_i() const { return GaussianInt(Int(c[0] - c[2]), Int(c[1] - c[3])); }
    // value at i^k
    GaussianInt at_power(int k) const {
        static const GaussianInt powers[4] = {GaussianInt(1), GaussianInt(0, 1), GaussianInt(-1), GaussianInt(0, -1)};
        GaussianInt s;
        for (int j = 0; j < 4; ++j) s += GaussianInt(Int(c[j])) * powers[((j * k) % 4 + 4) % 4];
        return s;
    }
    bool self_conjugate() const { return c[1] == c[3]; }

    friend Character4 operator+(const Character4& a, const Character4& b) {
        return {{a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2], a.c[3] + b.c[3]}};
    }
    friend bool operator==(const Character4& a, const Character4& b) { return a.c == b.c; }
};

struct SingularityProfile {
    long long a1 = 0;  // nodes
    long long a2 = 0;  // cusps

    SingularityProfile() = default;
    SingularityProfile(long long n, long long k) : a1(n), a2(k) {
        if (a1 < 0 || a2 < 0) throw std::invalid_argument("negative singularity count");
    }
    long long d() const { return a1 + 2 * a2; }
    bool admissible() const { return d() <= 7; }
};

inline long long euler_curve(const SingularityProfile& p) { return -4 + p.d(); }

inline long long euler_cover(const SingularityProfile& p) {
    long long e = 24 - 3 * p.d();
    // 4-fold cover totally ramified along the curve
    long long e_c = euler_curve(p);
    if (4 * (3 - e_c) + e_c != e) throw std::logic_error("cover Euler number mismatch");
    return e;
}

inline Character4 character_H2_singular(const SingularityProfile& p) {
    long long m = 7 - p.d();
    return {{1, m, m, m}};
}

inline Character4 character_H2_resolved(const SingularityProfile& p) {
    return {{1 + 3 * p.a1 + 4 * p.a2, 7 - p.a1 - 2 * p.a2, 7 - p.a1, 7 - p.a1 - 2 * p.a2}};
}

// contribution of the exceptional curves over the nodes and cusps
inline Character4 exceptional_character(const SingularityProfile& p) {
    return {{3 * p.a1 + 4 * p.a2, 0, 2 * p.a2, 0}};
}

// total cohomology character 3 + (7-d)(chi + chi^2 + chi^3)
inline Character4 total_cohomology_character(const SingularityProfile& p) {
    Character4 h = character_H2_singular(p);
    h.c[0] += 2;
    return h;
}

inline VerificationReport lefschetz_check(const SingularityProfile& p) {
    VerificationReport r;
    Character4 t = total_cohomology_character(p);
    const long long ec = euler_curve(p), es = euler_cover(p);
    for (int k = 0; k < 4; ++k) {
        GaussianInt v = t.at_power(k);
        long long want = k == 0 ? es : ec;
        nlohmann::json w{{"xi_power", k}, {"value", v.str()}, {"expected", want}};
        r.add(make_claim("lefschetz-" + std::to_string(k),
                         k == 0 ? "trace at 1 equals e(S) = 24-3d" : "trace at xi != 1 equals e(C) = -4+d",
                         v == GaussianInt(Int(want)), w));
    }
    Character4 res = character_H2_resolved(p);
    r.add(make_claim("resolved-dimension", "resolved H2 character has dimension 22", res.at_identity() == 22,
                     {{"dimension", res.at_identity()}}));
    r.add(make_claim("resolved-self-conjugate", "resolved character has c1 = c3", res.self_conjugate()));
    r.add(make_claim("exceptional-sum", "singular character plus exceptional part equals resolved character",
                     character_H2_singular(p) + exceptional_character(p) == res));
    return r;
}

}  // namespace quartlat
