#include <quartlat/io.hpp>
#include <quartlat/k3_character.hpp>
#include <quartlat/lemmas.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

using namespace quartlat;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt_seconds(double s) {
    std::ostringstream o;
    o.precision(3);
    o << s << "s";
    return o.str();
}

struct Hyperelliptic {
    MuFourK3Lattice k3;
    MinusPart mp;
    HyperellipticEnumeration en;
};

Hyperelliptic hyperelliptic_setup(long long bound) {
    Hyperelliptic h;
    h.k3 = construct(1).k3;
    h.mp = minus_part(h.k3);
    h.en = enumerate_hyperelliptic(h.k3, h.mp, Rat(bound));
    return h;
}

std::string failed_claims(const VerificationReport& r) {
    std::string s;
    for (const auto& c : r.claims)
        if (!c.ok()) s += (s.empty() ? "" : ",") + c.name;
    return s;
}

Outcome c1() {
    auto t0 = Clock::now();
    VerificationReport r = check_hstrata_obstruction();
    double dt = seconds_since(t0);
    const Claim* order = r.find("order");
    bool ok = r.all_verified() && order && order->witness.at("order") == 64 && dt < 1.0;
    return {ok, "64 classes, -1/4 not represented, <-2> control represents it; failed=[" + failed_claims(r) + "] " + fmt_seconds(dt)};
}

Outcome c2() {
    auto t0 = Clock::now();
    HermitianLattice h = heckman_lattice();
    Signature hs = hermitian_signature(h);
    TraceLattice t = trace_lattice(h);
    Signature ts = signature(t.lattice);
    Int det = abs_int(t.lattice.determinant());
    double dt = seconds_since(t0);
    bool ok = hs == Signature{1, 6, 0} && t.lattice.even() && ts == Signature{2, 12, 0} && det == 256 && dt < 1.0;
    return {ok, "hermitian " + hs.str() + ", trace even=" + std::to_string(t.lattice.even()) + " " + ts.str() + " |det|=" +
                    det.str() + " " + fmt_seconds(dt)};
}

Outcome c3() {
    auto t0 = Clock::now();
    Construction c = construct();
    VerificationReport r = verify_invariants(c.k3, 20);
    double dt = seconds_since(t0);
    bool ok = r.all_verified() && dt < 60.0;
    return {ok, std::to_string(r.claims.size()) + " invariant claims, failed=[" + failed_claims(r) + "], glue maps " +
                    std::to_string(c.glue_maps) + (c.glue_maps_capped ? "+" : "") + " " + fmt_seconds(dt)};
}

Outcome c4() {
    auto t0 = Clock::now();
    Hyperelliptic h = hyperelliptic_setup(4);
    const std::vector<std::string> required{"sum", "alpha-norm", "beta-norm", "hermitian-norm", "summand", "primitive"};
    std::map<std::string, std::size_t> failures;
    for (const auto& eps : h.en.vectors) {
        Decomposition d = decompose_hyperelliptic(h.k3, h.mp, eps);
        for (const auto& name : required) {
            const Claim* c = d.checks.find(name);
            if (!c || !c->ok()) ++failures[name];
        }
    }
    double dt = seconds_since(t0);
    std::string f;
    for (auto& [k, v] : failures) f += (f.empty() ? "" : ",") + k + ":" + std::to_string(v);
    bool ok = !h.en.vectors.empty() && failures.empty() && dt < 120.0;
    return {ok, std::to_string(h.en.vectors.size()) + " vectors, failures [" + f + "] " + fmt_seconds(dt)};
}

Outcome c5() {
    auto t0 = Clock::now();
    Hyperelliptic h = hyperelliptic_setup(4);
    const auto& vs = h.en.vectors;
    std::size_t qualifying = 0, exceptions = 0;
    std::map<std::string, std::size_t> products;
    for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b) {
            RigidCheck rc = check_rigid(h.k3, vs[a], vs[b]);
            if (!rc.hypothesis) continue;
            ++qualifying;
            ++products[rc.product.str()];
            if (rc.product != 1) ++exceptions;
        }
    double dt = seconds_since(t0);
    std::string p;
    for (auto& [k, v] : products) p += (p.empty() ? "" : ",") + k + ":" + std::to_string(v);
    bool ok = qualifying > 0 && exceptions == 0;
    return {ok, std::to_string(qualifying) + " qualifying pairs, products {" + p + "}, exceptions " + std::to_string(exceptions) +
                    " " + fmt_seconds(dt)};
}

Outcome c6() {
    auto t0 = Clock::now();
    Hyperelliptic h = hyperelliptic_setup(4);
    std::size_t bad = 0;
    for (const auto& eps : h.en.vectors) {
        Decomposition d = decompose_hyperelliptic(h.k3, h.mp, eps);
        ComplementGenus g = hyperelliptic_complement_genus(h.k3, h.mp, d.hv);
        if (!g.checks.all_verified() || g.signature != Signature{2, 10, 0}) ++bad;
    }
    double dt = seconds_since(t0);
    bool ok = !h.en.vectors.empty() && bad == 0;
    return {ok, std::to_string(h.en.vectors.size()) + " complements, " + std::to_string(bad) + " mismatches " + fmt_seconds(dt)};
}

Outcome c7() {
    auto t0 = Clock::now();
    std::size_t profiles = 0, bad = 0;
    for (long long a1 = 0; a1 <= 7; ++a1)
        for (long long a2 = 0; a2 <= 3; ++a2) {
            SingularityProfile p(a1, a2);
            if (!p.admissible()) continue;
            ++profiles;
            VerificationReport r = lefschetz_check(p);
            if (!r.all_verified() || character_H2_resolved(p).at_identity() != 22) ++bad;
        }
    double dt = seconds_since(t0);
    return {bad == 0 && profiles > 0 && dt < 1.0,
            std::to_string(profiles) + " profiles, " + std::to_string(bad) + " failures " + fmt_seconds(dt)};
}

GaussianRat gr(long long n, long long d = 1) { return GaussianRat(Rat(n, d)); }

TernaryQuartic conic_pair(const GaussianRat& s, const GaussianRat& t) {
    TernaryForm c(2), d(2);
    c.set({0, 1, 1}, gr(1));
    c.set({2, 0, 0}, gr(-1));
    d.set({0, 1, 1}, s);
    d.set({2, 0, 0}, -t);
    return c * d;
}

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

Outcome c8() {
    auto t0 = Clock::now();
    struct Fixture {
        std::string name;
        TernaryQuartic f;
        StabilityClass expected;
    };
    std::vector<Fixture> fx;
    fx.push_back({"fermat", make_quartic({{{4, 0, 0}, gr(1)}, {{0, 4, 0}, gr(1)}, {{0, 0, 4}, gr(1)}}), StabilityClass::Stable});
    const std::vector<std::pair<GaussianRat, GaussianRat>> st{
        {gr(2), gr(1)},  {gr(1), gr(3)},  {gr(1), gr(-1)}, {gr(3), gr(2)},         {gr(1), GaussianRat(Rat(0), Rat(1))},
        {gr(2), gr(-3)}, {gr(5), gr(7)},  {gr(1), gr(-2)}, {gr(4), GaussianRat(Rat(1), Rat(1))}, {gr(1, 2), gr(3, 4)}};
    for (const auto& [s, t] : st)
        fx.push_back({"family(" + s.str() + "," + t.str() + ")", conic_pair(s, t), StabilityClass::StrictlySemistable});
    fx.push_back({"double-conic", conic_pair(gr(1), gr(1)), StabilityClass::StrictlySemistable});
    fx.push_back({"Z0^4", make_quartic({{{4, 0, 0}, gr(1)}}), StabilityClass::Unstable});
    fx.push_back({"Z0^3Z1", make_quartic({{{3, 1, 0}, gr(1)}}), StabilityClass::Unstable});
    fx.push_back({"Z0^2(Z1^2+Z2^2)", make_quartic({{{2, 2, 0}, gr(1)}, {{2, 0, 2}, gr(1)}}), StabilityClass::Unstable});
    fx.push_back({"Z0^2(Z1^2+Z1Z2+3Z2^2)", make_quartic({{{2, 2, 0}, gr(1)}, {{2, 1, 1}, gr(1)}, {{2, 0, 2}, gr(3)}}),
                  StabilityClass::Unstable});

    std::mt19937 g(20240611);
    const int frames = 50;
    std::size_t wrong = 0, unverified = 0, mismatches = 0, runs = 0;
    std::string first;
    for (const auto& x : fx) {
        StabilityVerdict v = classify_stability(x.f);
        ++runs;
        if (v.cls != x.expected) {
            ++wrong;
            if (first.empty()) first = x.name + " -> " + stability_name(v.cls);
        }
        if (x.expected == StabilityClass::Unstable && (!v.witness || hilbert_mumford(x.f, v.witness->frame, v.witness->weights) <= 0))
            ++unverified;
        for (int k = 0; k < frames; ++k) {
            TernaryQuartic moved = x.f.substitute(random_sl3(g));
            StabilityVerdict w = classify_stability(moved);
            ++runs;
            if (w.cls != v.cls) {
                ++mismatches;
                if (first.empty()) first = x.name + " frame " + std::to_string(k) + " -> " + stability_name(w.cls);
            }
            if (w.cls == StabilityClass::Unstable && (!w.witness || hilbert_mumford(moved, w.witness->frame, w.witness->weights) <= 0))
                ++unverified;
        }
    }
    double dt = seconds_since(t0);
    bool ok = wrong == 0 && unverified == 0 && mismatches == 0 && dt < 120.0;
    std::string d = std::to_string(fx.size()) + " fixtures x " + std::to_string(frames) + " frames (" + std::to_string(runs) +
                    " classifications): wrong " + std::to_string(wrong) + ", unverified witnesses " + std::to_string(unverified) +
                    ", frame mismatches " + std::to_string(mismatches) + " " + fmt_seconds(dt);
    if (!first.empty()) d += " first: " + first;
    return {ok, d};
}

Outcome c9() {
    auto t0 = Clock::now();
    Hyperelliptic h = hyperelliptic_setup(4);
    auto md = hyperelliptic_models(h.k3, h.mp, h.en.vectors);
    if (!md) return {false, "no model from the enumeration"};
    ContractionResult cr = contraction_hypothesis(md->pair);
    StratumPoset s = strata_of_extension(md->single, Extension::Arrangement, true);
    std::size_t boundary = boundary_strata(s);
    double dt = seconds_since(t0);
    bool ok = cr.holds && boundary == 2 && dt < 5.0;
    return {ok, std::string("contraction ") + (cr.holds ? "true" : "false") + ", boundary strata " + std::to_string(boundary) + " " +
                    fmt_seconds(dt)};
}

Outcome c10() {
    std::size_t bad = 0;
    for (long long k = 0; k <= 30; ++k)
        if ((scalar_grading_residue(k).residue == 0) != (k % 3 == 0)) ++bad;
    return {bad == 0, "k = 0..30, " + std::to_string(bad) + " mismatches"};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    int only = 0;
    app.add_option("--criterion", only, "run one criterion (1-10)")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::function<Outcome()>> all{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
    bool failed = false;
    for (int i = 1; i <= 10; ++i) {
        if (only && i != only) continue;
        Outcome o;
        try {
            o = all[i - 1]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << "criterion " << i << ": " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail << std::endl;
        failed |= !o.pass;
    }
    return failed ? 1 : 0;
}
