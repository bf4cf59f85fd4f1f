#pragma once

#include "period.hpp"
#include "report.hpp"

#include <map>
#include <string>
#include <vector>

namespace quartlat {

namespace detail {

// folds per-vector claims of one name into a single claim with pass/fail counts and the first failure
struct ClaimTally {
    std::string anchor;
    std::size_t passed = 0, failed = 0;
    nlohmann::json first_failure;
};

inline void tally(std::map<std::string, ClaimTally>& t, std::vector<std::string>& order, const VerificationReport& r,
                  const IntVector& eps, const std::string& prefix) {
    for (const auto& c : r.claims) {
        std::string key = prefix + c.name;
        auto it = t.find(key);
        if (it == t.end()) {
            order.push_back(key);
            it = t.emplace(key, ClaimTally{c.anchor, 0, 0, nullptr}).first;
        }
        if (c.ok()) {
            ++it->second.passed;
        } else {
            if (it->second.failed++ == 0) it->second.first_failure = {{"eps", json_vec(eps)}, {"witness", c.witness}};
        }
    }
}

inline void flush(VerificationReport& out, const std::map<std::string, ClaimTally>& t, const std::vector<std::string>& order) {
    for (const auto& key : order) {
        const auto& c = t.at(key);
        nlohmann::json w{{"passed", c.passed}, {"failed", c.failed}};
        if (c.failed) w["first_failure"] = c.first_failure;
        out.add(make_claim(key, "for every enumerated eps: " + c.anchor, c.failed == 0, w));
    }
}

}  // namespace detail

struct LemmaRun {
    VerificationReport report;
    HyperellipticEnumeration enumeration;
    std::size_t qualifying_pairs = 0;
};

// Bundle invariants, discriminant obstruction, hyperelliptic enumeration, decomposition, rigidity and complement genus up to the bound.
inline LemmaRun verify_lemmas(const MuFourK3Lattice& m, long long bound, long long fixed_search_bound = 20) {
    LemmaRun run;
    VerificationReport& r = run.report;
    r.append(verify_invariants(m, fixed_search_bound));
    r.append(check_hstrata_obstruction());
    if (r.any_refuted()) return run;
    if (bound <= 0) {
        for (const char* name : {"enumeration", "decomposition", "rigid", "complement-genus"})
            r.add(incomplete_claim(name, "hyperelliptic checks need a positive enumeration bound", bound));
        return run;
    }
    MinusPart mp;
    try {
        mp = minus_part(m);
    } catch (const std::exception& e) {
        r.add(make_claim("minus-part", "rho restricted to ker(rho^2 + 1) is a complex structure", false, {{"error", e.what()}}));
        return run;
    }
    try {
        run.enumeration = enumerate_hyperelliptic(m, mp, Rat(bound));
    } catch (const std::exception& e) {
        r.add(make_claim("enumeration", "hyperelliptic vectors can be enumerated", false, {{"error", e.what()}}));
        return run;
    }
    const auto& vs = run.enumeration.vectors;
    r.add(make_claim("enumeration", "the set of hyperelliptic vectors within the bound is nonempty", !vs.empty(),
                     {{"bound", bound},
                      {"found", vs.size()},
                      {"visited", run.enumeration.visited},
                      {"isotropic", run.enumeration.isotropic},
                      {"not_hyperbolic", run.enumeration.not_hyperbolic}}));

    std::map<std::string, detail::ClaimTally> t;
    std::vector<std::string> order;
    for (const auto& eps : vs) {
        Decomposition d = decompose_hyperelliptic(m, mp, eps);
        detail::tally(t, order, d.checks, eps, "decomposition/");
        ComplementGenus g = hyperelliptic_complement_genus(m, mp, d.hv);
        detail::tally(t, order, g.checks, eps, "");
    }
    detail::flush(r, t, order);

    std::map<long long, std::size_t> products;
    nlohmann::json first_bad;
    std::size_t bad = 0;
    for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b) {
            RigidCheck rc = check_rigid(m, vs[a], vs[b]);
            if (!rc.hypothesis) continue;
            ++run.qualifying_pairs;
            ++products[static_cast<long long>(rc.product)];
            if (rc.product != 1 && bad++ == 0) first_bad = {{"eps1", json_vec(vs[a])}, {"eps2", json_vec(vs[b])}, {"product", json_int(rc.product)}};
        }
    nlohmann::json pw = nlohmann::json::object();
    for (auto [p, c] : products) pw[std::to_string(p)] = c;
    nlohmann::json w{{"qualifying_pairs", run.qualifying_pairs}, {"products", pw}, {"exceptions", bad}};
    if (bad) w["first_exception"] = first_bad;
    r.add(make_claim("rigid", "distinct hyperelliptic eps1, eps2 with hyperbolic joint orbit span satisfy eps1.eps2 = 1",
                     bad == 0, w));
    return run;
}

}  // namespace quartlat
