#pragma once

#include "matrix.hpp"

#include <json.hpp>

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace quartlat {

inline nlohmann::json json_int(const Int& a) {
    if (a >= std::numeric_limits<long long>::min() && a <= std::numeric_limits<long long>::max())
        return static_cast<long long>(a);
    return a.str();
}

inline nlohmann::json json_rat(const Rat& r) {
    if (denom(r) == 1) return json_int(numer(r));
    return to_string(r);
}

inline nlohmann::json json_vec(const IntVector& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : v) a.push_back(json_int(x));
    return a;
}

inline nlohmann::json json_mat(const IntMatrix& m) {
    nlohmann::json a = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(json_vec(m.row(i)));
    return a;
}

enum class ClaimStatus { Verified, Refuted, Incomplete };

inline const char* status_name(ClaimStatus s) {
    switch (s) {
        case ClaimStatus::Verified: return "verified";
        case ClaimStatus::Refuted: return "refuted";
        case ClaimStatus::Incomplete: return "incomplete";
    }
    return "?";
}

struct Claim {
    std::string name;
    std::string anchor;  // the mathematical statement being checked
    ClaimStatus status = ClaimStatus::Incomplete;
    nlohmann::json witness = nlohmann::json::object();
    std::optional<long long> bound;  // required for incomplete claims

    bool ok() const { return status == ClaimStatus::Verified; }
};

inline Claim make_claim(std::string name, std::string anchor, bool holds, nlohmann::json witness = nlohmann::json::object()) {
    return {std::move(name), std::move(anchor), holds ? ClaimStatus::Verified : ClaimStatus::Refuted, std::move(witness), {}};
}

inline Claim incomplete_claim(std::string name, std::string anchor, long long bound,
                              nlohmann::json witness = nlohmann::json::object()) {
    return {std::move(name), std::move(anchor), ClaimStatus::Incomplete, std::move(witness), bound};
}

struct VerificationReport {
    std::vector<Claim> claims;

    void add(Claim c) { claims.push_back(std::move(c)); }
    void append(const VerificationReport& o) { claims.insert(claims.end(), o.claims.begin(), o.claims.end()); }

    bool any_refuted() const {
        for (const auto& c : claims)
            if (c.status == ClaimStatus::Refuted) return true;
        return false;
    }
    bool all_verified() const {
        for (const auto& c : claims)
            if (c.status != ClaimStatus::Verified) return false;
        return true;
    }
    const Claim* find(const std::string& name) const {
        for (const auto& c : claims)
            if (c.name == name) return &c;
        return nullptr;
    }
};

inline nlohmann::json to_json(const Claim& c) {
    nlohmann::json j{{"name", c.name}, {"anchor", c.anchor}, {"status", status_name(c.status)}, {"witness", c.witness}};
    if (c.bound) j["bound"] = *c.bound;
    return j;
}

inline nlohmann::json to_json(const VerificationReport& r) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : r.claims) arr.push_back(to_json(c));
    return {{"claims", arr}};
}

inline std::string to_text(const VerificationReport& r) {
    std::string out;
    for (const auto& c : r.claims) {
        out += std::string("[") + status_name(c.status) + "] " + c.name + ": " + c.anchor;
        if (c.bound) out += " (bound " + std::to_string(*c.bound) + ")";
        out += "\n";
    }
    return out;
}

}  // namespace quartlat
