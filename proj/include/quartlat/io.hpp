#pragma once

#include "arrangement.hpp"
#include "discriminant.hpp"
#include "hermitian.hpp"
#include "period.hpp"
#include "quartic.hpp"
#include "report.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace quartlat {

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("write failed: " + path);
}

// integers may be JSON numbers or decimal strings; floats are rejected
inline Int parse_int(const nlohmann::json& j) {
    if (j.is_number_integer()) return j.is_number_unsigned() ? Int(j.get<unsigned long long>()) : Int(j.get<long long>());
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        std::size_t k = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (k == s.size()) throw FormatError("bad integer string: " + s);
        for (std::size_t i = k; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') throw FormatError("bad integer string: " + s);
        return Int(s);
    }
    throw FormatError("expected an integer, got " + j.dump());
}

inline Rat parse_num_den(const nlohmann::json& num, const nlohmann::json& den) {
    Int d = parse_int(den);
    if (d == 0) throw FormatError("zero denominator");
    Int n = parse_int(num);
    return d < 0 ? Rat(Int(-n), Int(-d)) : Rat(n, d);
}

// [num, den] or a bare integer
inline Rat parse_rat_pair(const nlohmann::json& j) {
    if (j.is_array()) {
        if (j.size() != 2) throw FormatError("rational must be [num, den]");
        return parse_num_den(j[0], j[1]);
    }
    return Rat(parse_int(j));
}

inline nlohmann::json rat_pair(const Rat& r) { return nlohmann::json::array({json_int(numer(r)), json_int(denom(r))}); }

inline IntVector parse_int_vector(const nlohmann::json& j) {
    if (!j.is_array()) throw FormatError("expected an integer array");
    IntVector v;
    for (const auto& x : j) v.push_back(parse_int(x));
    return v;
}

inline IntMatrix parse_int_matrix(const nlohmann::json& j) {
    if (!j.is_array()) throw FormatError("expected a matrix");
    std::vector<IntVector> rows;
    for (const auto& r : j) rows.push_back(parse_int_vector(r));
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (const auto& r : rows)
        if (r.size() != cols) throw FormatError("ragged matrix");
    return IntMatrix::from_rows(rows, cols);
}

// ---- lattice ----

inline nlohmann::json lattice_to_json(const IntegerLattice& l) {
    return {{"label", l.label()}, {"rank", l.rank()}, {"gram", json_mat(l.gram())}};
}

inline IntegerLattice lattice_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("gram")) throw FormatError("lattice needs a \"gram\" field");
    IntMatrix g = parse_int_matrix(j.at("gram"));
    if (!g.square()) throw FormatError("Gram matrix is not square");
    if (j.contains("rank") && parse_int(j.at("rank")) != Int(g.rows())) throw FormatError("rank does not match Gram size");
    std::string label = j.contains("label") ? j.at("label").get<std::string>() : std::string();
    try {
        return IntegerLattice(g, label, true);
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

// ---- Hermitian lattice ----

inline nlohmann::json hermitian_to_json(const HermitianLattice& h) {
    nlohmann::json g = nlohmann::json::array();
    for (std::size_t i = 0; i < h.rank(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t k = 0; k < h.rank(); ++k)
            row.push_back(nlohmann::json::array({json_int(h.gram()(i, k).re), json_int(h.gram()(i, k).im)}));
        g.push_back(row);
    }
    return {{"rank", h.rank()}, {"gram", g}};
}

inline HermitianLattice hermitian_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("gram")) throw FormatError("Hermitian lattice needs a \"gram\" field");
    const auto& g = j.at("gram");
    const std::size_t n = g.size();
    GaussianIntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (g[i].size() != n) throw FormatError("Hermitian Gram is not square");
        for (std::size_t k = 0; k < n; ++k) {
            const auto& e = g[i][k];
            if (!e.is_array() || e.size() != 2) throw FormatError("entries must be [re, im]");
            m(i, k) = GaussianInt(parse_int(e[0]), parse_int(e[1]));
        }
    }
    if (j.contains("rank") && parse_int(j.at("rank")) != Int(n)) throw FormatError("rank does not match Gram size");
    try {
        return HermitianLattice(m);
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

// ---- finite quadratic form dump (q in Q/2Z) ----

inline nlohmann::json fqf_to_json(const FiniteQuadraticForm& f) {
    nlohmann::json q = nlohmann::json::array();
    for (std::uint64_t i = 0; i < f.size(); ++i) {
        auto e = f.element(i);
        Rat v = f.q(e).value();
        q.push_back({{"elt", e}, {"num", json_int(numer(v))}, {"den", json_int(denom(v))}});
    }
    return {{"orders", f.orders()}, {"q", q}};
}

// ---- bundle ----

inline nlohmann::json bundle_to_json(const MuFourK3Lattice& m) {
    return {{"lattice", lattice_to_json(m.lattice)}, {"rho", json_mat(m.rho)}, {"eta", json_vec(m.eta)}};
}

inline MuFourK3Lattice bundle_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("lattice") || !j.contains("rho") || !j.contains("eta"))
        throw FormatError("bundle needs \"lattice\", \"rho\" and \"eta\"");
    MuFourK3Lattice m{lattice_from_json(j.at("lattice")), parse_int_matrix(j.at("rho")), parse_int_vector(j.at("eta"))};
    const std::size_t n = m.lattice.rank();
    if (m.rho.rows() != n || m.rho.cols() != n || m.eta.size() != n) throw FormatError("bundle shapes disagree");
    return m;
}

// ---- quartic coefficient file ----

inline TernaryQuartic quartic_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("coeffs") || !j.at("coeffs").is_array())
        throw FormatError("quartic file needs a \"coeffs\" array");
    TernaryQuartic f(4);
    std::set<Exponent> seen;
    for (const auto& t : j.at("coeffs")) {
        if (!t.contains("exp")) throw FormatError("coefficient entry without \"exp\"");
        const auto& e = t.at("exp");
        if (!e.is_array() || e.size() != 3) throw FormatError("exponent must be [a, b, c]");
        Exponent x{e[0].get<int>(), e[1].get<int>(), e[2].get<int>()};
        if (x[0] < 0 || x[1] < 0 || x[2] < 0 || x[0] + x[1] + x[2] != 4) throw FormatError("exponent is not of degree 4");
        if (!seen.insert(x).second) throw FormatError("repeated exponent");
        auto field = [&](const char* k, long long dflt) {
            return t.contains(k) ? t.at(k) : nlohmann::json(dflt);
        };
        Rat re = parse_num_den(field("re_num", 0), field("re_den", 1));
        Rat im = parse_num_den(field("im_num", 0), field("im_den", 1));
        f.set(x, GaussianRat(re, im));
    }
    return f;
}

inline nlohmann::json quartic_to_json(const TernaryQuartic& f) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& e : TernaryForm::exponents(4)) {
        GaussianRat c = f.coeff(e);
        a.push_back({{"exp", e},
                     {"re_num", json_int(numer(c.re))},
                     {"re_den", json_int(denom(c.re))},
                     {"im_num", json_int(numer(c.im))},
                     {"im_den", json_int(denom(c.im))}});
    }
    return {{"coeffs", a}};
}

inline nlohmann::json gaussian_json(const GaussianRat& z) { return nlohmann::json::array({rat_pair(z.re), rat_pair(z.im)}); }

inline GaussianRat gaussian_from_json(const nlohmann::json& j) {
    if (j.is_array() && j.size() == 2)
        return GaussianRat(parse_rat_pair(j[0]), parse_rat_pair(j[1]));
    if (j.is_number_integer() || j.is_string()) return GaussianRat(Rat(parse_int(j)));
    throw FormatError("Gaussian rational must be [re, im]");
}

inline nlohmann::json gvector_json(const GVector& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : v) a.push_back(gaussian_json(x));
    return a;
}

inline GVector gvector_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw FormatError("vector must be an array");
    GVector v;
    for (const auto& x : j) v.push_back(gaussian_from_json(x));
    return v;
}

// ---- arrangement model ----

inline nlohmann::json model_to_json(const ArrangementModel& m) {
    nlohmann::json g = nlohmann::json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) g.push_back(gvector_json(m.gram.row(i)));
    nlohmann::json hs = nlohmann::json::array(), is = nlohmann::json::array();
    for (const auto& h : m.hyperplanes) hs.push_back(gvector_json(h));
    for (const auto& v : m.isotropics) is.push_back(gvector_json(v));
    return {{"gram", g}, {"hyperplanes", hs}, {"isotropics", is}};
}

inline ArrangementModel model_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("gram")) throw FormatError("model needs a \"gram\" field");
    ArrangementModel m;
    const auto& g = j.at("gram");
    const std::size_t n = g.size();
    m.gram = GaussianRatMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        GVector row = gvector_from_json(g[i]);
        if (row.size() != n) throw FormatError("model Gram is not square");
        m.gram.set_row(i, row);
    }
    auto vecs = [&](const char* key) {
        std::vector<GVector> out;
        if (!j.contains(key)) return out;
        for (const auto& v : j.at(key)) {
            out.push_back(gvector_from_json(v));
            if (out.back().size() != n) throw FormatError(std::string(key) + ": vector length does not match the Gram");
        }
        return out;
    };
    m.hyperplanes = vecs("hyperplanes");
    m.isotropics = vecs("isotropics");
    try {
        m.validate();
    } catch (const std::exception& e) {
        throw FormatError(e.what());
    }
    return m;
}

inline nlohmann::json poset_to_json(const StratumPoset& p) {
    nlohmann::json nodes = nlohmann::json::array(), edges = nlohmann::json::array();
    for (std::size_t i = 0; i < p.nodes.size(); ++i) {
        const auto& n = p.nodes[i];
        nodes.push_back({{"id", i}, {"label", n.label}, {"dim", n.space.dim()}, {"codim", n.codim}, {"members", n.members}});
    }
    for (auto [a, b] : p.edges) edges.push_back({a, b});
    return {{"nodes", nodes}, {"edges", edges}};
}

inline nlohmann::json point_json(const GVector& p) { return gvector_json(p); }

inline std::string point_text(const GVector& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ":" : "") + p[i].str();
    return s + ")";
}

inline nlohmann::json gmatrix_json(const GaussianRatMatrix& m) {
    nlohmann::json a = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(gvector_json(m.row(i)));
    return a;
}

inline nlohmann::json verdict_to_json(const StabilityVerdict& v) {
    nlohmann::json sing = nlohmann::json::array();
    for (const auto& s : v.singularities) {
        nlohmann::json lines = nlohmann::json::array();
        for (const auto& l : s.tangent_lines) lines.push_back(gvector_json(l));
        sing.push_back({{"point", point_json(s.point)}, {"type", singularity_name(s.type)}, {"a_index", s.a_index},
                        {"tangent_lines", lines}});
    }
    nlohmann::json j{{"class", stability_name(v.cls)},
                     {"reduced", v.reduced},
                     {"incomplete", v.incomplete},
                     {"singularities", sing},
                     {"frames_searched", v.frames_searched}};
    nlohmann::json ml = nlohmann::json::array();
    for (const auto& l : v.multiple_lines) ml.push_back(gvector_json(l));
    j["multiple_lines"] = ml;
    if (v.witness)
        j["witness"] = {{"frame", gmatrix_json(v.witness->frame)}, {"weights", v.witness->weights}, {"mu", v.witness->mu}};
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

}  // namespace quartlat
