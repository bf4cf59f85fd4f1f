#pragma once

#include "hermitian.hpp"
#include "report.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace quartlat {

using GVector = Vec<GaussianRat>;

// Subspace of Q(i)^N stored by its reduced row echelon basis.
class Subspace {
public:
    Subspace() = default;
    Subspace(std::size_t ambient, const std::vector<GVector>& rows) : n_(ambient) {
        if (rows.empty()) {
            basis_ = GaussianRatMatrix(0, n_);
            return;
        }
        auto e = row_echelon(GaussianRatMatrix::from_rows(rows, n_));
        basis_ = e.rref.submatrix(0, 0, e.pivots.size(), n_);
    }
    static Subspace whole(std::size_t n) {
        std::vector<GVector> rows;
        for (std::size_t i = 0; i < n; ++i) {
            GVector v(n, GaussianRat(0));
            v[i] = GaussianRat(1);
            rows.push_back(v);
        }
        return Subspace(n, rows);
    }

    std::size_t ambient() const { return n_; }
    std::size_t dim() const { return basis_.rows(); }
    const GaussianRatMatrix& basis() const { return basis_; }
    std::vector<GVector> rows() const {
        std::vector<GVector> r;
        for (std::size_t i = 0; i < basis_.rows(); ++i) r.push_back(basis_.row(i));
        return r;
    }

    bool contains(const GVector& v) const {
        auto r = rows();
        r.push_back(v);
        return matrix_rank(GaussianRatMatrix::from_rows(r, n_)) == dim();
    }
    bool contains(const Subspace& o) const {
        for (const auto& v : o.rows())
            if (!contains(v)) return false;
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.n_ == b.n_ && a.basis_ == b.basis_; }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

    std::string key() const {
        std::string s = std::to_string(dim()) + ":";
        for (std::size_t i = 0; i < basis_.rows(); ++i)
            for (std::size_t j = 0; j < n_; ++j) s += basis_(i, j).str() + ",";
        return s;
    }

private:
    std::size_t n_ = 0;
    GaussianRatMatrix basis_;
};

inline Subspace intersect(const Subspace& a, const Subspace& b) {
    // x = sum s_i a_i = sum t_j b_j
    const std::size_t n = a.ambient(), da = a.dim(), db = b.dim();
    GaussianRatMatrix m(n, da + db);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < da; ++i) m(k, i) = a.basis()(i, k);
        for (std::size_t j = 0; j < db; ++j) m(k, da + j) = -b.basis()(j, k);
    }
    auto ns = nullspace(m);
    std::vector<GVector> rows;
    for (std::size_t r = 0; r < ns.rows(); ++r) {
        GVector x(n, GaussianRat(0));
        for (std::size_t i = 0; i < da; ++i)
            for (std::size_t k = 0; k < n; ++k) x[k] += ns(r, i) * a.basis()(i, k);
        rows.push_back(x);
    }
    return Subspace(n, rows);
}

struct ArrangementModel {
    GaussianRatMatrix gram;            // signature (1, n)
    std::vector<GVector> hyperplanes;  // normals, h(v,v) < 0
    std::vector<GVector> isotropics;   // h(v,v) = 0

    std::size_t dim() const { return gram.rows(); }
    GaussianRat h(const GVector& x, const GVector& y) const { return hermitian_product(gram, x, y); }

    // v^perp = {x : h(x, v) = 0}
    Subspace perp(const std::vector<GVector>& vs) const {
        const std::size_t n = dim();
        if (vs.empty()) return Subspace::whole(n);
        GaussianRatMatrix c(vs.size(), n);
        for (std::size_t r = 0; r < vs.size(); ++r)
            for (std::size_t i = 0; i < n; ++i) {
                GaussianRat s;
                for (std::size_t j = 0; j < n; ++j) s += gram(i, j) * vs[r][j].conj();
                c(r, i) = s;
            }
        auto ns = nullspace(c);
        std::vector<GVector> rows;
        for (std::size_t r = 0; r < ns.rows(); ++r) rows.push_back(ns.row(r));
        return Subspace(n, rows);
    }
    Subspace hyperplane(std::size_t k) const { return perp({hyperplanes.at(k)}); }
    Subspace line(const GVector& v) const { return Subspace(dim(), {v}); }

    void validate() const {
        if (!is_conjugate_symmetric(gram)) throw std::invalid_argument("model Gram is not conjugate-symmetric");
        Signature s = hermitian_inertia(gram);
        if (s.positive != 1 || s.radical != 0) throw std::invalid_argument("model form must have signature (1,n)");
        for (const auto& v : hyperplanes) {
            if (v.size() != dim()) throw std::invalid_argument("hyperplane normal has wrong length");
            GaussianRat n = h(v, v);
            if (!(n.im == 0 && n.re < 0)) throw std::invalid_argument("hyperplane normal must have negative norm");
        }
        for (std::size_t i = 0; i < isotropics.size(); ++i) {
            const auto& v = isotropics[i];
            if (v.size() != dim()) throw std::invalid_argument("isotropic vector has wrong length");
            bool zero = true;
            for (const auto& x : v)
                if (!x.is_zero()) zero = false;
            if (zero || !h(v, v).is_zero()) throw std::invalid_argument("isotropic vector must be nonzero with h(v,v) = 0");
            for (std::size_t j = 0; j < i; ++j)
                if (line(isotropics[j]) == line(v)) throw std::invalid_argument("isotropic vectors must be pairwise non-proportional");
        }
    }
};

inline Signature restricted_signature(const ArrangementModel& m, const Subspace& s) {
    if (s.ambient() != m.dim()) throw std::invalid_argument("subspace lives in a different space");
    const std::size_t d = s.dim();
    GaussianRatMatrix g(d, d);
    auto rows = s.rows();
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) g(a, b) = m.h(rows[a], rows[b]);
    return hermitian_inertia(g);
}

inline bool meets_positive_cone(const ArrangementModel& m, const Subspace& s) {
    return restricted_signature(m, s).positive >= 1;
}

struct PosetNode {
    std::string label;
    Subspace space;
    std::vector<std::size_t> members;  // hyperplane indices whose intersection gives the node (minimal subset found)
    std::size_t codim = 0;             // of the attached stratum
};

struct StratumPoset {
    std::vector<PosetNode> nodes;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // (a, b): a below b
};

namespace detail {

inline void add_containment_edges(StratumPoset& p, bool reverse) {
    for (std::size_t a = 0; a < p.nodes.size(); ++a)
        for (std::size_t b = 0; b < p.nodes.size(); ++b) {
            if (a == b) continue;
            const auto& A = p.nodes[a].space;
            const auto& B = p.nodes[b].space;
            bool below = reverse ? (B.contains(A) && A != B) : (A.contains(B) && A != B);
            if (below) p.edges.emplace_back(a, b);
        }
}

inline std::string subset_label(const std::vector<std::size_t>& s) {
    if (s.empty()) return "V";
    std::string l;
    for (std::size_t i = 0; i < s.size(); ++i) l += (i ? "&" : "") + std::string("H") + std::to_string(s[i] + 1);
    return l;
}

}  // namespace detail

// L_+(H): intersections of members that meet the positive cone, V included. Edges are inclusions L_a in L_b.
inline StratumPoset intersection_poset(const ArrangementModel& m) {
    const std::size_t k = m.hyperplanes.size();
    if (k > 20) throw std::invalid_argument("too many hyperplanes for subset enumeration");
    StratumPoset p;
    std::map<std::string, std::size_t> seen;
    for (std::uint64_t mask = 0; mask < (1ULL << k); ++mask) {
        std::vector<std::size_t> subset;
        std::vector<GVector> normals;
        for (std::size_t i = 0; i < k; ++i)
            if (mask >> i & 1ULL) {
                subset.push_back(i);
                normals.push_back(m.hyperplanes[i]);
            }
        Subspace l = m.perp(normals);
        if (!meets_positive_cone(m, l)) continue;
        auto key = l.key();
        auto it = seen.find(key);
        if (it != seen.end()) {
            if (subset.size() < p.nodes[it->second].members.size()) p.nodes[it->second].members = subset;
            continue;
        }
        seen.emplace(key, p.nodes.size());
        p.nodes.push_back({detail::subset_label(subset), l, subset, l.dim()});
    }
    for (auto& n : p.nodes) n.label = detail::subset_label(n.members);
    detail::add_containment_edges(p, true);
    return p;
}

inline std::vector<std::pair<std::size_t, std::size_t>> pairs_LI(const ArrangementModel& m, const StratumPoset& poset) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < poset.nodes.size(); ++a)
        for (std::size_t i = 0; i < m.isotropics.size(); ++i)
            if (poset.nodes[a].space.contains(m.isotropics[i])) out.emplace_back(a, i);
    return out;
}

inline std::vector<std::pair<std::size_t, std::size_t>> pairs_LI(const ArrangementModel& m) {
    return pairs_LI(m, intersection_poset(m));
}

// I^H = I^perp intersected with every member containing I.
inline Subspace isotropic_trace(const ArrangementModel& m, std::size_t iso) {
    const GVector& v = m.isotropics.at(iso);
    std::vector<GVector> normals{v};
    for (const auto& n : m.hyperplanes)
        if (m.h(v, n).is_zero()) normals.push_back(n);
    return m.perp(normals);
}

enum class Extension { BailyBorel, Arrangement, ArrangementLiteral };

// Strata as quotients P(V/K) (or V/K for the cone); node.space is K.
// Arrangement: one stratum per L in L_+(H) and one per I labelled by I^H (pairs (L, I) with the same I collapse,
// since every L containing I contains I^H's defining members). ArrangementLiteral lists each (L, I) pair separately.
inline StratumPoset strata_of_extension(const ArrangementModel& m, Extension which, bool projective = true) {
    const std::size_t n = m.dim();
    StratumPoset p;
    p.nodes.push_back({"open", Subspace(n, {}), {}, 0});
    auto add = [&](std::string label, Subspace k) {
        std::size_t codim = k.dim();
        p.nodes.push_back({std::move(label), std::move(k), {}, codim});
    };
    if (which == Extension::BailyBorel) {
        for (std::size_t i = 0; i < m.isotropics.size(); ++i)
            add("V/I" + std::to_string(i + 1) + "^perp", m.perp({m.isotropics[i]}));
        if (!projective) add("V/V", Subspace::whole(n));
    } else {
        StratumPoset lp = intersection_poset(m);
        if (which == Extension::Arrangement) {
            for (std::size_t i = 0; i < m.isotropics.size(); ++i)
                add("V/I" + std::to_string(i + 1) + "^H", isotropic_trace(m, i));
        } else {
            for (auto [a, i] : pairs_LI(m, lp))
                add("V/(" + lp.nodes[a].label + "&I" + std::to_string(i + 1) + "^perp)",
                    intersect(lp.nodes[a].space, m.perp({m.isotropics[i]})));
        }
        for (const auto& node : lp.nodes) {
            bool is_v = node.space.dim() == n;
            if (is_v && projective) continue;
            add("V/" + node.label, node.space);
        }
    }
    detail::add_containment_edges(p, false);
    return p;
}

inline std::size_t boundary_strata(const StratumPoset& p) { return p.nodes.empty() ? 0 : p.nodes.size() - 1; }

struct ContractionResult {
    bool holds = true;
    std::optional<std::pair<std::size_t, std::size_t>> offending;
};

// No two distinct members meet inside the positive cone.
inline ContractionResult contraction_hypothesis(const ArrangementModel& m) {
    ContractionResult r;
    for (std::size_t a = 0; a < m.hyperplanes.size(); ++a)
        for (std::size_t b = a + 1; b < m.hyperplanes.size(); ++b) {
            if (m.hyperplane(a) == m.hyperplane(b)) continue;
            if (meets_positive_cone(m, m.perp({m.hyperplanes[a], m.hyperplanes[b]}))) {
                r.holds = false;
                r.offending = std::make_pair(a, b);
                return r;
            }
        }
    return r;
}

struct IsotropicLocalModel {
    std::vector<std::size_t> members;             // H_I
    std::vector<std::vector<std::size_t>> classes;  // parallelism classes
    Subspace trace;                               // I^H
    std::size_t intersections_checked = 0;
    std::size_t intersections_of_members = 0;  // L equal to an intersection of members of H_I
    std::size_t lifted = 0;                    // L = I^perp & L~ with L~ meeting the positive cone
    bool finite = true;
};

inline IsotropicLocalModel isotropic_local_model(const ArrangementModel& m, std::size_t iso) {
    if (iso >= m.isotropics.size()) throw std::invalid_argument("isotropic index out of range");
    const GVector& v = m.isotropics[iso];
    if (!m.h(v, v).is_zero()) throw std::invalid_argument("vector is not isotropic");
    IsotropicLocalModel out;
    for (std::size_t k = 0; k < m.hyperplanes.size(); ++k)
        if (m.h(v, m.hyperplanes[k]).is_zero()) out.members.push_back(k);
    if (out.members.size() > 20) throw std::invalid_argument("too many members through I");
    Subspace iperp = m.perp({v});
    std::vector<Subspace> traces;
    for (auto k : out.members) traces.push_back(intersect(m.hyperplane(k), iperp));
    for (std::size_t a = 0; a < traces.size(); ++a) {
        bool placed = false;
        for (auto& c : out.classes)
            if (traces[c.front()] == traces[a]) {
                c.push_back(a);
                placed = true;
                break;
            }
        if (!placed) out.classes.push_back({a});
    }
    for (auto& c : out.classes)
        for (auto& x : c) x = out.members[x];
    out.trace = isotropic_trace(m, iso);

    const std::size_t k = out.members.size();
    std::map<std::string, Subspace> proper;
    std::vector<Subspace> member_meets;
    std::vector<bool> member_positive;
    for (std::uint64_t mask = 0; mask < (1ULL << k); ++mask) {
        std::vector<GVector> normals;
        for (std::size_t i = 0; i < k; ++i)
            if (mask >> i & 1ULL) normals.push_back(m.hyperplanes[out.members[i]]);
        Subspace lt = m.perp(normals);
        member_meets.push_back(lt);
        member_positive.push_back(meets_positive_cone(m, lt));
        Subspace l = intersect(lt, iperp);
        if (l != iperp) proper.emplace(l.key(), l);
    }
    for (const auto& [key, l] : proper) {
        ++out.intersections_checked;
        bool as_members = false, lifts = false;
        for (std::size_t s = 0; s < member_meets.size(); ++s) {
            if (member_meets[s] == l) as_members = true;
            if (member_positive[s] && intersect(member_meets[s], iperp) == l) lifts = true;
        }
        out.intersections_of_members += as_members;
        out.lifted += lifts;
    }
    return out;
}

struct MeromCodimension {
    std::size_t minimum = 0;
    bool exceeds_one = false;
};

inline MeromCodimension merom_codimension(const ArrangementModel& m) {
    if (m.hyperplanes.empty()) throw std::invalid_argument("the arrangement must be nonempty");
    MeromCodimension r;
    std::size_t best = m.dim();
    for (const auto& n : intersection_poset(m).nodes) best = std::min(best, n.space.dim());
    for (std::size_t i = 0; i < m.isotropics.size(); ++i) best = std::min(best, isotropic_trace(m, i).dim());
    r.minimum = best;
    r.exceeds_one = best > 1;
    return r;
}

}  // namespace quartlat
