#pragma once

#include "polynomial.hpp"

#include <json.hpp>

#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace quartlat {

using TernaryQuartic = TernaryForm;

struct NonReducedError : std::runtime_error {
    NonReducedError() : std::runtime_error("quartic has a repeated factor") {}
};

struct UnsupportedSingularLocus : std::runtime_error {
    explicit UnsupportedSingularLocus(int n)
        : std::runtime_error("singular locus has " + std::to_string(n) + " point(s) outside Q(i)"), count(n) {}
    int count;
};

inline TernaryQuartic make_quartic(const std::vector<std::pair<Exponent, GaussianRat>>& terms) {
    TernaryQuartic f(4);
    for (const auto& [e, c] : terms) f.add(e, c);
    return f;
}

enum class SingularityType { A1, A2, A3OrWorse, TriplePoint, NonReducedComponent };

inline const char* singularity_name(SingularityType t) {
    switch (t) {
        case SingularityType::A1: return "A1";
        case SingularityType::A2: return "A2";
        case SingularityType::A3OrWorse: return "A3-or-worse";
        case SingularityType::TriplePoint: return "multiplicity-3-or-more";
        case SingularityType::NonReducedComponent: return "non-reduced-component";
    }
    return "?";
}

struct PlaneSingularity {
    GVector point;
    SingularityType type = SingularityType::A1;
    int a_index = 0;                   // k for A_k when known, 0 otherwise
    std::vector<GVector> tangent_lines;  // rational tangent-cone factors as linear forms
};

namespace detail {

// Deterministic integer frames used as "generic coordinates".
inline GaussianRatMatrix generic_frame(unsigned k) {
    std::mt19937 gen(7919u + 104729u * k);
    for (;;) {
        GaussianRatMatrix m(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) m(i, j) = GaussianRat(Rat(static_cast<int>(gen() % 9) - 4));
        if (!field_determinant(m).is_zero()) return m;
    }
}

inline GaussianRat small(int v) { return GaussianRat(Rat(v)); }

inline std::vector<GaussianRat> sample_points(std::size_t n) {
    std::vector<GaussianRat> xs;
    for (std::size_t k = 0; k < n; ++k) xs.push_back(small(static_cast<int>(k)));
    return xs;
}

// y -> f(x0, y, 1)
inline UPoly chart_restriction(const TernaryForm& f, const GaussianRat& x0) {
    std::vector<GaussianRat> xp{GaussianRat(1)};
    for (int k = 1; k <= f.degree(); ++k) xp.push_back(xp.back() * x0);
    UPoly r(static_cast<std::size_t>(f.degree()) + 1);
    for (const auto& [e, c] : f.terms()) r[e[1]] += c * xp[e[0]];
    trim(r);
    return r;
}

inline UPoly gcd_all(const std::vector<UPoly>& ps) {
    UPoly g;
    for (const auto& p : ps) g = gcd(g, p);
    return g;
}

}  // namespace detail

// Reduced iff the y-discriminant of F in generic coordinates is not identically zero.
inline bool is_reduced(const TernaryQuartic& f) {
    if (f.is_zero()) throw std::invalid_argument("zero quartic");
    const int d = f.degree();
    for (unsigned k = 0;; ++k) {
        TernaryForm g = f.substitute(detail::generic_frame(k));
        if (g.coeff({0, d, 0}).is_zero()) continue;
        TernaryForm gy = g.partial(1);
        for (const auto& x : detail::sample_points(static_cast<std::size_t>(d * (d - 1) + 1)))
            if (!resultant(detail::chart_restriction(g, x), detail::chart_restriction(gy, x)).is_zero()) return true;
        return false;
    }
}

struct CommonZeros {
    std::vector<GVector> points;  // normalized, sorted
    int irrational = 0;           // upper bound on further zeros outside Q(i)
    bool positive_dimensional = false;
};

// Common projective zeros of forms of one degree, by resultant elimination in generic coordinates.
inline CommonZeros common_zeros(const std::vector<TernaryForm>& forms) {
    CommonZeros out;
    std::vector<TernaryForm> nz;
    for (const auto& f : forms)
        if (!f.is_zero()) nz.push_back(f);
    if (nz.empty()) {
        out.positive_dimensional = true;
        return out;
    }
    const int d = nz.front().degree();
    for (const auto& f : nz)
        if (f.degree() != d) throw std::invalid_argument("forms must share a degree");
    if (d == 0) return out;

    for (unsigned k = 0; k < 12; ++k) {
        GaussianRatMatrix t = detail::generic_frame(k);
        std::vector<TernaryForm> g;
        for (const auto& f : nz) g.push_back(f.substitute(t));
        std::mt19937 gen(31u + k);
        auto combo = [&]() {
            TernaryForm h(d);
            for (const auto& gi : g) h = h + gi.scaled(detail::small(static_cast<int>(gen() % 7) + 1));
            return h;
        };
        TernaryForm h1 = combo(), h2 = combo(), h3 = combo();
        if (h1.coeff({0, d, 0}).is_zero() || h2.coeff({0, d, 0}).is_zero() || h3.coeff({0, d, 0}).is_zero()) continue;

        auto xs = detail::sample_points(static_cast<std::size_t>(d * d + 1));
        auto res_poly = [&](const TernaryForm& a, const TernaryForm& b) {
            std::vector<GaussianRat> ys;
            for (const auto& x : xs) ys.push_back(resultant(detail::chart_restriction(a, x), detail::chart_restriction(b, x)));
            return interpolate(xs, ys);
        };
        UPoly r12 = res_poly(h1, h2), r13 = res_poly(h1, h3);
        if (r12.empty() || r13.empty()) continue;
        UPoly r = gcd(r12, r13);
        UPoly r23 = res_poly(h2, h3);
        if (!r23.empty()) r = gcd(r, r23);

        std::vector<GVector> pts;
        int irr = 0;
        auto xr = gaussian_rational_roots(r);
        irr += xr.irrational;
        for (const auto& x0 : xr.roots) {
            std::vector<UPoly> us;
            for (const auto& gi : g) us.push_back(detail::chart_restriction(gi, x0));
            UPoly u = detail::gcd_all(us);
            if (u.empty()) {
                out.positive_dimensional = true;
                return out;
            }
            auto yr = gaussian_rational_roots(u);
            irr += yr.irrational;
            for (const auto& y0 : yr.roots) pts.push_back({x0, y0, detail::small(1)});
        }
        // line at infinity; (0:1:0) is excluded by the leading coefficient
        {
            std::vector<UPoly> us;
            for (const auto& gi : g) us.push_back(gi.restrict_line({detail::small(1), detail::small(0), detail::small(0)},
                                                                  {detail::small(0), detail::small(1), detail::small(0)}));
            UPoly u = detail::gcd_all(us);
            if (u.empty()) {
                out.positive_dimensional = true;
                return out;
            }
            auto yr = gaussian_rational_roots(u);
            irr += yr.irrational;
            for (const auto& y0 : yr.roots) pts.push_back({detail::small(1), y0, detail::small(0)});
        }
        for (auto& p : pts) out.points.push_back(normalize_projective(mat_vec(t, p)));
        std::sort(out.points.begin(), out.points.end());
        out.irrational = irr;
        return out;
    }
    out.positive_dimensional = true;
    return out;
}

struct SingularLocus {
    bool reduced = true;
    bool complete = true;
    int irrational = 0;
    std::vector<GVector> points;
};

inline SingularLocus singular_locus(const TernaryQuartic& f) {
    SingularLocus s;
    s.reduced = is_reduced(f);
    if (!s.reduced) {
        s.complete = false;
        return s;
    }
    CommonZeros z = common_zeros({f.partial(0), f.partial(1), f.partial(2)});
    if (z.positive_dimensional) throw std::logic_error("reduced quartic with a singular curve");
    s.points = z.points;
    s.irrational = z.irrational;
    s.complete = z.irrational == 0;
    return s;
}

inline std::vector<GVector> singular_points(const TernaryQuartic& f) {
    SingularLocus s = singular_locus(f);
    if (!s.reduced) throw NonReducedError();
    if (!s.complete) throw UnsupportedSingularLocus(s.irrational);
    return s.points;
}

inline bool is_singular_point(const TernaryForm& f, const GVector& p) {
    if (is_zero_vector(p)) return false;
    for (int i = 0; i < 3; ++i)
        if (!f.partial(i)(p).is_zero()) return false;
    return f(p).is_zero();
}

namespace detail {

// frame with columns (a, b, p): p goes to (0:0:1)
inline GaussianRatMatrix frame_to_origin(const GVector& p) {
    std::size_t k = 0;
    while (p[k].is_zero()) ++k;
    GaussianRatMatrix m(3, 3);
    std::size_t col = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        if (i == k) continue;
        m(i, col++) = small(1);
    }
    for (std::size_t i = 0; i < 3; ++i) m(i, 2) = p[i];
    return m;
}

// affine part of G(z0, z1, 1) as a map (a, b) -> coeff
using Affine = std::map<std::pair<int, int>, GaussianRat>;

inline Affine affine_part(const TernaryForm& g) {
    Affine a;
    for (const auto& [e, c] : g.terms()) a[{e[0], e[1]}] = c;
    return a;
}

inline GaussianRat at(const Affine& a, int i, int j) {
    auto it = a.find({i, j});
    return it == a.end() ? GaussianRat() : it->second;
}

// linear factors u x + v y of a binary form sum_k c[k] x^k y^{m-k}, over Q(i)
inline std::vector<std::pair<GaussianRat, GaussianRat>> binary_linear_factors(const std::vector<GaussianRat>& c) {
    std::vector<std::pair<GaussianRat, GaussianRat>> out;
    UPoly p(c.begin(), c.end());
    trim(p);
    if (p.empty()) return out;
    const int m = static_cast<int>(c.size()) - 1;
    if (degree(p) < m) out.emplace_back(small(0), small(1));  // y divides
    for (const auto& t : gaussian_rational_roots(p).roots) out.emplace_back(small(1), -t);  // x - t y
    return out;
}

// truncated power series in one variable
using Series = std::vector<GaussianRat>;

inline Series series_mul(const Series& a, const Series& b, std::size_t n) {
    Series r(n + 1);
    for (std::size_t i = 0; i < a.size() && i <= n; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size() && i + j <= n; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

inline Series series_inverse(const Series& a, std::size_t n) {
    Series r(n + 1);
    r[0] = GaussianRat(1) / a[0];
    for (std::size_t k = 1; k <= n; ++k) {
        GaussianRat s;
        for (std::size_t j = 1; j <= k && j < a.size(); ++j) s += a[j] * r[k - j];
        r[k] = -s / a[0];
    }
    return r;
}

// h(phi(Y), Y) for an affine polynomial h(X, Y)
inline Series substitute_series(const Affine& h, const Series& phi, std::size_t n) {
    Series out(n + 1);
    std::vector<Series> pw{Series{GaussianRat(1)}};
    int maxx = 0;
    for (const auto& [e, c] : h) maxx = std::max(maxx, e.first);
    for (int k = 1; k <= maxx; ++k) pw.push_back(series_mul(pw.back(), phi, n));
    for (const auto& [e, c] : h) {
        const Series& s = pw[e.first];
        for (std::size_t i = 0; i < s.size(); ++i) {
            std::size_t idx = i + static_cast<std::size_t>(e.second);
            if (idx <= n) out[idx] += c * s[i];
        }
    }
    return out;
}

inline Affine affine_partial_x(const Affine& h) {
    Affine d;
    for (const auto& [e, c] : h)
        if (e.first > 0) d[{e.first - 1, e.second}] += GaussianRat(Rat(e.first)) * c;
    return d;
}

// linear form lambda in G-coordinates pulled back along z -> M z: lambda^T M^{-1}
inline GVector pull_line(const GaussianRatMatrix& m, const GVector& lambda) {
    GaussianRatMatrix inv = inverse(m);
    GVector r(3);
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < 3; ++i) r[j] += lambda[i] * inv(i, j);
    return normalize_projective(r);
}

}  // namespace detail

inline PlaneSingularity local_type(const TernaryQuartic& f, const GVector& point) {
    if (!is_singular_point(f, point)) throw std::invalid_argument("point is not singular");
    PlaneSingularity s;
    s.point = normalize_projective(point);
    GaussianRatMatrix m = detail::frame_to_origin(s.point);
    detail::Affine h = detail::affine_part(f.substitute(m));
    using detail::at;

    const GaussianRat c20 = at(h, 2, 0), c11 = at(h, 1, 1), c02 = at(h, 0, 2);
    auto line_from = [&](const GaussianRatMatrix& frame, const GaussianRat& u, const GaussianRat& v) {
        return detail::pull_line(frame, {u, v, detail::small(0)});
    };

    if (c20.is_zero() && c11.is_zero() && c02.is_zero()) {
        bool zero_cubic = true;
        std::vector<GaussianRat> cubic(4);
        for (int k = 0; k <= 3; ++k) {
            cubic[k] = at(h, k, 3 - k);
            if (!cubic[k].is_zero()) zero_cubic = false;
        }
        s.type = SingularityType::TriplePoint;
        if (!zero_cubic)
            for (auto [u, v] : detail::binary_linear_factors(cubic)) s.tangent_lines.push_back(line_from(m, u, v));
        return s;
    }

    const GaussianRat disc = c11 * c11 - GaussianRat(4) * c20 * c02;
    if (!disc.is_zero()) {
        s.type = SingularityType::A1;
        s.a_index = 1;
        for (auto [u, v] : detail::binary_linear_factors({c02, c11, c20})) s.tangent_lines.push_back(line_from(m, u, v));
        return s;
    }

    // rank one: q = c * l^2; new coordinates X = l, Y
    GaussianRatMatrix lmat(3, 3);  // (X, Y, Z) -> (x, y, z)
    GaussianRat lu, lv;
    if (!c20.is_zero()) {
        GaussianRat sft = c11 / (GaussianRat(2) * c20);  // l = x + sft y
        lu = detail::small(1);
        lv = sft;
        lmat(0, 0) = detail::small(1);
        lmat(0, 1) = -sft;
        lmat(1, 1) = detail::small(1);
    } else {
        lu = detail::small(0);
        lv = detail::small(1);  // l = y
        lmat(0, 1) = detail::small(1);
        lmat(1, 0) = detail::small(1);
    }
    lmat(2, 2) = detail::small(1);
    s.tangent_lines.push_back(line_from(m, lu, lv));
    GaussianRatMatrix m2 = m * lmat;
    detail::Affine g = detail::affine_part(f.substitute(m2));
    if (!at(g, 0, 3).is_zero()) {
        s.type = SingularityType::A2;
        s.a_index = 2;
        return s;
    }

    // splitting: X = phi(Y) with g_X(phi, Y) = 0, then ord g(phi(Y), Y) = k + 1
    const std::size_t n = 12;
    detail::Affine gx = detail::affine_partial_x(g), gxx = detail::affine_partial_x(gx);
    detail::Series phi(n + 1);
    for (int it = 0; it < 4; ++it) {
        detail::Series num = detail::substitute_series(gx, phi, n);
        detail::Series den = detail::substitute_series(gxx, phi, n);
        detail::Series step = detail::series_mul(num, detail::series_inverse(den, n), n);
        for (std::size_t i = 0; i <= n; ++i) phi[i] -= step[i];
    }
    detail::Series val = detail::substitute_series(g, phi, n);
    std::size_t ord = 0;
    while (ord <= n && val[ord].is_zero()) ++ord;
    if (ord > n) {
        s.type = SingularityType::NonReducedComponent;
        return s;
    }
    s.type = SingularityType::A3OrWorse;
    s.a_index = static_cast<int>(ord) - 1;
    return s;
}

using Weights = std::array<long long, 3>;

// min over the support of F(frame z) of a . r
inline long long hilbert_mumford(const TernaryQuartic& f, const GaussianRatMatrix& frame, const Weights& r) {
    if (frame.rows() != 3 || frame.cols() != 3 || field_determinant(frame).is_zero())
        throw std::invalid_argument("singular frame");
    if (r[0] + r[1] + r[2] != 0 || (r[0] == 0 && r[1] == 0 && r[2] == 0))
        throw std::invalid_argument("weights must sum to zero and not all vanish");
    TernaryForm g = f.substitute(frame);
    if (g.is_zero()) throw std::invalid_argument("zero quartic");
    long long mu = std::numeric_limits<long long>::max();
    for (const auto& [e, c] : g.terms()) mu = std::min(mu, e[0] * r[0] + e[1] * r[1] + e[2] * r[2]);
    return mu;
}

struct OneParameterSubgroup {
    GaussianRatMatrix frame;  // columns: flag point, second point on the flag line, point off the line
    Weights weights{0, 0, 0};
    long long mu = 0;
};

enum class StabilityClass { Stable, StrictlySemistable, Unstable };

inline const char* stability_name(StabilityClass c) {
    switch (c) {
        case StabilityClass::Stable: return "stable";
        case StabilityClass::StrictlySemistable: return "strictly-semistable";
        case StabilityClass::Unstable: return "unstable";
    }
    return "?";
}

struct StabilityVerdict {
    StabilityClass cls = StabilityClass::Stable;
    bool reduced = true;
    bool incomplete = false;
    std::vector<PlaneSingularity> singularities;
    std::vector<GVector> multiple_lines;
    std::optional<OneParameterSubgroup> witness;
    std::size_t frames_searched = 0;
    std::string note;
};

namespace detail {

inline const std::vector<Weights>& weight_window() {
    static const std::vector<Weights> w = [] {
        std::vector<Weights> out;
        for (long long m = 1; m <= 12; ++m)
            for (long long a = -m; a <= m; ++a)
                for (long long b = -m; b <= m; ++b) {
                    long long c = -a - b;
                    if (std::max({std::llabs(a), std::llabs(b), std::llabs(c)}) != m) continue;
                    if (std::gcd(std::gcd(std::llabs(a), std::llabs(b)), std::llabs(c)) != 1) continue;
                    out.push_back({a, b, c});
                }
        return out;
    }();
    return w;
}

inline bool on_line(const GVector& line, const GVector& p) {
    GaussianRat s;
    for (int i = 0; i < 3; ++i) s += line[i] * p[i];
    return s.is_zero();
}

// columns (p, q, o): q on the line, o off it
inline std::optional<GaussianRatMatrix> flag_frame(const GVector& p, const GVector& line) {
    if (!on_line(line, p)) return std::nullopt;
    GaussianRatMatrix lm(1, 3);
    for (std::size_t i = 0; i < 3; ++i) lm(0, i) = line[i];
    GaussianRatMatrix ker = nullspace(lm);
    GVector q;
    for (std::size_t r = 0; r < ker.rows() && q.empty(); ++r) {
        GVector v = ker.row(r);
        if (!is_zero_vector(cross(v, p))) q = v;
    }
    if (q.empty()) return std::nullopt;
    GVector o;
    for (std::size_t k = 0; k < 3; ++k)
        if (!line[k].is_zero()) {
            o.assign(3, small(0));
            o[k] = small(1);
            break;
        }
    GaussianRatMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        m(i, 0) = p[i];
        m(i, 1) = q[i];
        m(i, 2) = o[i];
    }
    if (field_determinant(m).is_zero()) return std::nullopt;
    return m;
}

inline std::optional<OneParameterSubgroup> witness_for_frame(const TernaryQuartic& f, const GaussianRatMatrix& m) {
    TernaryForm g = f.substitute(m);
    for (const auto& r : weight_window()) {
        long long mu = std::numeric_limits<long long>::max();
        for (const auto& [e, c] : g.terms()) mu = std::min(mu, e[0] * r[0] + e[1] * r[1] + e[2] * r[2]);
        if (mu > 0) return OneParameterSubgroup{m, r, mu};
    }
    return std::nullopt;
}

inline std::vector<GVector> coordinate_points() {
    return {{small(1), small(0), small(0)}, {small(0), small(1), small(0)}, {small(0), small(0), small(1)}};
}

// zeros of all forms along a line, as projective points
inline std::vector<GVector> zeros_on_line(const std::vector<TernaryForm>& forms, const GVector& p, const GVector& q) {
    std::vector<UPoly> us;
    for (const auto& f : forms) us.push_back(f.restrict_line(p, q));
    UPoly u = gcd_all(us);
    std::vector<GVector> out;
    if (u.empty()) return out;
    for (const auto& t : gaussian_rational_roots(u).roots) {
        GVector v(3);
        for (int i = 0; i < 3; ++i) v[i] = p[i] + t * q[i];
        out.push_back(normalize_projective(v));
    }
    // the point at t = infinity
    bool at_q = true;
    for (const auto& f : forms)
        if (!f(q).is_zero()) at_q = false;
    if (at_q) out.push_back(normalize_projective(q));
    return out;
}

inline bool vanishes_on_line(const TernaryForm& f, const GVector& a, const GVector& b) { return f.restrict_line(a, b).empty(); }

// lines along which F is singular (multiple line components), over Q(i)
inline std::vector<GVector> multiple_lines(const TernaryQuartic& f) {
    std::vector<TernaryForm> partials{f.partial(0), f.partial(1), f.partial(2)};
    std::vector<GVector> out;
    for (unsigned k = 0; k < 4; ++k) {
        GaussianRatMatrix t = generic_frame(k);
        GVector a0 = t.col(0), a1 = t.col(1), a2 = t.col(2);
        // meet the singular curve with two generic lines and join the rational points
        auto on1 = zeros_on_line(partials, a0, a1);
        auto on2 = zeros_on_line(partials, a2, a1 + a0);
        for (const auto& p : on1)
            for (const auto& q : on2) {
                if (is_zero_vector(cross(p, q))) continue;
                bool all = true;
                for (const auto& g : partials)
                    if (!vanishes_on_line(g, p, q)) all = false;
                if (!all) continue;
                GVector line = normalize_projective(cross(p, q));
                if (std::find(out.begin(), out.end(), line) == out.end()) out.push_back(line);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline void add_point(std::vector<GVector>& pts, const GVector& p) {
    GVector n = normalize_projective(p);
    if (std::find(pts.begin(), pts.end(), n) == pts.end()) pts.push_back(n);
}

}  // namespace detail

// Searches flags (point, line) built from the singular data for a 1-PS with positive minimal weight.
inline std::optional<OneParameterSubgroup> destabilizing_search(const TernaryQuartic& f, const std::vector<GVector>& points,
                                                                 const std::vector<std::vector<GVector>>& point_lines,
                                                                 const std::vector<GVector>& extra_lines,
                                                                 std::size_t* frames = nullptr) {
    std::set<std::pair<GVector, GVector>> seen;
    std::size_t count = 0;
    auto try_flag = [&](const GVector& p, const GVector& line) -> std::optional<OneParameterSubgroup> {
        GVector ln = normalize_projective(line);
        if (!seen.insert({p, ln}).second) return std::nullopt;
        auto m = detail::flag_frame(p, ln);
        if (!m) return std::nullopt;
        ++count;
        return detail::witness_for_frame(f, *m);
    };
    std::optional<OneParameterSubgroup> found;
    for (std::size_t i = 0; i < points.size() && !found; ++i) {
        const GVector& p = points[i];
        std::vector<GVector> lines = point_lines[i];
        for (const auto& l : extra_lines)
            if (detail::on_line(l, p)) lines.push_back(l);
        for (const auto& q : points)
            if (!is_zero_vector(cross(p, q))) lines.push_back(cross(p, q));
        for (const auto& q : detail::coordinate_points())
            if (!is_zero_vector(cross(p, q))) lines.push_back(cross(p, q));
        for (const auto& l : lines) {
            found = try_flag(p, l);
            if (found) break;
        }
    }
    if (frames) *frames = count;
    return found;
}

inline StabilityVerdict classify_stability(const TernaryQuartic& f) {
    if (f.is_zero()) throw std::invalid_argument("zero quartic");
    if (f.degree() != 4) throw std::invalid_argument("not a quartic");
    StabilityVerdict v;
    v.reduced = is_reduced(f);
    std::vector<GVector> points;
    std::vector<std::vector<GVector>> point_lines;

    if (v.reduced) {
        SingularLocus loc = singular_locus(f);
        v.incomplete = !loc.complete;
        bool mild = true;
        for (const auto& p : loc.points) {
            PlaneSingularity s = local_type(f, p);
            if (s.type != SingularityType::A1 && s.type != SingularityType::A2) mild = false;
            points.push_back(s.point);
            point_lines.push_back(s.tangent_lines);
            v.singularities.push_back(std::move(s));
        }
        if (mild) {
            v.cls = StabilityClass::Stable;
            if (v.incomplete) v.note = "singular points outside Q(i) were not typed";
            return v;
        }
    } else {
        std::vector<TernaryForm> second;
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) second.push_back(f.partial(i).partial(j));
        CommonZeros triple = common_zeros(second);
        if (!triple.positive_dimensional) {
            for (const auto& p : triple.points) {
                detail::add_point(points, p);
                if (triple.irrational) v.incomplete = true;
            }
        }
        v.multiple_lines = detail::multiple_lines(f);
        for (const auto& l : v.multiple_lines) {
            // a few rational points on the line
            GaussianRatMatrix lm(1, 3);
            for (std::size_t i = 0; i < 3; ++i) lm(0, i) = l[i];
            GaussianRatMatrix ker = nullspace(lm);
            GVector a = ker.row(0), b = ker.row(1);
            detail::add_point(points, a);
            detail::add_point(points, b);
            detail::add_point(points, a + b);
        }
        for (const auto& p : points) {
            std::vector<GVector> lines;
            for (const auto& l : v.multiple_lines)
                if (detail::on_line(l, p)) lines.push_back(l);
            point_lines.push_back(lines);
        }
    }

    v.witness = destabilizing_search(f, points, point_lines, v.multiple_lines, &v.frames_searched);
    if (v.witness) {
        v.cls = StabilityClass::Unstable;
        v.incomplete = false;
    } else {
        v.cls = StabilityClass::StrictlySemistable;
        v.note = "no destabilizing one-parameter subgroup in the searched window";
    }
    return v;
}

namespace detail {

inline bool smooth_conic(const TernaryForm& q) {
    GaussianRatMatrix s(3, 3);
    for (const auto& [e, c] : q.terms()) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < 3; ++i)
            for (int k = 0; k < e[i]; ++k) idx.push_back(i);
        if (idx[0] == idx[1])
            s(idx[0], idx[0]) += c;
        else {
            s(idx[0], idx[1]) += c / GaussianRat(2);
            s(idx[1], idx[0]) += c / GaussianRat(2);
        }
    }
    return !field_determinant(s).is_zero();
}

// F = a Q^2 with Q a smooth conic?
inline bool is_double_smooth_conic(const TernaryQuartic& f) {
    for (unsigned k = 0; k < 8; ++k) {
        GaussianRatMatrix t = generic_frame(k);
        TernaryForm g = f.substitute(t);
        GaussianRat a = g.coeff({0, 4, 0});
        if (a.is_zero()) continue;
        g = g.scaled(GaussianRat(1) / a);
        // g = (y^2 + B y + C)^2 with B linear, C quadratic in (x, z)
        TernaryForm q(2);
        q.set({0, 2, 0}, GaussianRat(1));
        for (const auto& [e, c] : g.terms())
            if (e[1] == 3) q.add({e[0], 1, e[2]}, c / GaussianRat(2));
        TernaryForm b(1);
        for (const auto& [e, c] : q.terms())
            if (e[1] == 1) b.add({e[0], 0, e[2]}, c);
        TernaryForm bb = b * b;
        for (const auto& [e, c] : g.terms())
            if (e[1] == 2) q.add({e[0], 0, e[2]}, c / GaussianRat(2));
        for (const auto& [e, c] : bb.terms()) q.add(e, -c / GaussianRat(2));
        if (q * q != g) return false;
        return smooth_conic(q);
    }
    return false;
}

}  // namespace detail

struct NormalForm {
    GaussianRat s, t;
    std::optional<GaussianRatMatrix> frame;  // columns (r, p, q) when found from the tacnodes
};

// (s:t) with (Z1 Z2 - Z0^2)(s Z1 Z2 - t Z0^2) in the orbit of F; s = 1 and |t| <= 1.
inline std::optional<NormalForm> closed_orbit_normal_form(const TernaryQuartic& f) {
    StabilityVerdict v = classify_stability(f);
    if (v.cls != StabilityClass::StrictlySemistable) return std::nullopt;
    if (!v.reduced) {
        if (detail::is_double_smooth_conic(f)) return NormalForm{GaussianRat(1), GaussianRat(1), std::nullopt};
        return std::nullopt;
    }
    std::vector<const PlaneSingularity*> tac;
    for (const auto& s : v.singularities)
        if (s.type == SingularityType::A3OrWorse && s.a_index == 3 && s.tangent_lines.size() == 1) tac.push_back(&s);
    if (tac.size() != 2) return std::nullopt;
    const GVector& p = tac[0]->point;
    const GVector& q = tac[1]->point;
    GVector r = cross(tac[0]->tangent_lines[0], tac[1]->tangent_lines[0]);
    if (is_zero_vector(r)) return std::nullopt;
    GaussianRatMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        m(i, 0) = r[i];
        m(i, 1) = p[i];
        m(i, 2) = q[i];
    }
    if (field_determinant(m).is_zero()) return std::nullopt;
    TernaryForm g = f.substitute(m);
    for (const auto& [e, c] : g.terms())
        if (e != Exponent{0, 2, 2} && e != Exponent{2, 1, 1} && e != Exponent{4, 0, 0}) return std::nullopt;
    GaussianRat a = g.coeff({0, 2, 2}), b = g.coeff({2, 1, 1}), c = g.coeff({4, 0, 0});
    if (a.is_zero() || c.is_zero()) return std::nullopt;
    // ratio of the roots of a u^2 + b u + c: rho + 1/rho = (b^2 - 2ac) / (ac)
    GaussianRat sum = (b * b - GaussianRat(2) * a * c) / (a * c);
    auto roots = gaussian_rational_roots(UPoly{GaussianRat(1), -sum, GaussianRat(1)});
    if (roots.roots.empty()) return std::nullopt;
    GaussianRat best = roots.roots.front();
    for (const auto& x : roots.roots) {
        if (x.norm() < best.norm() || (x.norm() == best.norm() && x < best)) best = x;
    }
    return NormalForm{GaussianRat(1), best, m};
}

struct GradingResidue {
    long long residue = 0;
    bool invariant_possible = false;
};

// zeta * id scales a degree-k polynomial in the quartic coefficients by zeta^{4k} = zeta^k
inline GradingResidue scalar_grading_residue(long long k) {
    if (k < 0) throw std::invalid_argument("negative degree");
    long long r = (4 * k) % 3;
    return {r, r == 0};
}

}  // namespace quartlat
