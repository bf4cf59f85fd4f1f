#pragma once

#include "arrangement.hpp"
#include "discriminant.hpp"
#include "enumerate.hpp"
#include "hermitian.hpp"
#include "report.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace quartlat {

struct MuFourK3Lattice {
    IntegerLattice lattice;
    IntMatrix rho;
    IntVector eta;
};

struct PositivePart {
    IntegerLattice lattice;  // <2> + <-2>^7 on e_0..e_7
    IntVector eta;           // 3e_0 - (e_1 + ... + e_7)
    IntMatrix rho;
};

// x -> (2 x.eta / eta.eta) eta - x; throws if not integral.
inline IntMatrix reflection_through(const IntegerLattice& l, const IntVector& eta) {
    const std::size_t n = l.rank();
    Int ee = l.norm(eta);
    if (ee == 0) throw std::invalid_argument("isotropic axis");
    IntVector ge = l.pair_with(eta);
    IntMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Int num = 2 * eta[i] * ge[j];
            if (num % ee != 0) throw std::invalid_argument("involution is not integral");
            r(i, j) = num / ee - (i == j ? 1 : 0);
        }
    return r;
}

inline PositivePart positive_part() {
    IntegerLattice l = make_standard("<2,-2,-2,-2,-2,-2,-2,-2>");
    IntVector eta{3, -1, -1, -1, -1, -1, -1, -1};
    return {l, eta, reflection_through(l, eta)};
}

struct Construction {
    MuFourK3Lattice k3;
    IntMatrix plus_embedding;   // rows: e_0..e_7 in the coordinates of the glued lattice
    IntMatrix minus_embedding;  // rows: v_1, i v_1, ... in the same coordinates
    std::uint64_t glue_maps = 0;
    bool glue_maps_capped = false;
};

// Invariant sublattices as saturated row bases.
inline IntMatrix kernel_of(const IntMatrix& a) { return integer_kernel(a); }

inline IntMatrix fixed_basis(const MuFourK3Lattice& m) {
    return kernel_of(m.rho - IntMatrix::identity(m.lattice.rank()));
}
inline IntMatrix mu2_fixed_basis(const MuFourK3Lattice& m) {
    return kernel_of(m.rho * m.rho - IntMatrix::identity(m.lattice.rank()));
}
inline IntMatrix mu2_anti_basis(const MuFourK3Lattice& m) {
    return kernel_of(m.rho * m.rho + IntMatrix::identity(m.lattice.rank()));
}

inline Construction construct(std::uint64_t glue_count_cap = 4096) {
    PositivePart plus = positive_part();
    TraceLattice minus = trace_lattice(heckman_lattice());
    GlueOptions opt;
    opt.equivariance = std::make_pair(plus.rho, minus.mu4);
    opt.max_results = 1;
    auto glued = glue_overlattices(plus.lattice, minus.lattice, opt);
    if (glued.empty()) throw std::logic_error("no equivariant anti-isometry of discriminant forms");
    const RatMatrix& b = glued.front().map.basis;
    const std::size_t n = b.rows();
    RatMatrix binv = inverse(b);
    RatMatrix bit = binv.transpose();

    IntMatrix rho_amb = block_diagonal(std::vector<IntMatrix>{plus.rho, minus.mu4});
    RatMatrix rho_new = bit * to_rat(rho_amb) * b.transpose();
    if (!is_integral(rho_new)) throw std::logic_error("rho is not integral on the overlattice");

    IntVector eta_amb(n, 0);
    for (std::size_t i = 0; i < plus.eta.size(); ++i) eta_amb[i] = plus.eta[i];
    RatVector eta_new = bit * to_rat(eta_amb);

    Construction c;
    c.k3 = {glued.front().overlattice, to_int(rho_new), to_int(eta_new)};
    c.k3.lattice = IntegerLattice(c.k3.lattice.gram(), "Lambda");
    IntMatrix emb = to_int(binv);
    c.plus_embedding = emb.submatrix(0, 0, plus.lattice.rank(), n);
    c.minus_embedding = emb.submatrix(plus.lattice.rank(), 0, minus.lattice.rank(), n);
    c.glue_maps = count_glue_maps(plus.lattice, minus.lattice, opt.equivariance, glue_count_cap);
    c.glue_maps_capped = glue_count_cap != 0 && c.glue_maps >= glue_count_cap;
    return c;
}

// Positive definite rho-invariant majorant -x.x + 2 sum over an orthogonal positive frame.
inline RatMatrix majorant(const IntegerLattice& l, const std::vector<IntVector>& positive_frame) {
    const std::size_t n = l.rank();
    RatMatrix q = to_rat(-l.gram());
    for (const auto& p : positive_frame) {
        Int pp = l.norm(p);
        if (pp <= 0) throw std::invalid_argument("frame vector is not positive");
        IntVector gp = l.pair_with(p);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) q(i, j) += Rat(2 * gp[i] * gp[j], pp);
    }
    return q;
}

struct MinusPart {
    IntMatrix basis;  // rows in Lambda coordinates
    IntegerLattice lattice;
    IntMatrix J;  // rho on basis coordinates
    OStructure o;

    IntVector coords(const IntVector& x) const {
        RatMatrix t(1, x.size());
        for (std::size_t i = 0; i < x.size(); ++i) t(0, i) = Rat(x[i]);
        auto c = coordinates_in(to_rat(basis), t);
        if (!c || !is_integral(*c)) throw std::invalid_argument("vector is not in the anti-invariant part");
        IntVector out(basis.rows());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = numer((*c)(0, i));
        return out;
    }
    IntVector ambient(const IntVector& c) const { return basis.transpose() * c; }
};

inline MinusPart minus_part(const MuFourK3Lattice& m) {
    MinusPart p;
    p.basis = mu2_anti_basis(m);
    p.lattice = induced_lattice(m.lattice, p.basis, "Lambda_-", false);
    p.J = restrict_action(m.rho, p.basis);
    p.o = hermitian_from_mu4(p.lattice, p.J);
    return p;
}

// Smallest positive vector among {-1,0,1}-combinations of growing support (coordinates w.r.t. the Gram basis).
inline std::optional<IntVector> small_positive_combination(const IntMatrix& g) {
    const std::size_t k = g.rows();
    for (std::size_t support = 1; support <= k; ++support) {
        std::optional<IntVector> best;
        Int best_norm = 0;
        std::vector<std::size_t> idx(support);
        for (std::size_t i = 0; i < support; ++i) idx[i] = i;
        for (;;) {
            for (std::uint64_t signs = 0; signs < (1ULL << support); ++signs) {
                if (signs & 1ULL) continue;  // first nonzero entry positive
                IntVector c(k, 0);
                for (std::size_t i = 0; i < support; ++i) c[idx[i]] = (signs >> i) & 1ULL ? -1 : 1;
                Int nn = 0;
                for (std::size_t a = 0; a < support; ++a)
                    for (std::size_t b = 0; b < support; ++b) nn += c[idx[a]] * g(idx[a], idx[b]) * c[idx[b]];
                if (nn > 0 && (!best || nn < best_norm)) {
                    best = c;
                    best_norm = nn;
                }
            }
            std::size_t pos = support;
            while (pos > 0 && idx[pos - 1] == k - support + pos - 1) --pos;
            if (pos == 0) break;
            ++idx[pos - 1];
            for (std::size_t i = pos; i < support; ++i) idx[i] = idx[i - 1] + 1;
        }
        if (best) return best;
    }
    return std::nullopt;
}

inline IntVector reference_positive(const MinusPart& mp) {
    auto c = small_positive_combination(mp.lattice.gram());
    if (!c) throw std::logic_error("anti-invariant part has no positive vector");
    return mp.ambient(*c);
}

inline std::vector<IntVector> positive_frame(const MuFourK3Lattice& m, const MinusPart& mp) {
    IntVector w = reference_positive(mp);
    return {m.eta, w, m.rho * w};
}

// ---- invariant checks ----

namespace detail {

inline bool orbit_span_hyperbolic(const IntegerLattice& l, const std::vector<IntVector>& gens, Signature* out = nullptr) {
    IntMatrix rows = IntMatrix::from_rows(gens, l.rank());
    IntMatrix basis = row_hnf(rows);
    Signature s = inertia(basis * l.gram() * basis.transpose());
    if (out) *out = s;
    return s.positive == 1 && s.radical == 0;
}

inline std::vector<IntVector> orbit(const IntMatrix& rho, const IntVector& x) {
    std::vector<IntVector> o{x};
    for (int i = 1; i < 4; ++i) o.push_back(rho * o.back());
    return o;
}

inline Int content(const IntVector& v) {
    Int g = 0;
    for (const auto& x : v) g = gcd_int(g, x);
    return g;
}

}  // namespace detail

// Condition: no x in the mu2-fixed lattice has x.x = 0 and x.eta = 2.
// A parity certificate (x.x = x.eta mod 4 on a basis, all products even) settles it; a majorant search repeats it.
inline Claim certify_no_fixed_hyperelliptic(const MuFourK3Lattice& m, long long bound) {
    const IntegerLattice& l = m.lattice;
    IntMatrix b = mu2_fixed_basis(m);
    IntegerLattice f = induced_lattice(l, b, "fixed", true);
    IntVector eta_c;
    {
        RatMatrix t(1, l.rank());
        for (std::size_t i = 0; i < l.rank(); ++i) t(0, i) = Rat(m.eta[i]);
        auto c = coordinates_in(to_rat(b), t);
        if (!c || !is_integral(*c)) return make_claim("no-fixed-hyperelliptic", "no x in ker(rho^2-1) with x.x=0, x.eta=2", false,
                                                      {{"reason", "eta not in ker(rho^2-1)"}});
        for (std::size_t i = 0; i < b.rows(); ++i) eta_c.push_back(numer((*c)(0, i)));
    }
    bool all_even = true, parity = true;
    IntVector ge = f.pair_with(eta_c);
    for (std::size_t i = 0; i < f.rank(); ++i) {
        for (std::size_t j = 0; j < f.rank(); ++j)
            if (f.gram()(i, j) % 2 != 0) all_even = false;
        if (mod_floor(f.gram()(i, i) - ge[i], Int(4)) != 0) parity = false;
    }
    bool certificate = all_even && parity;

    std::uint64_t visited = 0, hits = 0;
    nlohmann::json first_hit;
    if (!f.degenerate() && signature(f) == Signature{1, static_cast<int>(f.rank()) - 1, 0} && f.norm(eta_c) > 0) {
        RatMatrix q = majorant(f, {eta_c});
        visited = visit_short_vectors(q, Rat(bound), [&](const I64Vector& x) {
            IntVector xv(x.begin(), x.end());
            if (f.norm(xv) == 0 && f.inner(xv, eta_c) == 2) {
                if (hits++ == 0) first_hit = json_vec(b.transpose() * xv);
            }
            return true;
        });
    } else {
        return make_claim("no-fixed-hyperelliptic", "no x in ker(rho^2-1) with x.x=0, x.eta=2", false,
                          {{"reason", "ker(rho^2-1) is not hyperbolic of corank one"}});
    }
    nlohmann::json w{{"parity_certificate", certificate},
                     {"all_products_even", all_even},
                     {"norm_matches_eta_mod_4", parity},
                     {"majorant_bound", bound},
                     {"vectors_searched", visited},
                     {"violations", hits}};
    if (hits) w["first_violation"] = first_hit;
    return make_claim("no-fixed-hyperelliptic", "no x in ker(rho^2-1) with x.x=0, x.eta=2", hits == 0 && certificate, w);
}

inline VerificationReport verify_invariants(const MuFourK3Lattice& m, long long fixed_search_bound = 20) {
    VerificationReport r;
    const IntegerLattice& l = m.lattice;
    const std::size_t n = l.rank();
    const IntMatrix id = IntMatrix::identity(n);
    r.add(make_claim("rank", "rank Lambda = 22", n == 22, {{"rank", n}}));
    if (n == 0 || m.rho.rows() != n || m.rho.cols() != n || m.eta.size() != n) {
        r.add(make_claim("shapes", "rho and eta match the rank", false));
        return r;
    }
    r.add(make_claim("even", "Lambda is even", l.even()));
    r.add(make_claim("unimodular", "|det Lambda| = 1", l.unimodular(), {{"det", json_int(l.determinant())}}));
    Signature s = signature(l);
    r.add(make_claim("signature", "Lambda has signature (3,19)", s == Signature{3, 19, 0}, {{"signature", s.str()}}));
    r.add(make_claim("rho-isometry", "rho^T G rho = G", is_isometry(l, m.rho)));
    IntMatrix r2 = m.rho * m.rho;
    r.add(make_claim("rho-order-4", "rho^4 = 1 and rho^2 != 1", r2 * r2 == id && r2 != id));
    r.add(make_claim("rho-fixes-eta", "rho eta = eta", m.rho * m.eta == m.eta));
    r.add(make_claim("eta-norm", "eta.eta = 4", l.norm(m.eta) == 4, {{"eta.eta", json_int(l.norm(m.eta))}}));

    IntMatrix fb = fixed_basis(m);
    bool fixed_ok = fb.rows() == 1 && (fb.row(0) == m.eta || fb.row(0) == -m.eta);
    r.add(make_claim("fixed-lattice", "ker(rho - 1) = Z eta", fixed_ok, {{"rank", fb.rows()}, {"basis", json_mat(fb)}}));

    IntMatrix pb = mu2_fixed_basis(m);
    IntegerLattice plus = induced_lattice(l, pb, "Lambda_+", true);
    Signature ps = signature(plus);
    r.add(make_claim("mu2-fixed-signature", "ker(rho^2 - 1) is nondegenerate of signature (1,7)", ps == Signature{1, 7, 0},
                     {{"signature", ps.str()}}));
    // indefinite odd unimodular lattices are determined by rank and signature
    bool iso = false;
    nlohmann::json iso_w;
    if (!plus.degenerate()) {
        bool halvable = true;
        for (std::size_t i = 0; i < plus.rank(); ++i)
            for (std::size_t j = 0; j < plus.rank(); ++j)
                if (plus.gram()(i, j) % 2 != 0) halvable = false;
        if (halvable) {
            IntMatrix half = plus.gram().map([](const Int& x) { return Int(x / 2); });
            IntegerLattice h(half, "half", true);
            iso = ps == Signature{1, 7, 0} && h.unimodular() && !h.even();
            iso_w = {{"half_det", json_int(h.determinant())}, {"half_odd", !h.even()}};
        } else {
            iso_w = {{"reason", "Gram has odd entries"}};
        }
    }
    r.add(make_claim("mu2-fixed-isometry", "ker(rho^2 - 1) = L(2) with L odd unimodular of signature (1,7), i.e. <2>+<-2>^7", iso,
                     iso_w));
    Int tr = trace(m.rho);
    r.add(make_claim("trace", "trace(rho) = -6, the value of 1+7(chi+chi^2+chi^3) at i", tr == -6, {{"trace", json_int(tr)}}));
    r.add(certify_no_fixed_hyperelliptic(m, fixed_search_bound));
    return r;
}

// ---- hyperelliptic vectors ----

struct HyperellipticVector {
    IntVector eps;
    IntVector alpha;  // eps - rho^2 eps
    IntVector beta;   // eps + rho^2 eps - eta
    OVector v;        // alpha in the O-structure of the anti-invariant part
};

struct HyperellipticEnumeration {
    Rat bound;
    std::uint64_t visited = 0;
    std::uint64_t isotropic = 0;     // eps.eps = 0, eps.eta = 2 within the bound
    std::uint64_t not_hyperbolic = 0;  // rejected by the span condition
    std::vector<IntVector> vectors;  // sorted
};

inline bool is_hyperelliptic_candidate(const MuFourK3Lattice& m, const IntVector& eps) {
    const IntegerLattice& l = m.lattice;
    if (l.norm(eps) != 0 || l.inner(eps, m.eta) != 2) return false;
    auto gens = detail::orbit(m.rho, eps);
    gens.push_back(m.eta);
    return detail::orbit_span_hyperbolic(l, gens);
}

// All eps with eps.eps = 0, eps.eta = 2, hyperbolic orbit span and majorant height <= bound.
// The majorant uses the frame (eta, w, rho w) with w = reference_positive.
inline HyperellipticEnumeration enumerate_hyperelliptic(const MuFourK3Lattice& m, const MinusPart& mp, const Rat& bound) {
    HyperellipticEnumeration out;
    out.bound = bound;
    if (bound < 1) return out;
    const IntegerLattice& l = m.lattice;
    const std::size_t n = l.rank();
    auto frame = positive_frame(m, mp);
    RatMatrix q = majorant(l, frame);

    std::vector<std::int64_t> g64(n * n), ge64(n);
    IntVector ge = l.pair_with(m.eta);
    for (std::size_t i = 0; i < n; ++i) {
        ge64[i] = to_i64(ge[i]);
        for (std::size_t j = 0; j < n; ++j) g64[i * n + j] = to_i64(l.gram()(i, j));
    }
    out.visited = visit_short_vectors(q, bound, [&](const I64Vector& x) {
        __int128 e = 0;
        for (std::size_t i = 0; i < n; ++i) e += static_cast<__int128>(x[i]) * ge64[i];
        if (e != 2) return true;
        __int128 s = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            __int128 t = 0;
            for (std::size_t j = 0; j < n; ++j) t += static_cast<__int128>(g64[i * n + j]) * x[j];
            s += t * x[i];
        }
        if (s != 0) return true;
        IntVector xv(x.begin(), x.end());
        RatVector xr = to_rat(xv);
        Rat h = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) h += xr[i] * q(i, j) * xr[j];
        if (h > bound) return true;
        ++out.isotropic;
        if (is_hyperelliptic_candidate(m, xv))
            out.vectors.push_back(xv);
        else
            ++out.not_hyperbolic;
        return true;
    });
    std::sort(out.vectors.begin(), out.vectors.end());
    return out;
}

struct Decomposition {
    HyperellipticVector hv;
    VerificationReport checks;
};

inline Decomposition decompose_hyperelliptic(const MuFourK3Lattice& m, const MinusPart& mp, const IntVector& eps) {
    const IntegerLattice& l = m.lattice;
    if (eps.size() != l.rank()) throw std::invalid_argument("vector length does not match rank");
    if (l.norm(eps) != 0) throw std::invalid_argument("eps.eps != 0");
    if (l.inner(eps, m.eta) != 2) throw std::invalid_argument("eps.eta != 2");
    Decomposition d;
    HyperellipticVector& hv = d.hv;
    hv.eps = eps;
    IntVector e2 = m.rho * (m.rho * eps);
    hv.alpha = eps - e2;
    hv.beta = eps + e2 - m.eta;
    auto& r = d.checks;
    r.add(make_claim("sum", "2 eps = eta + alpha + beta", scale(Int(2), eps) == m.eta + hv.alpha + hv.beta));
    Int aa = l.norm(hv.alpha), bb = l.norm(hv.beta);
    r.add(make_claim("alpha-norm", "alpha.alpha = -2", aa == -2, {{"alpha.alpha", json_int(aa)}}));
    r.add(make_claim("beta-norm", "beta.beta = -2", bb == -2, {{"beta.beta", json_int(bb)}}));
    r.add(make_claim("alpha-anti", "rho^2 alpha = -alpha", m.rho * (m.rho * hv.alpha) == -hv.alpha));
    r.add(make_claim("beta-anti", "rho beta = -beta", m.rho * hv.beta == -hv.beta));
    Int c = detail::content(eps);
    r.add(make_claim("primitive", "eps is primitive", c == 1, {{"content", json_int(c)}}));
    Int ee2 = l.inner(eps, e2);
    r.add(make_claim("orbit-product", "eps.rho^2(eps) = 1", ee2 == 1, {{"eps.rho^2 eps", json_int(ee2)}}));

    hv.v = mp.o.to_module(mp.coords(hv.alpha));
    GaussianInt hvv = mp.o.hermitian.h(hv.v, hv.v);
    r.add(make_claim("hermitian-norm", "h(v,v) = -2", hvv == GaussianInt(-2), {{"h(v,v)", hvv.str()}}));
    bool summand = false;
    if (!hvv.is_zero()) summand = orthogonal_summand_check(mp.o.hermitian, hv.v);
    r.add(make_claim("summand", "O v is an orthogonal direct summand", summand));
    return d;
}

// Saturated complement of {alpha, rho alpha} in the anti-invariant part, compared with U(2)+U(2)+D8(-1).
struct ComplementGenus {
    Signature signature;
    FiniteQuadraticForm form;
    VerificationReport checks;
};

inline IntegerLattice hyperelliptic_reference_lattice() {
    return direct_sum({rescale(make_standard("U"), 2), rescale(make_standard("U"), 2), rescale(make_standard("D8"), -1)});
}

inline ComplementGenus hyperelliptic_complement_genus(const MuFourK3Lattice& m, const MinusPart& mp,
                                                      const HyperellipticVector& hv) {
    (void)m;
    IntVector a = mp.coords(hv.alpha);
    IntVector ja = mp.J * a;
    Sublattice k = orthogonal_complement(mp.lattice, {a, ja});
    ComplementGenus out;
    out.signature = signature(k.lattice);
    IntegerLattice ref = hyperelliptic_reference_lattice();
    Signature rs = signature(ref);
    out.checks.add(make_claim("complement-signature", "complement of Z alpha + Z rho(alpha) has signature (2,10)",
                              out.signature == rs, {{"signature", out.signature.str()}}));
    bool form_ok = false;
    nlohmann::json w;
    if (!k.lattice.degenerate() && k.lattice.even()) {
        out.form = discriminant_form(k.lattice);
        FiniteQuadraticForm rf = discriminant_form(ref);
        form_ok = isometric(out.form, rf);
        w["order"] = out.form.size();
        nlohmann::json counts = nlohmann::json::object();
        for (auto& [v, c] : out.form.value_counts(Normalization::Full)) counts[to_string(v)] = c;
        w["q_counts"] = counts;
    } else {
        w["reason"] = "complement is degenerate or odd";
    }
    out.checks.add(make_claim("complement-form", "discriminant form isometric to that of U(2)+U(2)+D8(-1)", form_ok, w));
    return out;
}

// eps1.eps2 for two hyperelliptic vectors sharing a rho-invariant hyperbolic sublattice.
struct RigidCheck {
    bool distinct = false;
    bool hypothesis = false;
    Int product = 0;
};

inline RigidCheck check_rigid(const MuFourK3Lattice& m, const IntVector& e1, const IntVector& e2) {
    RigidCheck r;
    r.distinct = e1 != e2;
    const IntegerLattice& l = m.lattice;
    r.product = l.inner(e1, e2);
    if (!r.distinct) return r;
    bool iso = l.norm(e1) == 0 && l.norm(e2) == 0 && l.inner(e1, m.eta) == 2 && l.inner(e2, m.eta) == 2;
    if (!iso) return r;
    // a degenerate minimal span cannot sit inside a hyperbolic lattice containing eta
    auto gens = detail::orbit(m.rho, e1);
    auto o2 = detail::orbit(m.rho, e2);
    gens.insert(gens.end(), o2.begin(), o2.end());
    gens.push_back(m.eta);
    r.hypothesis = detail::orbit_span_hyperbolic(l, gens);
    return r;
}

// ---- discriminant obstruction ----

inline VerificationReport check_hstrata_obstruction() {
    VerificationReport r;
    IntegerLattice ref = hyperelliptic_reference_lattice();
    auto dg = discriminant_group(ref);
    const auto& f = dg.form;
    nlohmann::json table = nlohmann::json::array();
    for (std::uint64_t i = 0; i < f.size(); ++i) {
        auto e = f.element(i);
        table.push_back({{"elt", e}, {"q", to_string(f.q(e).value())}, {"half_q", to_string(f.half_q(e).value())}});
    }
    auto hit = represents(f, Rat(-1, 4), Normalization::Half);
    nlohmann::json counts = nlohmann::json::object();
    for (auto& [v, c] : f.value_counts(Normalization::Half)) counts[to_string(v)] = c;
    r.add(make_claim("order", "|disc(U(2)+U(2)+D8(-1))| = 64", f.size() == 64, {{"order", f.size()}}));
    r.add(make_claim("not-represented",
                     "q/2 on disc(U(2)+U(2)+D8(-1)) does not take the value -1/4 mod Z, so no (-2)-vector splits off",
                     !hit.has_value(), {{"half_q_counts", counts}, {"table", table}}));
    auto control = discriminant_form(make_standard("<-2>"));
    auto w = represents(control, Rat(-1, 4), Normalization::Half);
    nlohmann::json cw = nlohmann::json::object();
    if (w) cw["witness"] = *w;
    r.add(make_claim("control", "q/2 on disc(<-2>) takes the value -1/4", w.has_value(), cw));
    return r;
}

// ---- arrangement models from hyperelliptic vectors ----

inline GVector to_gvector(const OVector& v) {
    GVector g;
    for (const auto& x : v) g.push_back(to_rat(x));
    return g;
}

inline GaussianRatMatrix to_rat(const GaussianIntMatrix& m) {
    return m.map([](const GaussianInt& x) { return to_rat(x); });
}

// Orthogonal positive vectors spanning a maximal positive subspace, by exact Gram-Schmidt (primitive integer vectors).
inline std::vector<IntVector> positive_orthogonal_frame(const IntegerLattice& l) {
    const std::size_t n = l.rank();
    std::vector<RatVector> rest;
    for (std::size_t i = 0; i < n; ++i) rest.push_back(to_rat(unit_vector(n, i)));
    std::vector<IntVector> frame;
    while (!rest.empty()) {
        std::size_t pick = rest.size();
        for (std::size_t i = 0; i < rest.size() && pick == rest.size(); ++i)
            if (l.inner(rest[i], rest[i]) != 0) pick = i;
        if (pick == rest.size()) {
            bool fixed = false;
            for (std::size_t i = 0; i < rest.size() && !fixed; ++i)
                for (std::size_t j = i + 1; j < rest.size() && !fixed; ++j)
                    if (l.inner(rest[i], rest[j]) != 0) {
                        rest[i] = rest[i] + rest[j];
                        fixed = true;
                    }
            if (!fixed) break;  // radical
            continue;
        }
        RatVector v = rest[pick];
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
        Rat vv = l.inner(v, v);
        for (auto& r : rest) r = r - scale(l.inner(r, v) / vv, v);
        if (vv > 0) {
            Int den = 1;
            for (const auto& x : v) den = lcm_int(den, denom(x));
            IntVector iv;
            Int g = 0;
            for (const auto& x : v) {
                iv.push_back(numer(x * Rat(den)));
                g = gcd_int(g, iv.back());
            }
            for (auto& x : iv) x /= g;
            frame.push_back(iv);
        }
    }
    return frame;
}

// Nonzero isotropic vector of an indefinite lattice (coordinates), searched by majorant height.
inline std::optional<IntVector> find_isotropic(const IntegerLattice& l, long long max_bound = 1 << 16) {
    Signature s = signature(l);
    if (s.positive == 0 || s.negative == 0 || s.radical != 0) return std::nullopt;
    std::vector<IntVector> frame = positive_orthogonal_frame(l);
    RatMatrix q = majorant(l, frame);
    for (long long bound = 4; bound <= max_bound; bound *= 2) {
        std::optional<IntVector> hit;
        visit_short_vectors(q, Rat(bound), [&](const I64Vector& x) {
            IntVector v(x.begin(), x.end());
            if (l.norm(v) != 0) return true;
            if (!hit || v < *hit) hit = v;
            return true;
        });
        if (hit) return hit;
    }
    return std::nullopt;
}

// Isotropic vector of the anti-invariant part orthogonal to alpha and rho(alpha), in Lambda coordinates.
inline std::optional<IntVector> isotropic_in_complement(const MinusPart& mp, const HyperellipticVector& hv) {
    IntVector a = mp.coords(hv.alpha);
    Sublattice k = orthogonal_complement(mp.lattice, {a, mp.J * a});
    auto x = find_isotropic(k.lattice);
    if (!x) return std::nullopt;
    return mp.ambient(k.basis.transpose() * *x);
}

struct HyperellipticModels {
    IntVector eps1, eps2;
    ArrangementModel pair;    // two distinct hyperelliptic hyperplanes
    ArrangementModel single;  // one hyperplane and an isotropic line inside it
};

inline std::optional<HyperellipticModels> hyperelliptic_models(const MuFourK3Lattice& m, const MinusPart& mp,
                                                               const std::vector<IntVector>& vectors) {
    if (vectors.empty()) return std::nullopt;
    HyperellipticModels out;
    GaussianRatMatrix gram = to_rat(mp.o.hermitian.gram());
    auto d1 = decompose_hyperelliptic(m, mp, vectors.front());
    GVector v1 = to_gvector(d1.hv.v);
    out.eps1 = vectors.front();
    ArrangementModel probe{gram, {v1}, {}};
    std::optional<GVector> v2;
    for (std::size_t i = 1; i < vectors.size() && !v2; ++i) {
        auto d = decompose_hyperelliptic(m, mp, vectors[i]);
        GVector v = to_gvector(d.hv.v);
        if (probe.line(v) != probe.line(v1)) {
            v2 = v;
            out.eps2 = vectors[i];
        }
    }
    if (!v2) return std::nullopt;
    out.pair = ArrangementModel{gram, {v1, *v2}, {}};
    auto iso = isotropic_in_complement(mp, d1.hv);
    if (!iso) return std::nullopt;
    GVector iv = to_gvector(mp.o.to_module(mp.coords(*iso)));
    out.single = ArrangementModel{gram, {v1}, {iv}};
    return out;
}

}  // namespace quartlat
