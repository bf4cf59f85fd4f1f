#pragma once

#include "lattice.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace quartlat {

// A rational number modulo the integer Modulus, kept in [0, Modulus).
template <int Modulus>
class RationalMod {
public:
    RationalMod() = default;
    RationalMod(const Rat& r) : v_(reduce(r)) {}  // NOLINT(google-explicit-constructor)
    RationalMod(long long n, long long d) : v_(reduce(Rat(n) / Rat(d))) {}

    const Rat& value() const { return v_; }
    Int num() const { return numer(v_); }
    Int den() const { return denom(v_); }

    friend RationalMod operator+(const RationalMod& a, const RationalMod& b) { return RationalMod(a.v_ + b.v_); }
    friend RationalMod operator-(const RationalMod& a, const RationalMod& b) { return RationalMod(a.v_ - b.v_); }
    friend RationalMod operator-(const RationalMod& a) { return RationalMod(-a.v_); }
    friend RationalMod operator*(const Int& n, const RationalMod& a) { return RationalMod(Rat(n) * a.v_); }
    friend bool operator==(const RationalMod& a, const RationalMod& b) { return a.v_ == b.v_; }
    friend bool operator!=(const RationalMod& a, const RationalMod& b) { return a.v_ != b.v_; }
    friend bool operator<(const RationalMod& a, const RationalMod& b) { return a.v_ < b.v_; }

    std::string str() const { return to_string(v_); }

private:
    static Rat reduce(const Rat& r) {
        const Rat m(Modulus);
        Int k = floor_rat(r / m);
        return r - Rat(k) * m;
    }
    Rat v_ = 0;
};

using QmodZ = RationalMod<1>;
using Qmod2Z = RationalMod<2>;

inline QmodZ half(const Qmod2Z& q) { return QmodZ(q.value() / 2); }

using GroupElement = std::vector<std::int64_t>;

enum class Normalization { Full, Half };  // Full: q in Q/2Z; Half: q/2 in Q/Z

class FiniteQuadraticForm {
public:
    FiniteQuadraticForm() = default;

    FiniteQuadraticForm(std::vector<std::int64_t> orders, std::vector<Qmod2Z> generator_q,
                        std::vector<std::vector<QmodZ>> generator_b)
        : orders_(std::move(orders)), gq_(std::move(generator_q)), gb_(std::move(generator_b)) {
        const std::size_t k = orders_.size();
        if (gq_.size() != k || gb_.size() != k) throw std::invalid_argument("finite quadratic form data size mismatch");
        for (std::size_t i = 0; i < k; ++i) {
            if (orders_[i] <= 1) throw std::invalid_argument("cyclic orders must exceed 1");
            if (gb_[i].size() != k) throw std::invalid_argument("bilinear table is not square");
            if (gb_[i][i] != QmodZ(gq_[i].value())) throw std::invalid_argument("q and b disagree on a generator");
            for (std::size_t j = 0; j < k; ++j)
                if (gb_[i][j] != gb_[j][i]) throw std::invalid_argument("bilinear table is not symmetric");
        }
        size_ = 1;
        for (auto o : orders_) {
            if (size_ > (std::uint64_t(1) << 40) / static_cast<std::uint64_t>(o))
                throw std::overflow_error("discriminant group too large");
            size_ *= static_cast<std::uint64_t>(o);
        }
    }

    const std::vector<std::int64_t>& orders() const { return orders_; }
    std::size_t generators() const { return orders_.size(); }
    std::uint64_t size() const { return size_; }
    const Qmod2Z& generator_q(std::size_t i) const { return gq_[i]; }
    const QmodZ& generator_b(std::size_t i, std::size_t j) const { return gb_[i][j]; }

    // Mixed-radix enumeration: the last coordinate varies fastest.
    GroupElement element(std::uint64_t index) const {
        GroupElement e(orders_.size(), 0);
        for (std::size_t i = orders_.size(); i-- > 0;) {
            e[i] = static_cast<std::int64_t>(index % static_cast<std::uint64_t>(orders_[i]));
            index /= static_cast<std::uint64_t>(orders_[i]);
        }
        return e;
    }

    std::uint64_t index_of(const GroupElement& e) const {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < orders_.size(); ++i)
            idx = idx * static_cast<std::uint64_t>(orders_[i]) + static_cast<std::uint64_t>(e[i]);
        return idx;
    }

    GroupElement normalize(GroupElement e) const {
        check(e);
        for (std::size_t i = 0; i < e.size(); ++i) {
            e[i] %= orders_[i];
            if (e[i] < 0) e[i] += orders_[i];
        }
        return e;
    }

    GroupElement add(const GroupElement& x, const GroupElement& y) const {
        check(x);
        check(y);
        GroupElement z(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) z[i] = (x[i] + y[i]) % orders_[i];
        return z;
    }

    GroupElement multiple(std::int64_t n, const GroupElement& x) const {
        GroupElement z(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            __int128 v = static_cast<__int128>(n) * x[i];
            v %= orders_[i];
            if (v < 0) v += orders_[i];
            z[i] = static_cast<std::int64_t>(v);
        }
        return z;
    }

    std::int64_t order_of(const GroupElement& x) const {
        std::int64_t o = 1;
        for (std::size_t i = 0; i < x.size(); ++i) {
            std::int64_t oi = orders_[i] / std::gcd(orders_[i], x[i]);
            o = std::lcm(o, oi);
        }
        return o;
    }

    Qmod2Z q(const GroupElement& x) const {
        check(x);
        Rat s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0) continue;
            s += Rat(x[i]) * Rat(x[i]) * gq_[i].value();
            for (std::size_t j = i + 1; j < x.size(); ++j)
                if (x[j] != 0) s += Rat(2) * Rat(x[i]) * Rat(x[j]) * gb_[i][j].value();
        }
        return Qmod2Z(s);
    }

    QmodZ b(const GroupElement& x, const GroupElement& y) const {
        check(x);
        check(y);
        Rat s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < y.size(); ++j)
                if (y[j] != 0) s += Rat(x[i]) * Rat(y[j]) * gb_[i][j].value();
        }
        return QmodZ(s);
    }

    QmodZ half_q(const GroupElement& x) const { return half(q(x)); }

    FiniteQuadraticForm negated() const {
        std::vector<Qmod2Z> q;
        for (const auto& v : gq_) q.push_back(-v);
        auto b = gb_;
        for (auto& row : b)
            for (auto& v : row) v = -v;
        return FiniteQuadraticForm(orders_, q, b);
    }

    FiniteQuadraticForm orthogonal_sum(const FiniteQuadraticForm& o) const {
        std::vector<std::int64_t> orders = orders_;
        orders.insert(orders.end(), o.orders_.begin(), o.orders_.end());
        std::vector<Qmod2Z> q = gq_;
        q.insert(q.end(), o.gq_.begin(), o.gq_.end());
        const std::size_t k = orders.size(), k1 = orders_.size();
        std::vector<std::vector<QmodZ>> b(k, std::vector<QmodZ>(k));
        for (std::size_t i = 0; i < k1; ++i)
            for (std::size_t j = 0; j < k1; ++j) b[i][j] = gb_[i][j];
        for (std::size_t i = 0; i < o.generators(); ++i)
            for (std::size_t j = 0; j < o.generators(); ++j) b[k1 + i][k1 + j] = o.gb_[i][j];
        return FiniteQuadraticForm(orders, q, b);
    }

    // Count of each q-value (Q/2Z) over the whole group.
    std::map<Rat, std::uint64_t> value_counts(Normalization norm = Normalization::Full) const {
        std::map<Rat, std::uint64_t> counts;
        for (std::uint64_t i = 0; i < size_; ++i) {
            auto v = q(element(i));
            counts[norm == Normalization::Full ? v.value() : half(v).value()]++;
        }
        return counts;
    }

private:
    void check(const GroupElement& x) const {
        if (x.size() != orders_.size()) throw std::invalid_argument("group element has wrong length");
    }

    std::vector<std::int64_t> orders_;
    std::vector<Qmod2Z> gq_;
    std::vector<std::vector<QmodZ>> gb_;
    std::uint64_t size_ = 1;
};

// L*/L with explicit dual-vector generators.
struct DiscriminantGroup {
    IntegerLattice lattice;
    FiniteQuadraticForm form;
    RatMatrix generators;  // rows: dual vectors in lattice coordinates
    IntMatrix coord_map;   // rows i: d_i * (V^{-1})_i, so coords(x) = coord_map * x mod orders

    GroupElement class_of(const RatVector& x) const {
        GroupElement e(form.generators(), 0);
        for (std::size_t i = 0; i < form.generators(); ++i) {
            Rat s = 0;
            for (std::size_t j = 0; j < x.size(); ++j) s += Rat(coord_map(i, j)) * x[j];
            if (denom(s) != 1) throw std::invalid_argument("vector is not in the dual lattice");
            Int c = mod_floor(numer(s), Int(form.orders()[i]));
            e[i] = static_cast<std::int64_t>(c);
        }
        return e;
    }

    RatVector lift(const GroupElement& e) const {
        RatVector v(lattice.rank(), Rat(0));
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j) v[j] += Rat(e[i]) * generators(i, j);
        return v;
    }

    // Matrix a with g(gen_i) = sum_j a(i,j) gen_j, for an isometry g of the lattice.
    IntMatrix induced_action(const IntMatrix& g) const {
        const std::size_t k = form.generators();
        IntMatrix a(k, k);
        for (std::size_t i = 0; i < k; ++i) {
            RatVector img = to_rat(g) * generators.row(i);
            auto e = class_of(img);
            for (std::size_t j = 0; j < k; ++j) a(i, j) = e[j];
        }
        return a;
    }
};

inline DiscriminantGroup discriminant_group(const IntegerLattice& l) {
    if (l.degenerate()) throw std::invalid_argument("discriminant form requires a nondegenerate lattice");
    if (!l.even()) throw std::invalid_argument("discriminant form requires an even lattice");
    const std::size_t n = l.rank();
    auto s = smith_normal_form(l.gram());
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
        if (s.diagonal[i] > 1) idx.push_back(i);
    const std::size_t k = idx.size();
    std::vector<std::int64_t> orders;
    RatMatrix gens(k, n);
    IntMatrix cmap(k, n);
    for (std::size_t a = 0; a < k; ++a) {
        std::size_t i = idx[a];
        orders.push_back(to_i64(s.diagonal[i]));
        for (std::size_t j = 0; j < n; ++j) {
            gens(a, j) = Rat(s.V(j, i), s.diagonal[i]);
            cmap(a, j) = s.diagonal[i] * s.Vinv(i, j);
        }
    }
    std::vector<Qmod2Z> q;
    std::vector<std::vector<QmodZ>> b(k, std::vector<QmodZ>(k));
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t c = 0; c < k; ++c) {
            Rat v = l.inner(gens.row(a), gens.row(c));
            b[a][c] = QmodZ(v);
            if (a == c) q.emplace_back(v);
        }
    }
    return {l, FiniteQuadraticForm(orders, q, b), gens, cmap};
}

inline FiniteQuadraticForm discriminant_form(const IntegerLattice& l) { return discriminant_group(l).form; }

// Exhaustive search for an element whose q (Full) or q/2 (Half) equals target.
inline std::optional<GroupElement> represents(const FiniteQuadraticForm& f, const Rat& target, Normalization norm) {
    for (std::uint64_t i = 0; i < f.size(); ++i) {
        auto e = f.element(i);
        auto v = f.q(e);
        bool hit = norm == Normalization::Full ? v == Qmod2Z(target) : half(v) == QmodZ(target);
        if (hit) return e;
    }
    return std::nullopt;
}

// Checks q(x+y)-q(x)-q(y) = 2b(x,y) and q(nx) = n^2 q(x) over the whole group.
inline bool check_form_axioms(const FiniteQuadraticForm& f, std::string* failure = nullptr) {
    for (std::uint64_t i = 0; i < f.size(); ++i) {
        auto x = f.element(i);
        for (std::int64_t n = 2; n <= 3; ++n)
            if (f.q(f.multiple(n, x)) != Qmod2Z(Rat(n * n) * f.q(x).value())) {
                if (failure) *failure = "q(nx) != n^2 q(x)";
                return false;
            }
        for (std::uint64_t j = 0; j < f.size(); ++j) {
            auto y = f.element(j);
            Qmod2Z lhs = f.q(f.add(x, y)) - f.q(x) - f.q(y);
            if (lhs != Qmod2Z(Rat(2) * f.b(x, y).value())) {
                if (failure) *failure = "polarization identity fails";
                return false;
            }
        }
    }
    return true;
}

// ---- searches for (anti-)isometries between finite quadratic forms ----

namespace detail {

// Dense integer tables: q scaled by den into Z/2den, b scaled into Z/den.
struct FormTables {
    const FiniteQuadraticForm* form = nullptr;
    std::int64_t den = 1;
    std::vector<std::int64_t> q;
    std::vector<std::int64_t> b;  // size*size, or empty when too large
    std::vector<GroupElement> elements;
    std::vector<std::int64_t> order;

    explicit FormTables(const FiniteQuadraticForm& f, bool with_b) : form(&f) {
        Int d = 1;
        for (std::size_t i = 0; i < f.generators(); ++i) {
            d = lcm_int(d, f.generator_q(i).den());
            for (std::size_t j = 0; j < f.generators(); ++j) d = lcm_int(d, f.generator_b(i, j).den());
        }
        den = to_i64(d);
        const std::uint64_t n = f.size();
        elements.reserve(n);
        for (std::uint64_t i = 0; i < n; ++i) {
            elements.push_back(f.element(i));
            q.push_back(to_i64(numer(f.q(elements.back()).value() * Rat(den))));
            order.push_back(f.order_of(elements.back()));
        }
        if (with_b) {
            b.resize(n * n);
            for (std::uint64_t i = 0; i < n; ++i)
                for (std::uint64_t j = i; j < n; ++j) {
                    auto v = to_i64(numer(f.b(elements[i], elements[j]).value() * Rat(den)));
                    b[i * n + j] = v;
                    b[j * n + i] = v;
                }
        }
    }

    std::int64_t scaled_q(const Qmod2Z& v) const {
        Rat s = v.value() * Rat(den);
        if (denom(s) != 1) return -1;
        return to_i64(numer(s));
    }
    std::int64_t scaled_b(const QmodZ& v) const {
        Rat s = v.value() * Rat(den);
        if (denom(s) != 1) return -1;
        return to_i64(numer(s));
    }
};

}  // namespace detail

struct IsometrySearchOptions {
    bool anti = true;                          // q2(g x) = -q1(x) when set, q2(g x) = q1(x) otherwise
    std::optional<IntMatrix> source_action;    // on generators of the source
    std::optional<IntMatrix> target_action;    // on generators of the target
    std::uint64_t limit = 0;                   // stop after this many maps (0 = unlimited)
};

// Depth-first search over generator images. The callback receives the images (row i = image of generator i)
// and returns false to stop the search. Returns the number of maps visited.
inline std::uint64_t search_isometries(const FiniteQuadraticForm& src, const FiniteQuadraticForm& dst,
                                       const IsometrySearchOptions& opt,
                                       const std::function<bool(const std::vector<GroupElement>&)>& visit) {
    if (src.size() != dst.size()) return 0;
    const std::size_t k = src.generators();
    if (k == 0) {
        visit({});
        return 1;
    }
    const bool small = dst.size() <= 1024;
    detail::FormTables t(dst, small);
    const std::uint64_t n = dst.size();

    std::vector<std::int64_t> want_q(k);
    std::vector<std::vector<std::int64_t>> want_b(k, std::vector<std::int64_t>(k));
    for (std::size_t i = 0; i < k; ++i) {
        Qmod2Z v = opt.anti ? -src.generator_q(i) : src.generator_q(i);
        want_q[i] = t.scaled_q(v);
        for (std::size_t j = 0; j < k; ++j) {
            QmodZ w = opt.anti ? -src.generator_b(i, j) : src.generator_b(i, j);
            want_b[i][j] = t.scaled_b(w);
        }
    }

    // equivariance bookkeeping: generator i can be checked once all generators in its image are placed
    const bool equivariant = opt.source_action && opt.target_action;
    std::vector<std::vector<std::size_t>> check_at(k);
    if (equivariant) {
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t last = i;
            for (std::size_t j = 0; j < k; ++j)
                if (mod_floor((*opt.source_action)(i, j), Int(src.orders()[j])) != 0) last = std::max(last, j);
            check_at[last].push_back(i);
        }
    }

    std::vector<std::vector<std::uint64_t>> candidates(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::uint64_t y = 0; y < n; ++y) {
            if (src.orders()[i] % t.order[y] != 0) continue;
            if (want_q[i] < 0 || t.q[y] != want_q[i]) continue;
            candidates[i].push_back(y);
        }
    }

    auto b_of = [&](std::uint64_t a, std::uint64_t c) -> std::int64_t {
        if (small) return t.b[a * n + c];
        return to_i64(numer(dst.b(t.elements[a], t.elements[c]).value() * Rat(t.den)));
    };

    auto apply_target = [&](const GroupElement& y) {
        GroupElement z(dst.generators(), 0);
        for (std::size_t a = 0; a < y.size(); ++a) {
            if (y[a] == 0) continue;
            GroupElement row(dst.generators());
            for (std::size_t c = 0; c < dst.generators(); ++c)
                row[c] = static_cast<std::int64_t>(mod_floor((*opt.target_action)(a, c), Int(dst.orders()[c])));
            z = dst.add(z, dst.multiple(y[a], row));
        }
        return z;
    };

    std::vector<std::uint64_t> chosen(k);
    std::vector<GroupElement> images(k);
    std::uint64_t visited = 0;
    bool stop = false;

    std::function<void(std::size_t)> dfs = [&](std::size_t i) {
        if (stop) return;
        if (i == k) {
            ++visited;
            if (!visit(images)) stop = true;
            if (opt.limit && visited >= opt.limit) stop = true;
            return;
        }
        for (auto y : candidates[i]) {
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j)
                if (want_b[i][j] < 0 || b_of(y, chosen[j]) != want_b[i][j]) ok = false;
            if (!ok) continue;
            chosen[i] = y;
            images[i] = t.elements[y];
            if (equivariant) {
                for (auto g : check_at[i]) {
                    // image of source_action(gen_g) under the map
                    GroupElement lhs(dst.generators(), 0);
                    for (std::size_t j = 0; j < k; ++j) {
                        auto c = static_cast<std::int64_t>(mod_floor((*opt.source_action)(g, j), Int(src.orders()[j])));
                        if (c) lhs = dst.add(lhs, dst.multiple(c, images[j]));
                    }
                    if (lhs != apply_target(images[g])) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
            }
            dfs(i + 1);
            if (stop) return;
        }
    };
    dfs(0);
    return visited;
}

inline std::optional<std::vector<GroupElement>> find_isometry(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
    std::optional<std::vector<GroupElement>> found;
    IsometrySearchOptions opt;
    opt.anti = false;
    opt.limit = 1;
    search_isometries(a, b, opt, [&](const std::vector<GroupElement>& imgs) {
        found = imgs;
        return false;
    });
    return found;
}

inline bool isometric(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
    if (a.size() != b.size()) return false;
    if (a.value_counts() != b.value_counts()) return false;
    return find_isometry(a, b).has_value();
}

// ---- gluing ----

struct GlueMap {
    FiniteQuadraticForm source;
    FiniteQuadraticForm target;
    std::vector<GroupElement> images;  // image of source generator i
    RatMatrix basis;                   // overlattice basis rows in coordinates of L1 ⊕ L2
};

struct GlueResult {
    IntegerLattice overlattice;
    GlueMap map;
};

struct GlueOptions {
    std::optional<std::pair<IntMatrix, IntMatrix>> equivariance;  // isometries of L1 and L2
    std::uint64_t max_results = 0;                                 // 0 = all
};

inline RatMatrix overlattice_basis(const DiscriminantGroup& d1, const DiscriminantGroup& d2,
                                   const std::vector<GroupElement>& images) {
    const std::size_t n1 = d1.lattice.rank(), n2 = d2.lattice.rank(), n = n1 + n2;
    std::vector<RatVector> gens;
    for (std::size_t i = 0; i < n; ++i) gens.push_back(to_rat(unit_vector(n, i)));
    for (std::size_t i = 0; i < images.size(); ++i) {
        RatVector v(n, Rat(0));
        auto a = d1.generators.row(i);
        auto b = d2.lift(images[i]);
        for (std::size_t j = 0; j < n1; ++j) v[j] = a[j];
        for (std::size_t j = 0; j < n2; ++j) v[n1 + j] = b[j];
        gens.push_back(v);
    }
    Int den = 1;
    for (const auto& g : gens)
        for (const auto& x : g) den = lcm_int(den, denom(x));
    IntMatrix scaled(gens.size(), n);
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) scaled(i, j) = numer(gens[i][j] * Rat(den));
    IntMatrix h = row_hnf(scaled);
    RatMatrix basis(h.rows(), n);
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) basis(i, j) = Rat(h(i, j), den);
    return basis;
}

inline std::vector<GlueResult> glue_overlattices(const IntegerLattice& l1, const IntegerLattice& l2,
                                                 const GlueOptions& opt = {}) {
    if (abs_int(l1.determinant()) != abs_int(l2.determinant()))
        throw std::invalid_argument("determinant mismatch: |det L1| = " + abs_int(l1.determinant()).str() +
                                    ", |det L2| = " + abs_int(l2.determinant()).str());
    auto d1 = discriminant_group(l1);
    auto d2 = discriminant_group(l2);
    IsometrySearchOptions so;
    so.anti = true;
    so.limit = opt.max_results;
    if (opt.equivariance) {
        if (!is_isometry(l1, opt.equivariance->first) || !is_isometry(l2, opt.equivariance->second))
            throw std::invalid_argument("equivariance maps must be isometries");
        so.source_action = d1.induced_action(opt.equivariance->first);
        so.target_action = d2.induced_action(opt.equivariance->second);
    }
    const IntegerLattice sum = direct_sum({l1, l2});
    std::vector<GlueResult> out;
    search_isometries(d1.form, d2.form, so, [&](const std::vector<GroupElement>& images) {
        RatMatrix basis = overlattice_basis(d1, d2, images);
        if (basis.rows() != sum.rank()) throw std::logic_error("overlattice basis has wrong rank");
        RatMatrix g = basis * to_rat(sum.gram()) * basis.transpose();
        if (!is_integral(g)) throw std::logic_error("glue produced a non-integral form");
        IntegerLattice over(to_int(g), "glue(" + l1.label() + "," + l2.label() + ")");
        if (!over.even() || !over.unimodular()) throw std::logic_error("glued lattice is not even unimodular");
        out.push_back({over, GlueMap{d1.form, d2.form, images, basis}});
        return true;
    });
    return out;
}

inline std::uint64_t count_glue_maps(const IntegerLattice& l1, const IntegerLattice& l2,
                                     const std::optional<std::pair<IntMatrix, IntMatrix>>& equivariance,
                                     std::uint64_t cap = 0) {
    auto d1 = discriminant_group(l1);
    auto d2 = discriminant_group(l2);
    IsometrySearchOptions so;
    so.anti = true;
    so.limit = cap;
    if (equivariance) {
        so.source_action = d1.induced_action(equivariance->first);
        so.target_action = d2.induced_action(equivariance->second);
    }
    return search_isometries(d1.form, d2.form, so, [](const std::vector<GroupElement>&) { return true; });
}

}  // namespace quartlat
