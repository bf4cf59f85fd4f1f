#pragma once

#include "gaussian.hpp"
#include "linalg.hpp"
#include "matrix.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace quartlat {

using GVector = Vec<GaussianRat>;
using GaussianRatMatrix = Matrix<GaussianRat>;

// Univariate polynomial over Q(i), coefficient k multiplies t^k. Kept trimmed.
using UPoly = std::vector<GaussianRat>;

inline void trim(UPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline int degree(const UPoly& p) { return static_cast<int>(p.size()) - 1; }  // -1 for zero

inline UPoly operator+(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

inline UPoly operator-(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

inline UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

inline UPoly scale(const GaussianRat& s, const UPoly& a) {
    UPoly r(a);
    for (auto& c : r) c = s * c;
    trim(r);
    return r;
}

inline GaussianRat evaluate(const UPoly& p, const GaussianRat& t) {
    GaussianRat s;
    for (std::size_t i = p.size(); i-- > 0;) s = s * t + p[i];
    return s;
}

inline UPoly derivative(const UPoly& p) {
    UPoly r;
    for (std::size_t i = 1; i < p.size(); ++i) r.push_back(GaussianRat(Rat(static_cast<long long>(i))) * p[i]);
    trim(r);
    return r;
}

inline std::pair<UPoly, UPoly> divmod(UPoly a, const UPoly& b) {
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    trim(a);
    UPoly q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, GaussianRat());
    const GaussianRat lead = b.back();
    while (a.size() >= b.size()) {
        std::size_t shift = a.size() - b.size();
        GaussianRat c = a.back() / lead;
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        a.pop_back();
        trim(a);
    }
    trim(q);
    return {q, a};
}

inline UPoly monic(UPoly p) {
    trim(p);
    if (p.empty()) return p;
    GaussianRat l = p.back();
    for (auto& c : p) c /= l;
    return p;
}

namespace detail {

// Z[i] -> F_p with i -> a square root of -1, p = 1 mod 4.
constexpr std::uint64_t kModPrime = 1000000009ULL;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kModPrime);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, a = mulmod(a, a))
        if (e & 1) r = mulmod(r, a);
    return r;
}

inline std::uint64_t mod_sqrt_minus_one() {
    static const std::uint64_t s = [] {
        for (std::uint64_t g = 2;; ++g)
            if (powmod(g, (kModPrime - 1) / 2) == kModPrime - 1) return powmod(g, (kModPrime - 1) / 4);
    }();
    return s;
}

inline std::optional<std::uint64_t> reduce_mod(const Rat& r) {
    const Int p(kModPrime);
    Int d = denom(r) % p;
    if (d == 0) return std::nullopt;
    Int n = numer(r) % p;
    if (n < 0) n += p;
    return mulmod(static_cast<std::uint64_t>(n), powmod(static_cast<std::uint64_t>(d), kModPrime - 2));
}

inline std::optional<std::vector<std::uint64_t>> reduce_mod(const UPoly& a) {
    std::vector<std::uint64_t> r;
    for (const auto& c : a) {
        auto x = reduce_mod(c.re), y = reduce_mod(c.im);
        if (!x || !y) return std::nullopt;
        r.push_back((*x + mulmod(*y, mod_sqrt_minus_one())) % kModPrime);
    }
    return r;
}

inline int mod_gcd_degree(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
    auto trimp = [](std::vector<std::uint64_t>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    trimp(a);
    trimp(b);
    while (!b.empty()) {
        std::uint64_t inv = powmod(b.back(), kModPrime - 2);
        while (a.size() >= b.size()) {
            std::size_t shift = a.size() - b.size();
            std::uint64_t c = mulmod(a.back(), inv);
            for (std::size_t i = 0; i < b.size(); ++i)
                a[shift + i] = (a[shift + i] + kModPrime - mulmod(c, b[i])) % kModPrime;
            trimp(a);
        }
        std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
}

// true only when gcd(a, b) = 1 is certified by a good reduction
inline bool certainly_coprime(const UPoly& a, const UPoly& b) {
    auto ra = reduce_mod(a), rb = reduce_mod(b);
    if (!ra || !rb || ra->back() == 0 || rb->back() == 0) return false;
    return mod_gcd_degree(*ra, *rb) == 0;
}

}  // namespace detail

inline UPoly gcd(UPoly a, UPoly b) {
    trim(a);
    trim(b);
    if (!a.empty() && !b.empty() && detail::certainly_coprime(a, b)) return {GaussianRat(1)};
    while (!b.empty()) {
        UPoly r = monic(divmod(a, b).second);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

inline UPoly squarefree_part(const UPoly& p) {
    if (degree(p) <= 0) return monic(p);
    return monic(divmod(p, gcd(p, derivative(p))).first);
}

// Res(a, b) by the Euclidean recursion; zero inputs give zero.
inline GaussianRat resultant(UPoly a, UPoly b) {
    trim(a);
    trim(b);
    if (a.empty() || b.empty()) return GaussianRat();
    GaussianRat acc(1);
    for (;;) {
        int m = degree(a), n = degree(b);
        if (n == 0) {
            GaussianRat r(1);
            for (int i = 0; i < m; ++i) r *= b[0];
            return acc * r;
        }
        if (m == 0) {
            GaussianRat r(1);
            for (int i = 0; i < n; ++i) r *= a[0];
            return acc * r;
        }
        UPoly rem = divmod(a, b).second;
        if (rem.empty()) return GaussianRat();
        // Res(a,b) = (-1)^{mn} lc(b)^{m - deg rem} Res(b, rem)
        if ((m * n) % 2) acc = -acc;
        for (int i = 0; i < m - degree(rem); ++i) acc *= b.back();
        a = std::move(b);
        b = std::move(rem);
    }
}

// Newton interpolation through (xs[k], ys[k]).
inline UPoly interpolate(const std::vector<GaussianRat>& xs, std::vector<GaussianRat> ys) {
    const std::size_t n = xs.size();
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            ys[i] = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - j]);
            if (i == j) break;
        }
    UPoly r{ys[n - 1]};
    for (std::size_t k = n - 1; k-- > 0;) {
        r = r * UPoly{-xs[k], GaussianRat(1)};
        r = r + UPoly{ys[k]};
    }
    trim(r);
    return r;
}

namespace detail {

using Real = boost::multiprecision::cpp_bin_float_100;

struct Cx {
    Real re = 0, im = 0;
    friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cx operator*(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
    friend Cx operator/(const Cx& a, const Cx& b) {
        Real n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    Real abs() const { return sqrt(re * re + im * im); }
};

inline Real to_real(const Rat& r) { return Real(numer(r)) / Real(denom(r)); }

inline Int round_real(const Real& x) {
    Real f = floor(x + Real(0.5));
    return Int(f);
}

// Aberth iteration for a squarefree polynomial of degree >= 1.
inline std::vector<Cx> numeric_roots(const UPoly& p) {
    const int n = degree(p);
    std::vector<Cx> a(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) a[i] = {to_real(p[i].re), to_real(p[i].im)};
    Cx lead = a.back();
    for (auto& c : a) c = c / lead;
    Real radius = 0;
    for (int i = 0; i < n; ++i) radius = std::max(radius, a[i].abs());
    radius += 1;
    std::vector<Cx> z(n);
    const Real pi = boost::math::constants::pi<Real>();
    for (int k = 0; k < n; ++k) {
        Real ang = 2 * pi * k / n + Real(0.4);
        z[k] = {radius * cos(ang), radius * sin(ang)};
    }
    const Real tol = Real("1e-90");
    for (int iter = 0; iter < 2000; ++iter) {
        Real worst = 0;
        for (int k = 0; k < n; ++k) {
            Cx v = a[n], d{0, 0};
            for (int i = n - 1; i >= 0; --i) {
                d = d * z[k] + v;
                v = v * z[k] + a[i];
            }
            if (v.abs() == 0) continue;
            Cx w = v / d;
            Cx s{0, 0};
            for (int j = 0; j < n; ++j)
                if (j != k) s = s + Cx{1, 0} / (z[k] - z[j]);
            Cx off = w / (Cx{1, 0} - w * s);
            z[k] = z[k] - off;
            worst = std::max(worst, off.abs() / (1 + z[k].abs()));
        }
        if (worst < tol) break;
    }
    return z;
}

}  // namespace detail

struct RootExtraction {
    std::vector<GaussianRat> roots;  // distinct roots in Q(i), sorted
    int irrational = 0;              // remaining distinct roots outside Q(i)
};

// Distinct roots in Q(i): numeric roots of the squarefree part, rounded to the lattice lc^{-1} Z[i], verified exactly.
inline RootExtraction gaussian_rational_roots(const UPoly& p) {
    RootExtraction out;
    UPoly q = squarefree_part(p);
    if (degree(q) <= 0) return out;
    Int den = 1;
    for (const auto& c : q) den = lcm_int(lcm_int(den, denom(c.re)), denom(c.im));
    GaussianRat lc = q.back() * GaussianRat(Rat(den));
    const detail::Real lre = detail::to_real(lc.re), lim = detail::to_real(lc.im);
    UPoly rest = q;
    for (const auto& z : detail::numeric_roots(q)) {
        std::vector<GaussianRat> candidates;
        candidates.emplace_back(Rat(detail::round_real(z.re)), Rat(detail::round_real(z.im)));
        detail::Real xr = lre * z.re - lim * z.im, xi = lre * z.im + lim * z.re;
        candidates.push_back(GaussianRat(Rat(detail::round_real(xr)), Rat(detail::round_real(xi))) / lc);
        for (const auto& c : candidates) {
            if (!evaluate(rest, c).is_zero()) continue;
            out.roots.push_back(c);
            rest = divmod(rest, UPoly{-c, GaussianRat(1)}).first;
            break;
        }
    }
    out.irrational = degree(rest);
    std::sort(out.roots.begin(), out.roots.end());
    return out;
}

// Homogeneous polynomial in Z0, Z1, Z2 with Q(i) coefficients.
using Exponent = std::array<int, 3>;

class TernaryForm {
public:
    TernaryForm() = default;
    explicit TernaryForm(int degree) : degree_(degree) {
        if (degree < 0) throw std::invalid_argument("negative degree");
    }

    static std::vector<Exponent> exponents(int degree) {
        std::vector<Exponent> e;
        for (int a = degree; a >= 0; --a)
            for (int b = degree - a; b >= 0; --b) e.push_back({a, b, degree - a - b});
        return e;
    }

    static TernaryForm monomial(const Exponent& e, GaussianRat c = GaussianRat(1)) {
        TernaryForm f(e[0] + e[1] + e[2]);
        f.set(e, std::move(c));
        return f;
    }

    // sum_j m_j Z_j
    static TernaryForm linear(const GVector& m) {
        TernaryForm f(1);
        f.set({1, 0, 0}, m.at(0));
        f.set({0, 1, 0}, m.at(1));
        f.set({0, 0, 1}, m.at(2));
        return f;
    }

    int degree() const { return degree_; }
    const std::map<Exponent, GaussianRat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    GaussianRat coeff(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? GaussianRat() : it->second;
    }

    void set(const Exponent& e, GaussianRat c) {
        if (e[0] < 0 || e[1] < 0 || e[2] < 0 || e[0] + e[1] + e[2] != degree_)
            throw std::invalid_argument("exponent does not match degree");
        if (c.is_zero())
            terms_.erase(e);
        else
            terms_[e] = std::move(c);
    }

    void add(const Exponent& e, const GaussianRat& c) { set(e, coeff(e) + c); }

    GaussianRat operator()(const GVector& p) const {
        if (p.size() != 3) throw std::invalid_argument("point must have three coordinates");
        GaussianRat s;
        for (const auto& [e, c] : terms_) {
            GaussianRat t = c;
            for (int i = 0; i < 3; ++i)
                for (int k = 0; k < e[i]; ++k) t *= p[i];
            s += t;
        }
        return s;
    }

    TernaryForm partial(int i) const {
        TernaryForm d(degree_ > 0 ? degree_ - 1 : 0);
        if (degree_ == 0) return d;
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Exponent f = e;
            --f[i];
            d.add(f, GaussianRat(Rat(e[i])) * c);
        }
        return d;
    }

    // G(z) = F(M z)
    TernaryForm substitute(const GaussianRatMatrix& m) const {
        if (m.rows() != 3 || m.cols() != 3) throw std::invalid_argument("frame must be 3x3");
        std::array<std::vector<TernaryForm>, 3> pw;
        for (int i = 0; i < 3; ++i) {
            pw[i].push_back(constant(GaussianRat(1)));
            TernaryForm l = linear(m.row(i));
            for (int k = 1; k <= degree_; ++k) pw[i].push_back(pw[i].back() * l);
        }
        TernaryForm g(degree_);
        for (const auto& [e, c] : terms_) {
            TernaryForm t = pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]];
            for (const auto& [f, d] : t.terms_) g.add(f, c * d);
        }
        return g;
    }

    // t -> F(p + t q)
    UPoly restrict_line(const GVector& p, const GVector& q) const {
        std::array<std::vector<UPoly>, 3> pw;
        for (int i = 0; i < 3; ++i) {
            pw[i].push_back(UPoly{GaussianRat(1)});
            for (int k = 1; k <= degree_; ++k) pw[i].push_back(pw[i].back() * UPoly{p[i], q[i]});
        }
        UPoly r(static_cast<std::size_t>(degree_) + 1);
        for (const auto& [e, c] : terms_) {
            UPoly t = pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]];
            for (std::size_t k = 0; k < t.size(); ++k) r[k] += c * t[k];
        }
        trim(r);
        return r;
    }

    friend TernaryForm operator*(const TernaryForm& a, const TernaryForm& b) {
        TernaryForm r(a.degree_ + b.degree_);
        for (const auto& [e, c] : a.terms_)
            for (const auto& [f, d] : b.terms_) r.add({e[0] + f[0], e[1] + f[1], e[2] + f[2]}, c * d);
        return r;
    }
    friend TernaryForm operator+(const TernaryForm& a, const TernaryForm& b) {
        if (a.degree_ != b.degree_) throw std::invalid_argument("degree mismatch");
        TernaryForm r = a;
        for (const auto& [e, c] : b.terms_) r.add(e, c);
        return r;
    }
    friend TernaryForm operator-(const TernaryForm& a, const TernaryForm& b) {
        return a + b.scaled(GaussianRat(-1));
    }
    TernaryForm scaled(const GaussianRat& s) const {
        TernaryForm r(degree_);
        for (const auto& [e, c] : terms_) r.set(e, s * c);
        return r;
    }
    friend bool operator==(const TernaryForm& a, const TernaryForm& b) {
        return a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!s.empty()) s += " + ";
            s += "(" + it->second.str() + ")";
            for (int i = 0; i < 3; ++i)
                if (it->first[i]) s += "*Z" + std::to_string(i) + (it->first[i] > 1 ? "^" + std::to_string(it->first[i]) : "");
        }
        return s;
    }

private:
    static TernaryForm constant(const GaussianRat& c) {
        TernaryForm f(0);
        f.set({0, 0, 0}, c);
        return f;
    }

    int degree_ = 0;
    std::map<Exponent, GaussianRat> terms_;
};

inline GVector cross(const GVector& a, const GVector& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline bool is_zero_vector(const GVector& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

// first nonzero coordinate scaled to 1
inline GVector normalize_projective(GVector v) {
    for (const auto& x : v)
        if (!x.is_zero()) {
            GaussianRat s = x;
            for (auto& y : v) y /= s;
            return v;
        }
    throw std::invalid_argument("zero vector is not a projective point");
}

inline bool projectively_equal(const GVector& a, const GVector& b) {
    return normalize_projective(a) == normalize_projective(b);
}

inline GVector mat_vec(const GaussianRatMatrix& m, const GVector& v) {
    GVector r(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
    return r;
}

}  // namespace quartlat
