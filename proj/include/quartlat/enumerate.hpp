#pragma once

#include "matrix.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace quartlat {

using I64Vector = std::vector<std::int64_t>;

struct LllResult {
    IntMatrix transform;  // columns: reduced basis in old coordinates
    RatMatrix gram;       // transform^T * q * transform
};

namespace detail {

inline long double to_ld(const Rat& r) { return static_cast<long double>(r); }

inline void gram_schmidt(const RatMatrix& g, std::vector<std::vector<long double>>& mu, std::vector<long double>& b) {
    const std::size_t n = g.rows();
    mu.assign(n, std::vector<long double>(n, 0));
    b.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            long double s = to_ld(g(i, j));
            for (std::size_t k = 0; k < j; ++k) s -= mu[j][k] * mu[i][k] * b[k];
            mu[i][j] = s / b[j];
        }
        long double s = to_ld(g(i, i));
        for (std::size_t k = 0; k < i; ++k) s -= mu[i][k] * mu[i][k] * b[k];
        b[i] = s;
    }
}

}  // namespace detail

// LLL on a positive definite Gram matrix. Floating GSO, exact transform and exact reduced Gram.
inline LllResult lll_reduce(const RatMatrix& q, long double delta = 0.99L) {
    const std::size_t n = q.rows();
    RatMatrix g = q;
    IntMatrix t = IntMatrix::identity(n);
    std::vector<std::vector<long double>> mu;
    std::vector<long double> b;
    std::size_t k = 1;
    std::size_t guard = 0;
    while (k < n) {
        if (++guard > 1000000) throw std::runtime_error("LLL did not terminate");
        detail::gram_schmidt(g, mu, b);
        for (std::size_t jj = k; jj-- > 0;) {
            long double m = mu[k][jj];
            if (std::fabs(m) <= 0.5L) continue;
            Int r(static_cast<long long>(std::llround(m)));
            // b_k -= r b_j
            for (std::size_t i = 0; i < n; ++i) t(i, k) -= r * t(i, jj);
            Rat rr(r);
            for (std::size_t i = 0; i < n; ++i) g(k, i) -= rr * g(jj, i);
            for (std::size_t i = 0; i < n; ++i) g(i, k) = (i == k) ? g(k, k) - rr * g(k, jj) : g(k, i);
            detail::gram_schmidt(g, mu, b);
        }
        if (b[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * b[k - 1]) {
            t.swap_cols(k, k - 1);
            g.swap_rows(k, k - 1);
            g.swap_cols(k, k - 1);
            k = k > 1 ? k - 1 : 1;
        } else {
            ++k;
        }
    }
    if (t.transpose().map([](const Int& x) { return Rat(x); }) * q * to_rat(t) != g)
        throw std::logic_error("LLL Gram bookkeeping failed");
    return {t, g};
}

// Calls visit(x) for every nonzero integer x with x^T q x <= bound (q positive definite).
// Candidates inside a small floating slack above the bound may also be visited; callers filter exactly.
// visit returns false to stop. Returns the number of vectors visited.
template <class Visit>
std::uint64_t visit_short_vectors(const RatMatrix& q, const Rat& bound, Visit&& visit) {
    const std::size_t n = q.rows();
    if (n == 0) return 0;
    LllResult red = lll_reduce(q);
    const auto& g = red.gram;

    // Cholesky-style q_ii, q_ij with Q(y) = sum_i q_ii (y_i + sum_{j>i} q_ij y_j)^2
    std::vector<std::vector<long double>> c(n, std::vector<long double>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) c[i][j] = detail::to_ld(g(i, j));
    for (std::size_t i = 0; i < n; ++i) {
        if (c[i][i] <= 0) throw std::invalid_argument("form is not positive definite");
        for (std::size_t j = i + 1; j < n; ++j) c[i][j] /= c[i][i];
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t j = k; j < n; ++j) c[k][j] -= c[i][i] * c[i][k] * c[i][j];
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (std::fabs(detail::to_ld(Rat(red.transform(i, j)))) > 1e15L) throw std::overflow_error("LLL transform too large");

    std::vector<std::vector<std::int64_t>> tcols(n, I64Vector(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) tcols[j][i] = to_i64(red.transform(i, j));

    const long double cap = detail::to_ld(bound);
    const long double limit = cap + 1e-9L * (cap < 1 ? 1 : cap) + 1e-12L;
    I64Vector y(n, 0), x(n, 0);
    std::vector<long double> rem(n + 1, 0), centre(n, 0);
    std::uint64_t visited = 0;
    bool stop = false;

    // depth-first from the last coordinate
    auto rec = [&](auto&& self, std::size_t level) -> void {
        if (stop) return;
        const std::size_t i = level;
        long double ctr = 0;
        for (std::size_t j = i + 1; j < n; ++j) ctr -= c[i][j] * static_cast<long double>(y[j]);
        const long double room = limit - rem[i + 1];
        if (room < 0) return;
        const long double r = std::sqrt(room / c[i][i]);
        const auto lo = static_cast<std::int64_t>(std::ceil(ctr - r - 1e-12L));
        const auto hi = static_cast<std::int64_t>(std::floor(ctr + r + 1e-12L));
        for (std::int64_t v = lo; v <= hi && !stop; ++v) {
            long double d = static_cast<long double>(v) - ctr;
            long double used = rem[i + 1] + c[i][i] * d * d;
            if (used > limit) continue;
            y[i] = v;
            if (i == 0) {
                bool zero = true;
                for (auto e : y)
                    if (e != 0) {
                        zero = false;
                        break;
                    }
                if (zero) continue;
                std::fill(x.begin(), x.end(), 0);
                for (std::size_t j = 0; j < n; ++j) {
                    if (y[j] == 0) continue;
                    for (std::size_t m = 0; m < n; ++m) x[m] += tcols[j][m] * y[j];
                }
                ++visited;
                if (!visit(static_cast<const I64Vector&>(x))) stop = true;
            } else {
                rem[i] = used;
                self(self, i - 1);
            }
        }
        y[i] = 0;
    };
    rec(rec, n - 1);
    return visited;
}

}  // namespace quartlat
