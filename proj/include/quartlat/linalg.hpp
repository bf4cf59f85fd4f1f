#pragma once

#include "matrix.hpp"

#include <algorithm>
#include <optional>
#include <string>

namespace quartlat {

struct Signature {
    int positive = 0;
    int negative = 0;
    int radical = 0;

    int rank() const { return positive + negative + radical; }
    friend bool operator==(const Signature&, const Signature&) = default;
    std::string str() const {
        return "(" + std::to_string(positive) + "," + std::to_string(negative) + "," + std::to_string(radical) + ")";
    }
};

// Fraction-free Bareiss determinant.
inline Int determinant(const IntMatrix& m) {
    if (!m.square()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

// ---- elimination over a field (Rat, Gaussian<Rat>) ----

template <class F>
struct EchelonForm {
    Matrix<F> rref;
    std::vector<std::size_t> pivots;
};

template <class F>
EchelonForm<F> row_echelon(Matrix<F> a) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == F(0)) ++p;
        if (p == a.rows()) continue;
        a.swap_rows(r, p);
        F inv = F(1) / a(r, c);
        for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = a(r, j) * inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c) == F(0)) continue;
            F f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {a, pivots};
}

template <class F>
std::size_t matrix_rank(const Matrix<F>& a) {
    return row_echelon(a).pivots.size();
}

// Rows spanning {x : a x = 0}.
template <class F>
Matrix<F> nullspace(const Matrix<F>& a) {
    auto e = row_echelon(a);
    const std::size_t n = a.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<Vec<F>> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        Vec<F> v(n, F(0));
        v[free] = F(1);
        for (std::size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.rref(k, free);
        basis.push_back(v);
    }
    return Matrix<F>::from_rows(basis, n);
}

template <class F>
Matrix<F> inverse(const Matrix<F>& a) {
    if (!a.square()) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = a.rows();
    Matrix<F> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = F(1);
    }
    auto e = row_echelon(aug);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw std::domain_error("singular matrix");
    return e.rref.submatrix(0, n, n, n);
}

// Solve a x = b for square invertible a.
template <class F>
Vec<F> solve(const Matrix<F>& a, const Vec<F>& b) {
    return inverse(a) * b;
}

template <class F>
F field_determinant(Matrix<F> a) {
    if (!a.square()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = a.rows();
    F det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == F(0)) ++p;
        if (p == n) return F(0);
        if (p != c) {
            a.swap_rows(p, c);
            det = -det;
        }
        det = det * a(c, c);
        F inv = F(1) / a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c) == F(0)) continue;
            F f = a(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

// Inertia of a symmetric rational matrix by congruence elimination.
inline Signature inertia(RatMatrix a) {
    if (!a.is_symmetric()) throw std::invalid_argument("inertia requires a symmetric matrix");
    Signature s;
    std::size_t n = a.rows();
    std::size_t k = 0;
    while (k < n) {
        std::size_t d = k;
        while (d < n && a(d, d) == 0) ++d;
        if (d == n) {
            // zero diagonal: find an off-diagonal pair and make a nonzero diagonal
            std::size_t bi = n, bj = n;
            for (std::size_t i = k; i < n && bi == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (a(i, j) != 0) {
                        bi = i;
                        bj = j;
                        break;
                    }
            if (bi == n) {
                s.radical += static_cast<int>(n - k);
                break;
            }
            // e_i <- e_i + e_j
            for (std::size_t c = 0; c < n; ++c) a(bi, c) += a(bj, c);
            for (std::size_t r = 0; r < n; ++r) a(r, bi) += a(r, bj);
            d = bi;
        }
        a.swap_rows(k, d);
        a.swap_cols(k, d);
        const Rat piv = a(k, k);
        if (piv > 0)
            ++s.positive;
        else
            ++s.negative;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            Rat f = a(i, k) / piv;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
        for (std::size_t i = k + 1; i < n; ++i) a(i, k) = 0;
        for (std::size_t j = k + 1; j < n; ++j) a(k, j) = 0;
        ++k;
    }
    return s;
}

inline Signature inertia(const IntMatrix& a) { return inertia(to_rat(a)); }

// ---- integer normal forms ----

struct SmithForm {
    IntMatrix U, D, V, Vinv;  // U * M * V = D, Vinv = V^{-1}
    std::vector<Int> diagonal;
    std::size_t rank = 0;
};

inline SmithForm smith_normal_form(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    IntMatrix d = m;
    IntMatrix u = IntMatrix::identity(rows);
    IntMatrix v = IntMatrix::identity(cols);
    IntMatrix vinv = IntMatrix::identity(cols);
    const std::size_t lim = std::min(rows, cols);
    std::size_t t = 0;
    for (; t < lim; ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block
            std::size_t pi = rows, pj = cols;
            Int best = 0;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (d(i, j) != 0 && (pi == rows || abs_int(d(i, j)) < best)) {
                        best = abs_int(d(i, j));
                        pi = i;
                        pj = j;
                    }
            if (pi == rows) goto done;
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            vinv.swap_rows(t, pj);

            bool dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d(i, t) == 0) continue;
                Int q = d(i, t) / d(t, t);
                for (std::size_t j = t; j < cols; ++j) d(i, j) -= q * d(t, j);
                for (std::size_t j = 0; j < rows; ++j) u(i, j) -= q * u(t, j);
                if (d(i, t) != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d(t, j) == 0) continue;
                Int q = d(t, j) / d(t, t);
                for (std::size_t i = t; i < rows; ++i) d(i, j) -= q * d(i, t);
                for (std::size_t i = 0; i < cols; ++i) v(i, j) -= q * v(i, t);
                for (std::size_t k = 0; k < cols; ++k) vinv(t, k) += q * vinv(j, k);
                if (d(t, j) != 0) dirty = true;
            }
            if (dirty) continue;
            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == rows) break;
            for (std::size_t j = t; j < cols; ++j) d(t, j) += d(bad, j);
            for (std::size_t j = 0; j < rows; ++j) u(t, j) += u(bad, j);
        }
        if (d(t, t) < 0) {
            for (std::size_t j = t; j < cols; ++j) d(t, j) = -d(t, j);
            for (std::size_t j = 0; j < rows; ++j) u(t, j) = -u(t, j);
        }
    }
done:
    SmithForm s{u, d, v, vinv, {}, 0};
    for (std::size_t i = 0; i < lim; ++i) {
        s.diagonal.push_back(d(i, i));
        if (d(i, i) != 0) ++s.rank;
    }
    return s;
}

// Row Hermite normal form; zero rows are dropped.
inline IntMatrix row_hnf(IntMatrix a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        for (;;) {
            std::size_t p = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (a(i, c) != 0 && (p == rows || abs_int(a(i, c)) < abs_int(a(p, c)))) p = i;
            if (p == rows) break;
            a.swap_rows(r, p);
            bool clean = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (a(i, c) == 0) continue;
                Int q = a(i, c) / a(r, c);
                for (std::size_t j = c; j < cols; ++j) a(i, j) -= q * a(r, j);
                if (a(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (a(r, c) == 0) continue;
        if (a(r, c) < 0)
            for (std::size_t j = c; j < cols; ++j) a(r, j) = -a(r, j);
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(a(i, c), a(r, c));
            if (q == 0) continue;
            for (std::size_t j = c; j < cols; ++j) a(i, j) -= q * a(r, j);
        }
        ++r;
    }
    return a.submatrix(0, 0, r, cols);
}

// Rows forming a basis of the integer kernel {x in Z^n : a x = 0}; always saturated.
inline IntMatrix integer_kernel(const IntMatrix& a) {
    const std::size_t n = a.cols();
    if (a.rows() == 0) return IntMatrix::identity(n);
    auto s = smith_normal_form(a);
    std::vector<IntVector> basis;
    for (std::size_t j = s.rank; j < n; ++j) basis.push_back(s.V.col(j));
    if (basis.empty()) return IntMatrix(0, n);
    return row_hnf(IntMatrix::from_rows(basis, n));
}

// Basis (rows) of (Q-span of rows of m) ∩ Z^n.
inline IntMatrix saturate_rows(const IntMatrix& m) {
    const std::size_t n = m.cols();
    IntMatrix k = integer_kernel(m);
    if (k.rows() == 0) return IntMatrix::identity(n);
    return integer_kernel(k);
}

inline IntMatrix saturate_rows(const RatMatrix& m) {
    IntMatrix scaled(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) l = lcm_int(l, denom(m(i, j)));
        for (std::size_t j = 0; j < m.cols(); ++j) scaled(i, j) = numer(m(i, j) * Rat(l));
    }
    return saturate_rows(scaled);
}

// Index of the row lattice of m inside its saturation (m of full row rank).
inline Int saturation_index(const IntMatrix& m) {
    auto s = smith_normal_form(m);
    if (s.rank != m.rows()) throw std::invalid_argument("rows are linearly dependent");
    Int idx = 1;
    for (std::size_t i = 0; i < s.rank; ++i) idx *= s.diagonal[i];
    return idx;
}

// Express the rows of target in the basis given by the rows of basis (exact, rational).
inline std::optional<RatMatrix> coordinates_in(const RatMatrix& basis, const RatMatrix& target) {
    const std::size_t k = basis.rows(), n = basis.cols();
    RatMatrix aug(n, k + target.rows());
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) aug(j, i) = basis(i, j);
    for (std::size_t t = 0; t < target.rows(); ++t)
        for (std::size_t j = 0; j < n; ++j) aug(j, k + t) = target(t, j);
    auto e = row_echelon(aug);
    if (e.pivots.size() > k && e.pivots[k] < k + target.rows()) return std::nullopt;
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
        if (e.pivots[i] >= k) return std::nullopt;
    if (e.pivots.size() < k) throw std::invalid_argument("basis rows are dependent");
    RatMatrix out(target.rows(), k);
    for (std::size_t t = 0; t < target.rows(); ++t)
        for (std::size_t i = 0; i < k; ++i) out(t, i) = e.rref(i, k + t);
    return out;
}

}  // namespace quartlat
