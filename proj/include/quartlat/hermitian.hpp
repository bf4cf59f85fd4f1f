#pragma once

#include "gaussian.hpp"
#include "lattice.hpp"

#include <utility>
#include <vector>

namespace quartlat {

using GaussianIntMatrix = Matrix<GaussianInt>;
using GaussianRatMatrix = Matrix<GaussianRat>;
using OVector = Vec<GaussianInt>;

template <class T>
bool is_conjugate_symmetric(const Matrix<Gaussian<T>>& g) {
    if (!g.square()) return false;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = i; j < g.cols(); ++j)
            if (g(j, i) != g(i, j).conj()) return false;
    return true;
}

// h(x, y) = x^T G conj(y): linear in x, conjugate-linear in y.
template <class T>
Gaussian<T> hermitian_product(const Matrix<Gaussian<T>>& g, const Vec<Gaussian<T>>& x, const Vec<Gaussian<T>>& y) {
    if (x.size() != g.rows() || y.size() != g.rows()) throw std::invalid_argument("vector length does not match rank");
    Gaussian<T> s;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * g(i, j) * y[j].conj();
    }
    return s;
}

// Real symmetric form Re h on the basis (v_1, i v_1, ..., v_n, i v_n).
template <class T>
Matrix<T> realification(const Matrix<Gaussian<T>>& g) {
    const std::size_t n = g.rows();
    Matrix<T> r(2 * n, 2 * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            const auto& h = g(j, k);
            r(2 * j, 2 * k) = h.re;
            r(2 * j, 2 * k + 1) = h.im;
            r(2 * j + 1, 2 * k) = -h.im;
            r(2 * j + 1, 2 * k + 1) = h.re;
        }
    return r;
}

template <class T>
Signature hermitian_inertia(const Matrix<Gaussian<T>>& g) {
    if (!is_conjugate_symmetric(g)) throw std::invalid_argument("matrix is not conjugate-symmetric");
    Signature s = inertia(realification(g));
    if (s.positive % 2 || s.negative % 2 || s.radical % 2)
        throw std::logic_error("doubled inertia of a Hermitian form is odd");
    return {s.positive / 2, s.negative / 2, s.radical / 2};
}

class HermitianLattice {
public:
    HermitianLattice() = default;
    explicit HermitianLattice(GaussianIntMatrix gram) : gram_(std::move(gram)) {
        if (!is_conjugate_symmetric(gram_)) throw std::invalid_argument("Hermitian Gram is not conjugate-symmetric");
    }

    std::size_t rank() const { return gram_.rows(); }
    const GaussianIntMatrix& gram() const { return gram_; }
    GaussianInt h(const OVector& x, const OVector& y) const { return hermitian_product(gram_, x, y); }

    friend bool operator==(const HermitianLattice& a, const HermitianLattice& b) { return a.gram_ == b.gram_; }

private:
    GaussianIntMatrix gram_;
};

// Rank-7 lattice on the E7 graph (Bourbaki numbering): h(v_i,v_i) = -2, and for an edge i < j
// h(v_i,v_j) = 1 + i, h(v_j,v_i) = 1 - i.
inline HermitianLattice heckman_lattice() {
    const std::vector<std::pair<int, int>> edges{{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {2, 4}};
    GaussianIntMatrix g(7, 7);
    for (std::size_t i = 0; i < 7; ++i) g(i, i) = GaussianInt(-2);
    for (auto [a, b] : edges) {
        int i = std::min(a, b) - 1, j = std::max(a, b) - 1;
        g(i, j) = GaussianInt(1, 1);
        g(j, i) = GaussianInt(1, -1);
    }
    return HermitianLattice(g);
}

// Same construction for an arbitrary vertex order of the E7 graph; perm[k] is the new label of Bourbaki vertex k+1.
inline HermitianLattice heckman_lattice_relabeled(const std::vector<int>& perm) {
    const std::vector<std::pair<int, int>> edges{{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {2, 4}};
    GaussianIntMatrix g(7, 7);
    for (std::size_t i = 0; i < 7; ++i) g(i, i) = GaussianInt(-2);
    for (auto [a, b] : edges) {
        int pa = perm.at(a - 1), pb = perm.at(b - 1);
        int i = std::min(pa, pb), j = std::max(pa, pb);
        g(i, j) = GaussianInt(1, 1);
        g(j, i) = GaussianInt(1, -1);
    }
    return HermitianLattice(g);
}

inline Signature hermitian_signature(const HermitianLattice& h) { return hermitian_inertia(h.gram()); }

struct TraceLattice {
    IntegerLattice lattice;
    IntMatrix mu4;  // multiplication by i on the basis (v_1, i v_1, ...)
};

inline TraceLattice trace_lattice(const HermitianLattice& h) {
    const std::size_t n = h.rank();
    IntMatrix mu4(2 * n, 2 * n);
    for (std::size_t j = 0; j < n; ++j) {
        mu4(2 * j + 1, 2 * j) = 1;
        mu4(2 * j, 2 * j + 1) = -1;
    }
    return {IntegerLattice(realification(h.gram()), "trace", true), mu4};
}

namespace detail {

// Row Hermite-type reduction over Z[i]; returns the nonzero rows.
inline GaussianIntMatrix gaussian_row_reduce(GaussianIntMatrix a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        for (;;) {
            std::size_t p = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (!a(i, c).is_zero() && (p == rows || a(i, c).norm() < a(p, c).norm())) p = i;
            if (p == rows) break;
            a.swap_rows(r, p);
            bool clean = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (a(i, c).is_zero()) continue;
                GaussianInt q = round_quotient(a(i, c), a(r, c));
                for (std::size_t j = c; j < cols; ++j) a(i, j) -= q * a(r, j);
                if (!a(i, c).is_zero()) clean = false;
            }
            if (clean) break;
        }
        if (a(r, c).is_zero()) continue;
        ++r;
    }
    return a.submatrix(0, 0, r, cols);
}

}  // namespace detail

struct OStructure {
    HermitianLattice hermitian;
    IntMatrix basis;  // rows: O-basis vectors b_k in lattice coordinates; the Z-basis is (b_1, J b_1, ...)
    IntMatrix J;

    // Integer coordinates of the O-vector c in the source lattice.
    IntVector to_lattice(const OVector& c) const {
        const std::size_t n = basis.cols();
        IntVector x(n, 0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            IntVector b = basis.row(k);
            IntVector jb = J * b;
            for (std::size_t m = 0; m < n; ++m) x[m] += c[k].re * b[m] + c[k].im * jb[m];
        }
        return x;
    }

    // O-coordinates of a lattice vector.
    OVector to_module(const IntVector& x) const {
        const std::size_t n = basis.cols(), k = basis.rows();
        IntMatrix zb(2 * k, n);
        for (std::size_t r = 0; r < k; ++r) {
            IntVector b = basis.row(r);
            zb.set_row(2 * r, b);
            zb.set_row(2 * r + 1, J * b);
        }
        RatMatrix target(1, n);
        for (std::size_t m = 0; m < n; ++m) target(0, m) = Rat(x[m]);
        auto coords = coordinates_in(to_rat(zb), target);
        if (!coords || !is_integral(*coords)) throw std::invalid_argument("vector is not in the lattice");
        OVector c(k);
        for (std::size_t r = 0; r < k; ++r) c[r] = GaussianInt(numer((*coords)(0, 2 * r)), numer((*coords)(0, 2 * r + 1)));
        return c;
    }
};

// h(a, b) = a.b - i (Ja).b: linear in a, conjugate-linear in b, h(a,a) = a.a.
inline GaussianInt mu4_hermitian_product(const IntegerLattice& l, const IntMatrix& j, const IntVector& a, const IntVector& b) {
    return GaussianInt(l.inner(a, b), -l.inner(j * a, b));
}

inline OStructure hermitian_from_mu4(const IntegerLattice& l, const IntMatrix& j) {
    const std::size_t n = l.rank();
    if (j.rows() != n || j.cols() != n) throw std::invalid_argument("J has wrong shape");
    if (j * j != -IntMatrix::identity(n)) throw std::invalid_argument("J^2 != -I");
    if (!is_isometry(l, j)) throw std::invalid_argument("J is not an isometry");
    if (n % 2) throw std::logic_error("odd rank with J^2 = -I");
    const std::size_t k = n / 2;

    // greedy Q(i)-basis from the standard basis
    std::vector<IntVector> qbasis;
    std::vector<IntVector> real_rows;
    for (std::size_t m = 0; m < n && qbasis.size() < k; ++m) {
        IntVector e = unit_vector(n, m);
        auto trial = real_rows;
        trial.push_back(e);
        trial.push_back(j * e);
        if (matrix_rank(to_rat(IntMatrix::from_rows(trial, n))) == trial.size()) {
            qbasis.push_back(e);
            real_rows = trial;
        }
    }
    RatMatrix qb = to_rat(IntMatrix::from_rows(real_rows, n));
    auto coords = coordinates_in(qb, to_rat(IntMatrix::identity(n)));
    if (!coords) throw std::logic_error("failed to express lattice basis over Q(i)");

    // Q(i)-coordinates of each standard basis vector; clear denominators
    Int den = 1;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) den = lcm_int(den, denom((*coords)(r, c)));
    GaussianIntMatrix gens(n, k);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < k; ++c)
            gens(r, c) = GaussianInt(numer((*coords)(r, 2 * c) * Rat(den)), numer((*coords)(r, 2 * c + 1) * Rat(den)));
    GaussianIntMatrix red = detail::gaussian_row_reduce(gens);
    if (red.rows() != k) throw std::logic_error("O-module has unexpected rank");

    IntMatrix basis(k, n);
    for (std::size_t r = 0; r < k; ++r) {
        RatVector v(n, Rat(0));
        for (std::size_t c = 0; c < k; ++c) {
            Rat re = Rat(red(r, c).re, den), im = Rat(red(r, c).im, den);
            IntVector x = qbasis[c], jx = j * qbasis[c];
            for (std::size_t m = 0; m < n; ++m) v[m] += re * Rat(x[m]) + im * Rat(jx[m]);
        }
        basis.set_row(r, to_int(v));
    }
    GaussianIntMatrix g(k, k);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) g(r, c) = mu4_hermitian_product(l, j, basis.row(r), basis.row(c));
    return {HermitianLattice(g), basis, j};
}

// True iff h(x, v) / h(v, v) lies in Z[i] for every basis vector x.
inline bool orthogonal_summand_check(const HermitianLattice& h, const OVector& v) {
    GaussianInt vv = h.h(v, v);
    if (vv.is_zero()) throw std::invalid_argument("isotropic vector");
    for (std::size_t k = 0; k < h.rank(); ++k) {
        OVector e(h.rank(), GaussianInt(0));
        e[k] = GaussianInt(1);
        GaussianRat q = to_rat(h.h(e, v)) / to_rat(vv);
        if (!is_gaussian_integer(q)) return false;
    }
    return true;
}

}  // namespace quartlat
