#pragma once

#include "linalg.hpp"

#include <cctype>
#include <string>
#include <utility>
#include <vector>

namespace quartlat {

class IntegerLattice {
public:
    IntegerLattice() = default;

    // Throws on a degenerate Gram unless allow_degenerate is set.
    explicit IntegerLattice(IntMatrix gram, std::string label = {}, bool allow_degenerate = false)
        : gram_(std::move(gram)), label_(std::move(label)) {
        if (!gram_.is_symmetric()) throw std::invalid_argument("Gram matrix is not symmetric");
        det_ = quartlat::determinant(gram_);
        if (det_ == 0 && !allow_degenerate) throw std::invalid_argument("Gram matrix is degenerate");
    }

    std::size_t rank() const { return gram_.rows(); }
    const IntMatrix& gram() const { return gram_; }
    const std::string& label() const { return label_; }
    const Int& determinant() const { return det_; }
    bool degenerate() const { return det_ == 0; }
    bool unimodular() const { return det_ == 1 || det_ == -1; }

    bool even() const {
        for (std::size_t i = 0; i < rank(); ++i)
            if (gram_(i, i) % 2 != 0) return false;
        return true;
    }

    Int inner(const IntVector& x, const IntVector& y) const {
        if (x.size() != rank() || y.size() != rank()) throw std::invalid_argument("vector length does not match lattice rank");
        Int s = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < rank(); ++j) s += x[i] * gram_(i, j) * y[j];
        }
        return s;
    }

    Rat inner(const RatVector& x, const RatVector& y) const {
        if (x.size() != rank() || y.size() != rank()) throw std::invalid_argument("vector length does not match lattice rank");
        Rat s = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < rank(); ++j) s += x[i] * Rat(gram_(i, j)) * y[j];
        }
        return s;
    }

    Int norm(const IntVector& x) const { return inner(x, x); }

    // gram * x
    IntVector pair_with(const IntVector& x) const { return gram_ * x; }

    void require_nondegenerate(const char* what) const {
        if (degenerate()) throw std::invalid_argument(std::string(what) + " requires a nondegenerate lattice");
    }

    friend bool operator==(const IntegerLattice& a, const IntegerLattice& b) { return a.gram_ == b.gram_; }

private:
    IntMatrix gram_;
    std::string label_;
    Int det_ = 1;
};

// Sublattice together with its basis (rows) in ambient coordinates.
struct Sublattice {
    IntegerLattice lattice;
    IntMatrix basis;
};

inline Signature signature(const IntegerLattice& l) { return inertia(l.gram()); }

inline IntegerLattice rescale(const IntegerLattice& l, const Int& n) {
    if (n == 0) throw std::invalid_argument("rescale factor must be nonzero");
    if (n == 1) return l;
    IntMatrix g = Int(n) * l.gram();
    std::string label = l.label().empty() ? std::string() : l.label() + "(" + n.str() + ")";
    return IntegerLattice(g, label, l.degenerate());
}

inline IntegerLattice direct_sum(const std::vector<IntegerLattice>& ls) {
    std::vector<IntMatrix> blocks;
    std::string label;
    bool degenerate = false;
    for (const auto& l : ls) {
        blocks.push_back(l.gram());
        if (!label.empty()) label += "+";
        label += l.label().empty() ? "?" : l.label();
        degenerate = degenerate || l.degenerate();
    }
    return IntegerLattice(block_diagonal(blocks), label, degenerate);
}

namespace detail {

inline IntMatrix cartan_from_edges(std::size_t n, const std::vector<std::pair<int, int>>& edges) {
    IntMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) g(i, i) = 2;
    for (auto [a, b] : edges) {
        g(a - 1, b - 1) = -1;
        g(b - 1, a - 1) = -1;
    }
    return g;
}

inline std::vector<std::pair<int, int>> chain(int from, int to) {
    std::vector<std::pair<int, int>> e;
    for (int i = from; i < to; ++i) e.emplace_back(i, i + 1);
    return e;
}

inline int parse_rank(const std::string& name, std::size_t offset) {
    std::string digits = name.substr(offset);
    if (digits.empty() || digits.size() > 4) throw std::invalid_argument("missing rank in lattice name: " + name);
    for (char c : digits)
        if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("bad rank in lattice name: " + name);
    return std::stoi(digits);
}

}  // namespace detail

// Simple-root Gram matrices in Bourbaki numbering, roots of square +2.
// Supported names: U, A<n>, D<n>, E6, E7, E8, <d1,d2,...>.
inline IntegerLattice make_standard(const std::string& name) {
    using detail::cartan_from_edges;
    using detail::chain;
    if (name == "U") return IntegerLattice(IntMatrix{{0, 1}, {1, 0}}, "U");
    if (name.size() >= 2 && name.front() == '<' && name.back() == '>') {
        std::vector<Int> diag;
        std::string body = name.substr(1, name.size() - 2);
        std::size_t pos = 0;
        while (pos <= body.size()) {
            std::size_t comma = body.find(',', pos);
            std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (tok.empty()) throw std::invalid_argument("empty entry in diagonal lattice: " + name);
            std::size_t used = 0;
            long long v = std::stoll(tok, &used);
            if (used != tok.size() || v == 0) throw std::invalid_argument("bad diagonal entry: " + tok);
            diag.emplace_back(v);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        IntMatrix g(diag.size(), diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i) g(i, i) = diag[i];
        return IntegerLattice(g, name);
    }
    if (name.empty()) throw std::invalid_argument("empty lattice name");
    const char family = name[0];
    if (family == 'A') {
        int n = detail::parse_rank(name, 1);
        if (n < 1) throw std::invalid_argument("invalid rank for A: " + name);
        return IntegerLattice(cartan_from_edges(n, chain(1, n)), name);
    }
    if (family == 'D') {
        int n = detail::parse_rank(name, 1);
        if (n < 3) throw std::invalid_argument("invalid rank for D: " + name);
        auto edges = chain(1, n - 1);
        edges.emplace_back(n - 2, n);
        return IntegerLattice(cartan_from_edges(n, edges), name);
    }
    if (family == 'E') {
        int n = detail::parse_rank(name, 1);
        if (n < 6 || n > 8) throw std::invalid_argument("invalid rank for E: " + name);
        std::vector<std::pair<int, int>> edges{{1, 3}, {2, 4}};
        for (auto e : chain(3, n)) edges.push_back(e);
        return IntegerLattice(cartan_from_edges(n, edges), name);
    }
    throw std::invalid_argument("unknown lattice family: " + name);
}

inline Int inner(const IntegerLattice& l, const IntVector& x, const IntVector& y) { return l.inner(x, y); }

// Induced lattice on the rows of basis (ambient coordinates).
inline IntegerLattice induced_lattice(const IntegerLattice& l, const IntMatrix& basis, std::string label = {},
                                      bool allow_degenerate = true) {
    IntMatrix g = basis * l.gram() * basis.transpose();
    return IntegerLattice(g, std::move(label), allow_degenerate);
}

// {x in L : x.s = 0 for all s in S}, saturated, with its embedding.
inline Sublattice orthogonal_complement(const IntegerLattice& l, const std::vector<IntVector>& s) {
    const std::size_t n = l.rank();
    if (s.empty()) return {l, IntMatrix::identity(n)};
    IntMatrix rows = IntMatrix::from_rows(s, n);
    IntMatrix constraints = rows * l.gram();
    IntMatrix basis = integer_kernel(constraints);
    return {induced_lattice(l, basis), basis};
}

// Basis (rows) of (M ⊗ Q) ∩ L for rows of m in lattice coordinates.
inline IntMatrix saturate(const IntegerLattice& l, const RatMatrix& m) {
    if (m.cols() != l.rank()) throw std::invalid_argument("sublattice generators do not lie in L ⊗ Q");
    return saturate_rows(m);
}

inline IntMatrix saturate(const IntegerLattice& l, const IntMatrix& m) {
    if (m.cols() != l.rank()) throw std::invalid_argument("sublattice generators do not lie in L ⊗ Q");
    return saturate_rows(m);
}

// Integral action of an endomorphism g (on ambient coordinates) restricted to a sublattice with basis rows b:
// returns r with g * b_j = sum_i r(i,j) b_i.
inline IntMatrix restrict_action(const IntMatrix& g, const IntMatrix& b) {
    RatMatrix images = to_rat(g * b.transpose()).transpose();
    auto coords = coordinates_in(to_rat(b), images);
    if (!coords) throw std::invalid_argument("sublattice is not invariant under the map");
    return to_int(coords->transpose());
}

inline bool is_isometry(const IntegerLattice& l, const IntMatrix& g) {
    return g.rows() == l.rank() && g.cols() == l.rank() && g.transpose() * l.gram() * g == l.gram();
}

inline IntMatrix matrix_power(const IntMatrix& g, int k) {
    IntMatrix r = IntMatrix::identity(g.rows());
    for (int i = 0; i < k; ++i) r = r * g;
    return r;
}

inline Int trace(const IntMatrix& g) {
    Int t = 0;
    for (std::size_t i = 0; i < g.rows(); ++i) t += g(i, i);
    return t;
}

// Unimodular change of basis: columns of p are the new basis in old coordinates.
inline IntegerLattice change_basis(const IntegerLattice& l, const IntMatrix& p) {
    return IntegerLattice(p.transpose() * l.gram() * p, l.label(), l.degenerate());
}

}  // namespace quartlat
