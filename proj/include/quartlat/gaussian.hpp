#pragma once

#include "arith.hpp"

#include <ostream>
#include <string>

namespace quartlat {

// Elements re + i*im of Z[i] (T = Int) or Q(i) (T = Rat).
template <class T>
struct Gaussian {
    T re = 0;
    T im = 0;

    Gaussian() = default;
    Gaussian(T r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
    Gaussian(int r) : re(r) {}           // NOLINT(google-explicit-constructor)
    Gaussian(T r, T i) : re(std::move(r)), im(std::move(i)) {}

    static Gaussian unit_i() { return Gaussian(T(0), T(1)); }

    Gaussian conj() const { return Gaussian(re, -im); }
    T norm() const { return re * re + im * im; }
    bool is_real() const { return im == 0; }
    bool is_zero() const { return re == 0 && im == 0; }

    Gaussian& operator+=(const Gaussian& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Gaussian& operator-=(const Gaussian& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Gaussian& operator*=(const Gaussian& o) { return *this = *this * o; }

    friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
    friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
    friend Gaussian operator-(const Gaussian& a) { return Gaussian(-a.re, -a.im); }
    friend Gaussian operator*(const Gaussian& a, const Gaussian& b) {
        return Gaussian(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }
    // lexicographic order on (re, im), used only for canonical sorting
    friend bool operator<(const Gaussian& a, const Gaussian& b) { return a.re < b.re || (a.re == b.re && a.im < b.im); }

    friend std::ostream& operator<<(std::ostream& os, const Gaussian& z) { return os << z.str(); }

    std::string str() const {
        std::string r = to_string(re), i = to_string(im);
        if (im == 0) return r;
        if (re == 0) return i + "i";
        return r + (im < 0 ? "" : "+") + i + "i";
    }
};

using GaussianInt = Gaussian<Int>;
using GaussianRat = Gaussian<Rat>;

inline GaussianRat operator/(const GaussianRat& a, const GaussianRat& b) {
    Rat n = b.norm();
    if (n == 0) throw std::domain_error("division by zero in Q(i)");
    GaussianRat c = a * b.conj();
    return GaussianRat(c.re / n, c.im / n);
}

inline GaussianRat& operator/=(GaussianRat& a, const GaussianRat& b) { return a = a / b; }

inline GaussianRat to_rat(const GaussianInt& z) { return GaussianRat(Rat(z.re), Rat(z.im)); }

inline bool is_gaussian_integer(const GaussianRat& z) { return denom(z.re) == 1 && denom(z.im) == 1; }

inline GaussianInt to_gaussian_int(const GaussianRat& z) {
    if (!is_gaussian_integer(z)) throw std::domain_error("not a Gaussian integer: " + z.str());
    return GaussianInt(numer(z.re), numer(z.im));
}

// Euclidean division in Z[i] by rounding the exact quotient.
inline GaussianInt round_quotient(const GaussianInt& a, const GaussianInt& b) {
    GaussianRat q = to_rat(a) / to_rat(b);
    return GaussianInt(round_rat(q.re), round_rat(q.im));
}

inline bool is_unit(const GaussianInt& z) { return z.norm() == 1; }

// Exact square root in Q(i), if it exists.
inline bool exact_sqrt(const GaussianRat& z, GaussianRat& root) {
    if (z.im == 0) {
        Rat r;
        if (z.re >= 0 && exact_sqrt(z.re, r)) {
            root = GaussianRat(r, 0);
            return true;
        }
        if (z.re < 0 && exact_sqrt(Rat(-z.re), r)) {
            root = GaussianRat(0, r);
            return true;
        }
        return false;
    }
    Rat mod;
    if (!exact_sqrt(z.norm(), mod)) return false;
    Rat a2 = (mod + z.re) / 2, b2 = (mod - z.re) / 2;
    Rat a, b;
    if (!exact_sqrt(a2, a) || !exact_sqrt(b2, b)) return false;
    if (z.im < 0) b = -b;
    root = GaussianRat(a, b);
    return root * root == z;
}

}  // namespace quartlat
