#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "mfm/common.hpp"

namespace mfm::exact {

using Rat = boost::multiprecision::cpp_rational;

// Complex number with exact rational real/imaginary parts.
struct QC {
    Rat re = 0, im = 0;

    QC() = default;
    QC(Rat r) : re(std::move(r)) {}
    QC(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    QC(long long r) : re(r) {}

    QC operator+(const QC& o) const { return {re + o.re, im + o.im}; }
    QC operator-(const QC& o) const { return {re - o.re, im - o.im}; }
    QC operator-() const { return {-re, -im}; }
    QC operator*(const QC& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    QC operator/(const QC& o) const {
        Rat d = o.re * o.re + o.im * o.im;
        require(d != 0, "exact division by zero");
        return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
    }
    bool operator==(const QC& o) const { return re == o.re && im == o.im; }
    bool is_zero() const { return re == 0 && im == 0; }
    cd to_cd() const { return cd{double(re), double(im)}; }
};

// Exact truncated Laurent expansion at a finite rational center or infinity.
struct QSeries {
    bool at_inf = false;
    QC p;                      // center (ignored at infinity)
    std::map<int, QC> c;       // exponent -> coefficient; absent means zero

    QC coef(int k) const {
        auto it = c.find(k);
        return it == c.end() ? QC() : it->second;
    }
    void add_to(int k, const QC& v) {
        if (v.is_zero()) return;
        auto [it, fresh] = c.emplace(k, v);
        if (!fresh) {
            it->second = it->second + v;
            if (it->second.is_zero()) c.erase(it);
        }
    }
};

QSeries qmul(const QSeries& a, const QSeries& b);
QSeries qadd(const QSeries& a, const QSeries& b);
QSeries qderivative(const QSeries& f);
QC qresidue(const QSeries& f);  // coefficient of exponent -1

// Principal part (exponents < 0) at center c1 re-expanded around c2 up to
// Taylor order `order` (geometric series, exact).
QSeries qreexpand(const QSeries& pp, const QC& c2, int order);
// Principal part expanded at infinity down to exponent -depth.
QSeries qpp_to_inf(const QSeries& pp, int depth);

// Split of exact Laurent data on one circle: negative exponents vs rest.
inline QSeries qnegative_part(const QSeries& f) {
    QSeries out = f;
    for (auto it = out.c.begin(); it != out.c.end();)
        it = (it->first >= 0) ? out.c.erase(it) : ++it;
    return out;
}
inline QSeries qnonnegative_part(const QSeries& f) {
    QSeries out = f;
    for (auto it = out.c.begin(); it != out.c.end();)
        it = (it->first < 0) ? out.c.erase(it) : ++it;
    return out;
}

}  // namespace mfm::exact
