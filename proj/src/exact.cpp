#include "mfm/exact.hpp"

namespace mfm::exact {

namespace {
bool same_locus(const QSeries& a, const QSeries& b) {
    if (a.at_inf != b.at_inf) return false;
    return a.at_inf || a.p == b.p;
}
}  // namespace

QSeries qmul(const QSeries& a, const QSeries& b) {
    require(same_locus(a, b), "qmul: center mismatch");
    QSeries out;
    out.at_inf = a.at_inf;
    out.p = a.p;
    for (const auto& [ka, va] : a.c)
        for (const auto& [kb, vb] : b.c) out.add_to(ka + kb, va * vb);
    return out;
}

QSeries qadd(const QSeries& a, const QSeries& b) {
    require(same_locus(a, b), "qadd: center mismatch");
    QSeries out = a;
    for (const auto& [k, v] : b.c) out.add_to(k, v);
    return out;
}

QSeries qderivative(const QSeries& f) {
    QSeries out;
    out.at_inf = f.at_inf;
    out.p = f.p;
    for (const auto& [k, v] : f.c) {
        if (k == 0) continue;
        out.add_to(k - 1, QC(Rat(k)) * v);
    }
    return out;
}

QC qresidue(const QSeries& f) { return f.coef(-1); }

QSeries qreexpand(const QSeries& pp, const QC& c2, int order) {
    require(!pp.at_inf, "qreexpand: finite center expected");
    QSeries out;
    out.at_inf = false;
    out.p = c2;
    QC d = c2 - pp.p;
    require(!d.is_zero(), "qreexpand: coincident centers");
    for (const auto& [k, a] : pp.c) {
        require(k < 0, "qreexpand: nonnegative exponent in principal part");
        int m = -k;
        // (z-c1)^{-m} = sum_l (-1)^l binom(m+l-1,l) d^{-m-l} (z-c2)^l
        QC dpow = QC(Rat(1));
        for (int j = 0; j < m; ++j) dpow = dpow / d;
        Rat binom = 1;
        for (int l = 0; l <= order; ++l) {
            QC sign((l % 2) ? Rat(-1) : Rat(1));
            out.add_to(l, a * sign * QC(binom) * dpow);
            binom = binom * Rat(m + l) / Rat(l + 1);
            dpow = dpow / d;
        }
    }
    return out;
}

QSeries qpp_to_inf(const QSeries& pp, int depth) {
    require(!pp.at_inf, "qpp_to_inf: finite center expected");
    QSeries out;
    out.at_inf = true;
    for (const auto& [k, a] : pp.c) {
        require(k < 0, "qpp_to_inf: nonnegative exponent in principal part");
        int m = -k;
        Rat binom = 1;
        QC pl = QC(Rat(1));
        for (int l = 0; -m - l >= -depth; ++l) {
            out.add_to(-m - l, a * QC(binom) * pl);
            binom = binom * Rat(m + l) / Rat(l + 1);
            pl = pl * pp.p;
        }
    }
    return out;
}

}  // namespace mfm::exact
