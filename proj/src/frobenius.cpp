#include "mfm/frobenius.hpp"

#include <cmath>

namespace mfm {

// ---------------------------------------------------------------------------
// spectrum tables

double SpectrumData::mu(const ManifoldShape& shape, const FlatCoord& u) {
    switch (u.fam) {
        case FlatCoord::T:
            return double(u.k) / shape.d[size_t(u.i)] + 0.5;
        case FlatCoord::H0:
            return 0.5 - double(u.k) / shape.n[0];
        case FlatCoord::H:
            return 0.5 - double(u.k) / shape.n[size_t(u.i + 1)];
    }
    fail("mu: bad coordinate");
}

bool SpectrumData::resonant(const ManifoldShape& shape, const FlatCoord& u) {
    if (u.fam == FlatCoord::T) return u.k == -shape.d[size_t(u.i)];
    if (u.fam == FlatCoord::H) return u.k == shape.n[size_t(u.i + 1)];
    return false;
}

double SpectrumData::R_coeff(const ManifoldShape& shape, const FlatCoord& u,
                             const FlatCoord& w) {
    double n0 = shape.n[0];
    if (u.fam == FlatCoord::T && u.k == -shape.d[size_t(u.i)]) {
        double di = shape.d[size_t(u.i)];
        if ((w.fam == FlatCoord::T || w.fam == FlatCoord::H) && w.k == 0)
            return (w.i == u.i ? 1.0 : 0.0) - di / n0;
        return 0.0;
    }
    if (u.fam == FlatCoord::H && u.k == shape.n[size_t(u.i + 1)]) {
        double nk = shape.n[size_t(u.i + 1)];
        if (w.fam == FlatCoord::H && w.k == 0)
            return w.i == u.i ? nk / n0 + 1.0 : nk / n0;
        if (w.fam == FlatCoord::T && w.k == 0)
            return w.i == u.i ? nk / n0 - nk / shape.d[size_t(u.i)] : nk / n0;
        return 0.0;
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// caches

const Frob::TCache& Frob::tcache(int i, int s) const {
    auto key = std::make_pair(i, s);
    auto it = tcache_.find(key);
    if (it != tcache_.end()) return it->second;
    TCache tc;
    auto zp = pow_frac(pt.zeta_g[i], Frac(s, pt.shape.d[size_t(i)]), cfg().tol_of("zero"),
                       cfg().tol_of("winding"));
    tc.Z = gamma_zero(pt);
    tc.Z[i] = mul(zp, pt.zetap_g[i]);
    tc.sp = project(tc.Z, cfg());
    return tcache_.emplace(key, std::move(tc)).first->second;
}

Series Frob::chi0_pow(int e) const {
    auto it = chi0_cache_.find(e);
    if (it != chi0_cache_.end()) return it->second;
    auto s = chi0_power(pt, Frac(e));
    chi0_cache_.emplace(e, s);
    return s;
}

Series Frob::chik_pow(int k, int e) const {
    auto key = std::make_pair(k, e);
    auto it = chik_cache_.find(key);
    if (it != chik_cache_.end()) return it->second;
    auto s = chik_power(pt, k, Frac(e));
    chik_cache_.emplace(key, s);
    return s;
}

const TangentVector& Frob::basis(const FlatCoord& c) const {
    auto it = basis_cache_.find(c);
    if (it != basis_cache_.end()) return it->second;
    return basis_cache_.emplace(c, flat_vector(pt, c)).first->second;
}

// ---------------------------------------------------------------------------
// metric and eta maps

cd Frob::metric(const TangentVector& X1, const TangentVector& X2) const {
    cd total{0, 0};
    double tz = cfg().tol_of("zero");
    for (int j = 0; j < m(); ++j) {
        auto dz1 = sub(X1.da[j], X1.dh[j]);
        auto dz2 = sub(X2.da[j], X2.dh[j]);
        auto integrand = div(mul(dz1, dz2), pt.zetap_g[j], tz);
        total -= cauchy_coefficient(integrand);
    }
    auto dl1 = dell_at_inf(pt, X1);
    auto dl2 = dell_at_inf(pt, X2);
    if (!dl1.empty() && !dl2.empty()) {
        auto q = div(mul(dl1, dl2), pt.ellp_inf, cfg().tail_order);
        total -= residue_at_inf(q);  // res_inf f dz = -c_{-1}
    }
    for (int j = 0; j < m(); ++j) {
        auto p1 = dell_at_phi(pt, X1, j);
        auto p2 = dell_at_phi(pt, X2, j);
        if (p1.empty() || p2.empty()) continue;
        auto q = div(mul(p1, p2), pt.ellp_phi[size_t(j)], kPhiOrder + 8);
        total -= residue(q);
    }
    return total;
}

TangentVector Frob::eta(const Covector& w) const {
    auto sum = add(w.w, w.wh);
    auto sp_sum = project(sum, cfg());
    auto mix = add(mul(w.w, pt.ap_g), mul(w.wh, pt.ahp_g));
    auto sp_mix = project(mix, cfg());

    TangentVector out;
    out.da = sub(mul(pt.ap_g, sp_sum.minus), sp_mix.minus);
    out.dh = add(neg(mul(pt.ahp_g, sp_sum.plus)), sp_mix.plus);
    out.da_inf = sub(mul(pt.ap_inf, sp_sum.minus_at_inf), sp_mix.minus_at_inf);
    for (int j = 0; j < m(); ++j) {
        cd phi = pt.shape.phi[size_t(j)];
        auto tsum = laurent_at(sp_sum.plus[j], phi, 0, kPhiOrder);
        auto tmix = laurent_at(sp_mix.plus[j], phi, 0, kPhiOrder);
        out.dh_phi.push_back(add(neg(mul(pt.ahp_phi[size_t(j)], tsum)), tmix));
    }
    return out;
}

Covector Frob::eta_inverse(const TangentVector& xi) const {
    double tz = cfg().tol_of("zero");
    int n0 = pt.shape.n[0];
    std::vector<CircleGerm> qc;
    for (int j = 0; j < m(); ++j)
        qc.push_back(div(sub(xi.da[j], xi.dh[j]), pt.zetap_g[j], tz));
    GammaGerm q(std::move(qc));
    auto sp_q = project(q, cfg());

    // omega_+ = -(q)_+ ; omega_- = (xi/a' - q_-)_{inf, >= -n0+1}
    GammaGerm w_germ = neg(sp_q.plus);
    Series ratio = div(xi.da_inf, pt.ap_inf, cfg().tail_order);
    Series t = part_ge(sub(ratio, sp_q.minus_at_inf), -n0 + 1);
    if (!t.empty()) {
        t.exact = true;  // finitely many exponents by construction
        w_germ = add(w_germ, gamma_from_series(pt, t));
    }

    // omega_hat = q_- + per-disk truncation (-xi_hat/a_hat' + q_+)_{<= n_j}
    GammaGerm wh_germ = sp_q.minus;
    for (int j = 0; j < m(); ++j) {
        int nj = pt.shape.n[size_t(j + 1)];
        cd phi = pt.shape.phi[size_t(j)];
        Series r = neg(div(xi.dh_phi[size_t(j)], pt.ahp_phi[size_t(j)], kPhiOrder));
        Series qp = laurent_at(sp_q.plus[j], phi, 0, nj);
        Series tj = part_le(add(r, qp), nj);
        tj.exact = true;
        wh_germ[j] = add(wh_germ[j],
                         CircleGerm::from_series(pt.shape.center[size_t(j)],
                                                 pt.shape.radius[size_t(j)], cfg(), tj));
    }
    return Covector{w_germ, wh_germ};
}

cd Frob::pairing(const Covector& w, const TangentVector& X) const {
    cd total{0, 0};
    for (int j = 0; j < m(); ++j)
        total += cauchy_coefficient(add(mul(w.w[j], X.da[j]), mul(w.wh[j], X.dh[j])));
    return total;
}

cd Frob::trace(const Covector& w) const {
    cd total{0, 0};
    for (int j = 0; j < m(); ++j) total += cauchy_coefficient(add(w.w[j], w.wh[j]));
    return total;
}

// ---------------------------------------------------------------------------
// products

Covector Frob::cot_prod(const Covector& w1, const Covector& w2) const {
    auto sp1a = project(mul(w1.w, pt.ap_g), cfg());
    auto sp2a = project(mul(w2.w, pt.ap_g), cfg());
    auto sp1h = project(mul(w1.wh, pt.ahp_g), cfg());
    auto sp2h = project(mul(w2.wh, pt.ahp_g), cfg());

    GammaGerm wo = sub(mul(w2.w, sp1a.plus), mul(w1.w, sp2a.minus));
    wo = sub(wo, mul(w2.w, sp1h.minus));
    wo = sub(wo, mul(w1.w, sp2h.minus));

    GammaGerm who = sub(mul(w2.wh, sp1h.plus), mul(w1.wh, sp2h.minus));
    who = add(who, mul(w1.wh, sp2a.plus));
    who = add(who, mul(w2.wh, sp1a.plus));
    return Covector{wo, who};
}

TangentVector Frob::tan_prod(const TangentVector& x1, const TangentVector& x2) const {
    return eta(cot_prod(eta_inverse(x1), eta_inverse(x2)));
}

TangentVector Frob::c_xi(const TangentVector& xi, const Covector& w) const {
    auto mix1 = add(mul(w.w, xi.da), mul(w.wh, xi.dh));
    auto sp1 = project(mix1, cfg());
    auto mix2 = add(mul(w.w, pt.ap_g), mul(w.wh, pt.ahp_g));
    auto sp2 = project(mix2, cfg());

    TangentVector out;
    out.da = sub(mul(pt.ap_g, sp1.minus), mul(xi.da, sp2.minus));
    out.dh = add(neg(mul(pt.ahp_g, sp1.plus)), mul(xi.dh, sp2.plus));
    out.da_inf = sub(mul(pt.ap_inf, sp1.minus_at_inf), mul(xi.da_inf, sp2.minus_at_inf));
    for (int j = 0; j < m(); ++j) {
        cd phi = pt.shape.phi[size_t(j)];
        auto t1 = laurent_at(sp1.plus[j], phi, 0, kPhiOrder);
        auto t2 = laurent_at(sp2.plus[j], phi, 0, kPhiOrder);
        out.dh_phi.push_back(
            add(neg(mul(pt.ahp_phi[size_t(j)], t1)), mul(xi.dh_phi[size_t(j)], t2)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// unit and Euler fields

TangentVector Frob::unit_field() const {
    TangentVector out;
    int n0 = pt.shape.n[0];
    if (n0 == 1) {
        out.da = sub(gamma_constant(pt, cd{1, 0}), pt.ap_g);
        out.dh = sub(gamma_constant(pt, cd{1, 0}), pt.ahp_g);
        out.da_inf = sub(Series::constant(Center::inf(), cd{1, 0}), pt.ap_inf);
        for (int j = 0; j < m(); ++j)
            out.dh_phi.push_back(sub(Series::constant(Center::at(pt.shape.phi[size_t(j)]), cd{1, 0}),
                                     pt.ahp_phi[size_t(j)]));
    } else {
        out.da = gamma_constant(pt, cd{1, 0});
        out.dh = gamma_constant(pt, cd{1, 0});
        out.da_inf = Series::constant(Center::inf(), cd{1, 0});
        for (int j = 0; j < m(); ++j)
            out.dh_phi.push_back(Series::constant(Center::at(pt.shape.phi[size_t(j)]), cd{1, 0}));
    }
    return out;
}

TangentVector Frob::euler_field() const {
    if (euler_cache_) return *euler_cache_;
    double inv_n0 = 1.0 / pt.shape.n[0];
    TangentVector out;
    auto zg = gamma_coordinate(pt);
    out.da = sub(pt.a_g, scale(mul(zg, pt.ap_g), cd{inv_n0, 0}));
    out.dh = sub(pt.ah_g, scale(mul(zg, pt.ahp_g), cd{inv_n0, 0}));
    out.da_inf =
        sub(pt.a_inf, scale(mul(Series::coordinate(Center::inf()), pt.ap_inf), cd{inv_n0, 0}));
    for (int j = 0; j < m(); ++j) {
        auto zloc = Series::coordinate(Center::at(pt.shape.phi[size_t(j)]));
        out.dh_phi.push_back(sub(pt.ah_phi[size_t(j)],
                                 scale(mul(zloc, pt.ahp_phi[size_t(j)]), cd{inv_n0, 0})));
    }
    euler_cache_ = out;
    return *euler_cache_;
}

// ---------------------------------------------------------------------------
// three-tensor

cd Frob::c3_def(const TangentVector& x1, const TangentVector& x2,
                const TangentVector& x3) const {
    return metric(tan_prod(x1, x2), x3);
}

namespace {
struct CoordSorter {
    std::vector<FlatCoord> t, h0, h;
    CoordSorter(const FlatCoord& u, const FlatCoord& v, const FlatCoord& w) {
        for (const auto& c : {u, v, w}) {
            if (c.fam == FlatCoord::T)
                t.push_back(c);
            else if (c.fam == FlatCoord::H0)
                h0.push_back(c);
            else
                h.push_back(c);
        }
    }
};
}  // namespace

cd Frob::c3_flat(const FlatCoord& cu, const FlatCoord& cv, const FlatCoord& cw) const {
    CoordSorter S(cu, cv, cw);
    double tz = cfg().tol_of("zero");
    const int tail = cfg().tail_order;

    // all-t case
    if (S.t.size() == 3) {
        int i1 = S.t[0].i, i2 = S.t[1].i, i3 = S.t[2].i;
        int s1 = S.t[0].k, s2 = S.t[1].k, s3 = S.t[2].k;
        cd total{0, 0};
        if (i1 == i2 && i2 == i3) {
            auto zsum = pow_frac(pt.zeta_g[i1], Frac(s1 + s2 + s3, pt.shape.d[size_t(i1)]), tz,
                                 cfg().tol_of("winding"));
            auto zm = derivative(pt.zeta_sp.minus[i1]);
            auto bracket = add(add(pt.zetap_g[i1], zm), pt.ellp_g[i1]);
            total -= cauchy_coefficient(mul(mul(zsum, pt.zetap_g[i1]), bracket));
        }
        const FlatCoord* trip[3] = {&S.t[0], &S.t[1], &S.t[2]};
        for (int c = 0; c < 3; ++c) {
            const auto& a = *trip[c];
            const auto& b = *trip[(c + 1) % 3];
            const auto& e = *trip[(c + 2) % 3];
            if (a.i != b.i) continue;
            auto zsum = pow_frac(pt.zeta_g[a.i], Frac(a.k + b.k, pt.shape.d[size_t(a.i)]), tz,
                                 cfg().tol_of("winding"));
            const auto& tc = tcache(e.i, e.k);
            total += cauchy_coefficient(
                mul(mul(zsum, pt.zetap_g[a.i]), tc.sp.minus[a.i]));
        }
        return total;
    }

    // all-h0 case: pure series at infinity
    if (S.h0.size() == 3) {
        int j1 = S.h0[0].k, j2 = S.h0[1].k, j3 = S.h0[2].k;
        auto zminus_p = derivative(pt.zeta_sp.minus_at_inf);
        auto two_lp = add(scale(pt.ellp_inf, cd{2, 0}), zminus_p);
        cd total = residue_at_inf(mul(mul(chi0_pow(-j1 - j2 - j3), pt.ellp_inf), two_lp));
        int js[3] = {j1, j2, j3};
        for (int c = 0; c < 3; ++c) {
            int ja = js[c], jb = js[(c + 1) % 3], jc = js[(c + 2) % 3];
            auto D = part_ge(mul(pt.ellp_inf, chi0_pow(-jc)), 0);
            total -= residue_at_inf(mul(mul(chi0_pow(-ja - jb), pt.ellp_inf), D));
        }
        return total;
    }

    // all-h case: pairing-route evaluation of the closed product forms
    if (S.h.size() == 3) {
        int k1 = S.h[0].i, k2 = S.h[1].i, k3 = S.h[2].i;
        int r1 = S.h[0].k, r2 = S.h[1].k, r3 = S.h[2].k;
        auto A = [&](int k, int r) {
            Series s = part_le(chik_pow(k, -r), pt.shape.n[size_t(k + 1)]);
            s.exact = true;
            return s;
        };
        auto B = [&](int k, int r) {
            Series s = part_le(mul(pt.ellp_phi[size_t(k)], chik_pow(k, -r)), -1);
            s.exact = true;
            return s;
        };
        GammaGerm who = gamma_zero(pt);
        auto add_on = [&](int circle, const CircleGerm& g) {
            who[circle] = add(who[circle], g);
        };
        auto germ_of = [&](const Series& s, int circle) {
            return CircleGerm::from_series(pt.shape.center[size_t(circle)],
                                           pt.shape.radius[size_t(circle)], cfg(), s);
        };
        if (k1 == k2) {
            auto a1 = germ_of(A(k1, r1), k1);
            auto a2 = germ_of(A(k2, r2), k1);
            add_on(k1, mul(mul(a1, a2), pt.ahp_g[k1]));
        }
        add_on(k1, neg(mul(germ_of(A(k1, r1), k1), germ_of(B(k2, r2), k1))));
        add_on(k2, neg(mul(germ_of(A(k2, r2), k2), germ_of(B(k1, r1), k2))));
        const auto& X3 = basis(FlatCoord::h(k3, r3));
        cd total{0, 0};
        for (int j = 0; j < m(); ++j)
            total += cauchy_coefficient(mul(who[j], X3.dh[j]));
        return total;
    }

    // two t's and one h0/h
    if (S.t.size() == 2) {
        if (S.t[0].i != S.t[1].i) return cd{0, 0};
        int i = S.t[0].i;
        auto zsum = pow_frac(pt.zeta_g[i], Frac(S.t[0].k + S.t[1].k, pt.shape.d[size_t(i)]), tz,
                             cfg().tol_of("winding"));
        if (!S.h0.empty()) {
            int j3 = S.h0[0].k;
            auto D = part_ge(mul(pt.ellp_inf, chi0_pow(-j3)), 0);
            auto Dg = CircleGerm::from_series(pt.shape.center[size_t(i)],
                                              pt.shape.radius[size_t(i)], cfg(), D);
            return -cauchy_coefficient(mul(mul(zsum, pt.zetap_g[i]), Dg));
        }
        int k3 = S.h[0].i, r3 = S.h[0].k;
        Series B = part_le(mul(pt.ellp_phi[size_t(k3)], chik_pow(k3, -r3)), -1);
        B.exact = true;
        auto Bg = CircleGerm::from_series(pt.shape.center[size_t(i)], pt.shape.radius[size_t(i)],
                                          cfg(), B);
        return cauchy_coefficient(mul(mul(zsum, pt.zetap_g[i]), Bg));
    }

    // two h0's and one t/h
    if (S.h0.size() == 2) {
        int j1 = S.h0[0].k, j2 = S.h0[1].k;
        auto head = mul(chi0_pow(-j1 - j2), pt.ellp_inf);
        if (!S.t.empty()) {
            const auto& tc = tcache(S.t[0].i, S.t[0].k);
            return residue_at_inf(mul(head, tc.sp.minus_at_inf));
        }
        int k3 = S.h[0].i, r3 = S.h[0].k;
        Series B = part_le(mul(pt.ellp_phi[size_t(k3)], chik_pow(k3, -r3)), -1);
        B.exact = true;
        return residue_at_inf(mul(head, pp_to_inf(B, tail)));
    }

    // two h's and one t/h0
    if (S.h.size() == 2) {
        if (S.h[0].i != S.h[1].i) return cd{0, 0};
        int k = S.h[0].i;
        cd phi = pt.shape.phi[size_t(k)];
        auto head = mul(chik_pow(k, -S.h[0].k - S.h[1].k), pt.ellp_phi[size_t(k)]);
        if (!S.t.empty()) {
            const auto& tc = tcache(S.t[0].i, S.t[0].k);
            auto zp_taylor = laurent_at(tc.sp.plus[k], phi, 0, kPhiOrder);
            return -residue(mul(head, zp_taylor));
        }
        int j3 = S.h0[0].k;
        auto D = part_ge(mul(pt.ellp_inf, chi0_pow(-j3)), 0);
        return -residue(mul(head, poly_to_center(D, phi)));
    }

    // one of each family vanishes identically
    return cd{0, 0};
}

// ---------------------------------------------------------------------------
// intersection form

TangentVector Frob::g_map(const Covector& w) const { return c_xi(euler_field(), w); }

cd Frob::intersection(const Covector& w1, const Covector& w2) const {
    auto A1 = add(mul(w1.w, pt.ap_g), mul(w1.wh, pt.ahp_g));
    auto A2 = add(mul(w2.w, pt.ap_g), mul(w2.wh, pt.ahp_g));
    auto B1 = add(mul(w1.w, pt.a_g), mul(w1.wh, pt.ah_g));
    auto B2 = add(mul(w2.w, pt.a_g), mul(w2.wh, pt.ah_g));
    auto spA1 = project(A1, cfg());
    auto spA2 = project(A2, cfg());
    auto spB1 = project(B1, cfg());
    auto spB2 = project(B2, cfg());

    cd total{0, 0};
    for (int j = 0; j < m(); ++j) {
        total += cauchy_coefficient(add(mul(spA1.plus[j], spB2.minus[j]),
                                        mul(spA2.plus[j], spB1.minus[j])));
        auto line2 = mul(mul(w1.w[j], w2.w[j]), mul(pt.a_g[j], pt.ap_g[j]));
        line2 = add(line2, mul(mul(w1.w[j], w2.wh[j]), mul(pt.a_g[j], pt.ahp_g[j])));
        line2 = add(line2, mul(mul(w2.w[j], w1.wh[j]), mul(pt.a_g[j], pt.ahp_g[j])));
        line2 = add(line2, mul(mul(w1.wh[j], w2.wh[j]), mul(pt.ah_g[j], pt.ahp_g[j])));
        total -= cauchy_coefficient(line2);
    }
    cd t1{0, 0}, t2{0, 0};
    for (int j = 0; j < m(); ++j) {
        t1 += cauchy_coefficient(A1[j]);
        t2 += cauchy_coefficient(A2[j]);
    }
    total += t1 * t2 / double(pt.shape.n[0]);
    return total;
}

// ---------------------------------------------------------------------------
// local potentials

cd Frob::u2_t(int i, int s1, int s2) const {
    double tz = cfg().tol_of("zero");
    auto zsum = pow_frac(pt.zeta_g[i], Frac(s1 + s2, pt.shape.d[size_t(i)]), tz,
                         cfg().tol_of("winding"));
    auto invz = CircleGerm::monomial(pt.shape.center[size_t(i)], pt.shape.radius[size_t(i)],
                                     cfg(), -1, cd{1, 0});
    return cauchy_coefficient(mul(mul(zsum, pt.zetap_g[i]), invz));
}

cd Frob::v2_h0(int i, int j1, int j2) const {
    // -res_inf ell' chi0^{-j1-j2} / (z - p_i) dz
    Series den(Center::inf(), 0, 1, true);
    den.set(1, cd{1, 0});
    den.set(0, -pt.shape.center[size_t(i)]);
    auto q = div(mul(pt.ellp_inf, chi0_pow(-j1 - j2)), den, cfg().tail_order);
    return -residue_at_inf(q);
}

cd Frob::w3_h(const FlatCoord& u, const FlatCoord& v, const FlatCoord& w) const {
    require(u.fam != FlatCoord::T && v.fam != FlatCoord::T && w.fam != FlatCoord::T,
            "w3_h: arguments restricted to h coordinates");
    const auto& Xu = basis(u);
    const auto& Xv = basis(v);
    const auto& Xw = basis(w);
    cd total{0, 0};
    {
        auto p = mul(mul(dell_at_inf(pt, Xu), dell_at_inf(pt, Xv)), dell_at_inf(pt, Xw));
        if (!p.empty()) total -= residue_at_inf(div(p, pt.ellp_inf, cfg().tail_order));
    }
    for (int j = 0; j < m(); ++j) {
        auto p = mul(mul(dell_at_phi(pt, Xu, j), dell_at_phi(pt, Xv, j)),
                     dell_at_phi(pt, Xw, j));
        if (!p.empty()) total -= residue(div(p, pt.ellp_phi[size_t(j)], kPhiOrder + 8));
    }
    return total;
}

double Frob::covector_distance(const Covector& w1, const Covector& w2) const {
    auto d = eta(cov_sub(w1, w2));
    double scale = std::max({1e-12, eta(w1).da.max_abs(), eta(w1).dh.max_abs(), tv_norm(d)});
    (void)scale;
    return tv_norm(d);
}

// ---------------------------------------------------------------------------
// random elements

TangentVector random_tangent(const Frob& F, const std::vector<FlatCoord>& coords,
                             std::mt19937_64& rng, double amp) {
    std::uniform_real_distribution<double> uni(-amp, amp);
    TangentVector out;
    bool first = true;
    for (const auto& c : coords) {
        cd w{uni(rng), uni(rng)};
        auto term = tv_scale(F.basis(c), w);
        out = first ? term : tv_add(out, term);
        first = false;
    }
    require(!first, "random_tangent: empty coordinate list");
    return out;
}

Covector random_covector(const Frob& F, std::mt19937_64& rng, double amp) {
    std::uniform_real_distribution<double> uni(-amp, amp);
    auto mk = [&](int i) {
        CircleGerm g(F.pt.shape.center[size_t(i)], F.pt.shape.radius[size_t(i)], F.cfg());
        for (int k = -3; k <= 3; ++k) g.coef[size_t(k + g.N)] = cd{uni(rng), uni(rng)};
        g.sync_from_coeffs();
        return g;
    };
    std::vector<CircleGerm> w, wh;
    for (int i = 0; i < F.m(); ++i) {
        w.push_back(mk(i));
        wh.push_back(mk(i));
    }
    return Covector{GammaGerm(std::move(w)), GammaGerm(std::move(wh))};
}

}  // namespace mfm
