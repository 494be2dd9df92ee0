#include "mfm/point.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mfm {

// ---------------------------------------------------------------------------
// shape and rational data

void ManifoldShape::validate(const Config& cfg) const {
    require(m >= 1, "shape: need at least one circle");
    require(int(n.size()) == m + 1, "shape: n must have m+1 entries");
    require(int(d.size()) == m, "shape: d must have m entries");
    require(int(center.size()) == m && int(radius.size()) == m && int(phi.size()) == m,
            "shape: geometry arrays must have m entries");
    for (int v : n) require(v >= 1, "shape: orders n must be positive");
    for (int v : d) require(v != 0, "shape: degrees d must be nonzero");
    for (int i = 0; i < m; ++i) {
        require(radius[size_t(i)] > 0, "shape: radii must be positive");
        require(std::abs(phi[size_t(i)] - center[size_t(i)]) < radius[size_t(i)],
                "shape: pole phi must lie strictly inside its disk");
    }
    check_separation(center, radius, cfg.tol_of("rho_max"));
}

cd RationalFn::eval(cd z) const {
    cd acc{0, 0};
    for (int k = int(poly.size()) - 1; k >= 0; --k) acc = acc * z + poly[size_t(k)];
    for (const auto& pl : poles) {
        cd iu = cd{1, 0} / (z - pl.pos);
        cd up = iu;
        for (size_t j = 0; j < pl.coef.size(); ++j) {
            acc += pl.coef[j] * up;
            up *= iu;
        }
    }
    return acc;
}

RationalFn RationalFn::derivative() const {
    RationalFn out;
    if (poly.size() > 1) {
        out.poly.resize(poly.size() - 1);
        for (size_t k = 1; k < poly.size(); ++k)
            out.poly[k - 1] = double(k) * poly[k];
    }
    for (const auto& pl : poles) {
        Pole dp;
        dp.pos = pl.pos;
        dp.coef.assign(pl.coef.size() + 1, cd{0, 0});
        for (size_t j = 0; j < pl.coef.size(); ++j)
            dp.coef[j + 1] = -double(j + 1) * pl.coef[j];
        out.poles.push_back(std::move(dp));
    }
    return out;
}

int RationalFn::poly_degree() const {
    for (int k = int(poly.size()) - 1; k >= 0; --k)
        if (poly[size_t(k)] != cd{0, 0}) return k;
    return -1;
}

Series RationalFn::at_inf(int depth) const {
    int deg = std::max(poly_degree(), 0);
    Series out(Center::inf(), -depth, deg, poles.empty());
    for (size_t k = 0; k < poly.size(); ++k)
        if (int(k) <= deg) out.add_to(int(k), poly[k]);
    for (const auto& pl : poles) {
        Series pp(Center::at(pl.pos), -int(pl.coef.size()), -1, true);
        for (size_t j = 0; j < pl.coef.size(); ++j) pp.set(-int(j) - 1, pl.coef[j]);
        out = add(out, pp_to_inf(pp, depth));
    }
    return out;
}

Series RationalFn::at_point(cd p, int order) const {
    Series polypart(Center::inf(), 0, std::max(poly_degree(), 0), true);
    for (size_t k = 0; k < poly.size(); ++k)
        if (int(k) <= polypart.hi) polypart.add_to(int(k), poly[k]);
    Series out = poly_to_center(polypart, p);
    for (const auto& pl : poles) {
        Series pp(Center::at(pl.pos), -int(pl.coef.size()), -1, true);
        for (size_t j = 0; j < pl.coef.size(); ++j) pp.set(-int(j) - 1, pl.coef[j]);
        if (std::abs(pl.pos - p) < 1e-14) {
            pp.ctr = Center::at(p);
            out = add(out, pp);
        } else {
            out = add(out, pp_recenter_taylor(pp, p, order));
        }
    }
    return out;
}

RationalFn RationalFn::scaled(double lambda, int n0) const {
    double lam_z = std::pow(lambda, 1.0 / n0);
    RationalFn out;
    out.poly.resize(poly.size());
    for (size_t k = 0; k < poly.size(); ++k)
        out.poly[k] = poly[k] * std::pow(lambda, 1.0 - double(k) / n0);
    for (const auto& pl : poles) {
        Pole sp;
        sp.pos = pl.pos * lam_z;
        sp.coef.resize(pl.coef.size());
        for (size_t j = 0; j < pl.coef.size(); ++j)
            sp.coef[j] = pl.coef[j] * std::pow(lambda, 1.0 + double(j + 1) / n0);
        out.poles.push_back(std::move(sp));
    }
    return out;
}

// ---------------------------------------------------------------------------
// tangent/covector arithmetic

TangentVector tv_add(const TangentVector& x, const TangentVector& y) {
    TangentVector out;
    out.da = add(x.da, y.da);
    out.da_inf = add(x.da_inf, y.da_inf);
    out.dh = add(x.dh, y.dh);
    out.dh_phi.reserve(x.dh_phi.size());
    for (size_t i = 0; i < x.dh_phi.size(); ++i)
        out.dh_phi.push_back(add(x.dh_phi[i], y.dh_phi[i]));
    return out;
}

TangentVector tv_sub(const TangentVector& x, const TangentVector& y) {
    return tv_add(x, tv_scale(y, cd{-1, 0}));
}

TangentVector tv_scale(const TangentVector& x, cd s) {
    TangentVector out;
    out.da = scale(x.da, s);
    out.da_inf = scale(x.da_inf, s);
    out.dh = scale(x.dh, s);
    for (const auto& t : x.dh_phi) out.dh_phi.push_back(scale(t, s));
    return out;
}

double tv_norm(const TangentVector& x) {
    return std::max(x.da.max_abs(), x.dh.max_abs());
}

Covector cov_add(const Covector& a, const Covector& b) {
    return Covector{add(a.w, b.w), add(a.wh, b.wh)};
}
Covector cov_sub(const Covector& a, const Covector& b) {
    return Covector{sub(a.w, b.w), sub(a.wh, b.wh)};
}
Covector cov_scale(const Covector& a, cd s) {
    return Covector{scale(a.w, s), scale(a.wh, s)};
}

std::string FlatCoord::name() const {
    std::ostringstream os;
    switch (fam) {
        case T: os << "t[" << (i + 1) << "," << k << "]"; break;
        case H0: os << "h0[" << k << "]"; break;
        case H: os << "h[" << (i + 1) << "," << k << "]"; break;
    }
    return os.str();
}

cd FlatChart::value(const FlatCoord& c) const {
    switch (c.fam) {
        case FlatCoord::T: {
            const auto& row = t[size_t(c.i)];
            auto it = row.find(c.k);
            require(it != row.end(), "chart: t coordinate outside window: " + c.name());
            return it->second;
        }
        case FlatCoord::H0:
            require(c.k >= 1 && c.k <= int(h0.size()), "chart: h0 index out of range");
            return h0[size_t(c.k - 1)];
        case FlatCoord::H:
            require(c.i >= 0 && c.i < int(h.size()), "chart: circle index out of range");
            require(c.k >= 0 && c.k < int(h[size_t(c.i)].size()), "chart: h index out of range");
            return h[size_t(c.i)][size_t(c.k)];
    }
    fail("chart: bad coordinate");
}

std::vector<FlatCoord> window_coords(const ManifoldShape& shape, int s_min, int s_max) {
    std::vector<FlatCoord> out;
    for (int i = 0; i < shape.m; ++i)
        for (int s = s_min; s <= s_max; ++s) out.push_back(FlatCoord::t(i, s));
    for (int j = 1; j <= shape.n[0] - 1; ++j) out.push_back(FlatCoord::h0(j));
    for (int i = 0; i < shape.m; ++i)
        for (int r = 0; r <= shape.n[size_t(i + 1)]; ++r) out.push_back(FlatCoord::h(i, r));
    return out;
}

// ---------------------------------------------------------------------------
// germ constructors

GammaGerm gamma_zero(const ManifoldPoint& pt) {
    std::vector<CircleGerm> c;
    for (int i = 0; i < pt.shape.m; ++i)
        c.push_back(CircleGerm::zero(pt.shape.center[size_t(i)], pt.shape.radius[size_t(i)], pt.cfg));
    return GammaGerm(std::move(c));
}

GammaGerm gamma_constant(const ManifoldPoint& pt, cd v) {
    std::vector<CircleGerm> c;
    for (int i = 0; i < pt.shape.m; ++i)
        c.push_back(CircleGerm::constant(pt.shape.center[size_t(i)], pt.shape.radius[size_t(i)],
                                         pt.cfg, v));
    return GammaGerm(std::move(c));
}

GammaGerm gamma_coordinate(const ManifoldPoint& pt) {
    std::vector<CircleGerm> c;
    for (int i = 0; i < pt.shape.m; ++i) {
        auto g = CircleGerm::monomial(pt.shape.center[size_t(i)], pt.shape.radius[size_t(i)],
                                      pt.cfg, 1, cd{1, 0});
        for (auto& s : g.sam) s += pt.shape.center[size_t(i)];
        g.coef[size_t(g.N)] += pt.shape.center[size_t(i)];
        c.push_back(g);
    }
    return GammaGerm(std::move(c));
}

GammaGerm gamma_from_series(const ManifoldPoint& pt, const Series& s) {
    require(s.exact, "gamma_from_series: finite (exact) series expected");
    std::vector<CircleGerm> c;
    for (int i = 0; i < pt.shape.m; ++i)
        c.push_back(CircleGerm::from_series(pt.shape.center[size_t(i)],
                                            pt.shape.radius[size_t(i)], pt.cfg, s));
    return GammaGerm(std::move(c));
}

GammaGerm gamma_from_function(const ManifoldPoint& pt, const std::function<cd(cd)>& f) {
    std::vector<CircleGerm> c;
    for (int i = 0; i < pt.shape.m; ++i)
        c.push_back(CircleGerm::from_function(pt.shape.center[size_t(i)],
                                              pt.shape.radius[size_t(i)], pt.cfg, f));
    return GammaGerm(std::move(c));
}

// ---------------------------------------------------------------------------
// point construction

void ManifoldPoint::rebuild_derived() {
    zeta_g = sub(a_g, ah_g);
    zetap_g = derivative(zeta_g);
    zeta_sp = project(zeta_g, cfg);
    ell_g = sub(a_g, zeta_sp.minus);
    ellp_g = derivative(ell_g);

    Series apoly = part_ge(a_inf, 0);
    ell_inf = apoly;
    for (int i = 0; i < shape.m; ++i)
        ell_inf = add(ell_inf, pp_to_inf(part_le(ah_phi[size_t(i)], -1), cfg.tail_order));
    ellp_inf = derivative(ell_inf);

    ell_phi.assign(size_t(shape.m), Series());
    ellp_phi.assign(size_t(shape.m), Series());
    for (int j = 0; j < shape.m; ++j) {
        Series lj = poly_to_center(apoly, shape.phi[size_t(j)]);
        lj = add(lj, part_le(ah_phi[size_t(j)], -1));
        for (int i = 0; i < shape.m; ++i) {
            if (i == j) continue;
            lj = add(lj, pp_recenter_taylor(part_le(ah_phi[size_t(i)], -1), shape.phi[size_t(j)],
                                            kPhiOrder));
        }
        ell_phi[size_t(j)] = lj;
        ellp_phi[size_t(j)] = derivative(lj);
    }

    ap_inf = derivative(a_inf);
    ap_g = derivative(a_g);
    ahp_g = derivative(ah_g);
    ahp_phi.clear();
    for (const auto& s : ah_phi) ahp_phi.push_back(derivative(s));
}

ManifoldPoint point_from_parts(const ManifoldShape& shape, const Config& cfg, Series a_inf,
                               GammaGerm a_g, std::vector<Series> ah_phi, GammaGerm ah_g) {
    ManifoldPoint pt;
    pt.shape = shape;
    pt.cfg = cfg;
    pt.a_inf = std::move(a_inf);
    pt.a_g = std::move(a_g);
    pt.ah_phi = std::move(ah_phi);
    pt.ah_g = std::move(ah_g);
    pt.rebuild_derived();
    return pt;
}

ManifoldPoint construct_point(const ManifoldShape& shape, const PointData& data,
                              const Config& cfg, bool validate) {
    shape.validate(cfg);
    int n0 = shape.n[0];

    // normalization of a: monic degree n0, missing z^{n0-1}
    require(int(data.a.poly.size()) == n0 + 1, "normalization: a must be monic of degree n0");
    require(std::abs(data.a.poly[size_t(n0)] - cd{1, 0}) < 1e-12,
            "normalization: a must be monic");
    if (n0 >= 1)
        require(std::abs(data.a.poly[size_t(n0 - 1)]) < 1e-12,
                "normalization: coefficient of z^{n0-1} must vanish");

    for (const auto& pl : data.a.poles) {
        bool inside = false;
        for (int i = 0; i < shape.m; ++i)
            inside = inside ||
                     std::abs(pl.pos - shape.center[size_t(i)]) < shape.radius[size_t(i)] * 0.98;
        require(inside, "shape: pole of a must lie strictly inside a disk");
    }

    // ahat structure: principal parts sit exactly at the phi_i with order n_i;
    // any other pole must be strictly outside every disk
    std::vector<const RationalFn::Pole*> pp_at_phi(size_t(shape.m), nullptr);
    for (const auto& pl : data.ahat.poles) {
        int at = -1;
        for (int i = 0; i < shape.m; ++i)
            if (std::abs(pl.pos - shape.phi[size_t(i)]) < 1e-13) at = i;
        if (at >= 0) {
            require(int(pl.coef.size()) <= shape.n[size_t(at + 1)],
                    "C1: pole order of ahat exceeds n_i at phi_i");
            pp_at_phi[size_t(at)] = &pl;
        } else {
            for (int i = 0; i < shape.m; ++i)
                require(std::abs(pl.pos - shape.center[size_t(i)]) >
                            shape.radius[size_t(i)] * 1.02,
                        "shape: extra pole of ahat must lie strictly outside all disks");
        }
    }
    for (int i = 0; i < shape.m; ++i) {
        require(pp_at_phi[size_t(i)] != nullptr, "C1: ahat has no pole at phi_i");
        const auto& pc = pp_at_phi[size_t(i)]->coef;
        require(int(pc.size()) == shape.n[size_t(i + 1)] &&
                    std::abs(pc.back()) > cfg.tol_of("zero"),
                "C1: leading coefficient of ahat at phi_i vanishes");
    }

    ManifoldPoint pt;
    pt.shape = shape;
    pt.cfg = cfg;
    pt.rational = data;
    pt.a_inf = data.a.at_inf(cfg.tail_order);
    pt.ah_phi.clear();
    for (int i = 0; i < shape.m; ++i)
        pt.ah_phi.push_back(data.ahat.at_point(shape.phi[size_t(i)], kPhiOrder));
    auto eval_a = [&](cd z) { return data.a.eval(z); };
    auto eval_ah = [&](cd z) { return data.ahat.eval(z); };
    std::vector<CircleGerm> ag, ahg;
    for (int i = 0; i < shape.m; ++i) {
        ag.push_back(CircleGerm::from_function(shape.center[size_t(i)], shape.radius[size_t(i)],
                                               cfg, eval_a));
        ahg.push_back(CircleGerm::from_function(shape.center[size_t(i)], shape.radius[size_t(i)],
                                                cfg, eval_ah));
    }
    pt.a_g = GammaGerm(std::move(ag));
    pt.ah_g = GammaGerm(std::move(ahg));
    pt.rebuild_derived();

    if (validate) {
        double tail_tol = cfg.tol_of("germ_tail");
        for (int i = 0; i < shape.m; ++i) {
            require(pt.a_g[i].tail_weight() < tail_tol,
                    "resolution: a insufficiently resolved on circle (singularity too close)");
            require(pt.ah_g[i].tail_weight() < tail_tol,
                    "resolution: ahat insufficiently resolved on circle");
            require(pt.zeta_g[i].tail_weight() < tail_tol,
                    "resolution: zeta insufficiently resolved on circle");
        }
        for (int i = 0; i < shape.m; ++i) {
            int w = winding_number(pt.zeta_g[i], cfg.tol_of("zero"), cfg.tol_of("winding"));
            if (w != shape.d[size_t(i)]) {
                std::ostringstream os;
                os << "C2-winding: winding of zeta on circle " << (i + 1) << " is " << w
                   << ", expected " << shape.d[size_t(i)];
                fail(os.str());
            }
            double floorv =
                cfg.tol_of("zero") * std::max(1.0, pt.zetap_g[i].max_abs_sample());
            require(pt.zetap_g[i].min_abs_sample() > floorv,
                    "C2-critical: zeta' vanishes on a circle");
        }
        // reconstruction identities: a = ell + zeta_-, ahat = ell - zeta_+
        double scale_a = std::max(1.0, pt.a_g.max_abs());
        for (int i = 0; i < shape.m; ++i) {
            auto ra = sub(sub(pt.a_g[i], pt.ell_g[i]), pt.zeta_sp.minus[i]);
            auto rh = sub(add(pt.ah_g[i], pt.zeta_sp.plus[i]), pt.ell_g[i]);
            require(ra.max_abs_sample() < cfg.tol_of("point") * scale_a,
                    "consistency: a != ell + zeta_- on a circle");
            require(rh.max_abs_sample() < cfg.tol_of("point") * scale_a,
                    "consistency: ahat != ell - zeta_+ on a circle");
        }
    }
    return pt;
}

ManifoldPoint point_shift(const ManifoldPoint& pt, const TangentVector& X, double eps) {
    Series a_inf = add(pt.a_inf, scale(X.da_inf, cd{eps, 0}));
    GammaGerm a_g = add(pt.a_g, scale(X.da, cd{eps, 0}));
    std::vector<Series> ah_phi;
    for (int i = 0; i < pt.shape.m; ++i)
        ah_phi.push_back(add(pt.ah_phi[size_t(i)], scale(X.dh_phi[size_t(i)], cd{eps, 0})));
    GammaGerm ah_g = add(pt.ah_g, scale(X.dh, cd{eps, 0}));
    return point_from_parts(pt.shape, pt.cfg, std::move(a_inf), std::move(a_g),
                            std::move(ah_phi), std::move(ah_g));
}

// ---------------------------------------------------------------------------
// flat structure

Series chi0_power(const ManifoldPoint& pt, Frac e) {
    return pow_frac(pt.ell_inf, Frac(e.num, e.den * pt.shape.n[0]), pt.cfg.tail_order);
}

Series chik_power(const ManifoldPoint& pt, int k, Frac e) {
    return pow_frac(pt.ell_phi[size_t(k)], Frac(e.num, e.den * pt.shape.n[size_t(k + 1)]),
                    kPhiOrder);
}

TangentVector flat_vector(const ManifoldPoint& pt, const FlatCoord& c) {
    TangentVector out;
    const auto& cfg = pt.cfg;
    switch (c.fam) {
        case FlatCoord::T: {
            int i = c.i;
            auto zp = pow_frac(pt.zeta_g[i], Frac(c.k, pt.shape.d[size_t(i)]),
                               cfg.tol_of("zero"), cfg.tol_of("winding"));
            auto Z = mul(zp, pt.zetap_g[i]);
            GammaGerm Zg = gamma_zero(pt);
            Zg[i] = Z;
            auto sp = project(Zg, cfg);
            out.da = neg(sp.minus);
            out.da_inf = neg(sp.minus_at_inf);
            out.dh = sp.plus;
            for (int j = 0; j < pt.shape.m; ++j)
                out.dh_phi.push_back(laurent_at(sp.plus[j], pt.shape.phi[size_t(j)], 0, kPhiOrder));
            return out;
        }
        case FlatCoord::H0: {
            Series P = part_ge(mul(pt.ellp_inf, chi0_power(pt, Frac(-c.k))), 0);
            GammaGerm g = gamma_from_series(pt, P);
            out.da = g;
            out.da_inf = P;
            out.dh = g;
            for (int j = 0; j < pt.shape.m; ++j)
                out.dh_phi.push_back(poly_to_center(P, pt.shape.phi[size_t(j)]));
            return out;
        }
        case FlatCoord::H: {
            int k = c.i;
            Series W =
                neg(part_le(mul(pt.ellp_phi[size_t(k)], chik_power(pt, k, Frac(-c.k))), -1));
            GammaGerm g = gamma_from_series(pt, W);
            out.da = g;
            out.da_inf = pp_to_inf(W, cfg.tail_order);
            out.dh = g;
            for (int j = 0; j < pt.shape.m; ++j) {
                if (j == k)
                    out.dh_phi.push_back(W);
                else
                    out.dh_phi.push_back(
                        pp_recenter_taylor(W, pt.shape.phi[size_t(j)], kPhiOrder));
            }
            return out;
        }
    }
    fail("flat_vector: bad coordinate");
}

FlatChart flat_chart(const ManifoldPoint& pt, int s_min, int s_max) {
    FlatChart ch;
    ch.s_min = s_min;
    ch.s_max = s_max;
    const auto& cfg = pt.cfg;
    ch.t.resize(size_t(pt.shape.m));
    for (int i = 0; i < pt.shape.m; ++i) {
        auto w = pow_frac(pt.zeta_g[i], Frac(1, pt.shape.d[size_t(i)]), cfg.tol_of("zero"),
                          cfg.tol_of("winding"));
        auto wp = derivative(w);
        auto zg = CircleGerm::monomial(pt.shape.center[size_t(i)], pt.shape.radius[size_t(i)],
                                       cfg, 1, cd{1, 0});
        for (auto& s : zg.sam) s += pt.shape.center[size_t(i)];
        zg.coef[size_t(zg.N)] += pt.shape.center[size_t(i)];
        for (int s = s_min; s <= s_max; ++s) {
            auto integrand = mul(mul(zg, pow_int(w, -s - 1, cfg.tol_of("zero"))), wp);
            ch.t[size_t(i)][s] = cauchy_coefficient(integrand);
        }
    }
    int n0 = pt.shape.n[0];
    if (n0 >= 2) {
        auto chi0 = chi0_power(pt, Frac(1));
        auto z_of = compose_inverse_inf(chi0, std::max(12, n0 + 6), cfg.inverse_iters);
        for (int j = 1; j <= n0 - 1; ++j) ch.h0.push_back(-z_of.coef(-j));
    }
    for (int k = 0; k < pt.shape.m; ++k) {
        int nk = pt.shape.n[size_t(k + 1)];
        auto chik = chik_power(pt, k, Frac(1));
        auto z_of = compose_inverse_finite(chik, std::max(12, nk + 6), cfg.inverse_iters);
        std::vector<cd> hk;
        hk.push_back(z_of.coef(0));
        for (int r = 1; r <= nk; ++r) hk.push_back(z_of.coef(-r));
        ch.h.push_back(std::move(hk));
    }
    return ch;
}

// ---------------------------------------------------------------------------
// ell variations and tangency

Series dell_at_inf(const ManifoldPoint& pt, const TangentVector& X) {
    Series out = part_ge(X.da_inf, 0);
    for (int i = 0; i < pt.shape.m; ++i) {
        Series pp = part_le(X.dh_phi[size_t(i)], -1);
        if (!pp.empty()) out = add(out, pp_to_inf(pp, pt.cfg.tail_order));
    }
    if (out.empty()) out = Series(Center::inf(), -pt.cfg.tail_order, 0, false);
    return out;
}

Series dell_at_phi(const ManifoldPoint& pt, const TangentVector& X, int j) {
    Series out = poly_to_center(part_ge(X.da_inf, 0), pt.shape.phi[size_t(j)]);
    out = add(out, part_le(X.dh_phi[size_t(j)], -1));
    for (int i = 0; i < pt.shape.m; ++i) {
        if (i == j) continue;
        Series pp = part_le(X.dh_phi[size_t(i)], -1);
        if (!pp.empty())
            out = add(out, pp_recenter_taylor(pp, pt.shape.phi[size_t(j)], kPhiOrder));
    }
    return out;
}

double tangency_residual(const ManifoldPoint& pt, const TangentVector& X) {
    double worst = 0.0;
    double scale = std::max(1.0, tv_norm(X));
    int n0 = pt.shape.n[0];
    for (int k = n0 - 1; k <= X.da_inf.hi; ++k)
        worst = std::max(worst, std::abs(X.da_inf.coef(k)));
    for (int j = 0; j < pt.shape.m; ++j) {
        int nj = pt.shape.n[size_t(j + 1)];
        const Series& s = X.dh_phi[size_t(j)];
        for (int k = s.lo; k <= std::min(s.hi, -nj - 2); ++k)
            worst = std::max(worst, std::abs(s.coef(k)));
    }
    return worst / scale;
}

}  // namespace mfm
