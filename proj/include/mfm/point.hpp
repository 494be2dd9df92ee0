#pragma once

#include <optional>

#include "mfm/germ.hpp"

namespace mfm {

inline constexpr int kPhiOrder = 48;  // Taylor depth carried at the phi_i

// Combinatorial and geometric data of the manifold family.
struct ManifoldShape {
    int m = 0;
    std::vector<int> n;       // size m+1; n[0] is the exponent at infinity
    std::vector<int> d;       // size m, nonzero
    std::vector<cd> center;   // circle centers p_i
    std::vector<double> radius;
    std::vector<cd> phi;      // pole locations, strictly inside the disks

    void validate(const Config& cfg) const;
};

// Rational function: polynomial part plus principal parts at finite poles.
struct RationalFn {
    struct Pole {
        cd pos;
        std::vector<cd> coef;  // coef[j-1] * (z-pos)^{-j}, j = 1..order
    };
    std::vector<cd> poly;  // poly[k] * z^k
    std::vector<Pole> poles;

    cd eval(cd z) const;
    RationalFn derivative() const;
    Series at_inf(int depth) const;
    Series at_point(cd p, int order) const;  // Laurent at p; a pole at p stays exact
    // coefficientwise quasi-homogeneous scaling with deg z = 1/n0
    RationalFn scaled(double lambda, int n0) const;
    int poly_degree() const;
};

struct PointData {
    RationalFn a, ahat;
};

// Tangent vector: derivative pair, carried as circle germs plus one-sided
// expansions at infinity (first slot) and at each phi_i (second slot).
struct TangentVector {
    GammaGerm da;
    Series da_inf;
    GammaGerm dh;
    std::vector<Series> dh_phi;
};

TangentVector tv_add(const TangentVector& x, const TangentVector& y);
TangentVector tv_sub(const TangentVector& x, const TangentVector& y);
TangentVector tv_scale(const TangentVector& x, cd s);
double tv_norm(const TangentVector& x);

// Cotangent representative (omega, omega_hat) in H x H.
struct Covector {
    GammaGerm w;
    GammaGerm wh;
};

Covector cov_add(const Covector& a, const Covector& b);
Covector cov_sub(const Covector& a, const Covector& b);
Covector cov_scale(const Covector& a, cd s);

// Flat coordinate label.
struct FlatCoord {
    enum Family { T, H0, H } fam = T;
    int i = 0;  // 0-based circle index (T and H families)
    int k = 0;  // s for T, j for H0, r for H
    static FlatCoord t(int i, int s) { return {T, i, s}; }
    static FlatCoord h0(int j) { return {H0, 0, j}; }
    static FlatCoord h(int i, int r) { return {H, i, r}; }
    bool operator==(const FlatCoord& o) const { return fam == o.fam && i == o.i && k == o.k; }
    bool operator<(const FlatCoord& o) const {
        if (fam != o.fam) return fam < o.fam;
        if (i != o.i) return i < o.i;
        return k < o.k;
    }
    std::string name() const;
};

struct FlatChart {
    int s_min = 0, s_max = 0;
    std::vector<std::map<int, cd>> t;   // per circle: s -> t_{i,s}
    std::vector<cd> h0;                 // j = 1..n0-1 at index j-1
    std::vector<std::vector<cd>> h;     // per circle: r = 0..n_k

    cd value(const FlatCoord& c) const;
};

// A point of the manifold with all cached derived data.
class ManifoldPoint {
public:
    ManifoldShape shape;
    Config cfg;

    Series a_inf;                // expansion of a at infinity
    GammaGerm a_g;
    std::vector<Series> ah_phi;  // expansion of ahat at each phi_i
    GammaGerm ah_g;

    GammaGerm zeta_g, zetap_g;
    SplitPair zeta_sp;
    GammaGerm ell_g, ellp_g;
    Series ell_inf, ellp_inf;
    std::vector<Series> ell_phi, ellp_phi;
    Series ap_inf;
    GammaGerm ap_g, ahp_g;
    std::vector<Series> ahp_phi;

    std::optional<PointData> rational;

    int circles() const { return shape.m; }
    void rebuild_derived();
};

// Construct and validate a point from rational data.  Throws mfm::error with
// a reason prefix ("C1", "C2-winding", "C2-critical", "shape", "normalization",
// "resolution") when a condition fails.
ManifoldPoint construct_point(const ManifoldShape& shape, const PointData& data,
                              const Config& cfg, bool validate = true);

// Point built from germ/tail data directly (perturbations, series input).
ManifoldPoint point_from_parts(const ManifoldShape& shape, const Config& cfg, Series a_inf,
                               GammaGerm a_g, std::vector<Series> ah_phi, GammaGerm ah_g);

// Straight-line shift by eps*X (first-order jet of the data).
ManifoldPoint point_shift(const ManifoldPoint& pt, const TangentVector& X, double eps);

// zeta/ell decomposition accessors (cached at construction).
inline const GammaGerm& zeta_of(const ManifoldPoint& pt) { return pt.zeta_g; }
inline const Series& ell_at_inf(const ManifoldPoint& pt) { return pt.ell_inf; }

// Germ constructors on the point's circle family.
GammaGerm gamma_zero(const ManifoldPoint& pt);
GammaGerm gamma_constant(const ManifoldPoint& pt, cd v);
GammaGerm gamma_coordinate(const ManifoldPoint& pt);  // the function z
GammaGerm gamma_from_series(const ManifoldPoint& pt, const Series& s);
GammaGerm gamma_from_function(const ManifoldPoint& pt, const std::function<cd(cd)>& f);

// Flat basis vector fields (closed forms).
TangentVector flat_vector(const ManifoldPoint& pt, const FlatCoord& c);

// Chart extraction over the window s in [s_min, s_max].
FlatChart flat_chart(const ManifoldPoint& pt, int s_min, int s_max);

// All coordinates in a window (t window plus every h).
std::vector<FlatCoord> window_coords(const ManifoldShape& shape, int s_min, int s_max);

// d ell / d X expansions induced by a tangent vector.
Series dell_at_inf(const ManifoldPoint& pt, const TangentVector& X);
Series dell_at_phi(const ManifoldPoint& pt, const TangentVector& X, int j);

// Tangency diagnostics: top degree of da at infinity must stay <= n0-2 and
// the pole order of dhat at phi_j must stay <= n_j + 1.
double tangency_residual(const ManifoldPoint& pt, const TangentVector& X);

// chi powers: chi_0^e at infinity (e = Frac(num,den) with den | n0 scaling)
Series chi0_power(const ManifoldPoint& pt, Frac e);
Series chik_power(const ManifoldPoint& pt, int k, Frac e);

}  // namespace mfm
