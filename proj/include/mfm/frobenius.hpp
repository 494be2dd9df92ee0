#pragma once

#include <random>

#include "mfm/point.hpp"

namespace mfm {

// Spectrum and nilpotent matrix of the structure (coordinate degree data).
struct SpectrumData {
    static double mu(const ManifoldShape& shape, const FlatCoord& u);
    // coefficient of theta_{w,p-1} in the Euler identity for theta_{u,p}
    static double R_coeff(const ManifoldShape& shape, const FlatCoord& u, const FlatCoord& w);
    static bool resonant(const ManifoldShape& shape, const FlatCoord& u);
};

// Structure operations evaluated at one fixed point.
class Frob {
public:
    ManifoldPoint pt;

    explicit Frob(ManifoldPoint p) : pt(std::move(p)) {}

    const Config& cfg() const { return pt.cfg; }
    int m() const { return pt.shape.m; }

    cd metric(const TangentVector& X1, const TangentVector& X2) const;
    TangentVector eta(const Covector& w) const;
    Covector eta_inverse(const TangentVector& xi) const;
    cd pairing(const Covector& w, const TangentVector& X) const;

    Covector cot_prod(const Covector& w1, const Covector& w2) const;
    TangentVector tan_prod(const TangentVector& x1, const TangentVector& x2) const;
    TangentVector c_xi(const TangentVector& xi, const Covector& w) const;
    cd trace(const Covector& w) const;

    TangentVector unit_field() const;
    TangentVector euler_field() const;

    cd c3_def(const TangentVector& x1, const TangentVector& x2, const TangentVector& x3) const;
    cd c3_flat(const FlatCoord& u, const FlatCoord& v, const FlatCoord& w) const;

    TangentVector g_map(const Covector& w) const;
    cd intersection(const Covector& w1, const Covector& w2) const;

    // second/third derivatives of the local potentials
    cd u2_t(int i, int s1, int s2) const;
    cd v2_h0(int i, int j1, int j2) const;
    cd w3_h(const FlatCoord& u, const FlatCoord& v, const FlatCoord& w) const;

    // flat basis field (cached)
    const TangentVector& basis(const FlatCoord& c) const;
    // residual of |eta(w1 - w2)| relative to scale: covector equality test
    double covector_distance(const Covector& w1, const Covector& w2) const;

private:
    mutable std::map<FlatCoord, TangentVector> basis_cache_;
    mutable std::optional<TangentVector> euler_cache_;

    struct TCache {
        GammaGerm Z;        // zeta^{s/d} zeta' 1_{gamma_i}
        SplitPair sp;
    };
    const TCache& tcache(int i, int s) const;
    mutable std::map<std::pair<int, int>, TCache> tcache_;

    Series chi0_pow(int e) const;       // chi_0^e at infinity
    Series chik_pow(int k, int e) const;  // chi_k^e at phi_k
    mutable std::map<int, Series> chi0_cache_;
    mutable std::map<std::pair<int, int>, Series> chik_cache_;
};

// Random tangent vector as a combination of window basis fields.
TangentVector random_tangent(const Frob& F, const std::vector<FlatCoord>& coords,
                             std::mt19937_64& rng, double amp = 1.0);
// Random covector from small Laurent data on each circle.
Covector random_covector(const Frob& F, std::mt19937_64& rng, double amp = 1.0);

}  // namespace mfm
