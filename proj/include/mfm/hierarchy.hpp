#pragma once

#include "mfm/frobenius.hpp"

namespace mfm {

// Truncated polynomial in the loop parameter x.
struct XPoly {
    std::vector<cd> c;  // c[k] x^k

    XPoly() = default;
    XPoly(std::initializer_list<cd> v) : c(v) {}
    static XPoly constant(cd v) { return XPoly{{v}}; }

    cd eval(double x) const {
        cd acc{0, 0};
        for (size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
        return acc;
    }
    XPoly derivative() const {
        XPoly out;
        for (size_t k = 1; k < c.size(); ++k) out.c.push_back(double(k) * c[k]);
        return out;
    }
};

// Rational function whose coefficients (and pole positions) are polynomial
// in the loop parameter.
struct LoopRationalFn {
    struct Pole {
        XPoly pos;
        std::vector<XPoly> coef;  // coef[j-1] (z-pos)^{-j}
    };
    std::vector<XPoly> poly;
    std::vector<Pole> poles;

    RationalFn at(double x) const;
    RationalFn dx_at(double x) const;  // d/dx of the data, pole motion included
};

// One snapshot of a loop: the point together with the loop velocity d/dx and
// the pole velocities.
struct LoopProbe {
    ManifoldPoint pt;
    TangentVector vel;
    std::vector<cd> phidot;
};

// Loop in the manifold: rational data with x-polynomial coefficients.  The
// first m poles of ahat are the distinguished poles phi_i, in circle order.
struct LoopPoint {
    ManifoldShape shape0;  // phi entries are ignored (taken from ahat poles)
    LoopRationalFn a, ahat;

    LoopProbe eval(const Config& cfg, double x, bool validate = true) const;
};

// Covector field on the loop with x-polynomial Laurent data per circle.
struct CovectorJet {
    Covector v;
    Covector x;  // d/dx
};

struct LoopCovector {
    struct CircleData {
        std::map<int, XPoly> w, wh;  // exponent -> coefficient polynomial
    };
    std::vector<CircleData> circles;

    CovectorJet at(const ManifoldPoint& pt, double x) const;
};

// Covector-with-correction produced by covariant differentiation: the core
// representative plus an extra first-slot term analytic on the exterior
// domain, carried by its expansion at infinity.
struct NablaCovector {
    Covector core;
    Series inf_corr;
};

// Expansion at infinity of a germ that extends to the exterior domain with a
// pole at infinity of degree <= top_deg (coefficients via circle quadrature).
Series inf_tail_from_gamma(const GammaGerm& f, const Config& cfg, int top_deg);

// Assemble a tangent vector from germ components, extracting the one-sided
// tails by quadrature.
TangentVector assemble_tangent(const ManifoldPoint& pt, GammaGerm da, GammaGerm dh,
                               int top_deg, int pole_depth);

// Hamiltonian operators ------------------------------------------------------

// Closed form of the first Hamiltonian operator.
TangentVector p1_closed(const LoopProbe& L, const CovectorJet& w);
// Closed form of the second Hamiltonian operator (away from the degeneracy
// locus of the intersection form).
TangentVector p2_closed(const LoopProbe& L, const CovectorJet& w);

// Covariant x-derivative of a covector field along the loop.
NablaCovector nabla_x_covector(const LoopProbe& L, const CovectorJet& w);
// Covariant derivative along an arbitrary direction at a point, given the
// directional derivative dw of the covector field.
NablaCovector nabla_dir_covector(const ManifoldPoint& pt, const TangentVector& dir,
                                 const Covector& w, const Covector& dw);

TangentVector eta_of_nabla(const Frob& F, const NablaCovector& nc);
TangentVector c_xi_of_nabla(const Frob& F, const TangentVector& xi, const NablaCovector& nc);
cd pairing_nabla(const Frob& F, const NablaCovector& nc, const TangentVector& X);

// operator routes through the connection
inline TangentVector p1_via_connection(const Frob& F, const LoopProbe& L, const CovectorJet& w) {
    return eta_of_nabla(F, nabla_x_covector(L, w));
}
inline TangentVector p2_via_connection(const Frob& F, const LoopProbe& L, const CovectorJet& w) {
    return c_xi_of_nabla(F, F.euler_field(), nabla_x_covector(L, w));
}

// Levi-Civita connection on vector fields; d1d2 is the second-derivative
// data of the d2-field along d1.
TangentVector nabla_vec(const ManifoldPoint& pt, const TangentVector& d1,
                        const TangentVector& d2, const TangentVector& d1d2);

// Hamiltonian densities ------------------------------------------------------

double harmonic_cp(int p);
// Gamma(1-alpha)/Gamma(2+p-alpha) as a finite product
double gamma_ratio(int p, double alpha);

cd theta_value(const Frob& F, const FlatCoord& u, int p);
Covector theta_gradient(const Frob& F, const FlatCoord& u, int p);
CovectorJet theta_gradient_jet(const LoopProbe& L, const FlatCoord& u, int p);
// Window-limited finite-difference gradient through the flat chart.
Covector theta_gradient_fd(const Frob& F, const FlatCoord& u, int p,
                           const std::vector<FlatCoord>& window);

// Principal-hierarchy flow, closed form.
TangentVector principal_flow(const LoopProbe& L, const FlatCoord& u, int p);

// Verification residuals ------------------------------------------------------

// max over directions of the pairing residual of
// nabla_dir d theta_{u,p} - eta^{-1}(C_dir(d theta_{u,p-1}))
double verify_recursion(const Frob& F, const FlatCoord& u, int p,
                        const std::vector<FlatCoord>& dirs,
                        const std::vector<FlatCoord>& probes);

// residual of the Euler identity for theta_{u,p} (finite differences along
// the Euler field)
double verify_euler(const Frob& F, const FlatCoord& u, int p);

}  // namespace mfm
