#pragma once

#include <functional>

#include "mfm/series.hpp"

namespace mfm {

// Two-sided truncated Laurent data on an annulus around a finite center,
// kept in sync with uniform samples on the circle |z - p| = r.
class CircleGerm {
public:
    cd p{0, 0};
    double r = 1.0;
    int N = 0;  // coefficients cover exponents -N..N
    int M = 0;  // sample count, M >= 2N+2
    std::vector<cd> coef;  // size 2N+1, exponent k at index k+N
    std::vector<cd> sam;   // size M, z_j = p + r exp(2*pi*i*j/M)

    CircleGerm() = default;
    CircleGerm(cd center, double radius, const Config& cfg)
        : p(center), r(radius), N(cfg.trunc_order), M(cfg.sample_count) {
        require(M >= 2 * N + 2, "CircleGerm: sample count too small for truncation order");
        coef.assign(size_t(2 * N + 1), cd{0, 0});
        sam.assign(size_t(M), cd{0, 0});
    }

    static CircleGerm zero(cd center, double radius, const Config& cfg) {
        return CircleGerm(center, radius, cfg);
    }
    static CircleGerm constant(cd center, double radius, const Config& cfg, cd v);
    // (z - p)^k
    static CircleGerm monomial(cd center, double radius, const Config& cfg, int k, cd v);
    static CircleGerm from_function(cd center, double radius, const Config& cfg,
                                    const std::function<cd(cd)>& f);
    static CircleGerm from_samples(cd center, double radius, const Config& cfg,
                                   std::vector<cd> samples);
    // Evaluate a one-sided series (finite center anywhere, or at infinity)
    // on this circle's samples; exact for polynomial/principal-part data.
    static CircleGerm from_series(cd center, double radius, const Config& cfg,
                                  const Series& s);

    cd sample_point(int j) const;
    cd coefficient(int k) const {
        if (k < -N || k > N) return cd{0, 0};
        return coef[size_t(k + N)];
    }

    void sync_from_samples();
    void sync_from_coeffs();
    // max |sample - eval(coeffs)|: duality / resolution diagnostic
    double duality_residual() const;
    // largest |coefficient| near the truncation frontier, relative to max
    double tail_weight() const;

    double max_abs_sample() const;
    double min_abs_sample() const;
};

CircleGerm add(const CircleGerm& a, const CircleGerm& b);
CircleGerm sub(const CircleGerm& a, const CircleGerm& b);
CircleGerm neg(const CircleGerm& a);
CircleGerm scale(const CircleGerm& a, cd s);
CircleGerm mul(const CircleGerm& a, const CircleGerm& b);
CircleGerm div(const CircleGerm& a, const CircleGerm& b, double tol_zero);
CircleGerm derivative(const CircleGerm& f);
CircleGerm pow_int(const CircleGerm& f, int k, double tol_zero);

// Winding number by total argument increment; throws when a sample is within
// tol_zero of the origin or the increment is not close to a multiple of 2*pi.
int winding_number(const CircleGerm& f, double tol_zero, double tol_turn);

// f^(q) with branch anchored at the angle-0 sample (principal root) and
// tracked continuously around the circle; requires winding * q integer.
CircleGerm pow_frac(const CircleGerm& f, Frac q, double tol_zero, double tol_turn);

// log(f/g), branch continuous along the circle, principal at the angle-0
// sample; requires winding(f/g) == 0.
CircleGerm log_ratio(const CircleGerm& f, const CircleGerm& g, double tol_zero,
                     double tol_turn);

// Coefficient of (z-p)^{-1}: (1/2*pi*i) contour integral of f dz.
cd cauchy_coefficient(const CircleGerm& f);
inline cd contour_integral(const CircleGerm& f) { return 2.0 * kPi * kI * cauchy_coefficient(f); }

// Laurent coefficients around an interior point phi by quadrature:
// L_k = (1/2*pi*i) oint f(z) (z-phi)^{-k-1} dz, k in [kmin, kmax].
// Valid when f's only singularity strictly inside the circle is at phi
// (kmin < 0) or f is analytic inside (kmin >= 0).
Series laurent_at(const CircleGerm& f, cd phi, int kmin, int kmax);

// coefficient split on this circle only
CircleGerm nonnegative_part(const CircleGerm& f);
CircleGerm negative_part(const CircleGerm& f);
// negative-exponent coefficients as a principal-part series at p
Series principal_series(const CircleGerm& f);

// Multi-circle germ: one CircleGerm per boundary circle.
class GammaGerm {
public:
    std::vector<CircleGerm> circ;

    GammaGerm() = default;
    explicit GammaGerm(std::vector<CircleGerm> c) : circ(std::move(c)) {}

    int circles() const { return int(circ.size()); }
    const CircleGerm& operator[](int i) const { return circ[size_t(i)]; }
    CircleGerm& operator[](int i) { return circ[size_t(i)]; }

    static GammaGerm zeros_like(const GammaGerm& g);
    // zero on every circle except i
    GammaGerm restricted_to(int i) const;
    double max_abs() const;
};

GammaGerm add(const GammaGerm& a, const GammaGerm& b);
GammaGerm sub(const GammaGerm& a, const GammaGerm& b);
GammaGerm neg(const GammaGerm& a);
GammaGerm scale(const GammaGerm& a, cd s);
GammaGerm mul(const GammaGerm& a, const GammaGerm& b);
GammaGerm derivative(const GammaGerm& f);

// Result of the Cauchy projection split f = plus + minus.
struct SplitPair {
    GammaGerm plus;        // analytic inside each disk (continued across gamma)
    GammaGerm minus;       // analytic on the exterior, vanishing at infinity
    Series minus_at_inf;   // expansion of minus at infinity (exponents <= -1)
};

// Cauchy projection of a multi-circle germ.  Cross-circle contributions are
// realized by evaluating each circle's principal part on the other circles.
SplitPair project(const GammaGerm& f, const Config& cfg);

// Geometric safety margin for the circle family.
void check_separation(const std::vector<cd>& centers, const std::vector<double>& radii,
                      double rho_max);

}  // namespace mfm
