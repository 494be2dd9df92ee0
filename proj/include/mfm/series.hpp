#pragma once

#include "mfm/common.hpp"

namespace mfm {

// Expansion locus of a one-sided series: a finite point or infinity.
struct Center {
    bool at_inf = false;
    cd p{0.0, 0.0};

    static Center inf() { return Center{true, cd{0, 0}}; }
    static Center at(cd p) { return Center{false, p}; }
};

inline bool same_center(const Center& a, const Center& b) {
    if (a.at_inf != b.at_inf) return false;
    return a.at_inf || a.p == b.p;
}

// Truncated one-sided Laurent expansion.
//
// At a finite center p it represents sum_{k=lo..hi} c_k (z-p)^k and the
// untrusted tail sits above hi; at infinity it represents
// sum_{k=lo..hi} c_k z^k and the untrusted tail sits below lo.  `exact`
// asserts that every coefficient outside the window is identically zero,
// which lets products keep their full windows.
class Series {
public:
    Center ctr;
    int lo = 0;
    int hi = -1;  // empty when hi < lo
    bool exact = false;
    std::vector<cd> c;

    Series() = default;
    Series(Center center, int lo_, int hi_, bool exact_ = false)
        : ctr(center), lo(lo_), hi(hi_), exact(exact_) {
        if (hi >= lo) c.assign(size_t(hi - lo + 1), cd{0, 0});
    }

    static Series zero(Center center) {
        Series s(center, 0, -1, true);
        return s;
    }
    static Series constant(Center center, cd v) {
        Series s(center, 0, 0, true);
        s.c[0] = v;
        return s;
    }
    static Series monomial(Center center, int k, cd v) {
        Series s(center, k, k, true);
        s.c[0] = v;
        return s;
    }
    // The coordinate z expressed at this center: (z-p) + p, or z at infinity.
    static Series coordinate(Center center) {
        if (center.at_inf) return monomial(center, 1, cd{1, 0});
        Series s(center, 0, 1, true);
        s.c[0] = center.p;
        s.c[1] = cd{1, 0};
        return s;
    }

    bool empty() const { return hi < lo; }
    int length() const { return empty() ? 0 : hi - lo + 1; }
    // Index of the last trusted exponent in the tail direction.
    int frontier() const { return ctr.at_inf ? lo : hi; }

    cd coef(int k) const {
        if (k < lo || k > hi) return cd{0, 0};
        return c[size_t(k - lo)];
    }
    void set(int k, cd v) {
        require(k >= lo && k <= hi, "Series::set out of window");
        c[size_t(k - lo)] = v;
    }
    void add_to(int k, cd v) {
        require(k >= lo && k <= hi, "Series::add_to out of window");
        c[size_t(k - lo)] += v;
    }

    // Leading (exact-side) nonzero exponent; throws if all ~0.
    int lead_exponent(double tiny = 0.0) const;
    cd lead_coef(double tiny = 0.0) const { return coef(lead_exponent(tiny)); }

    double max_abs() const;
    void drop_zero_edges(double tiny = 0.0);
};

Series add(const Series& a, const Series& b);
Series sub(const Series& a, const Series& b);
Series neg(const Series& a);
Series scale(const Series& a, cd s);
Series mul(const Series& a, const Series& b);
// 1/f, window length `len` counted from the inverted lead exponent.
Series inverse(const Series& f, int len);
Series div(const Series& a, const Series& b, int len);
Series pow_int(const Series& f, int k, int len);
// f^(q.num/q.den); the lead exponent times q must be an integer.  The lead
// coefficient's root uses the principal branch.
Series pow_frac(const Series& f, Frac q, int len);
// log(f / (c_lead u^k_lead)) as a series with no constant term.
Series log_rel(const Series& f, int len);
Series derivative(const Series& f);

// Truncations (.)_{>=k0} and (.)_{<=k0}; throw if the request reaches past
// the trusted frontier.
Series part_ge(const Series& f, int k0);
Series part_le(const Series& f, int k0);

inline cd residue(const Series& f) {  // coefficient of u^{-1}
    return f.coef(-1);
}
inline cd residue_at_inf(const Series& f) {  // res_inf f dz = -c_{-1}
    require(f.ctr.at_inf, "residue_at_inf: not an expansion at infinity");
    return -f.coef(-1);
}

// exp/log of series with no constant term (strictly positive exponents at a
// finite center, strictly negative at infinity).
Series exp_small(const Series& f, int len);
Series log1p_small(const Series& f, int len);

// Evaluate the truncated sum at a point (u = z-p, or z at infinity).
cd eval_at(const Series& f, cd z);

// Recentering helpers -------------------------------------------------------

// Principal part at a finite center pp (exponents < 0) re-expanded as a
// Taylor series around new_center, exponents 0..order.  Geometric formula,
// exact per monomial.
Series pp_recenter_taylor(const Series& pp, cd new_center, int order);
// Same principal part expanded at infinity, exponents down to -depth.
Series pp_to_inf(const Series& pp, int depth);
// Polynomial in z (exponents >= 0 at infinity) re-expanded about a finite
// center; exact.
Series poly_to_center(const Series& poly, cd new_center);
// Laurent data at p re-expanded about p+delta (annulus sense: negative
// exponents stay negative); valid when |delta| is small against the
// distances to the nearest singularities.
Series shift_center(const Series& f, cd delta, int extra = 8);

// Compositional inverse -----------------------------------------------------

// f = z + c0 + c_{-1} z^{-1} + ... at infinity; returns z(w) as a series at
// infinity in the new variable w with z(w) = w - c0 + ...
Series compose_inverse_inf(const Series& f, int len, int iters);
// f = c_{-1}(z-p)^{-1} + c0 + c1 (z-p) + ... with c_{-1} != 0; returns z(w)
// as a series at infinity in w: z(w) = p + e1 w^{-1} + e2 w^{-2} + ...
// The constant term of the result is the center p itself.
Series compose_inverse_finite(const Series& f, int len, int iters);

std::string to_string(const Series& f, int max_terms = 12);

}  // namespace mfm
