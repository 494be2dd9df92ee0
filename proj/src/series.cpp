#include "mfm/series.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <sstream>

namespace mfm {

namespace {
constexpr int kMaxLen = 640;  // hard cap on window growth

// Trim a window [lo,hi] to at most kMaxLen terms, cutting the untrusted
// frontier side of the given center kind.
void cap_window(bool at_inf, int& lo, int& hi, bool& exact) {
    if (hi - lo + 1 <= kMaxLen) return;
    if (at_inf)
        lo = hi - kMaxLen + 1;
    else
        hi = lo + kMaxLen - 1;
    exact = false;
}

// Drop frontier-side terms so that at most maxlen remain; clears exactness
// because dropped content is not claimed to vanish.
Series trim_tail(const Series& s, int maxlen) {
    if (s.length() <= maxlen) return s;
    Series out = s;
    if (s.ctr.at_inf) {
        out.lo = s.hi - maxlen + 1;
        out.c.assign(s.c.end() - maxlen, s.c.end());
    } else {
        out.hi = s.lo + maxlen - 1;
        out.c.assign(s.c.begin(), s.c.begin() + maxlen);
    }
    out.exact = false;
    return out;
}
}  // namespace

int Series::lead_exponent(double tiny) const {
    if (ctr.at_inf) {
        for (int k = hi; k >= lo; --k)
            if (std::abs(coef(k)) > tiny) return k;
    } else {
        for (int k = lo; k <= hi; ++k)
            if (std::abs(coef(k)) > tiny) return k;
    }
    fail("Series::lead_exponent: series is (numerically) zero");
}

double Series::max_abs() const {
    double m = 0.0;
    for (const auto& v : c) m = std::max(m, std::abs(v));
    return m;
}

void Series::drop_zero_edges(double tiny) {
    while (hi >= lo && std::abs(coef(ctr.at_inf ? hi : lo)) <= tiny) {
        if (ctr.at_inf) {
            c.pop_back();
            --hi;
        } else {
            c.erase(c.begin());
            ++lo;
        }
    }
}

Series add(const Series& a, const Series& b) {
    require(same_center(a.ctr, b.ctr), "Series add: center mismatch");
    if (a.empty()) return b;
    if (b.empty()) return a;
    int lo, hi;
    bool exact = a.exact && b.exact;
    if (a.ctr.at_inf) {
        int fa = a.exact ? INT_MIN / 2 : a.lo;
        int fb = b.exact ? INT_MIN / 2 : b.lo;
        lo = std::max({std::min(a.lo, b.lo), fa, fb});
        hi = std::max(a.hi, b.hi);
    } else {
        int fa = a.exact ? INT_MAX / 2 : a.hi;
        int fb = b.exact ? INT_MAX / 2 : b.hi;
        hi = std::min({std::max(a.hi, b.hi), fa, fb});
        lo = std::min(a.lo, b.lo);
    }
    if (hi < lo) return Series(a.ctr, 0, -1, false);
    cap_window(a.ctr.at_inf, lo, hi, exact);
    Series out(a.ctr, lo, hi, exact);
    for (int k = lo; k <= hi; ++k) out.set(k, a.coef(k) + b.coef(k));
    return out;
}

Series sub(const Series& a, const Series& b) { return add(a, neg(b)); }

Series neg(const Series& a) { return scale(a, cd{-1, 0}); }

Series scale(const Series& a, cd s) {
    Series out = a;
    for (auto& v : out.c) v *= s;
    return out;
}

Series mul(const Series& a, const Series& b) {
    require(same_center(a.ctr, b.ctr), "Series mul: center mismatch");
    if (a.empty() || b.empty()) return Series(a.ctr, 0, -1, true);
    int lo, hi;
    bool exact = a.exact && b.exact;
    if (a.ctr.at_inf) {
        hi = a.hi + b.hi;
        lo = a.lo + b.lo;
        if (!a.exact) lo = std::max(lo, a.lo + b.hi);
        if (!b.exact) lo = std::max(lo, b.lo + a.hi);
    } else {
        lo = a.lo + b.lo;
        hi = a.hi + b.hi;
        if (!a.exact) hi = std::min(hi, a.hi + b.lo);
        if (!b.exact) hi = std::min(hi, b.hi + a.lo);
    }
    if (hi < lo) return Series(a.ctr, 0, -1, false);
    cap_window(a.ctr.at_inf, lo, hi, exact);
    Series out(a.ctr, lo, hi, exact);
    for (int ka = a.lo; ka <= a.hi; ++ka) {
        cd va = a.coef(ka);
        if (va == cd{0, 0}) continue;
        int kb_lo = std::max(b.lo, lo - ka);
        int kb_hi = std::min(b.hi, hi - ka);
        for (int kb = kb_lo; kb <= kb_hi; ++kb) out.add_to(ka + kb, va * b.coef(kb));
    }
    return out;
}

Series inverse(const Series& f, int len) {
    require(!f.empty(), "Series inverse: empty series");
    int k0 = f.lead_exponent(0.0);
    cd c0 = f.coef(k0);
    int depth = f.ctr.at_inf ? (k0 - f.lo) : (f.hi - k0);
    if (!f.exact) len = std::min(len, depth + 1);
    require(len >= 1, "Series inverse: no trusted depth");
    int dir = f.ctr.at_inf ? -1 : +1;
    std::vector<cd> q(size_t(len), cd{0, 0});
    q[0] = cd{1, 0};
    auto rc = [&](int n) -> cd { return f.coef(k0 + dir * n) / c0; };
    for (int n = 1; n < len; ++n) {
        cd s{0, 0};
        for (int j = 0; j < n; ++j) s += q[size_t(j)] * rc(n - j);
        q[size_t(n)] = -s;
    }
    int ilo, ihi;
    if (f.ctr.at_inf) {
        ihi = -k0;
        ilo = -k0 - (len - 1);
    } else {
        ilo = -k0;
        ihi = -k0 + (len - 1);
    }
    Series res(f.ctr, ilo, ihi, false);
    for (int n = 0; n < len; ++n) res.set(-k0 + dir * n, q[size_t(n)] / c0);
    if (f.exact && f.length() == 1) res.exact = true;  // monomial inverse is exact
    return res;
}

Series div(const Series& a, const Series& b, int len) { return mul(a, inverse(b, len)); }

Series pow_int(const Series& f, int k, int len) {
    if (k == 0) return Series::constant(f.ctr, cd{1, 0});
    if (k < 0) return pow_int(inverse(f, len), -k, len);
    Series acc = f;
    Series out = Series::constant(f.ctr, cd{1, 0});
    int e = k;
    while (e > 0) {
        if (e & 1) out = mul(out, acc);
        e >>= 1;
        if (e) acc = mul(acc, acc);
    }
    return out;
}

Series exp_small(const Series& f, int len) {
    if (f.empty()) return Series::constant(f.ctr, cd{1, 0});
    if (f.ctr.at_inf)
        require(f.hi <= -1, "exp_small: series must vanish at infinity");
    else
        require(f.lo >= 1, "exp_small: series must vanish at the center");
    Series out = Series::constant(f.ctr, cd{1, 0});
    Series term = Series::constant(f.ctr, cd{1, 0});
    for (int j = 1; j <= len; ++j) {
        term = scale(mul(term, f), cd{1.0 / j, 0});
        if (term.empty()) break;
        out = add(out, term);
        if (f.ctr.at_inf && term.hi < -len) break;
        if (!f.ctr.at_inf && term.lo > len) break;
    }
    return out;
}

Series log1p_small(const Series& f, int len) {
    if (f.empty()) return Series::zero(f.ctr);
    if (f.ctr.at_inf)
        require(f.hi <= -1, "log1p_small: series must vanish at infinity");
    else
        require(f.lo >= 1, "log1p_small: series must vanish at the center");
    Series out = Series::zero(f.ctr);
    Series term = Series::constant(f.ctr, cd{1, 0});
    for (int j = 1; j <= len; ++j) {
        term = mul(term, f);
        if (term.empty()) break;
        out = add(out, scale(term, cd{(j % 2 ? 1.0 : -1.0) / j, 0}));
        if (f.ctr.at_inf && term.hi < -len) break;
        if (!f.ctr.at_inf && term.lo > len) break;
    }
    return out;
}

Series pow_frac(const Series& f, Frac q, int len) {
    if (q.num == 0) return Series::constant(f.ctr, cd{1, 0});
    if (q.is_integer()) return pow_int(f, int(q.num), len);
    int k0 = f.lead_exponent(0.0);
    require((static_cast<long long>(k0) * q.num) % q.den == 0,
            "pow_frac: lead exponent times exponent is not an integer");
    int kout = int(static_cast<long long>(k0) * q.num / q.den);
    cd c0 = f.coef(k0);
    Series shifted(f.ctr, f.lo - k0, f.hi - k0, f.exact);
    for (int k = f.lo; k <= f.hi; ++k) shifted.set(k - k0, f.coef(k) / c0);
    Series r = sub(shifted, Series::constant(f.ctr, cd{1, 0}));
    r.drop_zero_edges(0.0);
    double alpha = q.value();
    Series body = exp_small(scale(log1p_small(r, len), cd{alpha, 0}), len);
    return mul(Series::monomial(f.ctr, kout, principal_pow(c0, alpha)), body);
}

Series log_rel(const Series& f, int len) {
    int k0 = f.lead_exponent(0.0);
    cd c0 = f.coef(k0);
    Series shifted(f.ctr, f.lo - k0, f.hi - k0, f.exact);
    for (int k = f.lo; k <= f.hi; ++k) shifted.set(k - k0, f.coef(k) / c0);
    Series r = sub(shifted, Series::constant(f.ctr, cd{1, 0}));
    r.drop_zero_edges(0.0);
    return log1p_small(r, len);
}

Series derivative(const Series& f) {
    if (f.empty()) return f;
    Series out(f.ctr, f.lo - 1, f.hi - 1, f.exact);
    for (int k = f.lo; k <= f.hi; ++k) out.set(k - 1, cd(double(k), 0) * f.coef(k));
    return out;
}

Series part_ge(const Series& f, int k0) {
    if (f.empty() || f.hi < k0) return Series(f.ctr, 0, -1, true);
    if (f.ctr.at_inf && !f.exact)
        require(f.lo <= k0, "part_ge: request reaches past trusted frontier");
    int lo = std::max(f.lo, k0);
    Series out(f.ctr, lo, f.hi, true);
    if (!f.ctr.at_inf && !f.exact) out.exact = false;
    for (int k = lo; k <= f.hi; ++k) out.set(k, f.coef(k));
    return out;
}

Series part_le(const Series& f, int k0) {
    if (f.empty() || f.lo > k0) return Series(f.ctr, 0, -1, true);
    if (!f.ctr.at_inf && !f.exact)
        require(f.hi >= k0, "part_le: request reaches past trusted frontier");
    int hi = std::min(f.hi, k0);
    Series out(f.ctr, f.lo, hi, true);
    if (f.ctr.at_inf && !f.exact) out.exact = false;
    for (int k = f.lo; k <= hi; ++k) out.set(k, f.coef(k));
    return out;
}

cd eval_at(const Series& f, cd z) {
    if (f.empty()) return cd{0, 0};
    cd u = f.ctr.at_inf ? z : (z - f.ctr.p);
    cd pos{0, 0};
    if (f.hi >= 0) {
        for (int k = f.hi; k >= std::max(f.lo, 0); --k) pos = pos * u + f.coef(k);
        if (f.lo > 0)
            for (int j = 0; j < f.lo; ++j) pos *= u;
    }
    cd negv{0, 0};
    if (f.lo < 0) {
        cd iu = cd{1, 0} / u;
        cd up = iu;
        for (int k = -1; k >= f.lo; --k) {
            negv += f.coef(k) * up;
            up *= iu;
        }
    }
    return pos + negv;
}

Series pp_recenter_taylor(const Series& pp, cd new_center, int order) {
    require(!pp.ctr.at_inf, "pp_recenter_taylor: finite center expected");
    require(pp.empty() || pp.hi <= -1, "pp_recenter_taylor: nonnegative exponents present");
    Series out(Center::at(new_center), 0, order, false);
    if (pp.empty()) {
        out.exact = true;
        return out;
    }
    cd d = new_center - pp.ctr.p;
    require(std::abs(d) > 0, "pp_recenter_taylor: coincident centers");
    for (int k = pp.lo; k <= pp.hi; ++k) {
        cd a = pp.coef(k);
        if (a == cd{0, 0}) continue;
        int m = -k;
        cd coefl = cd{1, 0};
        for (int j = 0; j < m; ++j) coefl /= d;  // d^{-m}
        cd binom{1, 0};
        for (int l = 0; l <= order; ++l) {
            out.add_to(l, a * binom * coefl);
            binom *= cd(double(-(m + l)), 0) / cd(double(l + 1), 0);
            coefl /= d;
        }
    }
    return out;
}

Series pp_to_inf(const Series& pp, int depth) {
    require(!pp.ctr.at_inf, "pp_to_inf: finite center expected");
    require(pp.empty() || pp.hi <= -1, "pp_to_inf: nonnegative exponents present");
    Series out(Center::inf(), -depth, -1, false);
    if (pp.empty()) return out;
    cd p = pp.ctr.p;
    for (int k = pp.lo; k <= pp.hi; ++k) {
        cd a = pp.coef(k);
        if (a == cd{0, 0}) continue;
        int m = -k;
        cd binom{1, 0};
        cd pl{1, 0};
        for (int l = 0; -m - l >= -depth; ++l) {
            out.add_to(-m - l, a * binom * pl);
            binom *= cd(double(m + l), 0) / cd(double(l + 1), 0);
            pl *= p;
        }
    }
    return out;
}

Series poly_to_center(const Series& poly, cd new_center) {
    require(poly.empty() || poly.lo >= 0, "poly_to_center: negative exponents present");
    int deg = poly.empty() ? 0 : std::max(poly.hi, 0);
    Series out(Center::at(new_center), 0, deg, true);
    if (poly.empty()) return out;
    std::vector<cd> acc(size_t(deg + 1), cd{0, 0});
    for (int k = deg; k >= 0; --k) {
        for (int j = deg; j >= 1; --j) acc[size_t(j)] = acc[size_t(j - 1)] + acc[size_t(j)] * new_center;
        acc[0] = acc[0] * new_center + poly.coef(k);
    }
    for (int j = 0; j <= deg; ++j) out.set(j, acc[size_t(j)]);
    return out;
}

Series shift_center(const Series& f, cd delta, int extra) {
    require(!f.ctr.at_inf, "shift_center: finite center expected");
    Center nc = Center::at(f.ctr.p + delta);
    if (f.empty() || delta == cd{0, 0}) {
        Series out = f;
        out.ctr = nc;
        return out;
    }
    int lo = f.lo - (f.lo < 0 ? extra : 0);
    int hi = f.hi;
    Series out(nc, lo, hi, false);
    for (int k = f.lo; k <= f.hi; ++k) {
        cd a = f.coef(k);
        if (a == cd{0, 0}) continue;
        if (k >= 0) {
            double bin = 1.0;
            cd dpow{1, 0};
            for (int l = k; l >= 0; --l) {
                if (l >= lo && l <= hi) out.add_to(l, a * cd(bin, 0) * dpow);
                bin = bin * l / double(k - l + 1);
                dpow *= delta;
            }
        } else {
            int m = -k;
            cd binom{1, 0};
            cd dl{1, 0};
            for (int l = 0; -m - l >= lo; ++l) {
                out.add_to(-m - l, a * binom * dl);
                binom *= cd(double(-(m + l)), 0) / cd(double(l + 1), 0);
                dl *= delta;
            }
        }
    }
    return out;
}

Series compose_inverse_inf(const Series& f, int len, int iters) {
    require(f.ctr.at_inf, "compose_inverse_inf: expansion at infinity expected");
    int k0 = f.lead_exponent(1e-14);
    require(k0 == 1, "compose_inverse_inf: map must behave as z at infinity");
    require(std::abs(f.coef(1) - cd{1, 0}) < 1e-12,
            "compose_inverse_inf: lead coefficient must be 1");
    Center w = Center::inf();
    Series g = Series::coordinate(w);
    for (int it = 0; it < iters; ++it) {
        Series acc = Series::coordinate(w);
        for (int k = std::min(0, f.hi); k >= f.lo; --k) {
            cd ck = f.coef(k);
            if (ck == cd{0, 0}) continue;
            acc = sub(acc, scale(pow_int(g, k, len), ck));
        }
        g = trim_tail(acc, len + 2);
    }
    return trim_tail(g, len);
}

Series compose_inverse_finite(const Series& f, int len, int iters) {
    require(!f.ctr.at_inf, "compose_inverse_finite: finite center expected");
    require(f.lo == -1, "compose_inverse_finite: simple pole expected");
    cd cm1 = f.coef(-1);
    require(std::abs(cm1) > 0, "compose_inverse_finite: vanishing residue coefficient");
    Center w = Center::inf();
    Series u = Series::monomial(w, -1, cm1);
    for (int it = 0; it < iters; ++it) {
        Series denom = Series::coordinate(w);
        denom = sub(denom, Series::constant(w, f.coef(0)));
        for (int k = 1; k <= f.hi; ++k) {
            cd ck = f.coef(k);
            if (ck == cd{0, 0}) continue;
            denom = sub(denom, scale(pow_int(u, k, len), ck));
        }
        u = scale(inverse(denom, len), cm1);
        u = trim_tail(u, len + 2);
    }
    return add(trim_tail(u, len), Series::constant(w, f.ctr.p));
}

std::string to_string(const Series& f, int max_terms) {
    std::ostringstream os;
    if (f.ctr.at_inf)
        os << "[inf]";
    else
        os << "[p=(" << f.ctr.p.real() << "," << f.ctr.p.imag() << ")]";
    int printed = 0;
    for (int k = f.ctr.at_inf ? f.hi : f.lo; f.ctr.at_inf ? (k >= f.lo) : (k <= f.hi);
         f.ctr.at_inf ? --k : ++k) {
        cd v = f.coef(k);
        if (std::abs(v) < 1e-14) continue;
        os << " + (" << v.real() << (v.imag() >= 0 ? "+" : "") << v.imag() << "i)u^" << k;
        if (++printed >= max_terms) {
            os << " + ...";
            break;
        }
    }
    if (printed == 0) os << " 0";
    return os.str();
}

}  // namespace mfm
