#include "mfm/germ.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace mfm {

namespace {

const std::vector<cd>& unit_roots(int M) {
    static std::map<int, std::vector<cd>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lk(mtx);
    auto it = cache.find(M);
    if (it == cache.end()) {
        std::vector<cd> w(static_cast<size_t>(M));
        for (int j = 0; j < M; ++j) {
            double th = 2.0 * kPi * j / M;
            w[size_t(j)] = cd{std::cos(th), std::sin(th)};
        }
        it = cache.emplace(M, std::move(w)).first;
    }
    return it->second;
}

void check_compatible(const CircleGerm& a, const CircleGerm& b) {
    require(a.p == b.p && a.r == b.r && a.N == b.N && a.M == b.M,
            "CircleGerm: incompatible circles");
}

}  // namespace

cd CircleGerm::sample_point(int j) const {
    const auto& w = unit_roots(M);
    return p + r * w[size_t(j % M)];
}

namespace {
inline int mod_index(long long v, int M) {
    long long r = v % M;
    if (r < 0) r += M;
    return int(r);
}
}  // namespace

void CircleGerm::sync_from_samples() {
    const auto& w = unit_roots(M);
    for (int k = -N; k <= N; ++k) {
        cd acc{0, 0};
        for (int j = 0; j < M; ++j)
            acc += sam[size_t(j)] * w[size_t(mod_index(-(long long)j * k, M))];
        coef[size_t(k + N)] = acc / (double(M) * std::pow(r, k));
    }
}

void CircleGerm::sync_from_coeffs() {
    const auto& w = unit_roots(M);
    std::vector<cd> u(static_cast<size_t>(2 * N + 1));
    for (int k = -N; k <= N; ++k) u[size_t(k + N)] = coef[size_t(k + N)] * std::pow(r, k);
    for (int j = 0; j < M; ++j) {
        cd acc{0, 0};
        for (int k = -N; k <= N; ++k)
            acc += u[size_t(k + N)] * w[size_t(mod_index((long long)j * k, M))];
        sam[size_t(j)] = acc;
    }
}

double CircleGerm::duality_residual() const {
    const auto& w = unit_roots(M);
    std::vector<cd> u(static_cast<size_t>(2 * N + 1));
    for (int k = -N; k <= N; ++k) u[size_t(k + N)] = coef[size_t(k + N)] * std::pow(r, k);
    double worst = 0.0;
    for (int j = 0; j < M; ++j) {
        cd acc{0, 0};
        for (int k = -N; k <= N; ++k)
            acc += u[size_t(k + N)] * w[size_t(mod_index((long long)j * k, M))];
        worst = std::max(worst, std::abs(acc - sam[size_t(j)]));
    }
    return worst;
}

double CircleGerm::tail_weight() const {
    double mx = 1e-300;
    for (int k = -N; k <= N; ++k) mx = std::max(mx, std::abs(coefficient(k)) * std::pow(r, k));
    double tail = 0.0;
    for (int k = N - 3; k <= N; ++k) {
        tail = std::max(tail, std::abs(coefficient(k)) * std::pow(r, k));
        tail = std::max(tail, std::abs(coefficient(-k)) * std::pow(r, -k));
    }
    return tail / mx;
}

double CircleGerm::max_abs_sample() const {
    double m = 0.0;
    for (const auto& v : sam) m = std::max(m, std::abs(v));
    return m;
}

double CircleGerm::min_abs_sample() const {
    double m = 1e300;
    for (const auto& v : sam) m = std::min(m, std::abs(v));
    return m;
}

CircleGerm CircleGerm::constant(cd center, double radius, const Config& cfg, cd v) {
    CircleGerm g(center, radius, cfg);
    g.coef[size_t(g.N)] = v;
    std::fill(g.sam.begin(), g.sam.end(), v);
    return g;
}

CircleGerm CircleGerm::monomial(cd center, double radius, const Config& cfg, int k, cd v) {
    CircleGerm g(center, radius, cfg);
    require(std::abs(k) <= g.N, "CircleGerm::monomial: exponent beyond truncation");
    g.coef[size_t(k + g.N)] = v;
    g.sync_from_coeffs();
    return g;
}

CircleGerm CircleGerm::from_function(cd center, double radius, const Config& cfg,
                                     const std::function<cd(cd)>& f) {
    CircleGerm g(center, radius, cfg);
    for (int j = 0; j < g.M; ++j) g.sam[size_t(j)] = f(g.sample_point(j));
    g.sync_from_samples();
    return g;
}

CircleGerm CircleGerm::from_samples(cd center, double radius, const Config& cfg,
                                    std::vector<cd> samples) {
    CircleGerm g(center, radius, cfg);
    require(int(samples.size()) == g.M, "CircleGerm::from_samples: size mismatch");
    g.sam = std::move(samples);
    g.sync_from_samples();
    return g;
}

CircleGerm CircleGerm::from_series(cd center, double radius, const Config& cfg,
                                   const Series& s) {
    return from_function(center, radius, cfg, [&](cd z) { return eval_at(s, z); });
}

CircleGerm add(const CircleGerm& a, const CircleGerm& b) {
    check_compatible(a, b);
    CircleGerm out = a;
    for (size_t i = 0; i < out.coef.size(); ++i) out.coef[i] += b.coef[i];
    for (size_t i = 0; i < out.sam.size(); ++i) out.sam[i] += b.sam[i];
    return out;
}

CircleGerm sub(const CircleGerm& a, const CircleGerm& b) {
    check_compatible(a, b);
    CircleGerm out = a;
    for (size_t i = 0; i < out.coef.size(); ++i) out.coef[i] -= b.coef[i];
    for (size_t i = 0; i < out.sam.size(); ++i) out.sam[i] -= b.sam[i];
    return out;
}

CircleGerm neg(const CircleGerm& a) { return scale(a, cd{-1, 0}); }

CircleGerm scale(const CircleGerm& a, cd s) {
    CircleGerm out = a;
    for (auto& v : out.coef) v *= s;
    for (auto& v : out.sam) v *= s;
    return out;
}

CircleGerm mul(const CircleGerm& a, const CircleGerm& b) {
    check_compatible(a, b);
    CircleGerm out = a;
    for (size_t i = 0; i < out.sam.size(); ++i) out.sam[i] = a.sam[i] * b.sam[i];
    out.sync_from_samples();
    return out;
}

CircleGerm div(const CircleGerm& a, const CircleGerm& b, double tol_zero) {
    check_compatible(a, b);
    require(b.min_abs_sample() > tol_zero, "CircleGerm div: divisor vanishes on circle");
    CircleGerm out = a;
    for (size_t i = 0; i < out.sam.size(); ++i) out.sam[i] = a.sam[i] / b.sam[i];
    out.sync_from_samples();
    return out;
}

CircleGerm derivative(const CircleGerm& f) {
    CircleGerm out = f;
    std::fill(out.coef.begin(), out.coef.end(), cd{0, 0});
    for (int k = -f.N; k <= f.N; ++k) {
        if (k == 0) continue;
        int kk = k - 1;
        if (kk < -f.N || kk > f.N) continue;
        out.coef[size_t(kk + f.N)] = cd(double(k), 0) * f.coefficient(k);
    }
    out.sync_from_coeffs();
    return out;
}

CircleGerm pow_int(const CircleGerm& f, int k, double tol_zero) {
    CircleGerm out = f;
    if (k < 0)
        require(f.min_abs_sample() > tol_zero, "CircleGerm pow: base vanishes on circle");
    for (size_t i = 0; i < out.sam.size(); ++i) out.sam[i] = std::pow(f.sam[i], k);
    out.sync_from_samples();
    return out;
}

namespace {
// continuous argument along the samples; returns total increment / (2*pi)
double total_turns(const std::vector<cd>& sam, double tol_zero, std::vector<double>* theta_out) {
    double theta = std::arg(sam[0]);
    if (theta_out) (*theta_out)[0] = theta;
    double first = theta;
    int M = int(sam.size());
    for (int j = 1; j <= M; ++j) {
        cd prev = sam[size_t((j - 1) % M)];
        cd cur = sam[size_t(j % M)];
        require(std::abs(cur) > tol_zero && std::abs(prev) > tol_zero,
                "winding: sample too close to zero");
        theta += std::arg(cur / prev);
        if (theta_out && j < M) (*theta_out)[size_t(j)] = theta;
    }
    return (theta - first) / (2.0 * kPi);
}
}  // namespace

int winding_number(const CircleGerm& f, double tol_zero, double tol_turn) {
    double turns = total_turns(f.sam, tol_zero * std::max(1.0, f.max_abs_sample()), nullptr);
    double nearest = std::round(turns);
    require(std::abs(turns - nearest) <= tol_turn,
            "winding: argument increment not close to an integer number of turns");
    return int(nearest);
}

CircleGerm pow_frac(const CircleGerm& f, Frac q, double tol_zero, double tol_turn) {
    if (q.is_integer()) return pow_int(f, int(q.num), tol_zero);
    double floor_abs = tol_zero * std::max(1.0, f.max_abs_sample());
    require(f.min_abs_sample() > floor_abs, "pow_frac: germ vanishes on circle");
    std::vector<double> theta(static_cast<size_t>(f.M));
    double turns = total_turns(f.sam, floor_abs, &theta);
    double nearest = std::round(turns);
    require(std::abs(turns - nearest) <= tol_turn, "pow_frac: ambiguous winding");
    long long w = (long long)nearest;
    require((w * q.num) % q.den == 0, "pow_frac: winding times exponent is not an integer");
    double alpha = q.value();
    CircleGerm out = f;
    for (int j = 0; j < f.M; ++j) {
        double mag = std::abs(f.sam[size_t(j)]);
        out.sam[size_t(j)] = std::pow(mag, alpha) *
                             cd{std::cos(alpha * theta[size_t(j)]), std::sin(alpha * theta[size_t(j)])};
    }
    out.sync_from_samples();
    return out;
}

CircleGerm log_ratio(const CircleGerm& f, const CircleGerm& g, double tol_zero,
                     double tol_turn) {
    check_compatible(f, g);
    CircleGerm ratio = div(f, g, tol_zero * std::max(1.0, g.max_abs_sample()));
    double floor_abs = tol_zero * std::max(1.0, ratio.max_abs_sample());
    require(ratio.min_abs_sample() > floor_abs, "log_ratio: ratio vanishes on circle");
    std::vector<double> theta(static_cast<size_t>(f.M));
    double turns = total_turns(ratio.sam, floor_abs, &theta);
    require(std::abs(turns) <= tol_turn, "log_ratio: ratio has nonzero winding");
    CircleGerm out = f;
    for (int j = 0; j < f.M; ++j)
        out.sam[size_t(j)] = cd{std::log(std::abs(ratio.sam[size_t(j)])), theta[size_t(j)]};
    out.sync_from_samples();
    return out;
}

cd cauchy_coefficient(const CircleGerm& f) {
    // (1/2*pi*i) oint f dz = mean_j f(z_j) (z_j - p)
    const auto& w = unit_roots(f.M);
    cd acc{0, 0};
    for (int j = 0; j < f.M; ++j) acc += f.sam[size_t(j)] * (f.r * w[size_t(j)]);
    return acc / double(f.M);
}

Series laurent_at(const CircleGerm& f, cd phi, int kmin, int kmax) {
    require(std::abs(phi - f.p) < f.r, "laurent_at: point not inside circle");
    Series out(Center::at(phi), kmin, kmax, false);
    const auto& w = unit_roots(f.M);
    for (int k = kmin; k <= kmax; ++k) {
        cd acc{0, 0};
        for (int j = 0; j < f.M; ++j) {
            cd zj = f.p + f.r * w[size_t(j)];
            acc += f.sam[size_t(j)] * std::pow(zj - phi, -k - 1) * (f.r * w[size_t(j)]);
        }
        out.set(k, acc / double(f.M));
    }
    return out;
}

CircleGerm nonnegative_part(const CircleGerm& f) {
    CircleGerm out = f;
    for (int k = -f.N; k < 0; ++k) out.coef[size_t(k + f.N)] = cd{0, 0};
    out.sync_from_coeffs();
    return out;
}

CircleGerm negative_part(const CircleGerm& f) {
    CircleGerm out = f;
    for (int k = 0; k <= f.N; ++k) out.coef[size_t(k + f.N)] = cd{0, 0};
    out.sync_from_coeffs();
    return out;
}

Series principal_series(const CircleGerm& f) {
    Series pp(Center::at(f.p), -f.N, -1, true);
    for (int k = -f.N; k <= -1; ++k) pp.set(k, f.coefficient(k));
    return pp;
}

GammaGerm GammaGerm::zeros_like(const GammaGerm& g) {
    GammaGerm out = g;
    for (auto& c : out.circ) {
        std::fill(c.coef.begin(), c.coef.end(), cd{0, 0});
        std::fill(c.sam.begin(), c.sam.end(), cd{0, 0});
    }
    return out;
}

GammaGerm GammaGerm::restricted_to(int i) const {
    GammaGerm out = zeros_like(*this);
    out.circ[size_t(i)] = circ[size_t(i)];
    return out;
}

double GammaGerm::max_abs() const {
    double m = 0.0;
    for (const auto& c : circ) m = std::max(m, c.max_abs_sample());
    return m;
}

#define MFM_GG_ELEMENTWISE(NAME)                                    \
    GammaGerm NAME(const GammaGerm& a, const GammaGerm& b) {        \
        require(a.circles() == b.circles(), "GammaGerm: mismatch"); \
        GammaGerm out = a;                                          \
        for (int i = 0; i < a.circles(); ++i)                       \
            out.circ[size_t(i)] = NAME(a[i], b[i]);                 \
        return out;                                                 \
    }

MFM_GG_ELEMENTWISE(add)
MFM_GG_ELEMENTWISE(sub)
MFM_GG_ELEMENTWISE(mul)
#undef MFM_GG_ELEMENTWISE

GammaGerm neg(const GammaGerm& a) { return scale(a, cd{-1, 0}); }

GammaGerm scale(const GammaGerm& a, cd s) {
    GammaGerm out = a;
    for (auto& c : out.circ) c = scale(c, s);
    return out;
}

GammaGerm derivative(const GammaGerm& f) {
    GammaGerm out = f;
    for (auto& c : out.circ) c = derivative(c);
    return out;
}

void check_separation(const std::vector<cd>& centers, const std::vector<double>& radii,
                      double rho_max) {
    int m = int(centers.size());
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            double gap = std::abs(centers[size_t(i)] - centers[size_t(j)]);
            require(gap > 0, "circles: coincident centers");
            double rho = (radii[size_t(i)] + radii[size_t(j)]) / gap;
            require(rho <= rho_max,
                    "circles: separation safety bound exceeded (re-expansion would not converge)");
        }
}

SplitPair project(const GammaGerm& f, const Config& cfg) {
    int m = f.circles();
    std::vector<cd> centers;
    std::vector<double> radii;
    for (int i = 0; i < m; ++i) {
        centers.push_back(f[i].p);
        radii.push_back(f[i].r);
    }
    check_separation(centers, radii, cfg.tol_of("rho_max"));

    std::vector<Series> pp(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) pp[size_t(i)] = principal_series(f[i]);

    SplitPair out;
    std::vector<CircleGerm> minus_circ;
    for (int i = 0; i < m; ++i) {
        CircleGerm mi = negative_part(f[i]);  // own principal part
        for (int j = 0; j < m; ++j) {
            if (j == i) continue;
            // exact evaluation of circle j's principal part on circle i
            for (int s = 0; s < mi.M; ++s)
                mi.sam[size_t(s)] += eval_at(pp[size_t(j)], mi.sample_point(s));
        }
        mi.sync_from_samples();
        minus_circ.push_back(mi);
    }
    out.minus = GammaGerm(std::move(minus_circ));
    out.plus = sub(f, out.minus);

    Series tail(Center::inf(), -cfg.tail_order, -1, false);
    for (int j = 0; j < m; ++j) tail = add(tail, pp_to_inf(pp[size_t(j)], cfg.tail_order));
    out.minus_at_inf = tail;
    return out;
}

}  // namespace mfm
