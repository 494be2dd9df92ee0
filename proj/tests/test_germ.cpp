#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "mfm/germ.hpp"

using namespace mfm;

namespace {
Config small_cfg() {
    Config cfg;
    cfg.sample_count = 256;
    cfg.trunc_order = 80;
    return cfg;
}

double germ_dist(const CircleGerm& a, const CircleGerm& b) {
    double worst = 0.0;
    for (size_t j = 0; j < a.sam.size(); ++j) worst = std::max(worst, std::abs(a.sam[j] - b.sam[j]));
    return worst;
}
}  // namespace

TEST_CASE("coefficient/sample duality round trip") {
    auto cfg = small_cfg();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    CircleGerm g(cd{0.4, -0.2}, 1.3, cfg);
    for (int k = -6; k <= 6; ++k) g.coef[size_t(k + g.N)] = cd{uni(rng), uni(rng)};
    g.sync_from_coeffs();
    auto back = g;
    back.sync_from_samples();
    double worst = 0.0;
    for (int k = -g.N; k <= g.N; ++k)
        worst = std::max(worst,
                         std::abs(back.coefficient(k) - g.coefficient(k)) * std::pow(g.r, k));
    CHECK(worst < cfg.tol_of("fft"));
    CHECK(g.duality_residual() < cfg.tol_of("fft"));
}

TEST_CASE("product oracles") {
    auto cfg = small_cfg();
    cd p{0, 0};
    auto z = CircleGerm::monomial(p, 1.0, cfg, 1, cd{1, 0});
    auto invz = CircleGerm::monomial(p, 1.0, cfg, -1, cd{1, 0});
    auto one = CircleGerm::constant(p, 1.0, cfg, cd{1, 0});

    SUBCASE("unit of the ring") {
        auto f = CircleGerm::from_function(p, 1.0, cfg, [](cd z) { return std::exp(z) + 1.0 / z; });
        auto prod = mul(one, f);
        CHECK(germ_dist(prod, f) < 1e-13);
    }
    SUBCASE("(z-p)(z-p)^{-1} = 1") {
        auto prod = mul(z, invz);
        CHECK(germ_dist(prod, one) < 1e-13);
        CHECK(std::abs(prod.coefficient(0) - cd{1, 0}) < 1e-13);
    }
    SUBCASE("convolution oracle") {
        // (z - z^{-1}/4)(z + z^{-1}/4) = z^2 - z^{-2}/16
        auto f = sub(z, scale(invz, cd{0.25, 0}));
        auto g = add(z, scale(invz, cd{0.25, 0}));
        auto prod = mul(f, g);
        CHECK(std::abs(prod.coefficient(2) - cd{1, 0}) < 1e-13);
        CHECK(std::abs(prod.coefficient(-2) + cd{1.0 / 16, 0}) < 1e-13);
        CHECK(std::abs(prod.coefficient(0)) < 1e-13);
    }
}

TEST_CASE("derivative oracle") {
    auto cfg = small_cfg();
    cd p{0, 0};
    // z - 1/(4z) -> 1 + 1/(4 z^2)
    auto f = CircleGerm::from_function(p, 1.0, cfg, [](cd z) { return z - 0.25 / z; });
    auto df = derivative(f);
    CHECK(std::abs(df.coefficient(0) - cd{1, 0}) < 1e-13);
    CHECK(std::abs(df.coefficient(-2) - cd{0.25, 0}) < 1e-13);
    auto c = CircleGerm::constant(p, 1.0, cfg, cd{3, 1});
    CHECK(derivative(c).max_abs_sample() < 1e-13);
}

TEST_CASE("winding numbers") {
    auto cfg = small_cfg();
    cd p{1, 2};
    auto f = CircleGerm::monomial(p, 1.0, cfg, 1, cd{1, 0});
    CHECK(winding_number(f, cfg.tol_of("zero"), cfg.tol_of("winding")) == 1);
    auto g = CircleGerm::monomial(p, 1.0, cfg, -2, cd{1, 0});
    CHECK(winding_number(g, cfg.tol_of("zero"), cfg.tol_of("winding")) == -2);
    // zeta = z - 1/(4z) on |z|=1 has winding 1 (two zeros, one pole)
    auto zeta = CircleGerm::from_function(cd{0, 0}, 1.0, cfg, [](cd z) { return z - 0.25 / z; });
    CHECK(winding_number(zeta, cfg.tol_of("zero"), cfg.tol_of("winding")) == 1);
}

TEST_CASE("fractional powers on the circle") {
    auto cfg = small_cfg();
    cd p{0, 0};
    SUBCASE("sqrt of (z-p)^{-2} is (z-p)^{-1} up to branch") {
        auto f = CircleGerm::monomial(p, 1.0, cfg, -2, cd{1, 0});
        auto g = pow_frac(f, Frac(1, 2), cfg.tol_of("zero"), cfg.tol_of("winding"));
        auto expect = CircleGerm::monomial(p, 1.0, cfg, -1, cd{1, 0});
        // Branch: principal root at the angle-0 sample; f(1) = 1, root 1 = expect(1)
        CHECK(germ_dist(g, expect) < 1e-12);
    }
    SUBCASE("round trip power") {
        auto f = CircleGerm::from_function(p, 1.0, cfg, [](cd z) { return z - 0.25 / z; });
        auto h = pow_frac(f, Frac(1, 1), cfg.tol_of("zero"), cfg.tol_of("winding"));
        CHECK(germ_dist(h, f) < 1e-12);
        // winding 1, q = 1/2 -> not an integer product: must throw
        CHECK_THROWS_AS(pow_frac(f, Frac(1, 2), cfg.tol_of("zero"), cfg.tol_of("winding")), error);
    }
    SUBCASE("cube root round trip") {
        auto f = CircleGerm::from_function(p, 1.0, cfg,
                                           [](cd z) { return std::pow(z, 3) * (1.0 + 0.3 / z); });
        // winding 3, q=1/3 -> integer
        auto g = pow_frac(f, Frac(1, 3), cfg.tol_of("zero"), cfg.tol_of("winding"));
        auto cube = mul(mul(g, g), g);
        CHECK(germ_dist(cube, f) < 1e-10 * std::max(1.0, f.max_abs_sample()));
    }
}

TEST_CASE("log_ratio oracles") {
    auto cfg = small_cfg();
    cd p{0, 0};
    auto zeta = CircleGerm::from_function(p, 1.0, cfg, [](cd z) { return z - 0.25 / z; });
    auto z = CircleGerm::monomial(p, 1.0, cfg, 1, cd{1, 0});
    SUBCASE("log(f/f) = 0") {
        auto lg = log_ratio(zeta, zeta, cfg.tol_of("zero"), cfg.tol_of("winding"));
        CHECK(lg.max_abs_sample() < 1e-12);
    }
    SUBCASE("Mercator oracle") {
        auto lg = log_ratio(zeta, z, cfg.tol_of("zero"), cfg.tol_of("winding"));
        CHECK(std::abs(lg.coefficient(-2) + cd{0.25, 0}) < 1e-12);
        CHECK(std::abs(lg.coefficient(-4) + cd{1.0 / 32, 0}) < 1e-12);
        // exp back, samplewise
        auto back = zeta;
        for (size_t j = 0; j < back.sam.size(); ++j)
            back.sam[j] = std::exp(lg.sam[j]) * z.sam[j];
        back.sync_from_samples();
        CHECK(germ_dist(back, zeta) < cfg.tol_of("alg"));
    }
    SUBCASE("nonzero winding rejected") {
        auto one = CircleGerm::constant(p, 1.0, cfg, cd{1, 0});
        CHECK_THROWS_AS(log_ratio(z, one, cfg.tol_of("zero"), cfg.tol_of("winding")), error);
    }
}

TEST_CASE("contour data") {
    auto cfg = small_cfg();
    cd p{0.3, 0.1};
    auto f = CircleGerm::monomial(p, 1.1, cfg, -1, cd{2, 1});
    CHECK(std::abs(cauchy_coefficient(f) - cd{2, 1}) < 1e-13);
    CHECK(std::abs(contour_integral(f) - 2.0 * kPi * kI * cd{2, 1}) < 1e-12);
}

TEST_CASE("laurent coefficients at an interior point") {
    auto cfg = small_cfg();
    cd p{0, 0}, phi{0.2, -0.1};
    // f = 1/(z-phi) + 3 + (z-phi)
    auto f = CircleGerm::from_function(p, 1.0, cfg,
                                       [&](cd z) { return 1.0 / (z - phi) + 3.0 + (z - phi); });
    auto s = laurent_at(f, phi, -2, 3);
    CHECK(std::abs(s.coef(-2)) < 1e-12);
    CHECK(std::abs(s.coef(-1) - cd{1, 0}) < 1e-12);
    CHECK(std::abs(s.coef(0) - cd{3, 0}) < 1e-12);
    CHECK(std::abs(s.coef(1) - cd{1, 0}) < 1e-12);
    CHECK(std::abs(s.coef(2)) < 1e-12);
}

TEST_CASE("single-circle projection") {
    auto cfg = small_cfg();
    cd p{0.5, 0};
    SUBCASE("pure pole goes to minus") {
        GammaGerm f({CircleGerm::monomial(p, 1.0, cfg, -1, cd{1, 0})});
        auto sp = project(f, cfg);
        CHECK(sp.plus.max_abs() < 1e-12);
        CHECK(germ_dist(sp.minus[0], f[0]) < 1e-12);
        CHECK(std::abs(sp.minus_at_inf.coef(-1) - cd{1, 0}) < 1e-12);
    }
    SUBCASE("entire function goes to plus") {
        GammaGerm f({CircleGerm::from_function(p, 1.0, cfg, [](cd z) { return z; })});
        auto sp = project(f, cfg);
        CHECK(sp.minus.max_abs() < 1e-12);
        CHECK(germ_dist(sp.plus[0], f[0]) < 1e-12);
    }
}

TEST_CASE("two-circle projection with cross terms") {
    auto cfg = small_cfg();
    cd p1{0, 0}, p2{3, 0};
    double r1 = 1.0, r2 = 1.0;
    // f = z^{-1} on gamma_1, 0 on gamma_2
    GammaGerm f({CircleGerm::monomial(p1, r1, cfg, -1, cd{1, 0}), CircleGerm::zero(p2, r2, cfg)});
    auto sp = project(f, cfg);

    SUBCASE("minus on gamma_2 equals the geometric re-expansion") {
        // 1/z around 3: sum (-1)^k (z-3)^k / 3^{k+1}
        for (int k = 0; k <= 8; ++k) {
            double expect = ((k % 2) ? -1.0 : 1.0) / std::pow(3.0, k + 1);
            CHECK(std::abs(sp.minus[1].coefficient(k) - cd{expect, 0}) < 1e-12);
        }
        // plus on gamma_2 must cancel it (f was zero there)
        auto resum = add(sp.plus[1], sp.minus[1]);
        CHECK(resum.max_abs_sample() < 1e-12);
    }

    SUBCASE("cross terms agree with the direct Cauchy quadrature oracle") {
        // oracle: minus(z) for z near gamma_2 comes only from the gamma_1
        // integral: -(1/2*pi*i) oint_{gamma_1} f(q)/(q-z) dq, trapezoid rule
        const auto& g1 = f[0];
        double worst = 0.0;
        for (int t = 0; t < g1.M; ++t) {
            cd z = sp.minus[1].sample_point(t);
            cd acc{0, 0};
            for (int j = 0; j < g1.M; ++j) {
                cd q = g1.sample_point(j);
                acc += g1.sam[size_t(j)] / (q - z) * (q - p1);
            }
            acc = -acc / double(g1.M);
            worst = std::max(worst, std::abs(sp.minus[1].sam[size_t(t)] - acc));
        }
        CHECK(worst < 1e-10);
    }

    SUBCASE("completeness and idempotence") {
        auto resum = add(sp.plus[0], sp.minus[0]);
        CHECK(germ_dist(resum, f[0]) < cfg.tol_of("proj"));
        auto sp_plus = project(sp.plus, cfg);
        CHECK(sp_plus.minus.max_abs() < cfg.tol_of("proj"));
        auto sp_minus = project(sp.minus, cfg);
        CHECK(sp_minus.plus.max_abs() < cfg.tol_of("proj"));
    }
}

TEST_CASE("random projection properties") {
    auto cfg = small_cfg();
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    cd p1{-2, 0}, p2{2, 0};
    auto mk = [&](cd p) {
        CircleGerm g(p, 1.0, cfg);
        for (int k = -5; k <= 5; ++k) g.coef[size_t(k + g.N)] = cd{uni(rng), uni(rng)};
        g.sync_from_coeffs();
        return g;
    };
    GammaGerm f({mk(p1), mk(p2)});
    auto sp = project(f, cfg);
    for (int i = 0; i < 2; ++i) {
        auto resum = add(sp.plus[i], sp.minus[i]);
        CHECK(germ_dist(resum, f[i]) < cfg.tol_of("proj"));
    }
    auto spp = project(sp.plus, cfg);
    CHECK(spp.minus.max_abs() < cfg.tol_of("proj"));
    auto spm = project(sp.minus, cfg);
    CHECK(spm.plus.max_abs() < cfg.tol_of("proj"));
    // separation guard
    CHECK_THROWS_AS(check_separation({cd{0, 0}, cd{2, 0}}, {1.0, 1.0}, 0.8), error);
}
