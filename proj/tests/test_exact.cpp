#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mfm/exact.hpp"

using namespace mfm;
using namespace mfm::exact;

TEST_CASE("exact convolution product") {
    // (z - 1/(4z)) * (z + 1/(4z)) = z^2 - 1/(16 z^2)
    QSeries f, g;
    f.add_to(1, QC(Rat(1)));
    f.add_to(-1, QC(Rat(-1, 4)));
    g.add_to(1, QC(Rat(1)));
    g.add_to(-1, QC(Rat(1, 4)));
    auto h = qmul(f, g);
    CHECK(h.coef(2) == QC(Rat(1)));
    CHECK(h.coef(-2) == QC(Rat(-1, 16)));
    CHECK(h.coef(0).is_zero());
}

TEST_CASE("exact derivative and residue") {
    QSeries f;
    f.add_to(-1, QC(Rat(1)));
    f.add_to(3, QC(Rat(2, 7)));
    auto df = qderivative(f);
    CHECK(df.coef(-2) == QC(Rat(-1)));
    CHECK(df.coef(2) == QC(Rat(6, 7)));
    CHECK(qresidue(f) == QC(Rat(1)));
}

TEST_CASE("exact geometric reexpansion matches the closed form") {
    // 1/z around 3: sum (-1)^k (z-3)^k / 3^{k+1}
    QSeries pp;
    pp.add_to(-1, QC(Rat(1)));
    auto t = qreexpand(pp, QC(Rat(3)), 8);
    for (int k = 0; k <= 8; ++k) {
        Rat expect = Rat((k % 2) ? -1 : 1) / Rat(boost::multiprecision::pow(
                                                boost::multiprecision::cpp_int(3), unsigned(k + 1)));
        CHECK(t.coef(k) == QC(expect));
    }
}

TEST_CASE("exact expansion of a principal part at infinity") {
    QSeries pp;
    pp.p = QC(Rat(1, 2));
    pp.add_to(-1, QC(Rat(1)));
    auto t = qpp_to_inf(pp, 6);
    // 1/(z - 1/2) = sum (1/2)^l z^{-1-l}
    Rat pl = 1;
    for (int l = 0; l < 5; ++l) {
        CHECK(t.coef(-1 - l) == QC(pl));
        pl = pl / 2;
    }
}

TEST_CASE("rational arithmetic round trip is bit-exact") {
    QC a(Rat(22, 7), Rat(-3, 5));
    QC b(Rat(1, 3));
    auto c = (a * b) / b;
    CHECK(c == a);
}
