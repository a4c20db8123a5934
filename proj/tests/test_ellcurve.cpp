#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qk3/ellcurve.hpp"

using namespace qk3::ellcurve;
using qk3::exactq::rat;
using qk3::exactq::Rat;

namespace {

const WeierstrassCurve& fermat_curve() {
    static WeierstrassCurve c(rat(4), rat(0));  // y^2 = x^3 + 4x
    return c;
}

std::mt19937 rng(987654321);

// small random multiples of a generator, occasionally O
ECPoint random_point(const WeierstrassCurve& c, const ECPoint& gen) {
    std::uniform_int_distribution<long> k(-6, 6);
    return scalar_mul(c, k(rng), gen);
}

}  // namespace

TEST_CASE("on_curve examples") {
    const auto& c = fermat_curve();
    CHECK(on_curve(c, ECPoint(rat(0), rat(0))));
    CHECK(on_curve(c, ECPoint(rat(2), rat(4))));  // 16 = 8 + 8
    CHECK_FALSE(on_curve(c, ECPoint(rat(1), rat(1))));
    CHECK(on_curve(c, ECPoint::O()));
}

TEST_CASE("addition examples") {
    const auto& c = fermat_curve();
    ECPoint p(rat(2), rat(4));
    CHECK(add(c, p, ECPoint::O()) == p);
    CHECK(add(c, ECPoint(rat(0), rat(0)), ECPoint(rat(0), rat(0))) == ECPoint::O());
    // tangent slope at (2,4) is (3*4+4)/8 = 2: doubling lands on (0,0)
    CHECK(add(c, p, p) == ECPoint(rat(0), rat(0)));
}

TEST_CASE("scalar multiplication examples") {
    const auto& c = fermat_curve();
    ECPoint p(rat(2), rat(4));
    CHECK(scalar_mul(c, 1, p) == p);
    CHECK(scalar_mul(c, 4, p) == ECPoint::O());
    CHECK(scalar_mul(c, 2, p) == ECPoint(rat(0), rat(0)));
    ECPoint o2(rat(0), rat(0));
    CHECK(scalar_mul(c, -1, o2) == o2);
    CHECK(scalar_mul(c, 0, p) == ECPoint::O());
}

TEST_CASE("torsion orders") {
    const auto& c = fermat_curve();
    CHECK(torsion_order(c, ECPoint::O()) == 1);
    CHECK(torsion_order(c, ECPoint(rat(0), rat(0))) == 2);
    CHECK(torsion_order(c, ECPoint(rat(2), rat(4))) == 4);
    // non-torsion witness: non-integral point on an integral model
    WeierstrassCurve e(rat(0), rat(4));  // y^2 = x^3 + 4 has (0,2) of order 3
    CHECK(torsion_order(e, ECPoint(rat(0), rat(2))) == 3);
}

TEST_CASE("two torsion") {
    auto t1 = two_torsion(fermat_curve());
    REQUIRE(t1.size() == 1);
    CHECK(t1[0] == ECPoint(rat(0), rat(0)));
    auto t2 = two_torsion(WeierstrassCurve(rat(-1), rat(0)));
    REQUIRE(t2.size() == 3);  // x^3 - x = x(x-1)(x+1)
    CHECK(t2[0].x == rat(-1));
    CHECK(t2[1].x == rat(0));
    CHECK(t2[2].x == rat(1));
    CHECK(two_torsion(WeierstrassCurve(rat(0), rat(2))).empty());  // x^3 + 2 has no rational root
}

TEST_CASE("group axioms on random points") {
    const auto& c = fermat_curve();
    ECPoint gen(rat(2), rat(4));
    // the torsion subgroup is small; mix in a non-torsion point of a second
    // curve to exercise generic slopes as well
    WeierstrassCurve c2(rat(-2), rat(0));  // y^2 = x^3 - 2x, (−1,1) non-torsion
    ECPoint gen2(rat(-1), rat(1));
    REQUIRE(on_curve(c2, gen2));
    REQUIRE(torsion_order(c2, gen2) == std::nullopt);

    for (int i = 0; i < 1000; ++i) {
        const WeierstrassCurve& cc = (i % 2) ? c2 : c;
        const ECPoint& g = (i % 2) ? gen2 : gen;
        ECPoint p = random_point(cc, g), q = random_point(cc, g), r = random_point(cc, g);
        CHECK(add(cc, p, q) == add(cc, q, p));
        CHECK(add(cc, add(cc, p, q), r) == add(cc, p, add(cc, q, r)));
        CHECK(add(cc, p, negate(p)) == ECPoint::O());
        CHECK(on_curve(cc, add(cc, p, q)));
    }
}

TEST_CASE("scalar distribution laws") {
    WeierstrassCurve c2(rat(-2), rat(0));
    ECPoint g(rat(-1), rat(1));
    std::uniform_int_distribution<long> mn(-20, 20);
    for (int i = 0; i < 200; ++i) {
        long m = mn(rng), n = mn(rng);
        CHECK(scalar_mul(c2, m + n, g) == add(c2, scalar_mul(c2, m, g), scalar_mul(c2, n, g)));
        CHECK(scalar_mul(c2, m * n, g) == scalar_mul(c2, m, scalar_mul(c2, n, g)));
    }
}

TEST_CASE("torsion order implies exact period") {
    const auto& c = fermat_curve();
    ECPoint p(rat(2), rat(4));
    auto k = torsion_order(c, p);
    REQUIRE(k.has_value());
    CHECK(scalar_mul(c, *k, p) == ECPoint::O());
    for (int j = 1; j < *k; ++j) CHECK(scalar_mul(c, j, p) != ECPoint::O());
}
