#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>

#include "qk3/genus1.hpp"

using namespace qk3::genus1;
using qk3::ellcurve::on_curve;
using qk3::ellcurve::scalar_mul;
using qk3::exactq::Int;
using qk3::exactq::rat;

namespace {

std::mt19937 rng(424242);

// tiny bivariate expansion oracle for the substitution identity, kept
// independent of MPoly on purpose
using Biv = std::map<std::pair<int, int>, Rat>;
Biv bmul(const Biv& f, const Biv& g) {
    Biv r;
    for (const auto& [e1, c1] : f)
        for (const auto& [e2, c2] : g) {
            auto key = std::make_pair(e1.first + e2.first, e1.second + e2.second);
            r[key] += c1 * c2;
        }
    for (auto it = r.begin(); it != r.end();)
        it = (it->second == 0) ? r.erase(it) : std::next(it);
    return r;
}
Biv badd(Biv f, const Biv& g) {
    for (const auto& [e, c] : g) {
        f[e] += c;
        if (f[e] == 0) f.erase(e);
    }
    return f;
}
Biv bscale(const Rat& a, Biv f) {
    for (auto& [e, c] : f) c *= a;
    return f;
}

}  // namespace

TEST_CASE("paper substitution map and its polynomial identity") {
    // concrete values first: (t,d) = (1,0) -> (2,4), on y^2 = x^3 + 4x
    auto [x, y] = paper_map_C(rat(1), rat(0));
    CHECK(x == rat(2));
    CHECK(y == rat(4));
    qk3::ellcurve::WeierstrassCurve c(rat(4), rat(0));
    CHECK(on_curve(c, qk3::ellcurve::ECPoint(x, y)));
    CHECK(qk3::ellcurve::torsion_order(c, qk3::ellcurve::ECPoint(x, y)) == 4);

    // y(t,d)^2 - x(t,d)^3 - 4 x(t,d) = 8 (t^2 - d)(t^4 - d^2 - 1),
    // coefficient-wise in Q[t,d]
    Biv t{{{1, 0}, rat(1)}}, d{{{0, 1}, rat(1)}}, one{{{0, 0}, rat(1)}};
    Biv xx = bscale(rat(2), badd(bmul(t, t), bscale(rat(-1), d)));
    Biv yy = bmul(bscale(rat(2), t), xx);
    Biv lhs = badd(bmul(yy, yy),
                   badd(bscale(rat(-1), bmul(xx, bmul(xx, xx))), bscale(rat(-4), xx)));
    Biv t2d = badd(bmul(t, t), bscale(rat(-1), d));
    Biv t4d21 = badd(bmul(bmul(t, t), bmul(t, t)),
                     badd(bscale(rat(-1), bmul(d, d)), bscale(rat(-1), one)));
    Biv rhs = bscale(rat(8), bmul(t2d, t4d21));
    CHECK(badd(lhs, bscale(rat(-1), rhs)).empty());
}

TEST_CASE("binary quartic invariants") {
    QuarticModel m(rat(1), rat(0), rat(0), rat(0), rat(-1));  // v^2 = t^4 - 1
    auto [I, J] = binary_quartic_invariants(m);
    CHECK(I == rat(-12));
    CHECK(J == rat(0));

    // scaling u -> mu*u multiplies I by mu^4 and J by mu^6
    std::uniform_int_distribution<long> mus(1, 9);
    std::uniform_int_distribution<long> co(-4, 4);
    int done = 0;
    while (done < 20) {
        Rat a4 = rat(co(rng)), a3 = rat(co(rng)), a2 = rat(co(rng)), a1 = rat(co(rng)),
            a0 = rat(co(rng));
        Rat mu = rat(mus(rng), mus(rng));
        try {
            QuarticModel base(a4, a3, a2, a1, a0);
            QuarticModel scaled(a4 * mu * mu * mu * mu, a3 * mu * mu * mu, a2 * mu * mu, a1 * mu,
                                a0);
            auto [i1, j1] = binary_quartic_invariants(base);
            auto [i2, j2] = binary_quartic_invariants(scaled);
            Rat mu4 = mu * mu * mu * mu;
            CHECK(i2 == i1 * mu4);
            CHECK(j2 == j1 * mu4 * mu * mu);
            ++done;
        } catch (const std::invalid_argument&) {
            continue;  // degenerate draw
        }
    }
}

TEST_CASE("quartic_to_weierstrass: v^2 = t^4 - 1 anchored at a root") {
    QuarticModel m(rat(1), rat(0), rat(0), rat(0), rat(-1));
    auto red = quartic_to_weierstrass(m, rat(1), rat(0));
    // the root-to-infinity reduction of this quartic is the curve y^2 = x^3 + 4x
    CHECK(red.curve.A == rat(4));
    CHECK(red.curve.B == rat(0));
    CHECK(red.forward_point(rat(1), rat(0))->infinity);
    auto back = red.backward_point(qk3::ellcurve::ECPoint::O());
    CHECK(back->first == rat(1));
    CHECK(back->second == rat(0));
    // round-trip through ten multiples of a known point
    auto w = red.forward_point(rat(0), rat(1));  // v^2 = -1 has no real point; use (u,v)=( -1,0 )? no:
    // use the rational point (u,v) = (1,0) only; sample curve points instead
    qk3::ellcurve::ECPoint g(rat(2), rat(4));
    for (int k = 1; k <= 10; ++k) {
        auto p = scalar_mul(red.curve, k, g);
        auto uv = red.backward_point(p);
        if (!uv) continue;  // map undefined at this point
        CHECK(m.on_model(uv->first, uv->second));
        auto fwd = red.forward_point(uv->first, uv->second);
        REQUIRE(fwd.has_value());
        CHECK(*fwd == p);
    }
}

TEST_CASE("quartic_to_weierstrass: lambda = 544 model, j-invariant oracle") {
    Rat lam = rat(544);
    QuarticModel m(lam, rat(0), rat(0), rat(0), Rat(-lam));
    Rat t0 = rat(5, 3), v0 = rat(544, 9);
    REQUIRE(m.on_model(t0, v0));
    auto red = quartic_to_weierstrass(m, Rat(-t0), v0);

    // j-invariant agreement with the invariant-theoretic model
    // y^2 = x^3 - 27 I x - 27 J
    auto [I, J] = binary_quartic_invariants(m);
    qk3::ellcurve::WeierstrassCurve inv_model(Rat(-27 * I), Rat(-27 * J));
    CHECK(red.curve.j_invariant() == inv_model.j_invariant());

    // twist of y^2 = x^3 + 4x by lambda: A = 4 lambda^2, B = 0
    CHECK(red.curve.A == rat(4) * lam * lam);
    CHECK(red.curve.B == rat(0));

    // base point image is finite and the anchor goes to infinity
    auto w0 = red.forward_point(t0, v0);
    REQUIRE(w0.has_value());
    CHECK_FALSE(w0->infinity);
    CHECK(on_curve(red.curve, *w0));
    CHECK(w0->x == rat(295936, 225));
    CHECK(w0->y == rat(-208930816, 3375));
    CHECK(red.forward_point(Rat(-t0), v0)->infinity);

    // round trip at the base point
    auto uv = red.backward_point(*w0);
    REQUIRE(uv.has_value());
    CHECK(uv->first == t0);
    CHECK(uv->second == v0);

    // group transport: multiples map back onto the quartic, exactly
    qk3::ellcurve::ECPoint acc = qk3::ellcurve::ECPoint::O();
    for (int k = 1; k <= 6; ++k) {
        acc = qk3::ellcurve::add(red.curve, acc, *w0);
        auto q = red.backward_point(acc);
        REQUIRE(q.has_value());
        CHECK(m.on_model(q->first, q->second));
    }
}

TEST_CASE("quartic_to_weierstrass: j-invariant agreement on random models") {
    std::uniform_int_distribution<long> co(-4, 4);
    int done = 0;
    while (done < 20) {
        Rat a4 = rat(co(rng)), a3 = rat(co(rng)), a2 = rat(co(rng)), a1 = rat(co(rng));
        Rat u0 = rat(co(rng)), v0 = rat(co(rng));
        // build a model passing through (u0, v0): solve for a0
        Rat a0 = v0 * v0 - (((a4 * u0 + a3) * u0 + a2) * u0 + a1) * u0;
        try {
            QuarticModel m(a4, a3, a2, a1, a0);
            auto red = quartic_to_weierstrass(m, u0, v0);
            auto [I, J] = binary_quartic_invariants(m);
            qk3::ellcurve::WeierstrassCurve inv_model(Rat(-27 * I), Rat(-27 * J));
            CHECK(red.curve.j_invariant() == inv_model.j_invariant());
            // anchor to infinity, backward(O) = anchor
            CHECK(red.forward_point(u0, v0)->infinity);
            auto b = red.backward_point(qk3::ellcurve::ECPoint::O());
            CHECK(b->first == u0);
            CHECK(b->second == v0);
            ++done;
        } catch (const std::invalid_argument&) {
            continue;
        } catch (const std::domain_error&) {
            continue;
        }
    }
}

TEST_CASE("quartic_to_weierstrass rejects bad anchors") {
    QuarticModel m(rat(1), rat(0), rat(0), rat(0), rat(-1));
    CHECK_THROWS_AS(quartic_to_weierstrass(m, rat(2), rat(1)), std::invalid_argument);
    CHECK_THROWS_AS(QuarticModel(rat(1), rat(0), rat(0), rat(0), rat(0)), std::invalid_argument);
    CHECK_THROWS_AS(QuarticModel(rat(0), rat(0), rat(1), rat(1), rat(1)), std::invalid_argument);
}

TEST_CASE("cubic_to_weierstrass: already-Weierstrass fast path") {
    // y^2 z = x^3 + 4 x z^2 with marked [0:1:0]
    MPoly f(3);
    f.add_term({3, 0, 0}, rat(1));
    f.add_term({1, 0, 2}, rat(4));
    f.add_term({0, 2, 1}, rat(-1));
    PlaneCubic c(f, ProjPoint(std::vector<Int>{0, 1, 0}));
    auto red = cubic_to_weierstrass(c);
    CHECK(red.curve.A == rat(4));
    CHECK(red.curve.B == rat(0));
    CHECK(red.marked_image.infinity);
    // identity maps up to the chart: [2:4:1] -> (2,4) -> [2:4:1]
    auto w = red.forward_point(ProjPoint(std::vector<Int>{2, 4, 1}));
    REQUIRE(w.has_value());
    CHECK(w->x == rat(2));
    CHECK(w->y == rat(4));
    auto b = red.backward_point(*w);
    REQUIRE(b.has_value());
    CHECK(*b == ProjPoint(std::vector<Int>{2, 4, 1}));
}

TEST_CASE("cubic_to_weierstrass: general reduction round trips") {
    // x^3 + y^3 - 6 x y z + z^3... use a cubic with an easy rational point:
    // x^3 + y^3 + z^3 - 3xyz is reducible; take the Fermat-like cubic
    // x^3 + y^3 - 9 z^3 = 0 with marked [2:1:1]
    MPoly f(3);
    f.add_term({3, 0, 0}, rat(1));
    f.add_term({0, 3, 0}, rat(1));
    f.add_term({0, 0, 3}, rat(-9));
    ProjPoint mk(std::vector<Int>{2, 1, 1});
    PlaneCubic c(f, mk);
    CHECK(c.eval(mk) == 0);
    auto red = cubic_to_weierstrass(c);
    CHECK(red.curve.disc() != 0);

    // the marked point's image is on the curve and round-trips
    CHECK(on_curve(red.curve, red.marked_image));
    REQUIRE_FALSE(red.marked_image.infinity);
    auto back = red.backward_point(red.marked_image);
    REQUIRE(back.has_value());
    CHECK(*back == mk);

    // transport: multiples of the marked image pull back to rational points
    // of the cubic, and the maps invert each other there
    qk3::ellcurve::ECPoint acc = qk3::ellcurve::ECPoint::O();
    int checked = 0;
    for (int k = 1; k <= 10; ++k) {
        acc = qk3::ellcurve::add(red.curve, acc, red.marked_image);
        auto p = red.backward_point(acc);
        if (!p) continue;
        CHECK(c.eval(*p) == 0);
        auto fwd = red.forward_point(*p);
        REQUIRE(fwd.has_value());
        CHECK(*fwd == acc);
        ++checked;
    }
    CHECK(checked >= 8);
}

TEST_CASE("plane cubic validation") {
    // reducible: (x + y) * (x^2 + y^2 + z^2)... has marked point [1:-1:0]
    MPoly lin(3), con(3);
    lin.add_term({1, 0, 0}, rat(1));
    lin.add_term({0, 1, 0}, rat(1));
    con.add_term({2, 0, 0}, rat(1));
    con.add_term({0, 2, 0}, rat(1));
    con.add_term({0, 0, 2}, rat(1));
    MPoly red = lin * con;
    CHECK_THROWS_AS(PlaneCubic(red, ProjPoint(std::vector<Int>{1, -1, 0})), std::invalid_argument);

    // marked point not on the curve
    MPoly f(3);
    f.add_term({3, 0, 0}, rat(1));
    f.add_term({0, 3, 0}, rat(1));
    f.add_term({0, 0, 3}, rat(-9));
    CHECK_THROWS_AS(PlaneCubic(f, ProjPoint(std::vector<Int>{1, 1, 1})), std::invalid_argument);

    // nodal cubic with the marked point at the node: y^2 z = x^2 (x + z)
    MPoly g(3);
    g.add_term({0, 2, 1}, rat(1));
    g.add_term({3, 0, 0}, rat(-1));
    g.add_term({2, 0, 1}, rat(-1));
    CHECK_THROWS_AS(PlaneCubic(g, ProjPoint(std::vector<Int>{0, 0, 1})), std::invalid_argument);
}

TEST_CASE("project_space_quartic contract errors") {
    using qk3::exactq::Mat;
    using qk3::exactq::Vec;
    auto diag = [](long a, long b, long c, long d) {
        Mat m(4, Vec(4, rat(0)));
        m[0][0] = rat(a);
        m[1][1] = rat(b);
        m[2][2] = rat(c);
        m[3][3] = rat(d);
        return m;
    };
    // R not on both quadrics
    CHECK_THROWS_AS(project_space_quartic(diag(1, 1, -1, -1), diag(1, -1, 1, -1),
                                          ProjPoint(std::vector<Int>{1, 1, 1, 2})),
                    std::invalid_argument);
    // R a vertex of a rank-3 member: quadric x^2+y^2-z^2 (no w), R = [0:0:0:1]
    CHECK_THROWS_AS(project_space_quartic(diag(1, 1, -1, 0), diag(1, -1, 0, 0),
                                          ProjPoint(std::vector<Int>{0, 0, 0, 1})),
                    std::domain_error);
}
