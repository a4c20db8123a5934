#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "qk3/polyq.hpp"
#include "qk3/projective.hpp"
#include "qk3/quadext.hpp"
#include "qk3/rat.hpp"

using namespace qk3::exactq;

namespace {

// independent brute-force enumeration of canonical P^1 points
std::set<std::vector<long>> brute_p1(long H) {
    std::set<std::vector<long>> pts;
    for (long p = -H; p <= H; ++p) {
        for (long q = -H; q <= H; ++q) {
            if (p == 0 && q == 0) continue;
            long g = std::gcd(std::abs(p), std::abs(q));
            if (g != 1) continue;
            long a = p, b = q;
            if (a < 0 || (a == 0 && b < 0)) {
                a = -a;
                b = -b;
            }
            pts.insert({a, b});
        }
    }
    return pts;
}

// resultant by a Euclidean polynomial remainder sequence, used as an
// independent oracle against the Sylvester determinant
Rat prs_resultant(PolyQ f, PolyQ g) {
    Rat acc(1);
    bool neg = false;
    while (true) {
        if (g.is_zero()) return Rat(0);
        if (g.degree() == 0) {
            Rat r(1);
            for (long i = 0; i < f.degree(); ++i) r *= g.coeff(0);
            return neg ? Rat(acc * r * Rat(-1)) : Rat(acc * r);
        }
        if (f.degree() < g.degree()) {
            if ((f.degree() * g.degree()) % 2 != 0) neg = !neg;
            std::swap(f, g);
            continue;
        }
        PolyQ r = PolyQ::divmod(f, g).second;
        if (r.is_zero()) return Rat(0);
        // Res(f,g) = lc(g)^{deg f - deg r} (-1)^{deg f deg g} Res(g, r) ... track:
        Rat lc = g.leading();
        long e = f.degree() - r.degree();
        Rat scale(1);
        for (long i = 0; i < e; ++i) scale *= lc;
        acc *= scale;
        if ((f.degree() * g.degree()) % 2 != 0) neg = !neg;
        f = g;
        g = r;
    }
}

std::mt19937 rng(20240517);

Rat random_small_rat(bool nonzero = false) {
    std::uniform_int_distribution<long> num(-12, 12);
    std::uniform_int_distribution<long> den(1, 9);
    long n = num(rng);
    while (nonzero && n == 0) n = num(rng);
    return rat(n, den(rng));
}

}  // namespace

TEST_CASE("is_square examples") {
    CHECK(is_square(rat(4, 9)));
    CHECK_FALSE(is_square(rat(8, 1)));
    CHECK_FALSE(is_square(rat(544, 81)));  // 544*81 = 44064 is not a perfect square
    CHECK(is_square(rat(0, 1)));
    CHECK_FALSE(is_square(rat(-4, 1)));
}

TEST_CASE("square_class_equal examples and equivalence relation") {
    CHECK(square_class_equal(rat(2), rat(8)));
    CHECK_FALSE(square_class_equal(rat(2), rat(-2)));
    CHECK(square_class_equal(rat(1, 9), rat(1)));
    CHECK_THROWS_AS(square_class_equal(rat(0), rat(1)), std::invalid_argument);

    for (int i = 0; i < 1000; ++i) {
        Rat p = random_small_rat(true), q = random_small_rat(true), r = random_small_rat(true);
        CHECK(square_class_equal(p, p));
        CHECK(square_class_equal(p, q) == square_class_equal(q, p));
        if (square_class_equal(p, q) && square_class_equal(q, r)) CHECK(square_class_equal(p, r));
    }
}

TEST_CASE("is_square on q^2 and q^2 * squarefree") {
    const long squarefree[] = {2, 3, 5, 6, 7, 10, -1, -2, -3};
    for (int i = 0; i < 500; ++i) {
        Rat q = random_small_rat(true);
        CHECK(is_square(Rat(q * q)));
        long s = squarefree[static_cast<size_t>(i) % 9];
        CHECK_FALSE(is_square(Rat(q * q * s)));
    }
}

TEST_CASE("quadext arithmetic and conjugation") {
    QuadExt a(rat(1, 2), rat(3), rat(5));
    QuadExt b(rat(2), rat(-1), rat(5));
    CHECK((a + b) == QuadExt(rat(5, 2), rat(2), rat(5)));
    CHECK((a * b).a() == rat(1) * rat(1, 2) * 2 + rat(3) * rat(-1) * 5);
    CHECK(a.conj().b() == rat(-3));
    CHECK((a * a.conj()).is_rational());
    CHECK((a / a) == QuadExt::from_rat(rat(1), rat(5)));
    QuadExt c(rat(1), rat(1), rat(7));
    CHECK_THROWS_AS(a + c, std::invalid_argument);
    CHECK_THROWS_AS(QuadExt(rat(1), rat(1), rat(4)), std::invalid_argument);
}

TEST_CASE("projective canonicalization") {
    ProjPoint p(std::vector<Int>{2, 4});
    CHECK(p.to_string() == "[1:2]");
    CHECK(p.height() == 2);
    ProjPoint q(std::vector<Int>{-3, 6, -9, 12});
    CHECK(q.to_string() == "[1:-2:3:-4]");
    CHECK(ProjPoint(q.coords()) == q);  // idempotent

    std::uniform_int_distribution<long> coord(-30, 30);
    std::uniform_int_distribution<long> scl(1, 20);
    for (int i = 0; i < 200; ++i) {
        std::vector<Int> v{coord(rng), coord(rng), coord(rng), coord(rng)};
        bool all_zero = true;
        for (auto& c : v)
            if (c != 0) all_zero = false;
        if (all_zero) continue;
        ProjPoint a(v);
        long s = scl(rng);
        std::vector<Int> w;
        for (auto& c : v) w.push_back(c * (i % 2 ? s : -s));
        CHECK(ProjPoint(w) == a);
    }
}

TEST_CASE("height examples") {
    CHECK(ProjPoint(std::vector<Int>{1, 0, 1, 0}).height() == 1);
    CHECK(ProjPoint(std::vector<Int>{59, 158, 133, 134}).height() == 158);
    CHECK(ProjPoint(std::vector<Int>{2, 4}).height() == 2);
}

TEST_CASE("wpoint weighted canonicalization") {
    // weights (1,2,2,1,2): scaling (mu x, mu^2 y, mu^2 z, mu w, mu^2 t)
    WPoint a(std::array<Int, 5>{2, 4, 8, 6, 12});
    // mu = 2 scaling of that tuple
    WPoint b(std::array<Int, 5>{4, 16, 32, 12, 48});
    CHECK(a == b);

    std::uniform_int_distribution<long> coord(-9, 9);
    std::uniform_int_distribution<long> mus(1, 12);
    int done = 0;
    for (int i = 0; done < 200 && i < 2000; ++i) {
        std::array<Int, 5> v{coord(rng), coord(rng), coord(rng), coord(rng), coord(rng)};
        bool all_zero = true;
        for (auto& c : v)
            if (c != 0) all_zero = false;
        if (all_zero) continue;
        Rat mu = rat((i % 2 ? 1 : -1) * mus(rng), mus(rng));
        std::array<Rat, 5> w;
        for (size_t k = 0; k < 5; ++k) {
            w[k] = Rat(v[k]);
            for (int e = 0; e < WPoint::weights[k]; ++e) w[k] *= mu;
        }
        CHECK(WPoint(v) == WPoint::from_rats(w));
        ++done;
    }
    CHECK(done == 200);
}

TEST_CASE("p1 enumeration matches brute force") {
    auto pts = enumerate_p1_by_height(1);
    REQUIRE(pts.size() == 4);
    CHECK(pts[0].to_string() == "[1:0]");
    CHECK(pts[1].to_string() == "[0:1]");
    CHECK(pts[2].to_string() == "[1:1]");
    CHECK(pts[3].to_string() == "[1:-1]");

    for (long H : {1L, 2L, 5L, 13L}) {
        auto got = enumerate_p1_by_height(H);
        std::set<std::vector<long>> seen;
        for (const auto& p : got) {
            CHECK(p.height() <= H);
            seen.insert({p[0].get_si(), p[1].get_si()});
        }
        CHECK(seen.size() == got.size());  // exactly once
        CHECK(seen == brute_p1(H));
    }
    // fixture: 8 canonical points of height <= 2
    CHECK(enumerate_p1_by_height(2).size() == 8);
}

TEST_CASE("resultant examples and gcd cross-check") {
    PolyQ f({rat(-1), rat(1)});       // t - 1
    PolyQ g({rat(1), rat(1)});        // t + 1
    CHECK(resultant(f, g) == rat(2));
    PolyQ f2({rat(-1), rat(0), rat(1)});  // t^2 - 1
    CHECK(resultant(f2, f) == rat(0));
    PolyQ f3({rat(1), rat(0), rat(1)});   // t^2 + 1
    PolyQ g3({rat(-2), rat(0), rat(1)});  // t^2 - 2
    CHECK(resultant(f3, g3) == rat(9));

    std::uniform_int_distribution<long> co(-5, 5);
    std::uniform_int_distribution<int> deg(1, 4);
    for (int i = 0; i < 200; ++i) {
        std::vector<Rat> fc, gc;
        int df = deg(rng), dg = deg(rng);
        for (int k = 0; k <= df; ++k) fc.push_back(rat(co(rng)));
        for (int k = 0; k <= dg; ++k) gc.push_back(rat(co(rng)));
        PolyQ a(fc), b(gc);
        if (a.is_zero() || b.is_zero()) continue;
        bool res_zero = resultant(a, b) == 0;
        bool gcd_nonconst = poly_gcd(a, b).degree() >= 1;
        CHECK(res_zero == gcd_nonconst);
        CHECK(resultant(a, b) == prs_resultant(a, b));
    }
}

TEST_CASE("rational_roots examples") {
    PolyQ f({rat(-1), rat(0), rat(1)});  // t^2 - 1
    auto r = rational_roots(f);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == rat(-1));
    CHECK(r[1] == rat(1));
    CHECK(rational_roots(PolyQ({rat(1), rat(0), rat(1)})).empty());
    auto r2 = rational_roots(PolyQ({rat(-3), rat(2)}));
    REQUIRE(r2.size() == 1);
    CHECK(r2[0] == rat(3, 2));
    // degree 4 with repeated and zero roots: t^2 (t-2)^2
    PolyQ q = PolyQ({rat(0), rat(0), rat(1)}) * PolyQ({rat(4), rat(-4), rat(1)});
    auto r3 = rational_roots(q);
    REQUIRE(r3.size() == 2);
    CHECK(r3[0] == rat(0));
    CHECK(r3[1] == rat(2));
}

TEST_CASE("rat serialization round trip") {
    CHECK(rat_to_string(rat(-3, 7)) == "-3/7");
    CHECK(rat_to_string(rat(5)) == "5");
    CHECK(*rat_from_string("-3/7") == rat(-3, 7));
    CHECK(*rat_from_string("42") == rat(42));
    CHECK_FALSE(rat_from_string("").has_value());
    CHECK_FALSE(rat_from_string("a/b").has_value());
    CHECK_FALSE(rat_from_string("1/0").has_value());
}
