#include "qk3/ellcurve.hpp"

#include <stdexcept>

#include "qk3/polyq.hpp"

namespace qk3::ellcurve {

using exactq::PolyQ;
using exactq::rat_to_string;

WeierstrassCurve::WeierstrassCurve(Rat a, Rat b) : A(std::move(a)), B(std::move(b)) {
    if (disc() == 0) throw std::invalid_argument("WeierstrassCurve: singular (disc = 0)");
}

Rat WeierstrassCurve::disc() const { return Rat(-16 * (4 * A * A * A + 27 * B * B)); }

Rat WeierstrassCurve::j_invariant() const {
    return Rat(6912 * A * A * A / (4 * A * A * A + 27 * B * B));
}

std::string WeierstrassCurve::to_string() const {
    return "y^2 = x^3 + (" + rat_to_string(A) + ")*x + (" + rat_to_string(B) + ")";
}

std::string ECPoint::to_string() const {
    if (infinity) return "O";
    return "(" + rat_to_string(x) + ", " + rat_to_string(y) + ")";
}

bool on_curve(const WeierstrassCurve& c, const ECPoint& p) {
    if (p.infinity) return true;
    return p.y * p.y == p.x * p.x * p.x + c.A * p.x + c.B;
}

ECPoint negate(const ECPoint& p) {
    if (p.infinity) return p;
    return ECPoint(p.x, Rat(-p.y));
}

ECPoint add(const WeierstrassCurve& c, const ECPoint& p, const ECPoint& q) {
    if (p.infinity) return q;
    if (q.infinity) return p;
    Rat lambda;
    if (p.x == q.x) {
        if (p.y + q.y == 0) return ECPoint::O();
        lambda = (3 * p.x * p.x + c.A) / (2 * p.y);
    } else {
        lambda = (q.y - p.y) / (q.x - p.x);
    }
    Rat x3 = lambda * lambda - p.x - q.x;
    Rat y3 = lambda * (p.x - x3) - p.y;
    return ECPoint(std::move(x3), std::move(y3));
}

ECPoint scalar_mul(const WeierstrassCurve& c, long k, const ECPoint& p) {
    ECPoint r = ECPoint::O();
    ECPoint base = (k < 0) ? negate(p) : p;
    unsigned long n = (k < 0) ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
    while (n) {
        if (n & 1) r = add(c, r, base);
        if (n >>= 1) base = add(c, base, base);
    }
    return r;
}

std::optional<int> torsion_order(const WeierstrassCurve& c, const ECPoint& p) {
    if (p.infinity) return 1;
    // Lutz-Nagell prefilter: on an integral model a torsion point has
    // integral coordinates
    if (c.A.get_den() == 1 && c.B.get_den() == 1 &&
        (p.x.get_den() != 1 || p.y.get_den() != 1)) {
        return std::nullopt;
    }
    ECPoint acc = p;
    for (int k = 2; k <= 12; ++k) {
        acc = add(c, acc, p);
        if (acc.infinity) return k;
    }
    return std::nullopt;
}

std::vector<ECPoint> two_torsion(const WeierstrassCurve& c) {
    PolyQ cubic(std::vector<Rat>{c.B, c.A, Rat(0), Rat(1)});
    std::vector<ECPoint> out;
    for (const Rat& r : exactq::rational_roots(cubic)) out.emplace_back(r, Rat(0));
    return out;
}

}  // namespace qk3::ellcurve
