#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qk3/rat.hpp"

namespace qk3::ellcurve {

using exactq::Rat;

// y^2 = x^3 + A x + B over Q, nonsingular.
struct WeierstrassCurve {
    Rat A, B;

    WeierstrassCurve(Rat a, Rat b);
    Rat disc() const;  // -16(4A^3 + 27B^2)
    Rat j_invariant() const;
    std::string to_string() const;
};

// Affine point or the point at infinity.
struct ECPoint {
    bool infinity = true;
    Rat x, y;

    ECPoint() = default;
    ECPoint(Rat px, Rat py) : infinity(false), x(std::move(px)), y(std::move(py)) {}
    static ECPoint O() { return ECPoint(); }

    std::string to_string() const;
    friend bool operator==(const ECPoint& p, const ECPoint& q) {
        if (p.infinity || q.infinity) return p.infinity == q.infinity;
        return p.x == q.x && p.y == q.y;
    }
    friend bool operator!=(const ECPoint& p, const ECPoint& q) { return !(p == q); }
};

bool on_curve(const WeierstrassCurve& c, const ECPoint& p);
ECPoint negate(const ECPoint& p);
ECPoint add(const WeierstrassCurve& c, const ECPoint& p, const ECPoint& q);
ECPoint scalar_mul(const WeierstrassCurve& c, long k, const ECPoint& p);

// Exact order of p when torsion, nullopt when infinite.  Over Q the order
// of a rational torsion point divides an element of {1..10, 12} (Mazur),
// so scanning k <= 12 decides.  On integral models a Lutz-Nagell
// integrality prefilter short-circuits, but the scan is the verdict.
std::optional<int> torsion_order(const WeierstrassCurve& c, const ECPoint& p);

// All rational points with y = 0 (rational roots of x^3 + Ax + B), ascending in x.
std::vector<ECPoint> two_torsion(const WeierstrassCurve& c);

}  // namespace qk3::ellcurve
