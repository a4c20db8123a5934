#pragma once

#include <array>
#include <optional>
#include <utility>

#include "qk3/ellcurve.hpp"
#include "qk3/linalg.hpp"
#include "qk3/mpoly.hpp"
#include "qk3/polyq.hpp"
#include "qk3/projective.hpp"

namespace qk3::genus1 {

using ellcurve::ECPoint;
using ellcurve::WeierstrassCurve;
using exactq::Mat;
using exactq::PolyQ;
using exactq::ProjPoint;
using exactq::Rat;

// v^2 = a4 u^4 + a3 u^3 + a2 u^2 + a1 u + a0, nondegenerate: the quartic
// has nonzero discriminant and degree >= 3.
class QuarticModel {
  public:
    QuarticModel(Rat a4, Rat a3, Rat a2, Rat a1, Rat a0);

    Rat coeff(int power) const { return c_[static_cast<size_t>(power)]; }
    PolyQ rhs() const;  // the quartic polynomial in u
    bool on_model(const Rat& u, const Rat& v) const;

  private:
    std::array<Rat, 5> c_;  // ascending powers
};

// The curve-C substitution x = 2(t^2 - d), y = 2tx; lands on y^2 = x^3 + 4x
// whenever d^2 = t^4 - 1.
std::pair<Rat, Rat> paper_map_C(const Rat& t, const Rat& d);

// Classical invariants of the binary quartic:
//   I = 12 a4 a0 - 3 a3 a1 + a2^2
//   J = 72 a4 a2 a0 + 9 a3 a2 a1 - 27 a4 a1^2 - 27 a0 a3^2 - 2 a2^3
std::pair<Rat, Rat> binary_quartic_invariants(const QuarticModel& m);

// Result of a genus-1 reduction: the Weierstrass model, the coordinate maps
// as explicit rational functions, and evaluation helpers that know the
// special values the raw formulas miss (the anchor going to infinity, and
// the sheet-mate of the anchor).
struct QuarticReduction {
    WeierstrassCurve curve;
    MapPair maps;  // forward (u,v) -> (x,y); backward (x,y) -> (u,v)
    Rat u0, v0;    // the anchored point

    std::optional<ECPoint> forward_point(const Rat& u, const Rat& v) const;
    std::optional<std::pair<Rat, Rat>> backward_point(const ECPoint& p) const;

    // set when v0 != 0: the image of (u0, -v0), finite and in closed form
    std::optional<ECPoint> opposite_sheet_image;
};

// Birational maps between v^2 = q(u) with anchored rational point and a
// short Weierstrass curve over Q.  The anchor goes to infinity; when its
// v-coordinate is nonzero the classical truncated-square-root substitution
// is used, and when v0 = 0 the root goes to infinity through u = u0 + 1/U,
// which yields a cubic directly.
QuarticReduction quartic_to_weierstrass(const QuarticModel& m, const Rat& u0, const Rat& v0);

// Irreducible plane cubic with a marked nonsingular rational point.
// Monomial order for the 10 coefficients:
// x^3, x^2 y, x^2 z, x y^2, x y z, x z^2, y^3, y^2 z, y z^2, z^3.
class PlaneCubic {
  public:
    PlaneCubic(MPoly form, ProjPoint marked);

    const MPoly& form() const { return form_; }
    const ProjPoint& marked() const { return marked_; }
    std::array<Rat, 10> coefficients() const;
    Rat eval(const ProjPoint& p) const;

  private:
    MPoly form_;  // arity 3
    ProjPoint marked_;
};

struct CubicReduction {
    WeierstrassCurve curve;
    MapPair maps;  // forward [X:Y:Z] -> (x,y); backward (x,y) -> [X:Y:Z]
    ECPoint marked_image;

    std::optional<ECPoint> forward_point(const ProjPoint& p) const;
    std::optional<ProjPoint> backward_point(const ECPoint& p) const;

    ProjPoint marked;  // source marked point
};

// Nagell-style reduction: project the cubic from its marked point, getting
// v^2 = (discriminant of the residual intersection) as a quartic in the
// pencil parameter, then reduce that.  The third intersection of the
// tangent at the marked point is what lands on infinity; the marked point
// itself gets a finite image unless it is a flex.  Cubics already in monic
// Weierstrass shape with marked [0:1:0] pass through unchanged.
CubicReduction cubic_to_weierstrass(const PlaneCubic& c);

struct SpaceProjection {
    PlaneCubic cubic;
    MapPair maps;  // forward [x:y:z:w] -> [p:q:r]; backward [p:q:r] -> [x:y:z:w]

    std::optional<ProjPoint> forward_point(const ProjPoint& p) const;
    std::optional<ProjPoint> backward_point(const ProjPoint& p) const;

    ProjPoint center;  // the projection center R; forward(R) = cubic.marked()
};

// Project the smooth degree-4 intersection {Q1 = Q2 = 0} from a rational
// point R on it down to a plane cubic; the marked point of the cubic is the
// image of the tangent line at R.  Q1, Q2 are symmetric 4x4 matrices.
SpaceProjection project_space_quartic(const Mat& q1, const Mat& q2, const ProjPoint& r);

}  // namespace qk3::genus1
