#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qk3/dqsurf.hpp"
#include "qk3/genus1.hpp"
#include "qk3/projective.hpp"

namespace qk3::twistgen {

using dqsurf::DiagSurface;
using dqsurf::OmegaResult;
using ellcurve::ECPoint;
using exactq::ProjPoint;
using exactq::Rat;
using exactq::WPoint;

// Odd coprime n > m > 1 and lambda = n^4 - m^4.
struct TwistParams {
    long n, m;
    Rat lambda;

    TwistParams(long n_, long m_);
};

// One generated twist datum: lambda d_k^2 = t_k^4 - 1 holds exactly, and
// P_k = [t_k : m : n : 1] lies on F_{d_k} = V_{1, d_k^2, -d_k^2, -1}.
struct TwistItem {
    long k = 0;
    Rat d, t;
    ProjPoint P{std::vector<exactq::Int>{1, 1}};
    bool certified = false;
    OmegaResult omega{};
    std::vector<std::pair<Rat, bool>> square_flags;  // (a_j, d*a_j not a square)
};

// Rational point on the quotient surface in P(1,2,2,1,2): coordinates
// (x,y,z,w,t) satisfy y z = t^2 and x^4 + y^2 = z^2 + w^4 exactly.
struct YPoint {
    WPoint wp;
};

struct XiResult {
    bool ok = false;
    bool trivial_twist = false;  // d is a square, nothing to check
};

struct GenerateOutcome {
    std::vector<TwistItem> items;
    std::vector<std::pair<long, std::string>> skipped;  // (k, reason)
};

// The twist-family engine: the quartic model (lambda d')^2-form of
// lambda d^2 = t^4 - 1 via d' = lambda d, reduced to a Weierstrass model
// anchored at (-t0, v0) so the base point (t0, v0) = (n/m, lambda/m^2) has
// a finite image, certified non-torsion by the k <= 12 scan.
class Engine {
  public:
    explicit Engine(const TwistParams& params);

    const TwistParams& params() const { return params_; }
    const ellcurve::WeierstrassCurve& curve() const { return red_.curve; }
    const ECPoint& base_image() const { return base_image_; }
    const genus1::MapPair& maps() const { return red_.maps; }

    GenerateOutcome generate(long count) const;

    // omega verdict on F_{d_k} plus square-class flags against the avoid list
    TwistItem certify(TwistItem item, const std::vector<Rat>& avoid) const;

    YPoint quotient_point(const TwistItem& item) const;
    XiResult xi_check(const TwistItem& item) const;

  private:
    TwistParams params_;
    genus1::QuarticReduction red_;
    ECPoint base_image_;
};

DiagSurface twisted_fermat(const Rat& d);  // F_d = V_{1, d^2, -d^2, -1}

// JSON line for one item (with its quotient point), stable key order.
std::string item_to_json(const TwistItem& item, const YPoint& y);
std::string skip_to_json(long k, const std::string& reason);

}  // namespace qk3::twistgen
