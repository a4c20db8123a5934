#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qk3/genus1.hpp"
#include "qk3/linalg.hpp"
#include "qk3/polyq.hpp"
#include "qk3/projective.hpp"

namespace qk3::dqsurf {

using ellcurve::ECPoint;
using ellcurve::WeierstrassCurve;
using exactq::Mat;
using exactq::PolyQ;
using exactq::ProjPoint;
using exactq::Rat;
using exactq::Vec;

// Diagonal quartic surface a x^4 + b y^4 + c z^4 + d w^4 = 0.
struct DiagSurface {
    Rat a, b, c, d;
    bool square_disc;  // abcd in (Q*)^2: both rulings of the quadric are rational

    DiagSurface(Rat a_, Rat b_, Rat c_, Rat d_);
    std::array<Rat, 4> coeffs() const { return {a, b, c, d}; }
};

bool contains(const DiagSurface& s, const ProjPoint& p);

// Coordinatewise squares, canonicalized.
ProjPoint square_map(const ProjPoint& p);

enum class OmegaVerdict { CertifiedOff, OnCoordinateHyperplane, PossiblyOnLine };

// Witness for PossiblyOnLine: coordinates are paired as {pair[0]} and the
// complementary pair, and the sign s_k satisfies c_i u_i^4 = s_k * c_j u_j^4.
struct OmegaResult {
    OmegaVerdict verdict;
    std::array<int, 2> pair{-1, -1};  // indices paired with 0 removed. pair[0] = partner of x
    int s1 = 0, s2 = 0;

    std::string to_string() const;
};

// Sound off-certificate for the union of coordinate hyperplanes and the 48
// lines: a rational point on one of the lines must satisfy, for some
// pairing of the four (coefficient, coordinate) slots into two pairs, the
// fourth-power relations c_i u_i^4 = +- c_j u_j^4 (a rational fourth root
// of unity ratio is +-1).  No pairing matching means the point is
// certifiably off the bad locus.
OmegaResult omega_filter(const DiagSurface& s, const ProjPoint& p);

// First canonical point of height <= H on the quadric
// a X^2 + b Y^2 + c Z^2 + d W^2 = 0, scan order as in scan_p3_by_height.
std::optional<ProjPoint> quadric_point_search(const DiagSurface& s, long H);

// A line in P^3 as a pair of independent linear forms, kept in canonical
// echelon order (pivot-sorted, primitive integer, leading coefficient
// positive).
struct Line3 {
    std::array<Vec, 2> forms;

    friend bool operator==(const Line3& a, const Line3& b) { return a.forms == b.forms; }
    std::string to_string() const;
};

struct Ruling {
    int index;     // 1 or 2
    Line3 base;    // the base line B_{3-i} of the hyperplane pencil
    Vec L1, L2;    // psi_i = [L1 : L2]; both hyperplanes contain base
    Vec N1, N2;    // calibrated second pair, resolves evaluation on base
};

// Both rulings of the quadric at a rational quadric point; requires
// square_disc (the tangent conic splits over Q exactly then).  All gauge
// freedom is fixed: split lines are ordered lexicographically by their
// echelon forms, ruling i is built on base B_{3-i}.
std::pair<Ruling, Ruling> rulings_at(const DiagSurface& s, const ProjPoint& pq);

// Fiber of pi_i over param: the intersection of the two diagonal quadrics
// M1(x^2,y^2,z^2,w^2) and M2(x^2,y^2,z^2,w^2) where {M1 = M2 = 0} is the
// residual line of the pencil plane over param.
struct Fiber {
    DiagSurface surface;
    int index;
    ProjPoint param;
    Vec M1, M2;
    bool smooth;

    Mat quadric_matrix(int which) const;  // 4x4 diagonal
    bool on_fiber(const ProjPoint& p) const;
    std::string to_json() const;
};

// Deterministic fibration context for one surface: quadric point, rulings,
// and everything downstream. Immutable after construction.
class Fibrations {
  public:
    explicit Fibrations(const DiagSurface& s, long search_height = 64);

    const DiagSurface& surface() const { return s_; }
    const ProjPoint& quadric_point() const { return pq_; }
    const Ruling& ruling(int i) const;

    // residual line of the plane u*L1 - s*L2 = 0 for p = [s:u]
    Line3 ruling_line(int i, const ProjPoint& p) const;

    Fiber fiber(int i, const ProjPoint& p) const;

    // [L1 : L2] at the squares of P, falling back to the calibrated pair
    ProjPoint pi(int i, const ProjPoint& p) const;

    // squarefree monic polynomial whose roots contain the branch values of
    // pi_{3-i} on the fiber over t that arise from the locus xyzw = 0
    PolyQ branch_sample(int i, const ProjPoint& t) const;
    bool branch_nonconstant(int i, const ProjPoint& t1, const ProjPoint& t2) const;

  private:
    DiagSurface s_;
    ProjPoint pq_;
    std::vector<Ruling> rulings_;
};

// Fiber reduced to a Weierstrass curve through projection from a rational
// point R on it and the plane-cubic reduction.  Maps are the symbolic
// composites; point evaluation runs stagewise so the special values at the
// projection center are honored.
struct FiberReduction {
    WeierstrassCurve curve;
    genus1::MapPair maps;  // end-to-end [x:y:z:w] <-> (x,y)
    ECPoint seed_image;    // image of R

    genus1::SpaceProjection projection;
    genus1::CubicReduction reduction;

    std::optional<ECPoint> forward_point(const ProjPoint& p) const;
    std::optional<ProjPoint> backward_point(const ECPoint& p) const;
};

FiberReduction fiber_to_elliptic(const Fiber& f, const ProjPoint& r);

struct MultiplesResult {
    std::vector<ProjPoint> points;  // deduplicated, in k order, all verified on the fiber
    std::vector<long> skipped;      // k where the backward map was undefined
    bool seed_torsion = false;
    int torsion_order = 0;  // valid when seed_torsion
};

// {backward([k] forward(R)) : 1 <= k <= kmax}; when forward(R) is torsion
// the finite cycle comes back flagged.
MultiplesResult fiber_multiples(const Fiber& f, const ProjPoint& r, long kmax);

std::string ruling_to_json(const Ruling& r);

}  // namespace qk3::dqsurf
