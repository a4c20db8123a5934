#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qk3/polyq.hpp"
#include "qk3/projective.hpp"

namespace qk3::thinsets {

using exactq::PolyQ;
using exactq::ProjPoint;
using exactq::Rat;

// Degree > 1 rational self-map of P^1, phi(u) = num(u)/den(u) in lowest terms.
struct RationalCover {
    PolyQ num, den;

    RationalCover(PolyQ n, PolyQ d);

    // parse "u^2", "u^3-u", "(u^2+1)/u" style sums of monomials over Q
    static std::optional<RationalCover> parse(const std::string& s);
    std::string to_string() const;
};

// All rational preimages of t under phi, including the point at infinity
// when it maps to t; deterministic order (finite points ascending, then
// infinity).
std::vector<ProjPoint> preimages(const RationalCover& phi, const ProjPoint& t);

struct CoveredPoint {
    ProjPoint t;
    size_t cover_index;
    ProjPoint witness;  // phi(witness) = t, exact
};

struct ThinReport {
    long height_bound = 0;
    long total = 0;
    long covered = 0;
    Rat fraction;                    // covered / total, exact
    std::vector<long> per_cover;     // points hit by each cover separately
    std::vector<CoveredPoint> witnesses;
};

// Enumerate P^1 up to height H and test membership in the union of cover
// images; every covered point carries one exact witness preimage.
// Enumeration may be chunked across threads; the aggregate is
// order-deterministic regardless.
ThinReport thin_report(const std::vector<RationalCover>& covers, long H, unsigned threads = 1);

std::string report_csv_row(const ThinReport& r);  // height_bound,total,covered,fraction

}  // namespace qk3::thinsets
