#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qk3/rat.hpp"

namespace qk3::exactq {

// Point of P^n with canonical integer coordinates: gcd = 1, first nonzero
// coordinate positive.
class ProjPoint {
  public:
    explicit ProjPoint(std::vector<Int> coords);
    static ProjPoint from_rats(const std::vector<Rat>& coords);

    // Parse "[a:b:...:c]". Integers only (the canonical form).
    static std::optional<ProjPoint> parse(const std::string& s);

    const std::vector<Int>& coords() const { return c_; }
    size_t dim() const { return c_.size(); }
    const Int& operator[](size_t i) const { return c_[i]; }

    Int height() const;  // max |coord|

    std::string to_string() const;

    friend bool operator==(const ProjPoint& p, const ProjPoint& q) { return p.c_ == q.c_; }
    friend bool operator!=(const ProjPoint& p, const ProjPoint& q) { return !(p == q); }
    friend bool operator<(const ProjPoint& p, const ProjPoint& q) { return p.c_ < q.c_; }

  private:
    std::vector<Int> c_;
};

// Point of the weighted projective space P(1,2,2,1,2) on (x,y,z,w,t).
// Canonical form: integer coordinates, weighted-primitive (no prime p with
// p^{w_i} dividing coordinate i for every i), and when some weight-1
// coordinate is nonzero the first such is positive.  When x = w = 0 the
// scaling mu acts only through mu^2 > 0, so the signs of (y,z,t) are
// invariants and are left untouched; on that stratum primitivity removal
// relies on square_part_bounded and is exact for every value this artifact
// produces (the pipeline always has w != 0).
class WPoint {
  public:
    static constexpr std::array<int, 5> weights = {1, 2, 2, 1, 2};

    explicit WPoint(std::array<Int, 5> coords);
    static WPoint from_rats(const std::array<Rat, 5>& coords);

    const std::array<Int, 5>& coords() const { return c_; }
    const Int& operator[](size_t i) const { return c_[i]; }

    std::string to_string() const;

    friend bool operator==(const WPoint& p, const WPoint& q) { return p.c_ == q.c_; }
    friend bool operator!=(const WPoint& p, const WPoint& q) { return !(p == q); }

  private:
    std::array<Int, 5> c_;
};

// All canonical points [p:q] of P^1 with max(|p|,|q|) <= H, each exactly
// once.  Deterministic order: the second coordinate runs through
// 0, 1, -1, 2, -2, ... outermost, the first innermost through the same
// signed sequence; only canonical primitive tuples are emitted.  For H = 1
// this yields [1:0], [0:1], [1:1], [1:-1].
std::vector<ProjPoint> enumerate_p1_by_height(long H);

// Same signed-spiral order over P^3 tuples, streamed to a callback; stops
// early when the callback returns false.  Used for quadric point searches.
void scan_p3_by_height(long H, const std::function<bool(const ProjPoint&)>& visit);

}  // namespace qk3::exactq
