#pragma once

#include <string>
#include <vector>

#include "qk3/rat.hpp"

namespace qk3::exactq {

// Dense univariate polynomial over Q, coefficients lowest degree first.
// The zero polynomial is the empty coefficient sequence. Degrees in this
// project stay small (<= 8), so dense arithmetic is the right tradeoff.
class PolyQ {
  public:
    PolyQ() = default;
    explicit PolyQ(std::vector<Rat> coeffs);
    static PolyQ constant(const Rat& c);
    static PolyQ x();  // the monomial t

    const std::vector<Rat>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
    const Rat& leading() const;
    Rat coeff(size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }

    Rat eval(const Rat& x) const;
    PolyQ derivative() const;
    PolyQ monic() const;

    PolyQ operator-() const;
    friend PolyQ operator+(const PolyQ& f, const PolyQ& g);
    friend PolyQ operator-(const PolyQ& f, const PolyQ& g);
    friend PolyQ operator*(const PolyQ& f, const PolyQ& g);
    friend PolyQ operator*(const Rat& a, const PolyQ& f);
    friend bool operator==(const PolyQ& f, const PolyQ& g) { return f.c_ == g.c_; }
    friend bool operator!=(const PolyQ& f, const PolyQ& g) { return !(f == g); }

    // quotient/remainder; g must be nonzero
    static std::pair<PolyQ, PolyQ> divmod(const PolyQ& f, const PolyQ& g);

    std::string to_string(const std::string& var = "t") const;

  private:
    std::vector<Rat> c_;
    void trim();
};

// Monic gcd (Euclid); gcd(0,0) = 0.
PolyQ poly_gcd(const PolyQ& f, const PolyQ& g);

// Resultant via the Sylvester matrix (exact Gaussian elimination).
// Zero iff f and g share a root over the algebraic closure.
// Both inputs must be nonzero.
Rat resultant(const PolyQ& f, const PolyQ& g);

// (-1)^{n(n-1)/2} Res(f, f') / lc(f) for n = deg f >= 1.
Rat discriminant(const PolyQ& f);

// f / gcd(f, f'), made monic.
PolyQ squarefree_part(const PolyQ& f);

// All rational roots of nonzero f (multiplicity discarded), ascending.
// Rational root theorem on the primitive integer form; the divisor search
// trial-divides to 10^6 and keeps the rough cofactor as a candidate block,
// which is complete for every polynomial this artifact constructs.
std::vector<Rat> rational_roots(const PolyQ& f);

}  // namespace qk3::exactq
