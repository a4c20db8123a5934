#pragma once

#include <stdexcept>
#include <string>

#include "qk3/rat.hpp"

namespace qk3::exactq {

// Element a + b*sqrt(rad) of the quadratic extension Q(sqrt(rad)).
//
// The radicand is stored as the exact rational handed in (e.g. a twist
// parameter d_k); it is required to be nonzero and not a perfect square,
// but it is NOT reduced to a squarefree integer -- that reduction would
// need a factorization, which this layer deliberately avoids. Elements
// over different radicands never mix: any binary operation on mismatched
// radicands throws.
class QuadExt {
  public:
    QuadExt(Rat a, Rat b, Rat rad) : a_(std::move(a)), b_(std::move(b)), rad_(std::move(rad)) {
        if (rad_ == 0) throw std::invalid_argument("QuadExt: zero radicand");
        if (is_square(rad_)) throw std::invalid_argument("QuadExt: radicand is a square");
    }

    static QuadExt from_rat(const Rat& a, const Rat& rad) { return QuadExt(a, Rat(0), rad); }
    static QuadExt sqrt_rad(const Rat& rad) { return QuadExt(Rat(0), Rat(1), rad); }

    const Rat& a() const { return a_; }
    const Rat& b() const { return b_; }
    const Rat& rad() const { return rad_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    QuadExt conj() const { return QuadExt(a_, Rat(-b_), rad_); }
    Rat norm() const { return Rat(a_ * a_ - b_ * b_ * rad_); }

    QuadExt operator-() const { return QuadExt(Rat(-a_), Rat(-b_), rad_); }

    friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
        x.check(y);
        return QuadExt(Rat(x.a_ + y.a_), Rat(x.b_ + y.b_), x.rad_);
    }
    friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
        x.check(y);
        return QuadExt(Rat(x.a_ - y.a_), Rat(x.b_ - y.b_), x.rad_);
    }
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
        x.check(y);
        return QuadExt(Rat(x.a_ * y.a_ + x.b_ * y.b_ * x.rad_), Rat(x.a_ * y.b_ + x.b_ * y.a_),
                       x.rad_);
    }
    friend QuadExt operator/(const QuadExt& x, const QuadExt& y) {
        x.check(y);
        Rat n = y.norm();
        if (n == 0) throw std::domain_error("QuadExt: division by zero-norm element");
        QuadExt z = x * y.conj();
        return QuadExt(Rat(z.a_ / n), Rat(z.b_ / n), x.rad_);
    }
    friend bool operator==(const QuadExt& x, const QuadExt& y) {
        x.check(y);
        return x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

    QuadExt pow(unsigned e) const {
        QuadExt r = from_rat(Rat(1), rad_);
        QuadExt base = *this;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    std::string to_string() const {
        return rat_to_string(a_) + " + (" + rat_to_string(b_) + ")*sqrt(" + rat_to_string(rad_) +
               ")";
    }

  private:
    void check(const QuadExt& other) const {
        if (rad_ != other.rad_)
            throw std::invalid_argument("QuadExt: mixed radicands " + rat_to_string(rad_) +
                                        " vs " + rat_to_string(other.rad_));
    }

    Rat a_, b_, rad_;
};

}  // namespace qk3::exactq
