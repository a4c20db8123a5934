#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qk3/rat.hpp"

namespace qk3::genus1 {

using exactq::Rat;

// Polynomial in a fixed number of variables over Q.  Terms live in a map
// keyed by exponent vectors, so iteration (and hence serialization) is
// deterministic.  Degrees stay small throughout the project; clarity wins
// over sparse-representation tricks.
class MPoly {
  public:
    using Expo = std::vector<unsigned>;

    explicit MPoly(size_t arity) : arity_(arity) {}
    static MPoly constant(size_t arity, const Rat& c);
    static MPoly var(size_t arity, size_t i);

    size_t arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Expo, Rat>& terms() const { return terms_; }

    void add_term(const Expo& e, const Rat& c);

    MPoly operator-() const;
    friend MPoly operator+(const MPoly& f, const MPoly& g);
    friend MPoly operator-(const MPoly& f, const MPoly& g);
    friend MPoly operator*(const MPoly& f, const MPoly& g);
    friend MPoly operator*(const Rat& a, const MPoly& f);
    friend bool operator==(const MPoly& f, const MPoly& g) {
        return f.arity_ == g.arity_ && f.terms_ == g.terms_;
    }

    MPoly pow(unsigned e) const;
    Rat eval(const std::vector<Rat>& x) const;
    unsigned degree_in(size_t i) const;
    unsigned total_degree() const;

    // substitute x_i := nums[i]/dens[i]; returns the numerator polynomial,
    // the implied denominator is prod dens[i]^{degree_in(i)}
    MPoly subst_numerator(const std::vector<MPoly>& nums, const std::vector<MPoly>& dens) const;

    std::string to_string(const std::vector<std::string>& vars) const;

  private:
    size_t arity_;
    std::map<Expo, Rat> terms_;
};

// Quotient of two MPoly in the same variables.
struct RatFunc {
    MPoly num, den;

    RatFunc(MPoly n, MPoly d);
    static RatFunc poly(MPoly p);

    std::optional<Rat> eval(const std::vector<Rat>& x) const;  // nullopt when den = 0
    std::string to_string(const std::vector<std::string>& vars) const;

    friend RatFunc operator+(const RatFunc& f, const RatFunc& g);
    friend RatFunc operator-(const RatFunc& f, const RatFunc& g);
    friend RatFunc operator*(const RatFunc& f, const RatFunc& g);
    friend RatFunc operator/(const RatFunc& f, const RatFunc& g);
    RatFunc operator-() const { return RatFunc(-num, den); }
};

// A tuple of rational functions on named source coordinates.  Projective
// targets are evaluated by clearing to a common value vector; such a map is
// defined at x iff some component evaluates and not all components vanish.
struct RatMap {
    std::vector<std::string> src_vars;
    std::vector<RatFunc> comps;

    std::optional<std::vector<Rat>> eval(const std::vector<Rat>& x) const;
    std::vector<std::string> to_strings() const;
};

// compose: outer(inner(x)); inner components must match outer's arity
RatFunc compose(const RatFunc& outer, const std::vector<RatFunc>& inner);
RatMap compose(const RatMap& outer, const RatMap& inner);

// Mutually inverse coordinate maps between two models, stored as explicit
// rational functions so they can be serialized and audited.
struct MapPair {
    RatMap forward;
    RatMap backward;

    std::string to_json() const;  // {"forward": [...], "backward": [...]}
};

}  // namespace qk3::genus1
