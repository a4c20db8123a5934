#pragma once

#include <gmpxx.h>
#include <optional>
#include <string>
#include <vector>

namespace qk3::exactq {

using Int = mpz_class;
using Rat = mpq_class;  // always kept canonical: gcd(|num|,den)=1, den>=1

// Construct a canonical rational from numerator/denominator.
Rat rat(const Int& num, const Int& den);
Rat rat(long num, long den = 1);

// Parse "num/den" or "num" (den omitted). Returns nullopt on malformed input.
std::optional<Rat> rat_from_string(const std::string& s);

// Serialize as "num/den", with "/den" omitted when den == 1.
std::string rat_to_string(const Rat& q);

// q in (Q*)^2 or q == 0. No factorization: gcd(num,den)=1 implies q is a
// square iff num*den is a perfect square integer.
bool is_square(const Rat& q);

// p*q in (Q*)^2. Both arguments must be nonzero.
bool square_class_equal(const Rat& p, const Rat& q);

// Largest m with m^2 | n (n > 0), exact whenever all prime factors of the
// part of n that resists the gcd ladder are <= the trial bound or the
// residue is itself a perfect square. See wpoint canonicalization notes.
Int square_part_bounded(const Int& n, unsigned long trial_bound = 100000);

}  // namespace qk3::exactq
