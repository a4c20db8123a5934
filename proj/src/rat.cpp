#include "qk3/rat.hpp"

#include <stdexcept>

namespace qk3::exactq {

Rat rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat rat(long num, long den) { return rat(Int(num), Int(den)); }

std::optional<Rat> rat_from_string(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Int n(s, 10);
            return rat(n, Int(1));
        }
        std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
        if (ns.empty() || ds.empty()) return std::nullopt;
        Int n(ns, 10), d(ds, 10);
        if (d == 0) return std::nullopt;
        return rat(n, d);
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool is_square(const Rat& q) {
    if (q == 0) return true;
    if (q < 0) return false;
    Int prod = q.get_num() * q.get_den();
    return mpz_perfect_square_p(prod.get_mpz_t()) != 0;
}

bool square_class_equal(const Rat& p, const Rat& q) {
    if (p == 0 || q == 0) throw std::invalid_argument("square_class_equal: zero argument");
    return is_square(Rat(p * q));
}

Int square_part_bounded(const Int& n, unsigned long trial_bound) {
    if (n <= 0) throw std::invalid_argument("square_part_bounded: n must be positive");
    Int rest = n;
    Int out = 1;
    // trial division handles the small primes completely
    for (unsigned long p = 2; p <= trial_bound; p = (p == 2) ? 3 : p + 2) {
        if (rest == 1) break;
        Int pp(p);
        if (pp * pp > rest) break;  // rest is 1 or prime
        if (rest % pp != 0) continue;
        unsigned e = 0;
        while (rest % pp == 0) {
            rest /= pp;
            ++e;
        }
        for (unsigned i = 0; i < e / 2; ++i) out *= pp;
    }
    // residue: if it is a perfect square its root divides squarely
    if (rest > 1 && mpz_perfect_square_p(rest.get_mpz_t())) {
        Int r;
        mpz_sqrt(r.get_mpz_t(), rest.get_mpz_t());
        out *= r;
    }
    return out;
}

}  // namespace qk3::exactq
