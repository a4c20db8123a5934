#include "qk3/polyq.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qk3::exactq {

PolyQ::PolyQ(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

PolyQ PolyQ::constant(const Rat& c) { return PolyQ(std::vector<Rat>{c}); }

PolyQ PolyQ::x() { return PolyQ(std::vector<Rat>{Rat(0), Rat(1)}); }

void PolyQ::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rat& PolyQ::leading() const {
    if (c_.empty()) throw std::domain_error("PolyQ::leading on zero polynomial");
    return c_.back();
}

Rat PolyQ::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

PolyQ PolyQ::derivative() const {
    if (c_.size() <= 1) return PolyQ();
    std::vector<Rat> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = Rat(c_[i] * Rat(static_cast<long>(i)));
    return PolyQ(std::move(d));
}

PolyQ PolyQ::monic() const {
    if (c_.empty()) return PolyQ();
    Rat lc = c_.back();
    std::vector<Rat> d(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) d[i] = Rat(c_[i] / lc);
    return PolyQ(std::move(d));
}

PolyQ PolyQ::operator-() const {
    std::vector<Rat> d(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) d[i] = Rat(-c_[i]);
    return PolyQ(std::move(d));
}

PolyQ operator+(const PolyQ& f, const PolyQ& g) {
    std::vector<Rat> d(std::max(f.c_.size(), g.c_.size()), Rat(0));
    for (size_t i = 0; i < f.c_.size(); ++i) d[i] += f.c_[i];
    for (size_t i = 0; i < g.c_.size(); ++i) d[i] += g.c_[i];
    return PolyQ(std::move(d));
}

PolyQ operator-(const PolyQ& f, const PolyQ& g) { return f + (-g); }

PolyQ operator*(const PolyQ& f, const PolyQ& g) {
    if (f.is_zero() || g.is_zero()) return PolyQ();
    std::vector<Rat> d(f.c_.size() + g.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < f.c_.size(); ++i)
        for (size_t j = 0; j < g.c_.size(); ++j) d[i + j] += f.c_[i] * g.c_[j];
    return PolyQ(std::move(d));
}

PolyQ operator*(const Rat& a, const PolyQ& f) {
    std::vector<Rat> d(f.c_.size());
    for (size_t i = 0; i < f.c_.size(); ++i) d[i] = Rat(a * f.c_[i]);
    return PolyQ(std::move(d));
}

std::pair<PolyQ, PolyQ> PolyQ::divmod(const PolyQ& f, const PolyQ& g) {
    if (g.is_zero()) throw std::domain_error("PolyQ::divmod by zero");
    std::vector<Rat> r = f.c_;
    long dg = g.degree();
    if (f.degree() < dg) return {PolyQ(), f};
    std::vector<Rat> q(f.degree() - dg + 1, Rat(0));
    for (long i = f.degree(); i >= dg; --i) {
        if (r[i] == 0) continue;
        Rat factor = r[i] / g.c_.back();
        q[i - dg] = factor;
        for (long j = 0; j <= dg; ++j) r[i - dg + j] -= factor * g.c_[j];
    }
    return {PolyQ(std::move(q)), PolyQ(std::move(r))};
}

std::string PolyQ::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::string s;
    for (long i = degree(); i >= 0; --i) {
        const Rat& c = c_[i];
        if (c == 0) continue;
        if (!s.empty()) s += (c > 0) ? " + " : " - ";
        else if (c < 0) s += "-";
        Rat a = abs(c);
        bool unit = (a == 1) && i > 0;
        if (!unit) s += rat_to_string(a);
        if (i > 0) {
            if (!unit) s += "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

PolyQ poly_gcd(const PolyQ& f, const PolyQ& g) {
    PolyQ a = f, b = g;
    while (!b.is_zero()) {
        PolyQ r = PolyQ::divmod(a, b).second;
        a = b;
        b = r;
    }
    return a.is_zero() ? a : a.monic();
}

Rat resultant(const PolyQ& f, const PolyQ& g) {
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant: zero polynomial");
    long m = f.degree(), n = g.degree();
    if (m == 0) {
        Rat r(1);
        for (long i = 0; i < n; ++i) r *= f.coeff(0);
        return r;
    }
    if (n == 0) {
        Rat r(1);
        for (long i = 0; i < m; ++i) r *= g.coeff(0);
        return r;
    }
    size_t N = static_cast<size_t>(m + n);
    std::vector<std::vector<Rat>> S(N, std::vector<Rat>(N, Rat(0)));
    // n rows of f, m rows of g, coefficients highest degree first
    for (long r = 0; r < n; ++r)
        for (long j = 0; j <= m; ++j) S[r][r + j] = f.coeff(static_cast<size_t>(m - j));
    for (long r = 0; r < m; ++r)
        for (long j = 0; j <= n; ++j) S[n + r][r + j] = g.coeff(static_cast<size_t>(n - j));
    // determinant by elimination
    Rat det(1);
    for (size_t col = 0, row = 0; col < N && row < N; ++col, ++row) {
        size_t piv = row;
        while (piv < N && S[piv][col] == 0) ++piv;
        if (piv == N) return Rat(0);
        if (piv != row) {
            std::swap(S[piv], S[row]);
            det = -det;
        }
        det *= S[row][col];
        Rat inv = 1 / S[row][col];
        for (size_t j = col; j < N; ++j) S[row][j] *= inv;
        for (size_t i = row + 1; i < N; ++i) {
            if (S[i][col] == 0) continue;
            Rat fac = S[i][col];
            for (size_t j = col; j < N; ++j) S[i][j] -= fac * S[row][j];
        }
    }
    return det;
}

Rat discriminant(const PolyQ& f) {
    long n = f.degree();
    if (n < 1) throw std::invalid_argument("discriminant: degree >= 1 required");
    Rat r = resultant(f, f.derivative());
    Rat d = r / f.leading();
    if (((n * (n - 1)) / 2) % 2 != 0) d = -d;
    return d;
}

PolyQ squarefree_part(const PolyQ& f) {
    if (f.is_zero()) throw std::invalid_argument("squarefree_part: zero polynomial");
    PolyQ g = poly_gcd(f, f.derivative());
    if (g.degree() <= 0) return f.monic();
    return PolyQ::divmod(f, g).first.monic();
}

namespace {

// divisors of |n| from trial division to 10^6, rough cofactor kept whole
std::vector<Int> divisors_bounded(Int n) {
    n = abs(n);
    std::vector<std::pair<Int, unsigned>> fac;
    for (unsigned long p = 2; p <= 1000000UL; p = (p == 2) ? 3 : p + 2) {
        Int pp(p);
        if (pp * pp > n) break;
        if (n % pp != 0) continue;
        unsigned e = 0;
        while (n % pp == 0) {
            n /= pp;
            ++e;
        }
        fac.emplace_back(pp, e);
    }
    if (n > 1) fac.emplace_back(n, 1);
    std::vector<Int> divs{Int(1)};
    for (const auto& [p, e] : fac) {
        size_t base = divs.size();
        Int pk(1);
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    return divs;
}

}  // namespace

std::vector<Rat> rational_roots(const PolyQ& f) {
    if (f.is_zero()) throw std::invalid_argument("rational_roots: zero polynomial");
    std::set<Rat> roots;
    PolyQ g = f;
    // strip zero roots
    while (!g.is_zero() && g.coeff(0) == 0) {
        roots.insert(Rat(0));
        std::vector<Rat> c(g.coeffs().begin() + 1, g.coeffs().end());
        g = PolyQ(std::move(c));
    }
    if (g.degree() <= 0) return {roots.begin(), roots.end()};

    if (g.degree() == 1) {
        roots.insert(Rat(-g.coeff(0) / g.coeff(1)));
    } else if (g.degree() == 2) {
        Rat a = g.coeff(2), b = g.coeff(1), c = g.coeff(0);
        Rat disc = b * b - 4 * a * c;
        if (is_square(disc)) {
            Int sn, sd;
            Rat d = disc;
            mpz_sqrt(sn.get_mpz_t(), d.get_num().get_mpz_t());
            mpz_sqrt(sd.get_mpz_t(), d.get_den().get_mpz_t());
            Rat s = rat(sn, sd);
            roots.insert(Rat((-b + s) / (2 * a)));
            roots.insert(Rat((-b - s) / (2 * a)));
        }
    } else {
        // primitive integer form
        Int l = 1;
        for (const auto& c : g.coeffs())
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
        std::vector<Int> ic;
        for (const auto& c : g.coeffs()) ic.push_back(Int(Rat(c * Rat(l)).get_num()));
        Int content = 0;
        for (const auto& c : ic) {
            Int a = abs(c);
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), a.get_mpz_t());
        }
        for (auto& c : ic) c /= content;
        auto ps = divisors_bounded(ic.front());
        auto qs = divisors_bounded(ic.back());
        for (const auto& p : ps) {
            for (const auto& q : qs) {
                for (int sgn : {1, -1}) {
                    Rat cand = rat(sgn * p, q);
                    if (g.eval(cand) == 0) roots.insert(cand);
                }
            }
        }
    }
    return {roots.begin(), roots.end()};
}

}  // namespace qk3::exactq
