#include "qk3/projective.hpp"

#include <numeric>
#include <stdexcept>

namespace qk3::exactq {

namespace {

Int gcd_all(const std::vector<Int>& v) {
    Int g = 0;
    for (const auto& c : v) {
        Int a = abs(c);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    }
    return g;
}

Int lcm_dens(const std::vector<Rat>& v) {
    Int l = 1;
    for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
    return l;
}

}  // namespace

ProjPoint::ProjPoint(std::vector<Int> coords) : c_(std::move(coords)) {
    if (c_.size() < 2) throw std::invalid_argument("ProjPoint: need at least 2 coordinates");
    Int g = gcd_all(c_);
    if (g == 0) throw std::invalid_argument("ProjPoint: all coordinates zero");
    for (auto& x : c_) x /= g;
    for (const auto& x : c_) {
        if (x != 0) {
            if (x < 0)
                for (auto& y : c_) y = -y;
            break;
        }
    }
}

ProjPoint ProjPoint::from_rats(const std::vector<Rat>& coords) {
    Int l = lcm_dens(coords);
    std::vector<Int> v;
    v.reserve(coords.size());
    for (const auto& q : coords) {
        Rat s = q * Rat(l);
        v.push_back(s.get_num());
    }
    return ProjPoint(std::move(v));
}

std::optional<ProjPoint> ProjPoint::parse(const std::string& s) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') return std::nullopt;
    std::vector<Int> v;
    std::string cur;
    for (size_t i = 1; i + 1 < s.size(); ++i) {
        if (s[i] == ':') {
            if (cur.empty()) return std::nullopt;
            try {
                v.emplace_back(cur, 10);
            } catch (const std::invalid_argument&) {
                return std::nullopt;
            }
            cur.clear();
        } else if (!isspace(static_cast<unsigned char>(s[i]))) {
            cur += s[i];
        }
    }
    if (cur.empty()) return std::nullopt;
    try {
        v.emplace_back(cur, 10);
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
    if (v.size() < 2) return std::nullopt;
    bool all_zero = true;
    for (const auto& x : v)
        if (x != 0) all_zero = false;
    if (all_zero) return std::nullopt;
    return ProjPoint(std::move(v));
}

Int ProjPoint::height() const {
    Int h = 0;
    for (const auto& x : c_) {
        Int a = abs(x);
        if (a > h) h = a;
    }
    return h;
}

std::string ProjPoint::to_string() const {
    std::string s = "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ":";
        s += c_[i].get_str();
    }
    return s + "]";
}

// ---------------------------------------------------------------------------

WPoint::WPoint(std::array<Int, 5> coords) : c_(std::move(coords)) {
    bool all_zero = true;
    for (const auto& x : c_)
        if (x != 0) all_zero = false;
    if (all_zero) throw std::invalid_argument("WPoint: all coordinates zero");

    // weighted primitivity: find the largest mu with mu | gcd(weight-1)
    // and mu^2 | gcd(weight-2), divide it out
    auto g1 = [&] {
        Int g = 0;
        for (size_t i : {0UL, 3UL}) {
            Int a = abs(c_[i]);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
        }
        return g;
    };
    auto g2 = [&] {
        Int g = 0;
        for (size_t i : {1UL, 2UL, 4UL}) {
            Int a = abs(c_[i]);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
        }
        return g;
    };
    auto divide_out = [&](const Int& mu) {
        c_[0] /= mu;
        c_[3] /= mu;
        Int mu2 = mu * mu;
        c_[1] /= mu2;
        c_[2] /= mu2;
        c_[4] /= mu2;
    };

    Int a = g1(), b = g2();
    if (a == 0) {
        // x = w = 0: only mu^2 acts; remove the square part of gcd(y,z,t)
        if (b > 1) {
            Int mu = square_part_bounded(b);
            if (mu > 1) divide_out(mu);
        }
        return;  // signs are invariants here
    }
    // gcd ladder: s = gcd(t, b/t) with t = gcd(a,b) always satisfies
    // s | a and s^2 | b; iterate, then clean up the stuck residue
    while (true) {
        Int t;
        mpz_gcd(t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        if (t <= 1) break;
        Int bt = b / t;
        Int s;
        mpz_gcd(s.get_mpz_t(), t.get_mpz_t(), bt.get_mpz_t());
        if (s <= 1) {
            // stuck residue: every prime p of t has v_p(a) >= v_p(b) = v_p(t),
            // so the square part of t is exactly what may still come out
            Int mu = square_part_bounded(t);
            if (mu > 1) {
                divide_out(mu);
                a /= mu;
                b /= mu * mu;
                continue;
            }
            break;
        }
        divide_out(s);
        a /= s;
        b /= s * s;
    }

    // sign: first nonzero odd-weight coordinate positive (mu = -1 flips
    // exactly the weight-1 slots)
    if (c_[0] < 0 || (c_[0] == 0 && c_[3] < 0)) {
        c_[0] = -c_[0];
        c_[3] = -c_[3];
    }
}

WPoint WPoint::from_rats(const std::array<Rat, 5>& coords) {
    // scale by mu = lcm of all denominators: mu clears weight-1 slots and
    // mu^2 clears weight-2 slots
    Int l = 1;
    for (const auto& q : coords) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
    std::array<Int, 5> v;
    for (size_t i = 0; i < 5; ++i) {
        Rat s = coords[i];
        for (int k = 0; k < weights[i]; ++k) s *= Rat(l);
        if (s.get_den() != 1) throw std::logic_error("WPoint::from_rats: clearing failed");
        v[i] = s.get_num();
    }
    return WPoint(std::move(v));
}

std::string WPoint::to_string() const {
    std::string s = "[";
    for (size_t i = 0; i < 5; ++i) {
        if (i) s += ":";
        s += c_[i].get_str();
    }
    return s + "]";
}

// ---------------------------------------------------------------------------

namespace {

// 0, 1, -1, 2, -2, ...
long sigma_at(long idx) {
    if (idx == 0) return 0;
    long k = (idx + 1) / 2;
    return (idx % 2) ? k : -k;
}

bool canonical_tuple(const std::vector<long>& t) {
    long g = 0;
    for (long c : t) g = std::gcd(g, c < 0 ? -c : c);
    if (g != 1) return false;
    for (long c : t) {
        if (c != 0) return c > 0;
    }
    return false;
}

}  // namespace

std::vector<ProjPoint> enumerate_p1_by_height(long H) {
    if (H < 1) throw std::invalid_argument("enumerate_p1_by_height: H >= 1 required");
    std::vector<ProjPoint> out;
    for (long j = 0; j <= 2 * H; ++j) {
        long q = sigma_at(j);
        for (long i = 0; i <= 2 * H; ++i) {
            long p = sigma_at(i);
            std::vector<long> t{p, q};
            if (!canonical_tuple(t)) continue;
            out.emplace_back(std::vector<Int>{Int(p), Int(q)});
        }
    }
    return out;
}

void scan_p3_by_height(long H, const std::function<bool(const ProjPoint&)>& visit) {
    for (long l = 0; l <= 2 * H; ++l) {
        long w = sigma_at(l);
        for (long k = 0; k <= 2 * H; ++k) {
            long z = sigma_at(k);
            for (long j = 0; j <= 2 * H; ++j) {
                long y = sigma_at(j);
                for (long i = 0; i <= 2 * H; ++i) {
                    long x = sigma_at(i);
                    std::vector<long> t{x, y, z, w};
                    if (!canonical_tuple(t)) continue;
                    ProjPoint p(std::vector<Int>{Int(x), Int(y), Int(z), Int(w)});
                    if (!visit(p)) return;
                }
            }
        }
    }
}

}  // namespace qk3::exactq
