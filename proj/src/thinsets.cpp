#include "qk3/thinsets.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <thread>

namespace qk3::thinsets {

using exactq::Int;
using exactq::rat;
using exactq::rat_to_string;

RationalCover::RationalCover(PolyQ n, PolyQ d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw std::invalid_argument("RationalCover: zero denominator");
    if (num.is_zero()) throw std::invalid_argument("RationalCover: zero map");
    if (exactq::poly_gcd(num, den).degree() > 0)
        throw std::invalid_argument("RationalCover: num/den not in lowest terms");
    if (std::max(num.degree(), den.degree()) < 2)
        throw std::invalid_argument("RationalCover: degree must be > 1");
}

namespace {

// sum-of-monomials parser: [+-] coeff ['*'] ['u' ['^' exp]]
std::optional<PolyQ> parse_poly(const std::string& s) {
    std::vector<Rat> coeffs;
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    skip_ws();
    if (i == s.size()) return std::nullopt;
    bool first = true;
    while (i < s.size()) {
        skip_ws();
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = (s[i] == '-') ? -1 : 1;
            ++i;
        } else if (!first) {
            return std::nullopt;
        }
        skip_ws();
        // coefficient (optional when the monomial has a variable)
        std::string digits;
        while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/'))
            digits += s[i++];
        Rat coeff(1);
        if (!digits.empty()) {
            auto r = exactq::rat_from_string(digits);
            if (!r) return std::nullopt;
            coeff = *r;
        }
        skip_ws();
        if (i < s.size() && s[i] == '*') {
            ++i;
            skip_ws();
        }
        long expo = 0;
        if (i < s.size() && (s[i] == 'u' || s[i] == 'U')) {
            ++i;
            expo = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::string e;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) e += s[i++];
                if (e.empty()) return std::nullopt;
                expo = std::stol(e);
            }
        } else if (digits.empty()) {
            return std::nullopt;  // neither coefficient nor variable
        }
        if (static_cast<size_t>(expo) >= coeffs.size()) coeffs.resize(expo + 1, Rat(0));
        coeffs[static_cast<size_t>(expo)] += sign > 0 ? coeff : Rat(-coeff);
        first = false;
        skip_ws();
    }
    return PolyQ(coeffs);
}

}  // namespace

std::optional<RationalCover> RationalCover::parse(const std::string& s) {
    std::string body = s;
    std::string nume = body, deno;
    // split "(...)/(...)" or "num/den" at a top-level slash between ')' '('
    auto slash = body.find(")/(");
    if (body.size() > 1 && body.front() == '(' && slash != std::string::npos &&
        body.back() == ')') {
        nume = body.substr(1, slash - 1);
        deno = body.substr(slash + 3, body.size() - slash - 4);
    }
    auto np = parse_poly(nume);
    if (!np) return std::nullopt;
    PolyQ dp = PolyQ::constant(Rat(1));
    if (!deno.empty()) {
        auto d = parse_poly(deno);
        if (!d) return std::nullopt;
        dp = *d;
    }
    try {
        return RationalCover(*np, dp);
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

std::string RationalCover::to_string() const {
    if (den.degree() == 0 && den.coeff(0) == 1) return num.to_string("u");
    return "(" + num.to_string("u") + ")/(" + den.to_string("u") + ")";
}

std::vector<ProjPoint> preimages(const RationalCover& phi, const ProjPoint& t) {
    if (t.dim() != 2) throw std::invalid_argument("preimages: target not in P^1");
    Rat p(t[0]), q(t[1]);
    PolyQ z = q * phi.num - p * phi.den;
    std::vector<ProjPoint> out;
    if (!z.is_zero())
        for (const Rat& r : exactq::rational_roots(z)) out.push_back(ProjPoint::from_rats({r, Rat(1)}));
    // phi(infinity) by degree comparison
    long dn = phi.num.degree(), dd = phi.den.degree();
    ProjPoint inf(std::vector<Int>{1, 0});
    ProjPoint image_of_inf = inf;
    if (dn > dd)
        image_of_inf = inf;
    else if (dn < dd)
        image_of_inf = ProjPoint(std::vector<Int>{0, 1});
    else
        image_of_inf = ProjPoint::from_rats({phi.num.leading(), phi.den.leading()});
    if (image_of_inf == t) out.push_back(inf);
    return out;
}

ThinReport thin_report(const std::vector<RationalCover>& covers, long H, unsigned threads) {
    if (H < 1) throw std::invalid_argument("thin_report: H >= 1 required");
    auto pts = exactq::enumerate_p1_by_height(H);
    ThinReport rep;
    rep.height_bound = H;
    rep.total = static_cast<long>(pts.size());
    rep.per_cover.assign(covers.size(), 0);

    struct Slot {
        bool covered = false;
        size_t cover_index = 0;
        std::optional<ProjPoint> witness;
        std::vector<char> hit;  // per cover
    };
    std::vector<Slot> slots(pts.size());

    auto work = [&](size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i) {
            Slot& sl = slots[i];
            sl.hit.assign(covers.size(), 0);
            for (size_t c = 0; c < covers.size(); ++c) {
                auto pre = preimages(covers[c], pts[i]);
                if (pre.empty()) continue;
                sl.hit[c] = 1;
                if (!sl.covered) {
                    sl.covered = true;
                    sl.cover_index = c;
                    sl.witness = pre.front();
                }
            }
        }
    };
    unsigned nt = std::max(1u, threads);
    if (nt == 1 || pts.size() < 256) {
        work(0, pts.size());
    } else {
        std::vector<std::thread> pool;
        size_t chunk = (pts.size() + nt - 1) / nt;
        for (unsigned w = 0; w < nt; ++w) {
            size_t lo = w * chunk, hi = std::min(pts.size(), lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    for (size_t i = 0; i < pts.size(); ++i) {
        const Slot& sl = slots[i];
        for (size_t c = 0; c < covers.size(); ++c)
            if (sl.hit[c]) ++rep.per_cover[c];
        if (sl.covered) {
            ++rep.covered;
            rep.witnesses.push_back(CoveredPoint{pts[i], sl.cover_index, *sl.witness});
        }
    }
    rep.fraction = rep.total ? rat(rep.covered, rep.total) : Rat(0);
    return rep;
}

std::string report_csv_row(const ThinReport& r) {
    return std::to_string(r.height_bound) + "," + std::to_string(r.total) + "," +
           std::to_string(r.covered) + "," + rat_to_string(r.fraction);
}

}  // namespace qk3::thinsets
