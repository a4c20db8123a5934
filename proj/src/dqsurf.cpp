#include "qk3/dqsurf.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "qk3/ellcurve.hpp"

namespace qk3::dqsurf {

using exactq::Int;
using exactq::rat_to_string;
using genus1::compose;

namespace {

Rat form_eval(const Vec& f, const std::vector<Rat>& x) {
    Rat acc(0);
    for (size_t i = 0; i < f.size(); ++i) acc += f[i] * x[i];
    return acc;
}

std::vector<Rat> point_rats(const ProjPoint& p) {
    std::vector<Rat> v;
    v.reserve(p.dim());
    for (size_t i = 0; i < p.dim(); ++i) v.push_back(Rat(p[i]));
    return v;
}

std::vector<Rat> squares(const ProjPoint& p) {
    std::vector<Rat> v;
    v.reserve(p.dim());
    for (size_t i = 0; i < p.dim(); ++i) v.push_back(Rat(p[i] * p[i]));
    return v;
}

// canonical integer scaling of a linear form: primitive, first nonzero > 0
Vec canon_form(const Vec& f) {
    Int l = 1;
    for (const auto& c : f) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Int> iv;
    for (const auto& c : f) iv.push_back(Int(Rat(c * Rat(l)).get_num()));
    Int g = 0;
    for (const auto& c : iv) {
        Int a = abs(c);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    }
    if (g == 0) throw std::invalid_argument("canon_form: zero form");
    for (auto& c : iv) c /= g;
    for (const auto& c : iv) {
        if (c != 0) {
            if (c < 0)
                for (auto& x : iv) x = -x;
            break;
        }
    }
    Vec out;
    for (const auto& c : iv) out.emplace_back(c);
    return out;
}

size_t pivot(const Vec& f) {
    for (size_t i = 0; i < f.size(); ++i)
        if (f[i] != 0) return i;
    return f.size();
}

// canonical echelon pair of forms cutting the line spanned by two points
Line3 line_from_points(const Vec& p1, const Vec& p2) {
    auto sol = exactq::solve(Mat{p1, p2}, Vec{Rat(0), Rat(0)});
    if (!sol || sol->nullspace.size() != 2)
        throw std::domain_error("line_from_points: points do not span a line");
    Vec f1 = canon_form(sol->nullspace[0]);
    Vec f2 = canon_form(sol->nullspace[1]);
    size_t pv = pivot(f1);
    if (f2[pv] != 0) {
        Rat fac = f2[pv] / f1[pv];
        for (size_t i = 0; i < 4; ++i) f2[i] -= fac * f1[i];
        f2 = canon_form(f2);
    }
    size_t pv2 = pivot(f2);
    if (f1[pv2] != 0) {
        Rat fac = f1[pv2] / f2[pv2];
        for (size_t i = 0; i < 4; ++i) f1[i] -= fac * f2[i];
        f1 = canon_form(f1);
    }
    if (pivot(f1) > pivot(f2)) std::swap(f1, f2);
    return Line3{{f1, f2}};
}

Line3 line_from_forms(const Vec& g1, const Vec& g2) {
    auto sol = exactq::solve(Mat{g1, g2}, Vec{Rat(0), Rat(0)});
    if (!sol || sol->nullspace.size() != 2)
        throw std::domain_error("line_from_forms: forms do not cut a line");
    return line_from_points(sol->nullspace[0], sol->nullspace[1]);
}

bool lines_equal(const Line3& a, const Line3& b) { return a.forms == b.forms; }

std::vector<std::string> form_strings(const Vec& f) {
    std::vector<std::string> out;
    for (const auto& c : f) out.push_back(rat_to_string(c));
    return out;
}

Rat isqrt_exact(const Rat& q) {
    Int n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num().get_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den().get_mpz_t());
    return exactq::rat(n, d);
}

// residual line of the plane (u*L1 - s*L2 = 0) on the quadric diag(co)
Line3 residual_line(const std::array<Rat, 4>& co, const Vec& l1, const Vec& l2, const Rat& sp,
                    const Rat& up) {
    Vec plane(4);
    for (size_t i = 0; i < 4; ++i) plane[i] = up * l1[i] - sp * l2[i];
    bool zero = true;
    for (const auto& c : plane)
        if (c != 0) zero = false;
    if (zero) throw std::invalid_argument("ruling_line: zero parameter");

    auto sol = exactq::solve(Mat{plane}, Vec{Rat(0)});
    const auto& bas = sol->nullspace;  // 3 plane basis vectors
    auto bilin = [&](const Vec& x, const Vec& y) {
        Rat acc(0);
        for (size_t i = 0; i < 4; ++i) acc += co[i] * x[i] * y[i];
        return acc;
    };
    Mat mc(3, Vec(3));
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) mc[i][j] = bilin(bas[i], bas[j]);
    Vec ellb(3);
    for (size_t k = 0; k < 3; ++k) ellb[k] = form_eval(l1, bas[k]);
    bool bzero = true;
    for (const auto& c : ellb)
        if (c != 0) bzero = false;
    if (bzero)
        for (size_t k = 0; k < 3; ++k) ellb[k] = form_eval(l2, bas[k]);

    // conic = ellb * ella: solve the symmetric system for ella
    Mat rows;
    Vec rhs;
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = i; j < 3; ++j) {
            Vec row(3, Rat(0));
            row[j] += ellb[i] / 2;
            row[i] += ellb[j] / 2;
            rows.push_back(row);
            rhs.push_back(mc[i][j]);
        }
    auto split = exactq::solve(rows, rhs);
    if (!split) throw std::domain_error("ruling_line: conic does not split off the base line");
    Vec ella = split->particular;
    bool prop = true;
    for (size_t i = 0; i < 3 && prop; ++i)
        for (size_t j = i + 1; j < 3; ++j)
            if (ella[i] * ellb[j] != ella[j] * ellb[i]) prop = false;
    if (prop) throw std::domain_error("ruling_line: residual degenerates onto the base line");

    // ambient form g with g(bas_k) = ella_k, gauged by g . plane = 0
    Mat rows2;
    for (const auto& e : bas) rows2.push_back(e);
    rows2.push_back(plane);
    Vec rhs2{ella[0], ella[1], ella[2], Rat(0)};
    auto amb = exactq::solve(rows2, rhs2);
    if (!amb) throw std::logic_error("ruling_line: pullback failed");
    return line_from_forms(plane, amb->particular);
}

}  // namespace

DiagSurface::DiagSurface(Rat a_, Rat b_, Rat c_, Rat d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    if (a == 0 || b == 0 || c == 0 || d == 0)
        throw std::invalid_argument("DiagSurface: all four coefficients must be nonzero");
    square_disc = exactq::is_square(Rat(a * b * c * d));
}

bool contains(const DiagSurface& s, const ProjPoint& p) {
    if (p.dim() != 4) throw std::invalid_argument("contains: point not in P^3");
    Rat acc(0);
    const std::array<Rat, 4> co = s.coeffs();
    for (size_t i = 0; i < 4; ++i) {
        Rat q(p[i] * p[i]);
        acc += co[i] * q * q;
    }
    return acc == 0;
}

ProjPoint square_map(const ProjPoint& p) {
    std::vector<Int> v;
    for (size_t i = 0; i < p.dim(); ++i) v.push_back(p[i] * p[i]);
    return ProjPoint(std::move(v));
}

std::string OmegaResult::to_string() const {
    switch (verdict) {
        case OmegaVerdict::CertifiedOff:
            return "CertifiedOff";
        case OmegaVerdict::OnCoordinateHyperplane:
            return "OnCoordinateHyperplane";
        case OmegaVerdict::PossiblyOnLine:
            return "PossiblyOnLine";
    }
    return "?";
}

OmegaResult omega_filter(const DiagSurface& s, const ProjPoint& p) {
    if (!contains(s, p)) throw std::invalid_argument("omega_filter: point not on the surface");
    for (size_t i = 0; i < 4; ++i)
        if (p[i] == 0) return OmegaResult{OmegaVerdict::OnCoordinateHyperplane};

    std::array<Rat, 4> v;  // c_i * u_i^4
    const std::array<Rat, 4> co = s.coeffs();
    for (size_t i = 0; i < 4; ++i) {
        Rat q(p[i] * p[i]);
        v[i] = co[i] * q * q;
    }
    // pairings of {0,1,2,3} into two pairs, keyed by the partner of slot 0
    const std::array<std::array<int, 4>, 3> pairings = {{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
    for (const auto& pr : pairings) {
        auto sign_match = [&](int i, int j) -> int {
            if (v[static_cast<size_t>(i)] == v[static_cast<size_t>(j)]) return 1;
            if (v[static_cast<size_t>(i)] == -v[static_cast<size_t>(j)]) return -1;
            return 0;
        };
        int s1 = sign_match(pr[0], pr[1]);
        int s2 = sign_match(pr[2], pr[3]);
        if (s1 != 0 && s2 != 0)
            return OmegaResult{OmegaVerdict::PossiblyOnLine, {pr[1], pr[3]}, s1, s2};
    }
    return OmegaResult{OmegaVerdict::CertifiedOff};
}

std::optional<ProjPoint> quadric_point_search(const DiagSurface& s, long H) {
    if (H < 1) return std::nullopt;
    std::optional<ProjPoint> found;
    const std::array<Rat, 4> co = s.coeffs();
    exactq::scan_p3_by_height(H, [&](const ProjPoint& p) {
        Rat acc(0);
        for (size_t i = 0; i < 4; ++i) acc += co[i] * Rat(p[i] * p[i]);
        if (acc == 0) {
            found = p;
            return false;
        }
        return true;
    });
    return found;
}

std::string Line3::to_string() const {
    std::string s = "{";
    for (int k = 0; k < 2; ++k) {
        if (k) s += ", ";
        s += "[";
        for (size_t i = 0; i < 4; ++i) {
            if (i) s += ",";
            s += rat_to_string(forms[static_cast<size_t>(k)][i]);
        }
        s += "]";
    }
    return s + "}";
}

std::pair<Ruling, Ruling> rulings_at(const DiagSurface& s, const ProjPoint& pq) {
    if (!s.square_disc)
        throw std::domain_error("rulings_at: abcd is not a square, rulings are not rational");
    const std::array<Rat, 4> co = s.coeffs();
    Vec pv = point_rats(pq);
    Rat qval(0);
    for (size_t i = 0; i < 4; ++i) qval += co[i] * pv[i] * pv[i];
    if (qval != 0) throw std::invalid_argument("rulings_at: point not on the quadric");

    // tangent plane and a basis {pq, w1, w2} of it
    Vec tangent(4);
    for (size_t i = 0; i < 4; ++i) tangent[i] = co[i] * pv[i];
    auto sol = exactq::solve(Mat{tangent}, Vec{Rat(0)});
    std::vector<Vec> ws;
    for (const auto& v : sol->nullspace) {
        Mat test{pv};
        for (const auto& w : ws) test.push_back(w);
        test.push_back(v);
        if (exactq::rank(test) == ws.size() + 2) ws.push_back(v);
        if (ws.size() == 2) break;
    }
    auto bilin = [&](const Vec& x, const Vec& y) {
        Rat acc(0);
        for (size_t i = 0; i < 4; ++i) acc += co[i] * x[i] * y[i];
        return acc;
    };
    Rat q11 = bilin(ws[0], ws[0]), q22 = bilin(ws[1], ws[1]), q12 = bilin(ws[0], ws[1]);
    Rat disc = q12 * q12 - q11 * q22;
    if (!exactq::is_square(disc))
        throw std::domain_error("rulings_at: tangent conic does not split over Q");
    Rat rt = isqrt_exact(disc);
    std::vector<Vec> dirs;
    if (q11 != 0) {
        for (int sg : {1, -1}) {
            Rat t = (-q12 + (sg > 0 ? rt : Rat(-rt))) / q11;
            Vec d(4);
            for (size_t i = 0; i < 4; ++i) d[i] = t * ws[0][i] + ws[1][i];
            dirs.push_back(std::move(d));
        }
    } else {
        dirs.push_back(ws[0]);
        Vec d(4);
        for (size_t i = 0; i < 4; ++i) d[i] = -q22 * ws[0][i] + 2 * q12 * ws[1][i];
        dirs.push_back(std::move(d));
    }
    std::vector<Line3> lines;
    for (const auto& d : dirs) lines.push_back(line_from_points(pv, d));
    std::sort(lines.begin(), lines.end(),
              [](const Line3& x, const Line3& y) { return x.forms < y.forms; });
    const Line3& b1 = lines[0];
    const Line3& b2 = lines[1];

    auto make_ruling = [&](int idx, const Line3& base, const Line3& other_base) {
        Ruling r;
        r.index = idx;
        r.base = base;
        r.L1 = base.forms[0];
        r.L2 = base.forms[1];
        // second admissible pair: the pencil through another line of the
        // same family (a residual of the pencil through other_base),
        // calibrated so that L1*N2 - L2*N1 = kappa * Q on the nose
        Line3 other_fiber{};
        bool got = false;
        const std::array<std::array<long, 2>, 3> params = {{{0, 1}, {1, 0}, {1, 1}}};
        for (const auto& pr : params) {
            Line3 cand;
            try {
                cand = residual_line(co, other_base.forms[0], other_base.forms[1], Rat(pr[0]),
                                     Rat(pr[1]));
            } catch (const std::domain_error&) {
                continue;
            }
            if (!lines_equal(cand, base)) {
                other_fiber = cand;
                got = true;
                break;
            }
        }
        if (!got) throw std::logic_error("rulings_at: no disjoint fiber for the second pair");
        const Vec& F = other_fiber.forms[0];
        const Vec& G = other_fiber.forms[1];
        // unknowns alpha,beta,gamma,delta,kappa:
        //   sym(L1 (gamma F + delta G)) - sym(L2 (alpha F + beta G)) = kappa diag(co)
        Mat rows;
        Vec rhs;
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = i; j < 4; ++j) {
                auto symc = [&](const Vec& u, const Vec& v) {
                    return (u[i] * v[j] + u[j] * v[i]) / 2;
                };
                Vec row(5, Rat(0));
                row[0] = -symc(r.L2, F);
                row[1] = -symc(r.L2, G);
                row[2] = symc(r.L1, F);
                row[3] = symc(r.L1, G);
                row[4] = (i == j) ? Rat(-co[i]) : Rat(0);
                rows.push_back(row);
                rhs.push_back(Rat(0));
            }
        auto cal = exactq::solve(rows, rhs);
        if (!cal || cal->nullspace.empty())
            throw std::logic_error("rulings_at: calibration system has no solution");
        Vec pick;
        for (const auto& v : cal->nullspace)
            if (v[4] != 0) {
                pick = v;
                break;
            }
        if (pick.empty()) throw std::logic_error("rulings_at: calibration vanished");
        Vec n1(4), n2(4);
        for (size_t i = 0; i < 4; ++i) {
            n1[i] = pick[0] * F[i] + pick[1] * G[i];
            n2[i] = pick[2] * F[i] + pick[3] * G[i];
        }
        r.N1 = n1;
        r.N2 = n2;
        return r;
    };

    Ruling r1 = make_ruling(1, b2, b1);
    Ruling r2 = make_ruling(2, b1, b2);
    return {std::move(r1), std::move(r2)};
}

Mat Fiber::quadric_matrix(int which) const {
    const Vec& m = (which == 1) ? M1 : M2;
    Mat q(4, Vec(4, Rat(0)));
    for (size_t i = 0; i < 4; ++i) q[i][i] = m[i];
    return q;
}

bool Fiber::on_fiber(const ProjPoint& p) const {
    auto sq = squares(p);
    return form_eval(M1, sq) == 0 && form_eval(M2, sq) == 0;
}

std::string Fiber::to_json() const {
    nlohmann::ordered_json j;
    j["i"] = index;
    j["param"] = param.to_string();
    j["M1"] = form_strings(M1);
    j["M2"] = form_strings(M2);
    j["smooth"] = smooth;
    return j.dump();
}

Fibrations::Fibrations(const DiagSurface& s, long search_height)
    : s_(s), pq_(std::vector<Int>{1, 1}) {
    auto pt = quadric_point_search(s_, search_height);
    if (!pt)
        throw std::domain_error("Fibrations: no rational quadric point up to the search height");
    pq_ = *pt;
    auto [r1, r2] = rulings_at(s_, pq_);
    rulings_.push_back(std::move(r1));
    rulings_.push_back(std::move(r2));
}

const Ruling& Fibrations::ruling(int i) const {
    if (i != 1 && i != 2) throw std::invalid_argument("ruling index must be 1 or 2");
    return rulings_[static_cast<size_t>(i - 1)];
}

Line3 Fibrations::ruling_line(int i, const ProjPoint& p) const {
    const Ruling& r = ruling(i);
    if (p.dim() != 2) throw std::invalid_argument("ruling_line: parameter not in P^1");
    return residual_line(s_.coeffs(), r.L1, r.L2, Rat(p[0]), Rat(p[1]));
}

Fiber Fibrations::fiber(int i, const ProjPoint& p) const {
    Line3 line = ruling_line(i, p);
    Fiber f{s_, i, p, line.forms[0], line.forms[1], true};
    // smooth iff the four pencil columns (M1_k : M2_k) are nonzero and
    // pairwise distinct in P^1 (the associated binary quartic
    // prod_k (M1_k s + M2_k u) has distinct roots)
    for (size_t k = 0; k < 4 && f.smooth; ++k) {
        if (f.M1[k] == 0 && f.M2[k] == 0) f.smooth = false;
        for (size_t l = k + 1; l < 4 && f.smooth; ++l)
            if (f.M1[k] * f.M2[l] - f.M1[l] * f.M2[k] == 0) f.smooth = false;
    }
    return f;
}

ProjPoint Fibrations::pi(int i, const ProjPoint& p) const {
    if (!contains(s_, p)) throw std::invalid_argument("pi: point not on the surface");
    const Ruling& r = ruling(i);
    auto sq = squares(p);
    Rat v1 = form_eval(r.L1, sq), v2 = form_eval(r.L2, sq);
    if (v1 == 0 && v2 == 0) {
        v1 = form_eval(r.N1, sq);
        v2 = form_eval(r.N2, sq);
    }
    if (v1 == 0 && v2 == 0)
        throw std::domain_error("pi: unresolvable indeterminacy");
    return ProjPoint::from_rats({v1, v2});
}

PolyQ Fibrations::branch_sample(int i, const ProjPoint& t) const {
    Fiber f = fiber(i, t);
    if (!f.smooth) throw std::domain_error("branch_sample: degenerate fiber");
    const Ruling& other = ruling(3 - i);
    auto det3 = [](const std::array<Vec, 3>& m) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    PolyQ total = PolyQ::constant(Rat(1));
    bool any = false;
    for (size_t j = 0; j < 4; ++j) {
        std::array<size_t, 3> idx{};
        size_t k = 0;
        for (size_t c = 0; c < 4; ++c)
            if (c != j) idx[k++] = c;
        auto drop = [&](const Vec& v) {
            Vec r(3);
            for (size_t c = 0; c < 3; ++c) r[c] = v[idx[c]];
            return r;
        };
        Vec r1 = drop(f.M1), r2 = drop(f.M2);
        Rat dA = det3({r1, r2, drop(other.L1)});
        Rat dB = det3({r1, r2, drop(other.L2)});
        if (dA == 0 && dB == 0) {
            // the section sits on the pencil's base line; use the second pair
            dA = det3({r1, r2, drop(other.N1)});
            dB = det3({r1, r2, drop(other.N2)});
        }
        if (dA == 0 && dB == 0) continue;
        if (dB == 0) continue;  // branch value at infinity of the affine chart
        total = total * PolyQ(std::vector<Rat>{Rat(-dA), dB});
        any = true;
    }
    if (!any) throw std::domain_error("branch_sample: no affine branch values (degenerate)");
    return exactq::squarefree_part(total);
}

bool Fibrations::branch_nonconstant(int i, const ProjPoint& t1, const ProjPoint& t2) const {
    return !(branch_sample(i, t1) == branch_sample(i, t2));
}

std::optional<ECPoint> FiberReduction::forward_point(const ProjPoint& p) const {
    auto mid = projection.forward_point(p);
    if (!mid) return std::nullopt;
    return reduction.forward_point(*mid);
}

std::optional<ProjPoint> FiberReduction::backward_point(const ECPoint& p) const {
    auto mid = reduction.backward_point(p);
    if (!mid) return std::nullopt;
    return projection.backward_point(*mid);
}

FiberReduction fiber_to_elliptic(const Fiber& f, const ProjPoint& r) {
    if (!f.on_fiber(r)) throw std::invalid_argument("fiber_to_elliptic: R not on the fiber");
    if (!f.smooth) throw std::domain_error("fiber_to_elliptic: singular fiber");
    auto proj = genus1::project_space_quartic(f.quadric_matrix(1), f.quadric_matrix(2), r);
    auto red = genus1::cubic_to_weierstrass(proj.cubic);
    genus1::RatMap fwd = compose(red.maps.forward, proj.maps.forward);
    genus1::RatMap bwd = compose(proj.maps.backward, red.maps.backward);
    return FiberReduction{red.curve, genus1::MapPair{fwd, bwd}, red.marked_image, proj, red};
}

MultiplesResult fiber_multiples(const Fiber& f, const ProjPoint& r, long kmax) {
    FiberReduction red = fiber_to_elliptic(f, r);
    MultiplesResult res;
    auto tor = ellcurve::torsion_order(red.curve, red.seed_image);
    if (tor) {
        res.seed_torsion = true;
        res.torsion_order = *tor;
    }
    std::set<ProjPoint> seen;
    ECPoint acc = ECPoint::O();
    for (long k = 1; k <= kmax; ++k) {
        acc = ellcurve::add(red.curve, acc, red.seed_image);
        auto back = red.backward_point(acc);
        if (!back) {
            res.skipped.push_back(k);
            continue;
        }
        if (!f.on_fiber(*back))
            throw std::logic_error("fiber_multiples: backward image off the fiber");
        if (seen.insert(*back).second) res.points.push_back(*back);
    }
    return res;
}

std::string ruling_to_json(const Ruling& r) {
    nlohmann::ordered_json j;
    j["index"] = r.index;
    j["base"] = {form_strings(r.base.forms[0]), form_strings(r.base.forms[1])};
    j["L1"] = form_strings(r.L1);
    j["L2"] = form_strings(r.L2);
    j["N1"] = form_strings(r.N1);
    j["N2"] = form_strings(r.N2);
    return j.dump();
}

}  // namespace qk3::dqsurf
