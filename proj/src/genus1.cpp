#include "qk3/genus1.hpp"

#include <algorithm>
#include <stdexcept>

namespace qk3::genus1 {

using exactq::rat;
using exactq::Vec;

namespace {

RatFunc rf_const(size_t arity, const Rat& c) { return RatFunc::poly(MPoly::constant(arity, c)); }
RatFunc rf_var(size_t arity, size_t i) { return RatFunc::poly(MPoly::var(arity, i)); }

// univariate polynomial evaluated at a rational function (Horner)
RatFunc poly_at(const PolyQ& p, const RatFunc& s) {
    size_t arity = s.num.arity();
    RatFunc acc = rf_const(arity, Rat(0));
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + rf_const(arity, *it);
    return acc;
}

}  // namespace

QuarticModel::QuarticModel(Rat a4, Rat a3, Rat a2, Rat a1, Rat a0)
    : c_{std::move(a0), std::move(a1), std::move(a2), std::move(a3), std::move(a4)} {
    if (c_[4] == 0 && c_[3] == 0)
        throw std::invalid_argument("QuarticModel: degree < 3 is not a genus-1 model");
    PolyQ q = rhs();
    if (exactq::discriminant(q) == 0)
        throw std::invalid_argument("QuarticModel: degenerate quartic (disc = 0)");
}

PolyQ QuarticModel::rhs() const {
    return PolyQ(std::vector<Rat>(c_.begin(), c_.end()));
}

bool QuarticModel::on_model(const Rat& u, const Rat& v) const { return v * v == rhs().eval(u); }

std::pair<Rat, Rat> paper_map_C(const Rat& t, const Rat& d) {
    Rat x = 2 * (t * t - d);
    Rat y = 2 * t * x;
    return {x, y};
}

std::pair<Rat, Rat> binary_quartic_invariants(const QuarticModel& m) {
    Rat a4 = m.coeff(4), a3 = m.coeff(3), a2 = m.coeff(2), a1 = m.coeff(1), a0 = m.coeff(0);
    Rat I = 12 * a4 * a0 - 3 * a3 * a1 + a2 * a2;
    Rat J = 72 * a4 * a2 * a0 + 9 * a3 * a2 * a1 - 27 * a4 * a1 * a1 - 27 * a0 * a3 * a3 -
            2 * a2 * a2 * a2;
    return {I, J};
}

std::optional<ECPoint> QuarticReduction::forward_point(const Rat& u, const Rat& v) const {
    if (u == u0) {
        if (v == v0) return ECPoint::O();
        if (opposite_sheet_image && v == -v0) return *opposite_sheet_image;
        return std::nullopt;
    }
    auto val = maps.forward.eval({u, v});
    if (!val) return std::nullopt;
    return ECPoint((*val)[0], (*val)[1]);
}

std::optional<std::pair<Rat, Rat>> QuarticReduction::backward_point(const ECPoint& p) const {
    if (p.infinity) return std::make_pair(u0, v0);
    if (opposite_sheet_image && p == *opposite_sheet_image) return std::make_pair(u0, Rat(-v0));
    auto val = maps.backward.eval({p.x, p.y});
    if (!val) return std::nullopt;
    return std::make_pair((*val)[0], (*val)[1]);
}

QuarticReduction quartic_to_weierstrass(const QuarticModel& m, const Rat& u0, const Rat& v0) {
    if (!m.on_model(u0, v0))
        throw std::invalid_argument("quartic_to_weierstrass: anchor not on the model");
    PolyQ q = m.rhs();
    // Taylor coefficients of q at u0
    Rat a4 = m.coeff(4), a3 = m.coeff(3), a2 = m.coeff(2), a1 = m.coeff(1);
    Rat c1 = 4 * a4 * u0 * u0 * u0 + 3 * a3 * u0 * u0 + 2 * a2 * u0 + a1;
    Rat c2 = 6 * a4 * u0 * u0 + 3 * a3 * u0 + a2;
    Rat c3 = 4 * a4 * u0 + a3;
    Rat c4 = a4;

    const RatFunc u = rf_var(2, 0), v = rf_var(2, 1);  // source vars
    const RatFunc x = rf_var(2, 0), y = rf_var(2, 1);  // target vars

    if (v0 != 0) {
        const Rat& e = v0;
        Rat gam = (4 * e * e * c2 - c1 * c1) / (8 * e * e * e);
        Rat delta = c3 - c1 * gam / e;
        Rat eps = c4 - gam * gam;
        Rat A2 = (3 * c1 * c1 - 8 * c2 * e * e) / (4 * e * e);
        Rat A4 = c1 * delta - 4 * e * e * eps;
        Rat A6 = e * e * delta * delta;
        Rat A = A4 - A2 * A2 / 3;
        Rat B = A6 - A2 * A4 / 3 + 2 * A2 * A2 * A2 / 27;
        Rat sh = A2 / 3;
        WeierstrassCurve curve(A, B);

        RatFunc up = u - rf_const(2, u0);
        RatFunc s = rf_const(2, e) + rf_const(2, c1 / (2 * e)) * up + rf_const(2, gam) * up * up;
        RatFunc X = (v + s) / (up * up);
        RatFunc xf = rf_const(2, 2 * e) * X + rf_const(2, sh);
        RatFunc W = up * (X * X - rf_const(2, 2 * gam) * X - rf_const(2, eps));
        RatFunc yf = rf_const(2, e) *
                     (rf_const(2, Rat(2)) * W - rf_const(2, c1 / e) * X - rf_const(2, delta));

        RatFunc xlb = x - rf_const(2, sh);
        RatFunc den = xlb * xlb - rf_const(2, 4 * e * gam) * xlb - rf_const(2, 4 * e * e * eps);
        RatFunc ubs =
            (rf_const(2, 2 * e) * y + rf_const(2, c1) * xlb + rf_const(2, 2 * e * e * delta)) /
            den;
        RatFunc ub = ubs + rf_const(2, u0);
        RatFunc vb = (xlb / rf_const(2, 2 * e) - rf_const(2, gam)) * ubs * ubs -
                     rf_const(2, c1 / (2 * e)) * ubs - rf_const(2, e);

        QuarticReduction red{curve,
                             MapPair{RatMap{{"u", "v"}, {xf, yf}}, RatMap{{"x", "y"}, {ub, vb}}},
                             u0,
                             v0,
                             std::nullopt};
        red.opposite_sheet_image = ECPoint(sh, Rat(-e * delta));
        return red;
    }

    // v0 = 0: u0 is a simple root of q; u = u0 + 1/U turns the model into a cubic
    if (c1 == 0) throw std::invalid_argument("quartic_to_weierstrass: double root anchor");
    Rat A2 = c2;
    Rat A = c1 * c3 - A2 * A2 / 3;
    Rat B = c1 * c1 * c4 - A2 * c1 * c3 / 3 + 2 * A2 * A2 * A2 / 27;
    Rat sh = A2 / 3;
    WeierstrassCurve curve(A, B);

    RatFunc up = u - rf_const(2, u0);
    RatFunc xf = rf_const(2, c1) / up + rf_const(2, sh);
    RatFunc yf = rf_const(2, c1) * v / (up * up);

    RatFunc xlb = x - rf_const(2, sh);
    RatFunc ub = rf_const(2, u0) + rf_const(2, c1) / xlb;
    RatFunc vb = rf_const(2, c1) * y / (xlb * xlb);

    return QuarticReduction{
        curve, MapPair{RatMap{{"u", "v"}, {xf, yf}}, RatMap{{"x", "y"}, {ub, vb}}}, u0, v0,
        std::nullopt};
}

// ---------------------------------------------------------------------------

namespace {

const std::array<std::array<unsigned, 3>, 10> kCubicMonomials = {{{3, 0, 0},
                                                                  {2, 1, 0},
                                                                  {2, 0, 1},
                                                                  {1, 2, 0},
                                                                  {1, 1, 1},
                                                                  {1, 0, 2},
                                                                  {0, 3, 0},
                                                                  {0, 2, 1},
                                                                  {0, 1, 2},
                                                                  {0, 0, 3}}};

// projective rational zeros of a binary cubic form B(s,t) given ascending
// coefficients of B(s,1); identically-zero forms are the caller's problem
std::vector<ProjPoint> binary_form_zeros(const PolyQ& affine, bool leading_vanishes) {
    // B(s,t) = sum co[j] s^{3-j} t^j with `affine` = B(1,t): roots r give
    // [s:t] = [1:r]; vanishing top coefficient gives the zero at [0:1]
    std::vector<ProjPoint> out;
    if (!affine.is_zero())
        for (const Rat& r : exactq::rational_roots(affine))
            out.push_back(ProjPoint::from_rats({Rat(1), r}));
    if (leading_vanishes) out.emplace_back(std::vector<exactq::Int>{0, 1});
    return out;
}

// G restricted to the coordinate line x_i = 0, as a binary cubic in the two
// remaining variables (ascending in the second of them)
std::pair<PolyQ, bool> restrict_to_coordinate_line(const MPoly& g, size_t i) {
    size_t a = (i == 0) ? 1 : 0;
    size_t b = (i == 2) ? 1 : 2;
    // B(s,t) with s = x_a, t = x_b ; affine poly in t at s = 1, plus flag
    // for the zero at [s:t] = [0:1] ... careful: affine var is t/s
    std::vector<Rat> co(4, Rat(0));
    for (const auto& [e, c] : g.terms()) {
        if (e[i] != 0) continue;
        co[e[b]] += c;  // e[a] + e[b] == 3
    }
    PolyQ affine(co);
    bool lead_vanish = (co[3] == 0);  // coefficient of x_b^3, i.e. the point x_a = 0
    return {affine, lead_vanish};
}

ProjPoint line_point(size_t i, const ProjPoint& pt2) {
    // lift a point of the coordinate line {x_i = 0} back to P^2
    std::vector<exactq::Int> v(3, 0);
    size_t a = (i == 0) ? 1 : 0;
    size_t b = (i == 2) ? 1 : 2;
    v[a] = pt2[0];
    v[b] = pt2[1];
    return ProjPoint(std::move(v));
}

bool line_divides(const MPoly& g, const ProjPoint& p, const ProjPoint& q) {
    // does G vanish identically on the line through p and q?
    std::vector<MPoly> args;
    for (size_t i = 0; i < 3; ++i) {
        MPoly m(2);
        m.add_term({1, 0}, Rat(p[i]));
        m.add_term({0, 1}, Rat(q[i]));
        args.push_back(std::move(m));
    }
    std::vector<MPoly> ones(3, MPoly::constant(2, Rat(1)));
    return g.subst_numerator(args, ones).is_zero();
}

}  // namespace

PlaneCubic::PlaneCubic(MPoly form, ProjPoint marked)
    : form_(std::move(form)), marked_(std::move(marked)) {
    if (form_.arity() != 3) throw std::invalid_argument("PlaneCubic: arity 3 required");
    if (form_.is_zero()) throw std::invalid_argument("PlaneCubic: zero form");
    for (const auto& [e, c] : form_.terms())
        if (e[0] + e[1] + e[2] != 3)
            throw std::invalid_argument("PlaneCubic: form not homogeneous of degree 3");
    if (marked_.dim() != 3) throw std::invalid_argument("PlaneCubic: marked point not in P^2");
    if (eval(marked_) != 0) throw std::invalid_argument("PlaneCubic: marked point not on curve");

    // nonsingular at the marked point
    std::vector<Rat> mk{Rat(marked_[0]), Rat(marked_[1]), Rat(marked_[2])};
    bool grad_zero = true;
    for (size_t i = 0; i < 3; ++i) {
        Rat d(0);
        for (const auto& [e, c] : form_.terms()) {
            if (e[i] == 0) continue;
            Rat t = c * Rat(static_cast<long>(e[i]));
            for (size_t j = 0; j < 3; ++j) {
                unsigned pw = e[j] - (j == i ? 1 : 0);
                for (unsigned k = 0; k < pw; ++k) t *= mk[j];
            }
            d += t;
        }
        if (d != 0) grad_zero = false;
    }
    if (grad_zero) throw std::invalid_argument("PlaneCubic: marked point is singular");

    // no rational linear factor: a factor line would meet each coordinate
    // line in a rational zero of the restricted binary cubic
    std::vector<std::vector<ProjPoint>> zs;
    for (size_t i = 0; i < 3; ++i) {
        auto [affine, lead] = restrict_to_coordinate_line(form_, i);
        if (affine.is_zero() && lead)
            throw std::invalid_argument("PlaneCubic: coordinate factor, cubic reducible");
        std::vector<ProjPoint> lifted;
        for (const auto& p2 : binary_form_zeros(affine, lead)) lifted.push_back(line_point(i, p2));
        zs.push_back(std::move(lifted));
    }
    if (!zs[0].empty() && !zs[1].empty() && !zs[2].empty()) {
        for (const auto& p : zs[0]) {
            for (const auto& q : zs[1]) {
                if (p == q) {
                    for (const auto& r : zs[2])
                        if (line_divides(form_, p, r))
                            throw std::invalid_argument("PlaneCubic: rational line factor");
                } else if (line_divides(form_, p, q)) {
                    throw std::invalid_argument("PlaneCubic: rational line factor");
                }
            }
        }
    }
}

std::array<Rat, 10> PlaneCubic::coefficients() const {
    std::array<Rat, 10> out;
    for (size_t k = 0; k < 10; ++k) {
        MPoly::Expo e(kCubicMonomials[k].begin(), kCubicMonomials[k].end());
        auto it = form_.terms().find(e);
        out[k] = (it == form_.terms().end()) ? Rat(0) : it->second;
    }
    return out;
}

Rat PlaneCubic::eval(const ProjPoint& p) const {
    return form_.eval({Rat(p[0]), Rat(p[1]), Rat(p[2])});
}

std::optional<ECPoint> CubicReduction::forward_point(const ProjPoint& p) const {
    if (p == marked) return marked_image;
    auto val = maps.forward.eval({Rat(p[0]), Rat(p[1]), Rat(p[2])});
    if (!val) return std::nullopt;
    return ECPoint((*val)[0], (*val)[1]);
}

std::optional<ProjPoint> CubicReduction::backward_point(const ECPoint& p) const {
    if (p == marked_image) return marked;
    std::vector<Rat> in;
    if (p.infinity) {
        // infinity is the anchored quartic point; its plane image needs the
        // explicit special values, which the maps cannot carry
        return std::nullopt;
    }
    in = {p.x, p.y};
    auto val = maps.backward.eval(in);
    if (!val) return std::nullopt;
    bool all_zero = true;
    for (const auto& c : *val)
        if (c != 0) all_zero = false;
    if (all_zero) return std::nullopt;
    return ProjPoint::from_rats(*val);
}

CubicReduction cubic_to_weierstrass(const PlaneCubic& c) {
    const MPoly& G = c.form();
    auto co = c.coefficients();
    ProjPoint inf_pt(std::vector<exactq::Int>{0, 1, 0});

    // fast path: already a (scaled) monic Weierstrass cubic marked at [0:1:0]
    // x^3, xz^2, z^3, y^2 z allowed; coefficient of y^2 z = -coefficient of x^3
    {
        bool shape = c.marked() == inf_pt;
        for (size_t k = 0; k < 10 && shape; ++k) {
            bool allowed = (k == 0 || k == 5 || k == 9 || k == 7);
            if (!allowed && co[k] != 0) shape = false;
        }
        if (shape && co[0] != 0 && co[7] == -co[0]) {
            Rat A = co[5] / co[0], B = co[9] / co[0];
            WeierstrassCurve curve(A, B);
            RatFunc X = rf_var(3, 0), Y = rf_var(3, 1), Z = rf_var(3, 2);
            RatFunc xf = X / Z, yf = Y / Z;
            RatFunc xx = rf_var(2, 0), yy = rf_var(2, 1);
            RatMap fwd{{"X", "Y", "Z"}, {xf, yf}};
            RatMap bwd{{"x", "y"}, {xx, yy, rf_const(2, Rat(1))}};
            return CubicReduction{curve, MapPair{fwd, bwd}, ECPoint::O(), c.marked()};
        }
    }

    // chart with the marked point finite
    size_t ch = 3;
    for (size_t cand : {2UL, 1UL, 0UL})
        if (c.marked()[cand] != 0) {
            ch = cand;
            break;
        }
    std::array<size_t, 2> o{};
    {
        size_t k = 0;
        for (size_t i = 0; i < 3; ++i)
            if (i != ch) o[k++] = i;
    }
    Rat m0 = rat(c.marked()[o[0]], c.marked()[ch]);
    Rat m1 = rat(c.marked()[o[1]], c.marked()[ch]);

    // translated affine cubic g(p,q) = G(chart with marked point at origin)
    std::vector<MPoly> args(3, MPoly(2));
    {
        MPoly a0(2), a1(2), a2(2);
        a0.add_term({1, 0}, Rat(1));
        a0.add_term({0, 0}, m0);
        a1.add_term({0, 1}, Rat(1));
        a1.add_term({0, 0}, m1);
        a2.add_term({0, 0}, Rat(1));
        args[o[0]] = a0;
        args[o[1]] = a1;
        args[ch] = a2;
    }
    std::vector<MPoly> ones(3, MPoly::constant(2, Rat(1)));
    MPoly g = G.subst_numerator(args, ones);

    Rat alpha(0), beta(0);
    for (const auto& [e, cc] : g.terms()) {
        if (e[0] == 1 && e[1] == 0) alpha = cc;
        if (e[0] == 0 && e[1] == 1) beta = cc;
    }
    bool swapped = false;
    if (beta == 0) {
        swapped = true;
        MPoly gs(2);
        for (const auto& [e, cc] : g.terms()) gs.add_term({e[1], e[0]}, cc);
        g = gs;
        std::swap(alpha, beta);
    }
    if (beta == 0) throw std::domain_error("cubic_to_weierstrass: singular marked point");

    // homogeneous slices as polynomials in the slope s (f_k(1,s))
    std::array<std::vector<Rat>, 4> slice;
    for (unsigned k = 1; k <= 3; ++k) slice[k].assign(k + 1, Rat(0));
    for (const auto& [e, cc] : g.terms()) {
        unsigned d = e[0] + e[1];
        if (d >= 1 && d <= 3) slice[d][e[1]] += cc;
    }
    PolyQ c1s(slice[1]), c2s(slice[2]), c3s(slice[3]);

    // v^2 = Delta(s) with Delta = c2s^2 - 4 c1s c3s
    PolyQ Delta = c2s * c2s - Rat(4) * (c1s * c3s);
    if (Delta.degree() < 3)
        throw std::domain_error("cubic_to_weierstrass: projection quartic degenerates");
    QuarticModel qm(Delta.coeff(4), Delta.coeff(3), Delta.coeff(2), Delta.coeff(1),
                    Delta.coeff(0));
    Rat s0 = -alpha / beta;
    Rat v0 = c2s.eval(s0);

    // anchor the third intersection of the tangent, so the marked point
    // itself lands on a finite Weierstrass point (unless it is a flex)
    QuarticReduction qr = quartic_to_weierstrass(qm, s0, Rat(-v0));
    auto mi = qr.forward_point(s0, v0);
    if (!mi) throw std::logic_error("cubic_to_weierstrass: marked image missing");

    // plane -> (s,v): s = q/p, v = 2 f3(1,s) p + f2(1,s), in chart coords
    RatFunc X = rf_var(3, 0), Y = rf_var(3, 1), Z = rf_var(3, 2);
    std::vector<RatFunc> proj_vars{X, Y, Z};
    RatFunc paff = proj_vars[o[0]] / proj_vars[ch] - rf_const(3, m0);
    RatFunc qaff = proj_vars[o[1]] / proj_vars[ch] - rf_const(3, m1);
    if (swapped) std::swap(paff, qaff);
    RatFunc s_of = qaff / paff;
    RatFunc v_of = rf_const(3, Rat(2)) * poly_at(c3s, s_of) * paff + poly_at(c2s, s_of);
    RatMap plane_to_sv{{"X", "Y", "Z"}, {s_of, v_of}};
    RatMap fwd = compose(qr.maps.forward, plane_to_sv);
    fwd.src_vars = {"X", "Y", "Z"};

    // (s,v) -> plane
    RatFunc sv_s = rf_var(2, 0), sv_v = rf_var(2, 1);
    RatFunc pback =
        (sv_v - poly_at(c2s, sv_s)) / (rf_const(2, Rat(2)) * poly_at(c3s, sv_s));
    RatFunc qback = sv_s * pback;
    if (swapped) std::swap(pback, qback);
    std::vector<RatFunc> plane_comps(3, rf_const(2, Rat(0)));
    plane_comps[o[0]] = pback + rf_const(2, m0);
    plane_comps[o[1]] = qback + rf_const(2, m1);
    plane_comps[ch] = rf_const(2, Rat(1));
    RatMap sv_to_plane{{"s", "v"}, plane_comps};
    RatMap bwd = compose(sv_to_plane, qr.maps.backward);
    bwd.src_vars = {"x", "y"};

    return CubicReduction{qr.curve, MapPair{fwd, bwd}, *mi, c.marked()};
}

// ---------------------------------------------------------------------------

namespace {

Mat symmetrize(const Mat& q) {
    Mat s(4, Vec(4));
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) s[i][j] = (q[i][j] + q[j][i]) / 2;
    return s;
}

Rat quad_eval_mat(const Mat& q, const Vec& x) {
    Rat acc(0);
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) acc += q[i][j] * x[i] * x[j];
    return acc;
}

}  // namespace

std::optional<ProjPoint> SpaceProjection::forward_point(const ProjPoint& p) const {
    if (p == center) return cubic.marked();
    std::vector<Rat> in{Rat(p[0]), Rat(p[1]), Rat(p[2]), Rat(p[3])};
    auto val = maps.forward.eval(in);
    if (!val) return std::nullopt;
    bool all_zero = true;
    for (const auto& c : *val)
        if (c != 0) all_zero = false;
    if (all_zero) return std::nullopt;
    return ProjPoint::from_rats(*val);
}

std::optional<ProjPoint> SpaceProjection::backward_point(const ProjPoint& p) const {
    std::vector<Rat> in{Rat(p[0]), Rat(p[1]), Rat(p[2])};
    auto val = maps.backward.eval(in);
    if (!val) return std::nullopt;
    bool all_zero = true;
    for (const auto& c : *val)
        if (c != 0) all_zero = false;
    if (all_zero) return std::nullopt;
    return ProjPoint::from_rats(*val);
}

SpaceProjection project_space_quartic(const Mat& q1in, const Mat& q2in, const ProjPoint& r) {
    if (r.dim() != 4) throw std::invalid_argument("project_space_quartic: R must lie in P^3");
    Mat q1 = symmetrize(q1in), q2 = symmetrize(q2in);
    Vec rv{Rat(r[0]), Rat(r[1]), Rat(r[2]), Rat(r[3])};
    if (quad_eval_mat(q1, rv) != 0 || quad_eval_mat(q2, rv) != 0)
        throw std::invalid_argument("project_space_quartic: R not on both quadrics");
    Vec g1 = exactq::mat_vec(q1, rv), g2 = exactq::mat_vec(q2, rv);
    if (exactq::rank(Mat{g1, g2}) != 2)
        throw std::domain_error("project_space_quartic: intersection singular at R");

    // frame: greedy standard basis columns, R last
    Mat frame(4, Vec(4, Rat(0)));
    {
        std::vector<Vec> cols;
        for (size_t e = 0; e < 4 && cols.size() < 3; ++e) {
            Vec col(4, Rat(0));
            col[e] = Rat(1);
            Mat test;
            for (const auto& cc : cols) test.push_back(cc);
            test.push_back(col);
            test.push_back(rv);
            if (exactq::rank(test) == cols.size() + 2) cols.push_back(col);
        }
        if (cols.size() != 3) throw std::logic_error("project_space_quartic: frame failed");
        cols.push_back(rv);
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = 0; j < 4; ++j) frame[i][j] = cols[j][i];
    }
    Mat frame_inv = exactq::mat_inverse(frame);

    auto congr = [&](const Mat& q) {
        Mat t(4, Vec(4, Rat(0)));
        // frame^T q frame
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = 0; j < 4; ++j) {
                Rat acc(0);
                for (size_t k = 0; k < 4; ++k)
                    for (size_t l = 0; l < 4; ++l) acc += frame[k][i] * q[k][l] * frame[l][j];
                t[i][j] = acc;
            }
        return t;
    };
    Mat t1 = congr(q1), t2 = congr(q2);
    if (t1[3][3] != 0 || t2[3][3] != 0)
        throw std::logic_error("project_space_quartic: frame did not move R to e4");

    Vec L1(3), L2(3);
    for (size_t j = 0; j < 3; ++j) {
        L1[j] = 2 * t1[3][j];
        L2[j] = 2 * t2[3][j];
    }

    // cubic G = C1 L2 - C2 L1 on the projection plane
    auto conic_poly = [](const Mat& t) {
        MPoly c(3);
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) {
                MPoly::Expo e(3, 0);
                e[i] += 1;
                e[j] += 1;
                c.add_term(e, t[i][j]);
            }
        return c;
    };
    auto lin_poly = [](const Vec& l) {
        MPoly p(3);
        for (size_t i = 0; i < 3; ++i) {
            MPoly::Expo e(3, 0);
            e[i] = 1;
            p.add_term(e, l[i]);
        }
        return p;
    };
    MPoly C1 = conic_poly(t1), C2 = conic_poly(t2);
    MPoly G = C1 * lin_poly(L2) - C2 * lin_poly(L1);

    // marked point: intersection of the two tangent-trace lines
    Vec cross{L1[1] * L2[2] - L1[2] * L2[1], L1[2] * L2[0] - L1[0] * L2[2],
              L1[0] * L2[1] - L1[1] * L2[0]};
    ProjPoint marked = ProjPoint::from_rats({cross[0], cross[1], cross[2]});
    PlaneCubic cubic(G, marked);

    // forward: first three rows of frame_inv, as linear forms
    std::vector<RatFunc> fcomps;
    for (size_t i = 0; i < 3; ++i) {
        MPoly row(4);
        for (size_t j = 0; j < 4; ++j) {
            MPoly::Expo e(4, 0);
            e[j] = 1;
            row.add_term(e, frame_inv[i][j]);
        }
        fcomps.push_back(RatFunc::poly(row));
    }
    RatMap fwd{{"x", "y", "z", "w"}, fcomps};

    // backward: [p L1 : q L1 : r L1 : -C1] pushed through the frame
    MPoly L1p = lin_poly(L1);
    std::vector<MPoly> bvec;
    for (size_t i = 0; i < 3; ++i) bvec.push_back(MPoly::var(3, i) * L1p);
    bvec.push_back(-C1);
    std::vector<RatFunc> bcomps;
    for (size_t i = 0; i < 4; ++i) {
        MPoly acc(3);
        for (size_t j = 0; j < 4; ++j) acc = acc + frame[i][j] * bvec[j];
        bcomps.push_back(RatFunc::poly(acc));
    }
    RatMap bwd{{"p", "q", "r"}, bcomps};

    return SpaceProjection{std::move(cubic), MapPair{fwd, bwd}, r};
}

}  // namespace qk3::genus1
