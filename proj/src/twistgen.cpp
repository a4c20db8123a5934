#include "qk3/twistgen.hpp"

#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "qk3/quadext.hpp"

namespace qk3::twistgen {

using exactq::Int;
using exactq::is_square;
using exactq::QuadExt;
using exactq::rat;
using exactq::rat_to_string;

TwistParams::TwistParams(long n_, long m_) : n(n_), m(m_), lambda(0) {
    if (n % 2 == 0 || m % 2 == 0) throw std::invalid_argument("TwistParams: n, m must be odd");
    if (!(n > m && m > 1)) throw std::invalid_argument("TwistParams: need n > m > 1");
    if (std::gcd(n, m) != 1) throw std::invalid_argument("TwistParams: n, m must be coprime");
    Rat n4 = rat(n) * rat(n) * rat(n) * rat(n);
    Rat m4 = rat(m) * rat(m) * rat(m) * rat(m);
    lambda = n4 - m4;
}

namespace {

genus1::QuarticReduction build_reduction(const TwistParams& p) {
    // (lambda d)^2 = lambda t^4 - lambda
    genus1::QuarticModel model(p.lambda, Rat(0), Rat(0), Rat(0), Rat(-p.lambda));
    Rat t0 = rat(p.n, p.m);
    Rat v0 = p.lambda / rat(p.m * p.m);
    if (!model.on_model(t0, v0)) throw std::logic_error("twist base point off the model");
    // anchor the mirror point so the base point maps to a finite point
    return genus1::quartic_to_weierstrass(model, Rat(-t0), v0);
}

}  // namespace

Engine::Engine(const TwistParams& params)
    : params_(params), red_(build_reduction(params)), base_image_(ECPoint::O()) {
    Rat t0 = rat(params_.n, params_.m);
    Rat v0 = params_.lambda / rat(params_.m * params_.m);
    auto img = red_.forward_point(t0, v0);
    if (!img || img->infinity) throw std::logic_error("Engine: base point image not finite");
    base_image_ = *img;
    if (ellcurve::torsion_order(red_.curve, base_image_).has_value())
        throw std::domain_error("Engine: base point is torsion, the family is finite");
}

GenerateOutcome Engine::generate(long count) const {
    GenerateOutcome out;
    ECPoint acc = ECPoint::O();
    for (long k = 1; k <= count; ++k) {
        acc = ellcurve::add(red_.curve, acc, base_image_);
        auto back = red_.backward_point(acc);
        if (!back) {
            out.skipped.emplace_back(k, "backward map undefined");
            continue;
        }
        Rat t = back->first;
        Rat d = back->second / params_.lambda;  // undo d' = lambda d
        if (d == 0) {
            out.skipped.emplace_back(k, "d = 0 (degenerate twist)");
            continue;
        }
        // exact defining identities
        if (params_.lambda * d * d != t * t * t * t - 1)
            throw std::logic_error("generate: twist identity failed");
        TwistItem item;
        item.k = k;
        item.d = d;
        item.t = t;
        item.P = ProjPoint::from_rats({t, rat(params_.m), rat(params_.n), Rat(1)});
        Rat m4 = rat(params_.m) * params_.m * params_.m * params_.m;
        Rat n4 = rat(params_.n) * params_.n * params_.n * params_.n;
        if (t * t * t * t + d * d * m4 != d * d * n4 + 1)
            throw std::logic_error("generate: surface membership identity failed");
        if (!dqsurf::contains(twisted_fermat(d), item.P))
            throw std::logic_error("generate: P_k not on F_d");
        out.items.push_back(std::move(item));
    }
    return out;
}

DiagSurface twisted_fermat(const Rat& d) {
    if (d == 0) throw std::invalid_argument("twisted_fermat: d must be nonzero");
    Rat d2 = d * d;
    return DiagSurface(Rat(1), d2, Rat(-d2), Rat(-1));
}

TwistItem Engine::certify(TwistItem item, const std::vector<Rat>& avoid) const {
    item.omega = dqsurf::omega_filter(twisted_fermat(item.d), item.P);
    item.square_flags.clear();
    for (const Rat& a : avoid) {
        if (a == 0) throw std::invalid_argument("certify: avoid entries must be nonzero");
        item.square_flags.emplace_back(a, !is_square(Rat(item.d * a)));
    }
    item.certified = true;
    return item;
}

YPoint Engine::quotient_point(const TwistItem& item) const {
    Rat m(params_.m), n(params_.n);
    std::array<Rat, 5> coords{item.t, item.d * m * m, item.d * n * n, Rat(1), item.d * m * n};
    WPoint wp = WPoint::from_rats(coords);
    // weighted-homogeneous relations, exact on the canonical representative
    Rat x(wp[0]), y(wp[1]), z(wp[2]), w(wp[3]), t(wp[4]);
    if (y * z != t * t) throw std::logic_error("quotient_point: y z != t^2");
    if (x * x * x * x + y * y != z * z + w * w * w * w)
        throw std::logic_error("quotient_point: x^4 + y^2 != z^2 + w^4");
    return YPoint{wp};
}

XiResult Engine::xi_check(const TwistItem& item) const {
    if (is_square(item.d)) return XiResult{true, true};
    const Rat& rad = item.d;
    // Xi(P_k) = [t : m sqrt(d) : n sqrt(d) : 1] over Q(sqrt(d))
    std::array<QuadExt, 4> xi{
        QuadExt::from_rat(item.t, rad), QuadExt(Rat(0), rat(params_.m), rad),
        QuadExt(Rat(0), rat(params_.n), rad), QuadExt::from_rat(Rat(1), rad)};
    // (i) on the Fermat surface x^4 + y^4 = z^4 + w^4
    QuadExt lhs = xi[0].pow(4) + xi[1].pow(4) - xi[2].pow(4) - xi[3].pow(4);
    if (!lhs.is_zero()) return XiResult{false, false};
    // (ii) Galois conjugation equals the twisting involution, projectively
    std::array<QuadExt, 4> sigma{xi[0], -xi[1], -xi[2], xi[3]};
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = i + 1; j < 4; ++j)
            if (xi[i].conj() * sigma[j] != xi[j].conj() * sigma[i]) return XiResult{false, false};
    return XiResult{true, false};
}

std::string item_to_json(const TwistItem& item, const YPoint& y) {
    nlohmann::ordered_json j;
    j["k"] = item.k;
    j["d"] = rat_to_string(item.d);
    j["t"] = rat_to_string(item.t);
    j["P"] = item.P.to_string();
    j["omega"] = item.omega.to_string();
    nlohmann::ordered_json flags;
    for (const auto& [a, ok] : item.square_flags) flags[rat_to_string(a)] = ok;
    j["square_flags"] = flags;
    j["Y"] = y.wp.to_string();
    return j.dump();
}

std::string skip_to_json(long k, const std::string& reason) {
    nlohmann::ordered_json j;
    j["k"] = k;
    j["skipped"] = reason;
    return j.dump();
}

}  // namespace qk3::twistgen
