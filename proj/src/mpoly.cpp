#include "qk3/mpoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qk3::genus1 {

using exactq::rat_to_string;

MPoly MPoly::constant(size_t arity, const Rat& c) {
    MPoly p(arity);
    p.add_term(Expo(arity, 0), c);
    return p;
}

MPoly MPoly::var(size_t arity, size_t i) {
    if (i >= arity) throw std::invalid_argument("MPoly::var: index out of range");
    MPoly p(arity);
    Expo e(arity, 0);
    e[i] = 1;
    p.add_term(e, Rat(1));
    return p;
}

void MPoly::add_term(const Expo& e, const Rat& c) {
    if (e.size() != arity_) throw std::invalid_argument("MPoly::add_term: arity mismatch");
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MPoly MPoly::operator-() const {
    MPoly r(arity_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, Rat(-c));
    return r;
}

MPoly operator+(const MPoly& f, const MPoly& g) {
    if (f.arity_ != g.arity_) throw std::invalid_argument("MPoly: arity mismatch");
    MPoly r = f;
    for (const auto& [e, c] : g.terms_) r.add_term(e, c);
    return r;
}

MPoly operator-(const MPoly& f, const MPoly& g) { return f + (-g); }

MPoly operator*(const MPoly& f, const MPoly& g) {
    if (f.arity_ != g.arity_) throw std::invalid_argument("MPoly: arity mismatch");
    MPoly r(f.arity_);
    for (const auto& [e1, c1] : f.terms_)
        for (const auto& [e2, c2] : g.terms_) {
            MPoly::Expo e(f.arity_);
            for (size_t i = 0; i < f.arity_; ++i) e[i] = e1[i] + e2[i];
            r.add_term(e, Rat(c1 * c2));
        }
    return r;
}

MPoly operator*(const Rat& a, const MPoly& f) {
    MPoly r(f.arity_);
    if (a == 0) return r;
    for (const auto& [e, c] : f.terms_) r.terms_.emplace(e, Rat(a * c));
    return r;
}

MPoly MPoly::pow(unsigned e) const {
    MPoly r = constant(arity_, Rat(1));
    MPoly b = *this;
    while (e) {
        if (e & 1) r = r * b;
        if (e >>= 1) b = b * b;
    }
    return r;
}

Rat MPoly::eval(const std::vector<Rat>& x) const {
    if (x.size() != arity_) throw std::invalid_argument("MPoly::eval: arity mismatch");
    Rat s(0);
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (size_t i = 0; i < arity_; ++i)
            for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
        s += t;
    }
    return s;
}

unsigned MPoly::degree_in(size_t i) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
    return d;
}

unsigned MPoly::total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
        unsigned t = 0;
        for (unsigned x : e) t += x;
        d = std::max(d, t);
    }
    return d;
}

MPoly MPoly::subst_numerator(const std::vector<MPoly>& nums,
                             const std::vector<MPoly>& dens) const {
    if (nums.size() != arity_ || dens.size() != arity_)
        throw std::invalid_argument("MPoly::subst_numerator: arity mismatch");
    size_t out_arity = nums.empty() ? 0 : nums[0].arity();
    std::vector<unsigned> maxdeg(arity_);
    for (size_t i = 0; i < arity_; ++i) maxdeg[i] = degree_in(i);
    MPoly acc(out_arity);
    for (const auto& [e, c] : terms_) {
        MPoly t = MPoly::constant(out_arity, c);
        for (size_t i = 0; i < arity_; ++i) {
            if (e[i] > 0) t = t * nums[i].pow(e[i]);
            if (maxdeg[i] - e[i] > 0) t = t * dens[i].pow(maxdeg[i] - e[i]);
        }
        acc = acc + t;
    }
    return acc;
}

std::string MPoly::to_string(const std::vector<std::string>& vars) const {
    if (terms_.empty()) return "0";
    std::string s;
    // highest terms first for readability: reverse map order
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        if (!s.empty())
            s += (c > 0) ? " + " : " - ";
        else if (c < 0)
            s += "-";
        Rat a = abs(c);
        std::vector<std::string> factors;
        bool has_var = false;
        for (size_t i = 0; i < arity_; ++i) {
            if (e[i] == 0) continue;
            has_var = true;
            std::string f = vars[i];
            if (e[i] > 1) f += "^" + std::to_string(e[i]);
            factors.push_back(std::move(f));
        }
        if (a != 1 || !has_var) factors.insert(factors.begin(), rat_to_string(a));
        for (size_t i = 0; i < factors.size(); ++i) {
            if (i) s += "*";
            s += factors[i];
        }
    }
    return s;
}

RatFunc::RatFunc(MPoly n, MPoly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw std::invalid_argument("RatFunc: zero denominator");
    // strip a common rational content so serialized forms stay small
    if (!num.is_zero()) {
        const Rat& c = den.terms().begin()->second;
        if (c != 1) {
            Rat inv = 1 / c;
            num = inv * num;
            den = inv * den;
        }
    }
}

RatFunc RatFunc::poly(MPoly p) {
    MPoly one = MPoly::constant(p.arity(), Rat(1));
    return RatFunc(std::move(p), std::move(one));
}

std::optional<Rat> RatFunc::eval(const std::vector<Rat>& x) const {
    Rat d = den.eval(x);
    if (d == 0) return std::nullopt;
    return Rat(num.eval(x) / d);
}

std::string RatFunc::to_string(const std::vector<std::string>& vars) const {
    bool den_is_one = den.terms().size() == 1 && den.terms().begin()->second == 1 &&
                      den.terms().begin()->first == MPoly::Expo(den.arity(), 0);
    if (den_is_one) return num.to_string(vars);
    return "(" + num.to_string(vars) + ")/(" + den.to_string(vars) + ")";
}

RatFunc operator+(const RatFunc& f, const RatFunc& g) {
    return RatFunc(f.num * g.den + g.num * f.den, f.den * g.den);
}
RatFunc operator-(const RatFunc& f, const RatFunc& g) {
    return RatFunc(f.num * g.den - g.num * f.den, f.den * g.den);
}
RatFunc operator*(const RatFunc& f, const RatFunc& g) {
    return RatFunc(f.num * g.num, f.den * g.den);
}
RatFunc operator/(const RatFunc& f, const RatFunc& g) {
    if (g.num.is_zero()) throw std::domain_error("RatFunc: division by zero function");
    return RatFunc(f.num * g.den, f.den * g.num);
}

std::optional<std::vector<Rat>> RatMap::eval(const std::vector<Rat>& x) const {
    std::vector<Rat> out;
    out.reserve(comps.size());
    for (const auto& f : comps) {
        auto v = f.eval(x);
        if (!v) return std::nullopt;
        out.push_back(*v);
    }
    return out;
}

std::vector<std::string> RatMap::to_strings() const {
    std::vector<std::string> out;
    out.reserve(comps.size());
    for (const auto& f : comps) out.push_back(f.to_string(src_vars));
    return out;
}

RatFunc compose(const RatFunc& outer, const std::vector<RatFunc>& inner) {
    std::vector<MPoly> nums, dens;
    nums.reserve(inner.size());
    dens.reserve(inner.size());
    for (const auto& f : inner) {
        nums.push_back(f.num);
        dens.push_back(f.den);
    }
    MPoly n = outer.num.subst_numerator(nums, dens);
    MPoly d = outer.den.subst_numerator(nums, dens);
    // both substitutions used per-variable max degrees of their own
    // polynomial; bring to the common denominator prod den_i^{max(du,dd)}
    for (size_t i = 0; i < inner.size(); ++i) {
        unsigned du = outer.num.degree_in(i), dd = outer.den.degree_in(i);
        if (du < dd) n = n * dens[i].pow(dd - du);
        if (dd < du) d = d * dens[i].pow(du - dd);
    }
    if (d.is_zero()) throw std::domain_error("compose: denominator collapsed to zero");
    return RatFunc(std::move(n), std::move(d));
}

RatMap compose(const RatMap& outer, const RatMap& inner) {
    RatMap r;
    r.src_vars = inner.src_vars;
    r.comps.reserve(outer.comps.size());
    for (const auto& f : outer.comps) r.comps.push_back(compose(f, inner.comps));
    return r;
}

std::string MapPair::to_json() const {
    nlohmann::ordered_json j;
    j["forward"] = forward.to_strings();
    j["backward"] = backward.to_strings();
    return j.dump();
}

}  // namespace qk3::genus1
