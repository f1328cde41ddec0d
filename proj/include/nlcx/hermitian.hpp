#pragma once

// The Hermitian curve y^l + y = x^{l+1} over F_q, q = l^2: rational points,
// orbits of the automorphism phi(x) = e x, phi(y) = e^{l+1} y, an explicit
// function h with a simple pole at a chosen point Q and pole order 2g-1 at
// infinity, and the sequence of h-values along the orbits other than Q's.
//
// h = scale * prod_{i>=2} (y - b_i) / (x - a), where Q = (a, b) and b_2..b_l
// are the other roots of y^l + y = a^{l+1}. On the line x = a the quotient is
// 0/0 at (a, b_i); there the value follows from dy/dx = x^l on the curve:
// h(a, b_i) = scale * a^l * prod_{i' != i} (b_i - b_i').

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"
#include "sequence.hpp"

namespace nlcx {

struct CurvePoint {
    bool infinity = false;
    Elem x = 0;
    Elem y = 0;

    static CurvePoint at_infinity() { return {true, 0, 0}; }
    static CurvePoint affine(Elem x, Elem y) { return {false, x, y}; }

    bool operator==(const CurvePoint&) const = default;
    /// Affine points by (x, y) encoding; infinity sorts last.
    bool operator<(const CurvePoint& o) const {
        if (infinity != o.infinity) return o.infinity;
        return std::pair(x, y) < std::pair(o.x, o.y);
    }

    std::string str() const {
        if (infinity) return "Pinf";
        return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
    }
};

class HermitianCurve {
public:
    /// Builds F_{l^2} (canonical modulus; primitive element overridable).
    explicit HermitianCurve(std::uint32_t ell, std::optional<Elem> primitive = std::nullopt) : ell_(ell) {
        if (ell < 2) throw std::invalid_argument("ell must be a prime power >= 2");
        split_prime_power(ell);  // throws if ell is not a prime power
        if (static_cast<std::uint64_t>(ell) * ell > kMaxFieldOrder)
            throw std::invalid_argument("ell^2 exceeds the supported field size");
        field_ = make_field_of_order(static_cast<std::uint64_t>(ell) * ell, primitive);
    }

    /// Uses an existing field; q must equal ell^2.
    HermitianCurve(FieldPtr field, std::uint32_t ell) : field_(std::move(field)), ell_(ell) {
        if (static_cast<std::uint64_t>(ell) * ell != field_->q())
            throw std::invalid_argument("q=" + std::to_string(field_->q()) + " is not the square of ell=" +
                                        std::to_string(ell));
        split_prime_power(ell);
    }

    const FieldPtr& field() const noexcept { return field_; }
    std::uint32_t ell() const noexcept { return ell_; }
    std::uint32_t q() const noexcept { return field_->q(); }
    std::uint32_t genus() const noexcept { return ell_ * (ell_ - 1) / 2; }
    /// Sequence length (q-1)(l-1).
    std::size_t sequence_length() const noexcept { return static_cast<std::size_t>(q() - 1) * (ell_ - 1); }

    bool on_curve(const CurvePoint& P) const {
        if (P.infinity) return true;
        const Field& f = *field_;
        return f.add(f.pow(P.y, ell_), P.y) == f.pow(P.x, ell_ + 1);
    }

    /// Roots of y^l + y = c in F_q, ascending.
    std::vector<Elem> roots_over(Elem c) const {
        const Field& f = *field_;
        std::vector<Elem> out;
        for (Elem y = 0; y < f.q(); ++y)
            if (f.add(f.pow(y, ell_), y) == c) out.push_back(y);
        return out;
    }

    /// All rational points: affine ones in (x, y) order, then infinity.
    std::vector<CurvePoint> points() const {
        const Field& f = *field_;
        std::vector<CurvePoint> out;
        for (Elem x = 0; x < f.q(); ++x)
            for (Elem y : roots_over(f.pow(x, ell_ + 1))) out.push_back(CurvePoint::affine(x, y));
        out.push_back(CurvePoint::at_infinity());
        return out;
    }

    /// phi^t(P): (a, b) -> (e^t a, e^{(l+1)t} b); infinity is fixed.
    CurvePoint phi(const CurvePoint& P, std::int64_t t) const {
        if (P.infinity) return P;
        const Field& f = *field_;
        return CurvePoint::affine(f.mul(f.primitive_pow(t), P.x),
                                  f.mul(f.primitive_pow(t * static_cast<std::int64_t>(ell_ + 1)), P.y));
    }

private:
    FieldPtr field_;
    std::uint32_t ell_;
};

struct OrbitTable {
    std::uint32_t ell = 0;
    /// orbits[j][t] = phi^t(orbits[j][0]); orbits[j][0] is the smallest member.
    std::vector<std::vector<CurvePoint>> orbits;
    std::size_t q_orbit_index = 0;
    /// Points with x = 0 and the point at infinity.
    std::vector<CurvePoint> fixed_and_short;

    const CurvePoint& Q() const { return orbits.at(q_orbit_index).front(); }
    /// Representatives P_1..P_{l-1} of the orbits other than Q's.
    std::vector<CurvePoint> representatives() const {
        std::vector<CurvePoint> out;
        for (std::size_t j = 0; j < orbits.size(); ++j)
            if (j != q_orbit_index) out.push_back(orbits[j].front());
        return out;
    }
};

/// Partitions the points with x != 0 into phi-orbits. Q is the smallest such
/// point; orbits are ordered by their smallest member (so Q's comes first).
inline OrbitTable orbit_decomposition(const HermitianCurve& curve) {
    OrbitTable tab;
    tab.ell = curve.ell();
    const std::uint32_t n = curve.q() - 1;
    std::map<CurvePoint, bool> assigned;
    std::vector<CurvePoint> moving;
    for (const auto& P : curve.points()) {
        if (P.infinity || P.x == 0)
            tab.fixed_and_short.push_back(P);
        else
            moving.push_back(P);
    }
    std::sort(moving.begin(), moving.end());
    for (const auto& P : moving) {
        if (assigned.count(P)) continue;
        std::vector<CurvePoint> orbit;
        CurvePoint cur = P;
        do {
            if (assigned.count(cur)) throw std::logic_error("orbit walk revisited a point of another orbit");
            assigned[cur] = true;
            orbit.push_back(cur);
            cur = curve.phi(cur, 1);
        } while (!(cur == P) && orbit.size() <= n);
        if (orbit.size() != n)
            throw std::logic_error("orbit of " + P.str() + " has size " + std::to_string(orbit.size()) + ", expected " +
                                   std::to_string(n));
        tab.orbits.push_back(std::move(orbit));
    }
    if (tab.orbits.size() != curve.ell())
        throw std::logic_error("found " + std::to_string(tab.orbits.size()) + " orbits, expected ell");
    tab.q_orbit_index = 0;
    return tab;
}

/// Bivariate polynomial sum c_{ij} x^i y^j over F_q, kept reduced to y-degree
/// < l via y^l = x^{l+1} - y.
class BivariatePoly {
public:
    BivariatePoly(FieldPtr field, std::uint32_t ell) : field_(std::move(field)), ell_(ell) {}

    static BivariatePoly constant(FieldPtr f, std::uint32_t ell, Elem c) {
        BivariatePoly p(std::move(f), ell);
        p.add_term(0, 0, c);
        return p;
    }
    static BivariatePoly monomial(FieldPtr f, std::uint32_t ell, std::uint32_t i, std::uint32_t j, Elem c = 1) {
        BivariatePoly p(std::move(f), ell);
        p.add_term(i, j, c);
        return p;
    }

    void add_term(std::uint32_t i, std::uint32_t j, Elem c) {
        if (c == 0) return;
        if (j >= ell_) {
            // x^i y^j = x^i y^{j-l} (x^{l+1} - y)
            add_term(i + ell_ + 1, j - ell_, c);
            add_term(i, j - ell_ + 1, field_->neg(c));
            return;
        }
        auto& slot = terms_[{i, j}];
        slot = field_->add(slot, c);
        if (slot == 0) terms_.erase({i, j});
    }

    BivariatePoly operator*(const BivariatePoly& o) const {
        BivariatePoly r(field_, ell_);
        for (const auto& [ij, c] : terms_)
            for (const auto& [kl, d] : o.terms_) r.add_term(ij.first + kl.first, ij.second + kl.second, field_->mul(c, d));
        return r;
    }
    BivariatePoly operator+(const BivariatePoly& o) const {
        BivariatePoly r = *this;
        for (const auto& [ij, c] : o.terms_) r.add_term(ij.first, ij.second, c);
        return r;
    }

    bool is_zero() const noexcept { return terms_.empty(); }
    const std::map<std::pair<std::uint32_t, std::uint32_t>, Elem>& terms() const noexcept { return terms_; }

    Elem evaluate(Elem x, Elem y) const {
        const Field& f = *field_;
        Elem acc = 0;
        for (const auto& [ij, c] : terms_) acc = f.add(acc, f.mul(c, f.mul(f.pow(x, ij.first), f.pow(y, ij.second))));
        return acc;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto [i, j] = it->first;
            os << (first ? "" : " + ") << it->second;
            if (i) os << "*x^" << i;
            if (j) os << "*y^" << j;
            first = false;
        }
        return os.str();
    }

private:
    FieldPtr field_;
    std::uint32_t ell_;
    std::map<std::pair<std::uint32_t, std::uint32_t>, Elem> terms_;
};

/// nu_{P_inf} of a reduced polynomial: -max(i l + j (l+1)) over its monomials.
inline std::int64_t valuation_at_infinity(const BivariatePoly& p, std::uint32_t ell) {
    if (p.is_zero()) throw std::invalid_argument("valuation of the zero polynomial");
    std::int64_t best = 0;
    for (const auto& [ij, c] : p.terms()) {
        if (ij.second >= ell) throw std::invalid_argument("polynomial not reduced in y");
        best = std::max<std::int64_t>(best, static_cast<std::int64_t>(ij.first) * ell +
                                                static_cast<std::int64_t>(ij.second) * (ell + 1));
    }
    return -best;
}

struct PoleFunction {
    std::uint32_t ell = 0;
    std::uint32_t g = 0;
    Elem a = 0;                        // x(Q)
    Elem b = 0;                        // y(Q)
    std::vector<Elem> cofactor_roots;  // the other roots b_2..b_l of y^l + y = a^{l+1}
    Elem scale = 1;

    CurvePoint pole() const { return CurvePoint::affine(a, b); }
};

inline PoleFunction construct_h(const HermitianCurve& curve, const CurvePoint& Q) {
    if (Q.infinity) throw std::invalid_argument("Q must be an affine point");
    if (Q.x == 0) throw std::invalid_argument("Q must have nonzero x-coordinate");
    if (!curve.on_curve(Q)) throw std::invalid_argument("Q " + Q.str() + " is not on the curve");
    const Field& f = *curve.field();
    PoleFunction h{curve.ell(), curve.genus(), Q.x, Q.y, {}, 1};
    for (Elem r : curve.roots_over(f.pow(Q.x, curve.ell() + 1)))
        if (r != Q.y) h.cofactor_roots.push_back(r);
    if (h.cofactor_roots.size() != curve.ell() - 1) throw std::logic_error("fibre over x(Q) is not of size ell");
    return h;
}

inline BivariatePoly h_numerator(const HermitianCurve& curve, const PoleFunction& h) {
    const auto& F = curve.field();
    auto num = BivariatePoly::constant(F, h.ell, h.scale);
    for (Elem r : h.cofactor_roots) {
        auto lin = BivariatePoly::monomial(F, h.ell, 0, 1);
        lin.add_term(0, 0, F->neg(r));
        num = num * lin;
    }
    return num;
}

inline BivariatePoly h_denominator(const HermitianCurve& curve, const PoleFunction& h) {
    const auto& F = curve.field();
    auto den = BivariatePoly::monomial(F, h.ell, 1, 0);
    den.add_term(0, 0, F->neg(h.a));
    return den;
}

inline std::int64_t valuation_at_infinity(const HermitianCurve& curve, const PoleFunction& h) {
    return valuation_at_infinity(h_numerator(curve, h), h.ell) - valuation_at_infinity(h_denominator(curve, h), h.ell);
}

/// nu_P(h) at an affine point. x - x(P) is a local parameter at every affine
/// point (the curve is smooth and dF/dy = 1), and y - y(P) has valuation 1
/// when x(P) != 0 and l+1 when x(P) = 0.
inline std::int64_t valuation_at(const HermitianCurve& curve, const PoleFunction& h, const CurvePoint& P) {
    if (P.infinity) return valuation_at_infinity(curve, h);
    std::int64_t v = 0;
    for (Elem r : h.cofactor_roots)
        if (P.y == r) v += P.x != 0 ? 1 : static_cast<std::int64_t>(curve.ell()) + 1;
    if (P.x == h.a) v -= 1;
    return v;
}

inline Elem eval_h(const HermitianCurve& curve, const PoleFunction& h, const CurvePoint& P) {
    if (P.infinity) throw std::invalid_argument("h has a pole at infinity");
    const Field& f = *curve.field();
    if (P.x != h.a) {
        Elem num = h.scale;
        for (Elem r : h.cofactor_roots) num = f.mul(num, f.sub(P.y, r));
        return f.div(num, f.sub(P.x, h.a));
    }
    if (P.y == h.b) throw std::domain_error("h has a pole at " + P.str());
    for (std::size_t i = 0; i < h.cofactor_roots.size(); ++i) {
        if (P.y != h.cofactor_roots[i]) continue;
        Elem v = f.mul(h.scale, f.pow(h.a, h.ell));
        for (std::size_t j = 0; j < h.cofactor_roots.size(); ++j)
            if (j != i) v = f.mul(v, f.sub(h.cofactor_roots[i], h.cofactor_roots[j]));
        return v;
    }
    throw std::invalid_argument("point " + P.str() + " is not on the curve");
}

/// phi^t(h) as an explicit function of the same shape: the substitution
/// x -> e^{-t} x, y -> e^{-(l+1)t} y turns h into
/// e^t prod (y - e^{(l+1)t} b_i) / (x - e^t a), since e^{(l^2-1)t} = 1.
/// With it, eval_h(phi^t(h), phi^t(P)) = eval_h(h, P).
inline PoleFunction apply_automorphism_to_h(const HermitianCurve& curve, const PoleFunction& h, std::int64_t t) {
    const Field& f = *curve.field();
    const Elem et = f.primitive_pow(t);
    const Elem ey = f.primitive_pow(t * static_cast<std::int64_t>(h.ell + 1));
    PoleFunction out = h;
    out.a = f.mul(et, h.a);
    out.b = f.mul(ey, h.b);
    for (auto& r : out.cofactor_roots) r = f.mul(ey, r);
    out.scale = f.mul(h.scale, et);
    return out;
}

inline std::string describe_h(const HermitianCurve& curve, const PoleFunction& h) {
    std::ostringstream os;
    os << "h = ";
    if (h.scale != 1) os << h.scale << " * ";
    for (Elem r : h.cofactor_roots) os << "(y - " << r << ")";
    os << " / (x - " << h.a << ")";
    os << "   pole Q=" << h.pole().str() << " g=" << h.g << " nu_inf=" << valuation_at_infinity(curve, h)
       << " numerator=[" << h_numerator(curve, h).str() << "]";
    return os.str();
}

/// s = (h(phi^t(P_j)))_{t=0..q-2} for j = 1..l-1, length (q-1)(l-1).
inline Sequence hermitian_sequence(const HermitianCurve& curve) {
    const auto tab = orbit_decomposition(curve);
    const auto h = construct_h(curve, tab.Q());
    Sequence s{curve.field(), {}, {GeneratorKind::hermitian, {}}};
    s.elems.reserve(curve.sequence_length());
    for (const auto& P : tab.representatives())
        for (std::uint32_t t = 0; t + 1 < curve.q(); ++t) s.elems.push_back(eval_h(curve, h, curve.phi(P, t)));
    s.provenance.set("ell", curve.ell());
    s.provenance.set("prim", curve.field()->primitive());
    s.provenance.set("mod", detail::join_modulus(curve.field()->modulus()));
    return s;
}

}  // namespace nlcx
