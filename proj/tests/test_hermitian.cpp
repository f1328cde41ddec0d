#include <gtest/gtest.h>

#include <nlcx/hermitian.hpp>

#include <set>

#include "oracles.hpp"

using namespace nlcx;

TEST(Hermitian, PointCounts) {
    for (std::uint32_t l : {2u, 3u, 4u, 5u, 7u, 8u}) {
        HermitianCurve c(l);
        const auto pts = c.points();
        EXPECT_EQ(pts.size(), static_cast<std::size_t>(l) * l * l + 1);
        for (const auto& P : pts) EXPECT_TRUE(c.on_curve(P));
        EXPECT_EQ(std::set<CurvePoint>(pts.begin(), pts.end()).size(), pts.size());
    }
    EXPECT_THROW(HermitianCurve(6), std::invalid_argument);
    EXPECT_THROW(HermitianCurve(1), std::invalid_argument);
    EXPECT_THROW(HermitianCurve(make_field(5, 1), 2), std::invalid_argument);
}

TEST(Hermitian, FourElementFieldPoints) {
    HermitianCurve c(2);
    // omega = 2, omega^2 = 3 in F_4
    std::vector<Elem> above_one;
    for (const auto& P : c.points())
        if (!P.infinity && P.x == 1) above_one.push_back(P.y);
    EXPECT_EQ(above_one, (std::vector<Elem>{2, 3}));
    EXPECT_EQ(c.phi(CurvePoint::affine(1, 2), 1), CurvePoint::affine(2, 2));
}

TEST(Hermitian, AutomorphismBasics) {
    for (std::uint32_t l : {2u, 3u, 4u}) {
        HermitianCurve c(l);
        for (const auto& P : c.points()) {
            EXPECT_EQ(c.phi(P, 0), P);
            EXPECT_EQ(c.phi(P, c.q() - 1), P);
            EXPECT_TRUE(c.on_curve(c.phi(P, 1)));
            EXPECT_EQ(c.phi(c.phi(P, 3), -3), P);
        }
        EXPECT_EQ(c.phi(CurvePoint::at_infinity(), 5), CurvePoint::at_infinity());
    }
}

TEST(Hermitian, Orbits) {
    for (std::uint32_t l : {2u, 3u, 4u, 5u}) {
        HermitianCurve c(l);
        const auto tab = orbit_decomposition(c);
        ASSERT_EQ(tab.orbits.size(), l);
        std::set<CurvePoint> all;
        for (const auto& orb : tab.orbits) {
            ASSERT_EQ(orb.size(), c.q() - 1);
            std::set<Elem> xs;
            for (std::size_t t = 0; t < orb.size(); ++t) {
                xs.insert(orb[t].x);
                all.insert(orb[t]);
                EXPECT_EQ(c.phi(orb[0], static_cast<std::int64_t>(t)), orb[t]);
                EXPECT_FALSE(orb[t] < orb[0]);
            }
            EXPECT_EQ(xs.size(), c.q() - 1);
            EXPECT_FALSE(xs.count(0));
            EXPECT_EQ(c.phi(orb.back(), 1), orb.front());
        }
        EXPECT_EQ(all.size(), static_cast<std::size_t>(l) * (c.q() - 1));
        EXPECT_EQ(tab.fixed_and_short.size(), l + 1u);
        EXPECT_EQ(tab.q_orbit_index, 0u);
        for (std::size_t j = 1; j < tab.orbits.size(); ++j) EXPECT_LT(tab.orbits[j - 1][0], tab.orbits[j][0]);
        EXPECT_EQ(tab.representatives().size(), l - 1);
    }
}

TEST(Hermitian, ValuationAtInfinity) {
    auto f = make_field(3, 2);
    EXPECT_EQ(valuation_at_infinity(BivariatePoly::monomial(f, 3, 1, 0), 3), -3);
    EXPECT_EQ(valuation_at_infinity(BivariatePoly::constant(f, 3, 1), 3), 0);
    EXPECT_EQ(valuation_at_infinity(BivariatePoly::monomial(f, 3, 0, 2), 3), -8);
    // y^3 reduces to x^4 - y
    EXPECT_EQ(valuation_at_infinity(BivariatePoly::monomial(f, 3, 0, 3), 3), -12);
    EXPECT_THROW(valuation_at_infinity(BivariatePoly(f, 3), 3), std::invalid_argument);
}

TEST(Hermitian, PoleFunctionSmall) {
    HermitianCurve c(2);
    const auto h = construct_h(c, CurvePoint::affine(1, 2));
    EXPECT_EQ(h.cofactor_roots, (std::vector<Elem>{3}));
    EXPECT_EQ(valuation_at_infinity(c, h), -1);
    EXPECT_EQ(eval_h(c, h, CurvePoint::affine(2, 2)), 2u);
    EXPECT_EQ(eval_h(c, h, CurvePoint::affine(1, 3)), 1u);
    EXPECT_THROW(eval_h(c, h, CurvePoint::affine(1, 2)), std::domain_error);
    EXPECT_THROW(eval_h(c, h, CurvePoint::at_infinity()), std::invalid_argument);
    EXPECT_THROW(construct_h(c, CurvePoint::at_infinity()), std::invalid_argument);
    EXPECT_THROW(construct_h(c, CurvePoint::affine(0, 0)), std::invalid_argument);
}

TEST(Hermitian, PoleFunctionDivisor) {
    for (std::uint32_t l : {2u, 3u, 4u, 5u}) {
        HermitianCurve c(l);
        const auto tab = orbit_decomposition(c);
        const auto h = construct_h(c, tab.Q());
        EXPECT_EQ(valuation_at_infinity(c, h), -(2 * static_cast<std::int64_t>(c.genus()) - 1));
        std::size_t poles = 0;
        for (const auto& P : c.points()) {
            if (P.infinity) continue;
            const auto v = valuation_at(c, h, P);
            if (v < 0) {
                ++poles;
                EXPECT_EQ(P, tab.Q());
                EXPECT_EQ(v, -1);
            } else {
                EXPECT_NO_THROW(eval_h(c, h, P));
            }
        }
        EXPECT_EQ(poles, 1u);
        // all zeros are rational here, so the principal divisor has degree 0
        std::int64_t deg = valuation_at_infinity(c, h);
        for (const auto& P : c.points())
            if (!P.infinity) deg += valuation_at(c, h, P);
        EXPECT_EQ(deg, 0);
    }
}

TEST(Hermitian, RemovableRuleSeriesOracle) {
    for (std::uint32_t l : {2u, 3u, 4u}) {
        HermitianCurve c(l);
        const Field& f = *c.field();
        for (Elem a = 1; a < c.q(); ++a) {
            const auto roots = c.roots_over(f.pow(a, l + 1));
            for (Elem b : roots) {
                const auto [c1, c2] = oracle::branch_coefficients(c, a, b);
                EXPECT_EQ(c1, f.pow(a, l)) << "l=" << l << " a=" << a << " b=" << b;
                (void)c2;
            }
            // h built on each point of the fibre, evaluated at every other
            for (Elem b : roots) {
                const auto h = construct_h(c, CurvePoint::affine(a, b));
                for (Elem bi : h.cofactor_roots) {
                    Elem expect = oracle::branch_coefficients(c, a, bi).first;
                    for (Elem bj : h.cofactor_roots)
                        if (bj != bi) expect = f.mul(expect, f.sub(bi, bj));
                    EXPECT_EQ(eval_h(c, h, CurvePoint::affine(a, bi)), expect);
                }
            }
        }
    }
}

TEST(Hermitian, AutomorphismIdentityExhaustive) {
    for (std::uint32_t l : {2u, 3u}) {
        HermitianCurve c(l);
        const auto pts = c.points();
        for (const auto& Q : pts) {
            if (Q.infinity || Q.x == 0) continue;
            const auto h = construct_h(c, Q);
            for (std::int64_t t = 0; t < c.q() - 1; ++t) {
                const auto ht = apply_automorphism_to_h(c, h, t);
                EXPECT_EQ(ht.pole(), c.phi(Q, t));
                for (const auto& P : pts) {
                    if (P.infinity || P == Q) continue;
                    ASSERT_EQ(eval_h(c, ht, c.phi(P, t)), eval_h(c, h, P))
                        << "l=" << l << " Q=" << Q.str() << " P=" << P.str() << " t=" << t;
                }
            }
            const auto full = apply_automorphism_to_h(c, h, c.q() - 1);
            EXPECT_EQ(full.a, h.a);
            EXPECT_EQ(full.cofactor_roots, h.cofactor_roots);
            EXPECT_EQ(full.scale, h.scale);
        }
    }
}

TEST(Hermitian, SequenceShape) {
    for (std::uint32_t l : {2u, 3u, 4u, 5u}) {
        HermitianCurve c(l);
        const auto s = hermitian_sequence(c);
        EXPECT_EQ(s.size(), static_cast<std::size_t>(c.q() - 1) * (l - 1));
        EXPECT_EQ(s.provenance.get_int("ell"), l);
        for (std::size_t n = c.q() - 1; n <= s.size(); n += c.q() - 1) EXPECT_FALSE(s.prefix(n).all_zero());
    }
    EXPECT_EQ(hermitian_sequence(HermitianCurve(2)).size(), 3u);
    EXPECT_EQ(hermitian_sequence(HermitianCurve(3)).size(), 16u);
    EXPECT_EQ(hermitian_sequence(HermitianCurve(4)).size(), 45u);
}

TEST(Hermitian, SequenceValues) {
    // l = 2: P_1 = (1, 3), h = (y - 3)/(x - 1) read at phi^t(P_1)
    HermitianCurve c(2);
    const auto s = hermitian_sequence(c);
    const auto h = construct_h(c, CurvePoint::affine(1, 2));
    for (std::int64_t t = 0; t < 3; ++t) EXPECT_EQ(s[t], eval_h(c, h, c.phi(CurvePoint::affine(1, 3), t)));
    EXPECT_EQ(s[0], 1u);
}

TEST(Hermitian, DescribeMentionsPole) {
    HermitianCurve c(3);
    const auto h = construct_h(c, orbit_decomposition(c).Q());
    const auto text = describe_h(c, h);
    EXPECT_NE(text.find("nu_inf=-5"), std::string::npos);
    EXPECT_NE(text.find("g=3"), std::string::npos);
}
