#include <gtest/gtest.h>

#include <random>
#include <set>

#include "casimir/polyfit.hpp"
#include "casimir/registry.hpp"
#include "casimir/reps.hpp"

using namespace casimir;

namespace {

// Lagrange form evaluated directly; independent of the elimination solver.
Rational lagrange_eval(const std::vector<std::pair<Rational, Rational>>& pts, const Rational& x) {
    Rational sum = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Rational term = pts[i].second;
        for (std::size_t k = 0; k < pts.size(); ++k)
            if (k != i) term *= (x - pts[k].first) / (pts[i].first - pts[k].first);
        sum += term;
    }
    return sum;
}

std::vector<InterpolationPoint> points(std::initializer_list<std::pair<long, const char*>> l) {
    std::vector<InterpolationPoint> out;
    for (auto& [D, v] : l) out.push_back({BigInt(D), BigInt(v)});
    return out;
}

}  // namespace

TEST(BuiltinD, SpotValues) {
    EXPECT_EQ(eval_d(2, 14), 77);
    EXPECT_EQ(eval_d(5, 52), 1582308);
    EXPECT_EQ(eval_d(5, 52), 629356 + 952952);
    EXPECT_EQ(eval_d(3, 3), -5);
    EXPECT_EQ(eval_d(4, 8), -70);
    EXPECT_EQ(eval_d(6, 14), -1547);
    EXPECT_EQ(eval_d(7, 14), 506);
    EXPECT_EQ(eval_d(8, 28), -554400);
    EXPECT_EQ(eval_d(9, 12), -836);
    EXPECT_EQ(eval_d(6, 6), 11);
    EXPECT_EQ(eval_d(7, 8), 0);
    for (int j = kMinBuiltinJ; j <= kMaxBuiltinJ; ++j) EXPECT_EQ(eval_d(j, 0), 0) << j;
}

TEST(BuiltinD, LeadingAndConstantCoefficients) {
    for (int j = kMinBuiltinJ; j <= kMaxBuiltinJ; ++j) {
        RatPoly p = builtin_d(j);
        EXPECT_EQ(p.degree(), j);
        EXPECT_EQ(p.leading(), Rational(1) / Rational(factorial(j)));
        EXPECT_EQ(p.coeff(0), 0);
    }
    EXPECT_THROW(builtin_d(1), ValidationError);
    EXPECT_THROW(builtin_d(10), ValidationError);
}

TEST(BuiltinD, ClosedFormsForLowJ) {
    // d_2 = D(D-3)/2, d_3 = D(D-1)(D-8)/3!, d_4 = D(D-1)(D-3)(D-14)/4!
    for (long D = -30; D <= 300; D += 7) {
        BigInt b(D);
        EXPECT_EQ(eval_d(2, b), b * (b - 3) / 2);
        EXPECT_EQ(eval_d(3, b), b * (b - 1) * (b - 8) / 6);
        EXPECT_EQ(eval_d(4, b), b * (b - 1) * (b - 3) * (b - 14) / 24);
    }
}

TEST(RatPoly, Arithmetic) {
    RatPoly x = RatPoly::x();
    RatPoly p = (x - RatPoly::constant(1)) * (x + RatPoly::constant(1));
    EXPECT_EQ(p, x * x - RatPoly::constant(1));
    EXPECT_EQ(p(Rational(3)), 8);
    EXPECT_EQ(p.divide_linear(1).first, x + RatPoly::constant(1));
    EXPECT_EQ(p.divide_linear(1).second, 0);
    EXPECT_EQ((p - p).degree(), -1);
    EXPECT_EQ(product_of_roots({0, 3}), x * x - RatPoly::constant(3) * x);
}

TEST(Interpolate, ReDerivesQuinticFromEightPoints) {
    auto pts = points({{3, "0"}, {8, "-64"}, {14, "-924"}, {28, "26180"}, {52, "1582308"}, {78, "15633540"},
                       {133, "272722086"}, {248, "6899079264"}});
    EXPECT_EQ(BigInt(26180), 3 * 3696 + 15092);
    EXPECT_EQ(BigInt(15633540), 2 * 1559376 + 12514788);
    EXPECT_EQ(BigInt(272722086), 163601438 + 109120648);
    auto res = interpolate(pts);
    EXPECT_EQ(res.poly, builtin_d(5));
    for (auto& r : res.residuals) EXPECT_EQ(r, 0);
}

TEST(Interpolate, TwoPointsWithLeadingCoefficient) {
    InterpolationConstraints cons;
    cons.leading = Rational(1, 2);
    auto res = interpolate(points({{0, "0"}, {3, "0"}}), cons);
    EXPECT_EQ(res.poly, builtin_d(2));
}

TEST(Interpolate, AgreesWithLagrangeOracle) {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> coord(-500, 500);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 8;
        std::vector<InterpolationPoint> pts;
        std::vector<std::pair<Rational, Rational>> lp;
        std::set<long> used;
        while (static_cast<int>(pts.size()) < n) {
            long D = coord(rng);
            if (!used.insert(D).second) continue;
            BigInt v = coord(rng) * 1000 + coord(rng);
            pts.push_back({BigInt(D), v});
            lp.emplace_back(Rational(D), Rational(v));
        }
        auto res = interpolate(pts);
        for (long x = -20; x <= 20; x += 3) EXPECT_EQ(res.poly(Rational(x)), lagrange_eval(lp, Rational(x)));
    }
}

TEST(Interpolate, Errors) {
    EXPECT_THROW(interpolate({}), InterpolationError);
    EXPECT_THROW(interpolate(points({{1, "1"}, {1, "2"}})), InterpolationError);
    InterpolationConstraints line;
    line.degree = 1;
    try {
        interpolate(points({{0, "0"}, {1, "1"}, {2, "5"}}), line);
        FAIL() << "inconsistent data accepted";
    } catch (const InterpolationError& e) {
        EXPECT_NE(std::string(e.what()).find("D=2"), std::string::npos) << e.what();
    }
    InterpolationConstraints cubic;
    cubic.degree = 3;
    EXPECT_THROW(interpolate(points({{0, "0"}, {1, "1"}}), cubic), InterpolationError);
    // overdetermined but consistent
    auto ok = interpolate(points({{0, "0"}, {1, "1"}, {2, "2"}, {5, "5"}}), line);
    EXPECT_EQ(ok.poly, RatPoly::x());
}

TEST(IntegerRoots, TableFactorizations) {
    auto r9 = integer_roots(builtin_d(9));
    EXPECT_EQ(r9.roots, (std::vector<BigInt>{0, 1, 3, 4, 14, 26}));
    EXPECT_EQ(r9.residual, RatPoly({-120, 491, -60, 1}));
    auto r5 = integer_roots(builtin_d(5));
    EXPECT_EQ(r5.roots, (std::vector<BigInt>{0, 3, 6}));
    EXPECT_EQ(r5.residual, RatPoly({8, -21, 1}));
    auto r2 = integer_roots(builtin_d(2));
    EXPECT_EQ(r2.roots, (std::vector<BigInt>{0, 3}));
    EXPECT_EQ(r2.residual.degree(), 0);
    EXPECT_EQ(integer_roots(RatPoly({4, 0, 1})).roots.size(), 0u);
    EXPECT_EQ(integer_roots(RatPoly({0, 0, 1})).roots, (std::vector<BigInt>{0, 0}));
}

TEST(IntegerRoots, RoundTrip) {
    for (int j = kMinBuiltinJ; j <= kMaxBuiltinJ; ++j) {
        auto rx = integer_roots(builtin_d(j));
        RatPoly back = RatPoly::constant(rx.content) * rx.residual;
        for (auto& r : rx.roots) back = back * RatPoly::linear_factor(Rational(r));
        EXPECT_EQ(back, builtin_d(j)) << j;
        EXPECT_TRUE(integer_roots(rx.residual).roots.empty()) << j;
    }
}

TEST(IntegerRoots, FactoredTypography) {
    EXPECT_EQ(to_factored_string(builtin_d(5)), "1/5! · D(D−3)(D−6)(D²−21D+8)");
    EXPECT_EQ(to_factored_string(builtin_d(2)), "1/2! · D(D−3)");
    EXPECT_EQ(to_factored_string(builtin_d(9)), "1/9! · D(D−1)(D−3)(D−4)(D−14)(D−26)(D³−60D²+491D−120)");
}

TEST(IntegralityScan, AllBuiltinsOnWideRange) {
    for (int j = kMinBuiltinJ; j <= kMaxBuiltinJ; ++j) {
        auto rep = integrality_scan(j, -10000, 10000);
        EXPECT_TRUE(rep.all_integral) << j;
        EXPECT_TRUE(rep.counterexamples.empty());
    }
    auto a = integrality_scan(7, -100, 0);
    auto b = integrality_scan(7, 1, 100);
    auto c = integrality_scan(7, -100, 100);
    EXPECT_EQ(a.all_integral && b.all_integral, c.all_integral);
    EXPECT_THROW(integrality_scan(5, 3, 2), ValidationError);
}

TEST(Parametrization, TableColumns) {
    auto e8 = param_maps(8);
    EXPECT_EQ(e8.D, 248);
    EXPECT_EQ(e8.alpha, Rational(1, 30));
    EXPECT_EQ(e8.h_dual, 30);
    auto g2 = param_maps(Rational(-2, 3));
    EXPECT_EQ(g2.D, 14);
    EXPECT_EQ(g2.alpha, Rational(1, 4));
    EXPECT_THROW(param_maps(-4), ValidationError);
    EXPECT_THROW(param_maps(-2), ValidationError);
    EXPECT_EQ(m_from_dual_coxeter(30), 8);
}

TEST(Parametrization, IdentityH101) {
    auto [lhs, rhs] = identity_h101(1);
    EXPECT_EQ(lhs, 1620);
    EXPECT_EQ(rhs, 1620);
    std::mt19937 rng(101);
    std::uniform_int_distribution<long> num(-1000, 1000), den(1, 97);
    for (int t = 0; t < 100; ++t) {
        Rational m(num(rng), den(rng));
        if (m == -4 || m == -2) continue;
        auto [l, r] = identity_h101(m);
        EXPECT_EQ(l, r) << to_fraction_string(m);
    }
    EXPECT_EQ(h101_discriminants(), std::make_pair(BigInt(409), BigInt(409)));
}

TEST(LinearFactors, AlgebrasAtRootsLackCasimirJIrreps) {
    struct Case {
        int j;
        const char* algebra;
    };
    for (auto [j, name] : {Case{5, "A1+A1"}, Case{6, "B2"}, Case{8, "A1+A1"}, Case{7, "A1"}, Case{9, "A1"},
                           Case{5, "A1"}, Case{7, "A2"}}) {
        auto d = datum_for(name);
        EXPECT_EQ(eval_d(j, d->dimension()), 0) << name << " j=" << j;
        EXPECT_TRUE(irreps_with_casimir(*d, j).empty()) << name << " j=" << j;
    }
}
