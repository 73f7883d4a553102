#include <doctest.h>

#include "testutil.hpp"

using namespace bdiv;
using namespace testutil;

TEST_CASE("slope bound certificate on SCEN-B") {
    SurfacePair p = scen_b_pair();
    ExpConnection m = scen_b_m();
    ConnectionAnalysis a = analyze_connection(&p, m);
    BoundReport r = slope_bound_certificate(p, m, a, Coeffs{{"Lx", 2}});
    CHECK(r.ok);
    CHECK(r.bound == Rat(4));  // 2 * fdeg(2 Lx)
    CHECK(r.attained <= r.bound);
    CHECK(!r.certificate.empty());
    // turning points off the support of f
    try {
        slope_bound_certificate(p, m, a, Coeffs{{"Lz", 1}});
        FAIL("expected TurningOutsideZeroLocus");
    } catch (const CalcError& e) {
        CHECK(e.code() == Err::TurningOutsideZeroLocus);
    }
}

TEST_CASE("slope bound certificate is trivial for regular connections") {
    SurfacePair p = scen_b_pair();
    ExpConnection reg = monomial_connection({}, 2);
    ConnectionAnalysis a = analyze_connection(&p, reg);
    BoundReport r = slope_bound_certificate(p, reg, a, Coeffs{{"Lx", 1}});
    CHECK(r.ok);
    CHECK(r.bound == Rat(0));
    CHECK(r.attained == Rat(0));
}

TEST_CASE("hom irregularity bound") {
    SurfacePair p = scen_b_pair();
    // same exponents, distinct tags: Irr(Hom) = Irr(E^phi) <= 2 Irr
    ExpConnection m1 = monomial_connection({{"Lx", -2}}, 1, "c1");
    ExpConnection m2 = monomial_connection({{"Lx", -2}}, 1, "c2");
    BoundReport r = hom_irr_bound_check(p, m1, m2);
    CHECK(r.ok);
    CHECK(r.attained == Rat(2));
    CHECK(r.bound == Rat(4));
    // M vs M (End): Irr(X, End) <= 2 r^2 Irr(X, M)
    BoundReport re = hom_irr_bound_check(p, scen_b_m(), scen_b_m());
    CHECK(re.ok);
    // regular pair
    BoundReport rr = hom_irr_bound_check(p, monomial_connection({}), monomial_connection({}));
    CHECK(rr.ok);
    CHECK(rr.bound == Rat(0));
    CHECK(rr.attained == Rat(0));
}

TEST_CASE("turning criterion at smooth points of D") {
    {
        SurfacePair p = scen_b_pair();
        CHECK(turning_criterion(p, scen_b_m(), "pxy"));
        CHECK(!turning_criterion(p, scen_b_m(), "pyz"));
        // D-double point rejected
        try {
            turning_criterion(p, scen_b_m(), "pxz");
            FAIL("expected PointNotSmoothOnD");
        } catch (const CalcError& e) {
            CHECK(e.code() == Err::PointNotSmoothOnD);
        }
    }
    {
        SurfacePair p = scen_c_pair();
        CHECK(turning_criterion(p, scen_c_m(), "pxy"));
        CHECK(!turning_criterion(p, scen_c_m(), "pyinf"));
    }
    {
        // good monomial point: integral 0
        SurfacePair p = scen_b_pair();
        CHECK(!turning_criterion(p, monomial_connection({{"Lx", -1}}), "pxy"));
    }
}

TEST_CASE("turning count bound on the fixtures") {
    {
        SurfacePair p = scen_b_pair();
        BoundReport r = turning_count_bound(p, scen_b_m());
        CHECK(r.ok);
        CHECK(r.attained == Rat(2));
        CHECK(r.bound == Rat(3));  // |D^sing| = 1 plus smooth integral 2
    }
    {
        SurfacePair p = scen_a_pair();
        BoundReport r = turning_count_bound(p, scen_a_m());
        CHECK(r.ok);
        CHECK(r.attained == Rat(2));
        CHECK(r.bound == Rat(3));  // |D^sing| = 3 plus 0
    }
    {
        SurfacePair p = scen_a_pair();
        BoundReport r = turning_count_bound(p, monomial_connection({}, 2));
        CHECK(r.ok);
        CHECK(r.attained == Rat(0));
        CHECK(r.bound == Rat(3));
    }
}

TEST_CASE("lefschetz_count") {
    SurfacePair p = scen_a_pair();
    // L = fdeg: K(Lx, 1) = fdeg(2 Lx) + 1 = 3
    BoundPolynomial lin;
    lin.terms.push_back({1, {}, 1, 0});
    CHECK(lefschetz_count(lin, p, Coeffs{{"Lx", 1}}, 1) == 3);
    // r = 0: L(0, 0) + 1
    BoundPolynomial affine;
    affine.terms.push_back({5, {}, 0, 0});
    affine.terms.push_back({1, {}, 1, 1});
    CHECK(lefschetz_count(affine, p, Coeffs{{"Lx", 3}}, 0) == 6);
    // L = fdeg^2: K(Lx + Lz, 2) = (8 * 2)^2 + 1 = 257
    BoundPolynomial quad;
    quad.terms.push_back({1, {}, 2, 0});
    CHECK(lefschetz_count(quad, p, Coeffs{{"Lx", 1}, {"Lz", 1}}, 2) == 257);
    // per-curve coefficients are supported too
    BoundPolynomial percurve;
    percurve.terms.push_back({1, {{"Lx", 1}}, 0, 0});
    CHECK(lefschetz_count(percurve, p, Coeffs{{"Lx", 1}}, 1) == 3);
}

TEST_CASE("recognition obstruction") {
    {
        SurfacePair p = scen_b_pair();
        // identical fixtures still recognize each other as independent objects
        auto pts = recognition_obstruction(p, scen_b_m(), scen_b_m());
        CHECK(pts == std::vector<Symbol>{"pxy", "pxz"});
    }
    {
        SurfacePair p = scen_b_pair();
        auto pts = recognition_obstruction(p, monomial_connection({}), monomial_connection({}, 2));
        CHECK(pts == std::vector<Symbol>{"pxz"});  // D^sing only
    }
    {
        SurfacePair p = scen_a_pair();
        ExpConnection m = scen_a_m();
        ExpConnection twist = monomial_connection({{"Lx", -1}, {"Ly", -1}, {"Lz", 2}}, 1, "c2");
        auto pts = recognition_obstruction(p, m, twist);
        // turning points of E^{+-phi} twists are SCEN-A's own, plus D^sing
        CHECK(pts == std::vector<Symbol>{"pxy", "pxz", "pyz"});
    }
}

TEST_CASE("obstruction count is bounded by the smooth-locus delta integrals") {
    std::mt19937_64 rng(61);
    int done = 0;
    for (int i = 0; i < 40 && done < 12; ++i) {
        RandomScenario s = random_scenario(rng);
        if (s.connections.size() < 2) continue;
        ++done;
        const ExpConnection& m1 = s.connections[0];
        const ExpConnection& m2 = s.connections[1];
        auto pts = recognition_obstruction(s.pair, m1, m2);
        ExpConnection a = retag(m1, "a:");
        ExpConnection b = retag(m2, "b:");
        Int bound = static_cast<Int>(s.pair.d_singular_points().size());
        const ExpConnection* slot[2] = {&a, &b};
        for (int u = 0; u < 2; ++u)
            for (int v = 0; v < 2; ++v) {
                ExpConnection hom = hom_connection(*slot[u], *slot[v]);
                ConnectionAnalysis ah = analyze_connection(&s.pair, hom);
                ConnectionAnalysis ae = analyze_connection(&s.pair, end_connection(hom));
                bound += integral(ah.delta, s.pair, Region::SmoothLocusOfD) +
                         integral(ae.delta, s.pair, Region::SmoothLocusOfD);
            }
        CHECK(static_cast<Int>(pts.size()) <= bound);
    }
    CHECK(done > 0);
}

TEST_CASE("turning criterion agrees with the locus over random scenarios") {
    std::mt19937_64 rng(71);
    for (int i = 0; i < 25; ++i) {
        RandomScenario s = random_scenario(rng);
        for (const auto& m : s.connections)
            for (const auto& pid : s.pair.d_smooth_points())
                CHECK_NOTHROW(turning_criterion(s.pair, m, pid));
    }
}
