#include <doctest.h>

#include "testutil.hpp"

using namespace bdiv;
using namespace testutil;

TEST_CASE("validate_pair accepts the coordinate-lines fixture") {
    SurfacePair p = three_lines();
    CHECK_NOTHROW(validate_pair(p));
}

TEST_CASE("validate_pair rejects duplicate ids") {
    SurfacePair p = three_lines();
    p.curves.push_back({"Lx", 0, true});
    CHECK_THROWS_WITH_AS(validate_pair(p), doctest::Contains("DuplicateId"), CalcError);
}

TEST_CASE("validate_pair rejects triple incidence") {
    SurfacePair p = three_lines();
    p.points.push_back({"bad", {"Lx", "Ly", "Lz"}});
    try {
        validate_pair(p);
        FAIL("expected TripleIncidence");
    } catch (const CalcError& e) {
        CHECK(e.code() == Err::TripleIncidence);
    }
}

TEST_CASE("validate_pair rejects unknown curve references") {
    SurfacePair p = three_lines();
    p.points.push_back({"q", {"Q"}});
    try {
        validate_pair(p);
        FAIL("expected UnknownCurveRef");
    } catch (const CalcError& e) {
        CHECK(e.code() == Err::UnknownCurveRef);
    }
}

TEST_CASE("euler_open_complement on P^2 minus lines") {
    SurfacePair one = three_lines(true, false, false);
    CHECK(euler_open_complement(one) == 1);  // affine plane
    SurfacePair two = three_lines(true, true, false);
    CHECK(euler_open_complement(two) == 0);  // C x C*
    SurfacePair three = three_lines();
    CHECK(euler_open_complement(three) == 0);  // torus (C*)^2
}

TEST_CASE("stratum_euler") {
    SurfacePair p = three_lines();
    CHECK(stratum_euler(p, {"Lx"}) == 0);  // line minus two points
    CHECK(stratum_euler(p, {"Lx", "Lz"}) == 1);
    CHECK(stratum_euler(p, {"Lx", "Ly", "Lz"}) == 0);
    SurfacePair b = scen_b_pair();
    // pxy does not remove a point from the Lx stratum (Ly is auxiliary)
    CHECK(stratum_euler(b, {"Lx"}) == 1);
    CHECK_THROWS_AS(stratum_euler(b, {"Ly"}), CalcError);
}

TEST_CASE("inclusion-exclusion closure over random configurations") {
    std::mt19937_64 rng(12345);
    for (int i = 0; i < 50; ++i) {
        RandomScenario s = random_scenario(rng);
        Int sum = euler_open_complement(s.pair);
        for (const auto& c : s.pair.curves)
            if (c.in_d) sum += stratum_euler(s.pair, {c.id});
        sum += static_cast<Int>(s.pair.d_singular_points().size());
        CHECK(sum == s.pair.chi_top);
    }
}

TEST_CASE("euler_open_complement is a pure function of the D flags") {
    SurfacePair p = scen_b_pair();
    Int before = euler_open_complement(p);
    SurfacePair q = p;  // toggling a flag off and back changes nothing
    q.curves[1].in_d = true;
    q.curves[1].in_d = false;
    CHECK(euler_open_complement(q) == before);
}
