#include <doctest.h>

#include "testutil.hpp"

using namespace bdiv;
using namespace testutil;

namespace {

BlowUpSpec at_point(const Symbol& id, const Symbol& point, std::vector<Symbol> on) {
    BlowUpSpec s;
    s.id = id;
    s.kind = BaseKind::Marked;
    s.base = point;
    s.incident = std::move(on);
    return s;
}

BlowUpSpec satellite(const Symbol& id, const Symbol& host, std::vector<Symbol> branches) {
    BlowUpSpec s;
    s.id = id;
    s.kind = BaseKind::OnNode;
    s.base = host;
    s.incident = std::move(branches);
    return s;
}

}  // namespace

TEST_CASE("fdeg") {
    SurfacePair p = three_lines();
    CHECK(fdeg(p, Coeffs{{"Lx", 2}, {"Lz", 3}}) == 5);
    CHECK(fdeg(p, Coeffs{}) == 0);
    SurfacePair b = scen_b_pair();
    try {
        fdeg(b, Coeffs{{"Lx", 1}, {"Ly", 1}});
        FAIL("expected SupportOffD");
    } catch (const CalcError& e) {
        CHECK(e.code() == Err::SupportOffD);
    }
}

TEST_CASE("evaluate and incarnation of Cartier b-divisors") {
    SurfacePair p = three_lines();
    CartierBDivisor z = CartierBDivisor::on_x(&p, Coeffs{{"Lx", 1}});
    auto m1 = std::make_shared<Model>(Model(&p).blow_up(at_point("n1", "pxy", {"Lx", "Ly"})));
    // incarnation on a 1-blow-up model: Lx' + E
    Coeffs inc = incarnation(z, *m1);
    CHECK(coeff_of(inc, "Lx") == 1);
    CHECK(coeff_of(inc, "n1") == 1);
    // determined on Y, incarnated on Y: the divisor itself
    CartierBDivisor zy{m1, Coeffs{{"Lx", 2}, {"n1", 5}}};
    CHECK(incarnation(zy, *m1) == zy.divisor);
    // determined on Y, incarnated on X: the pushforward
    Model x(&p);
    Coeffs down = incarnation(zy, x);
    CHECK(down == Coeffs{{"Lx", 2}});
}

TEST_CASE("partial discrepancy vanishes on pullback systems of divisors on X") {
    SurfacePair p = three_lines();
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<Int> dc(0, 4);
    for (int i = 0; i < 40; ++i) {
        Coeffs div;
        for (const auto& c : p.curves) set_coeff(div, c.id, dc(rng));
        CartierBDivisor z = CartierBDivisor::on_x(&p, div);
        for (const auto& v : probe_valuations(z.determination, 3)) {
            CHECK(partial_discrepancy_at(z, v) == 0);
        }
    }
}

TEST_CASE("partial discrepancy of the SCEN-C irregularity b-divisor") {
    SurfacePair p = scen_c_pair();
    ConnectionAnalysis a = analyze_connection(&p, scen_c_m());
    REQUIRE(a.resolution->nodes().size() == 1);
    Symbol n1 = a.resolution->nodes().front().id;
    DivValuation v = DivValuation::exceptional(a.resolution, n1);
    CHECK(partial_discrepancy_at(a.irr, v) == 1);
    // a valuation rooted at the D-double point has discrepancy 0
    Model ext = *a.resolution;
    ext = ext.blow_up(at_point("q1", "pxinf", {"Linf", "Lx"}));
    auto extp = std::make_shared<Model>(ext);
    CHECK(partial_discrepancy_at(a.irr, DivValuation::exceptional(extp, "q1")) == 0);
}

TEST_CASE("delta_divisor support on the fixtures") {
    {
        SurfacePair p = scen_b_pair();
        ConnectionAnalysis a = analyze_connection(&p, scen_b_m());
        // support {v1 -> 1, v2 -> 1} over pxy, nothing over the D-double point
        CHECK(a.delta.effective());
        Int total = 0;
        int nonzero = 0;
        for (const auto& [v, val] : a.delta.support) {
            total += val;
            if (val != 0) ++nonzero;
        }
        CHECK(total == 2);
        CHECK(nonzero == 2);
        CHECK(integral(a.delta, p, Region::Point, "pxy") == 2);
        CHECK(integral(a.delta, p, Region::Point, "pxz") == 0);
        CHECK(integral(a.delta, p, Region::SingularLocusOfD) == 0);
        CHECK(integral(a.delta, p, Region::SmoothLocusOfD) == 2);
        CHECK(integral(a.delta, p, Region::All) == 2);
        CHECK(integral(a.delta, p, Region::Curve, "Lx") == 2);
    }
    {
        SurfacePair p = scen_a_pair();
        ConnectionAnalysis a = analyze_connection(&p, scen_a_m());
        CHECK(integral(a.delta, p, Region::All) == 0);  // all centres D-singular
        CHECK(a.delta.support.empty());
    }
}

TEST_CASE("delta of a Cartier-on-X system has empty support") {
    SurfacePair p = three_lines();
    CartierBDivisor z = CartierBDivisor::on_x(&p, Coeffs{{"Lx", 2}, {"Ly", 1}});
    CHECK(delta_divisor(z).support.empty());
}

TEST_CASE("delta additivity over root points") {
    SurfacePair p = scen_b_pair();
    ConnectionAnalysis a = analyze_connection(&p, scen_b_m());
    Int by_points = 0;
    for (const auto& mp : p.points) by_points += integral(a.delta, p, Region::Point, mp.id);
    CHECK(by_points == integral(a.delta, p, Region::All));
}

TEST_CASE("delta requires (X,D)-support") {
    SurfacePair p = scen_b_pair();
    // nonzero coefficient on the auxiliary curve Ly
    CartierBDivisor z = CartierBDivisor::on_x(&p, Coeffs{{"Ly", 1}});
    try {
        delta_divisor(z);
        FAIL("expected NotXDBDivisor");
    } catch (const CalcError& e) {
        CHECK(e.code() == Err::NotXDBDivisor);
    }
}

TEST_CASE("nef probe: pullback of an effective divisor is nef") {
    SurfacePair p = three_lines();
    CartierBDivisor z = CartierBDivisor::on_x(&p, Coeffs{{"Lx", 2}, {"Lz", 1}});
    CHECK(is_nef_probe(z, 2).nef);
}

TEST_CASE("nef probe: +E fails with witness (X, v_E), -E passes") {
    SurfacePair p = three_lines();
    auto m1 = std::make_shared<Model>(Model(&p).blow_up(at_point("n1", "pxy", {"Lx", "Ly"})));
    CartierBDivisor plus{m1, Coeffs{{"n1", 1}}};
    NefProbeResult r = is_nef_probe(plus, 2);
    CHECK(!r.nef);
    CHECK(r.witness.find("W={X}") != std::string::npos);
    CartierBDivisor minus{m1, Coeffs{{"n1", -1}}};
    CHECK(is_nef_probe(minus, 2).nef);
}

TEST_CASE("nef probe: irregularity b-divisors of the fixtures are nef") {
    {
        SurfacePair p = scen_a_pair();
        CHECK(is_nef_probe(analyze_connection(&p, scen_a_m()).irr, 3).nef);
    }
    {
        SurfacePair p = scen_b_pair();
        CHECK(is_nef_probe(analyze_connection(&p, scen_b_m()).irr, 3).nef);
    }
    {
        SurfacePair p = scen_c_pair();
        CHECK(is_nef_probe(analyze_connection(&p, scen_c_m()).irr, 3).nef);
    }
}

TEST_CASE("delta of a nef-probed b-divisor is effective") {
    SurfacePair p = three_lines();
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<Int> dc(0, 3);
    int checked = 0;
    for (int i = 0; i < 30; ++i) {
        // nef fixtures: pullback systems twisted into a deeper determination
        Coeffs div;
        for (const auto& c : p.curves) set_coeff(div, c.id, dc(rng));
        Model m = Model(&p).blow_up(at_point("n1", "pxy", {"Lx", "Ly"}));
        m = m.blow_up(satellite("n2", "n1", {"Lx", "n1"}));
        auto det = std::make_shared<Model>(m);
        CartierBDivisor z{det, total_transform_on(*det, div)};
        if (!is_nef_probe(z, 3).nef) continue;
        CHECK(delta_divisor(z).support.empty());  // pullback system
        ++checked;
        // and the irregularity divisors of random connections
        RandomScenario s = random_scenario(rng);
        for (const auto& mconn : s.connections) {
            ConnectionAnalysis a = analyze_connection(&s.pair, mconn);
            if (is_nef_probe(a.irr, 2).nef) CHECK(a.delta.effective());
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("multiplicity estimate on admissible chains") {
    SurfacePair p = three_lines();
    // R = 3 Lx, Z = Lx, one blow-up on Lx: 3 <= 2*3*1
    std::vector<ChainStep> chain{{BaseKind::FreeOnCurve, "Lx", {"Lx"}, "t0"}};
    MultiplicityReport r = check_multiplicity_estimate(p, Coeffs{{"Lx", 3}}, Coeffs{{"Lx", 1}}, chain);
    CHECK(r.ok);
    // chain rooted off the support of Z
    std::vector<ChainStep> off{{BaseKind::FreeOnCurve, "Lz", {"Lz"}, "t0"}};
    try {
        check_multiplicity_estimate(p, Coeffs{{"Lx", 1}}, Coeffs{{"Lx", 1}}, off);
        FAIL("expected NotAdmissible");
    } catch (const CalcError& e) {
        CHECK(e.code() == Err::NotAdmissible);
    }
}

TEST_CASE("multiplicity estimate holds over random admissible chains") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<Int> dr(0, 4);
    std::uniform_int_distribution<int> dlen(1, 6);
    for (int trial = 0; trial < 120; ++trial) {
        RandomScenario s = random_scenario(rng);
        // random effective R and Z supported on D
        Coeffs r_div, z_div;
        for (const auto& c : s.pair.curves) {
            if (!c.in_d) continue;
            set_coeff(r_div, c.id, dr(rng));
            set_coeff(z_div, c.id, dr(rng));
        }
        if (z_div.empty()) continue;
        // grow an admissible chain on a scratch model
        Model m(&s.pair);
        std::vector<ChainStep> steps;
        int len = dlen(rng);
        int created = 0;
        for (int i = 0; i < len; ++i) {
            Coeffs zt = total_transform_on(m, z_div);
            struct Choice {
                ChainStep step;
                BlowUpSpec spec;
            };
            std::vector<Choice> choices;
            for (const auto& pt : m.current_points()) {
                bool on_z = false;
                for (const auto& b : pt.branches)
                    if (coeff_of(zt, b) != 0) on_z = true;
                if (!on_z) continue;
                Choice ch;
                ch.step.kind = pt.kind;
                ch.step.incident = pt.branches;
                ch.spec.kind = pt.kind;
                ch.spec.incident = pt.branches;
                if (pt.kind == BaseKind::Marked) {
                    ch.step.base = pt.marked_id;
                    ch.spec.base = pt.marked_id;
                } else {
                    ch.step.base = pt.host;
                    ch.spec.base = pt.host;
                }
                // translate created node ids into #k references
                choices.push_back(ch);
            }
            for (const auto& b : m.branches()) {
                if (coeff_of(zt, b) == 0) continue;
                Choice ch;
                ch.step.kind = m.is_curve_branch(b) ? BaseKind::FreeOnCurve : BaseKind::OnNode;
                ch.step.base = b;
                ch.step.incident = {b};
                ch.step.tag = "t" + std::to_string(i);
                ch.spec = BlowUpSpec{"", ch.step.kind, b, {b}, ch.step.tag};
                choices.push_back(ch);
            }
            if (choices.empty()) break;
            std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
            Choice ch = choices[pick(rng)];
            // rewrite node references as #k (nodes are created in order)
            auto rewrite = [&](Symbol& ref) {
                if (m.has_node(ref)) {
                    std::size_t k = m.node_pos(ref);
                    ref = "#" + std::to_string(k);
                }
            };
            rewrite(ch.step.base);
            for (auto& b : ch.step.incident) rewrite(b);
            ch.spec.id = "c" + std::to_string(created++);
            m = m.blow_up(ch.spec);
            steps.push_back(ch.step);
        }
        if (steps.empty()) continue;
        MultiplicityReport rep = check_multiplicity_estimate(s.pair, r_div, z_div, steps);
        CHECK(rep.ok);
        if (!rep.ok) {
            MESSAGE("violation: " << rep.violation);
            break;
        }
    }
}
