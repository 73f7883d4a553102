#include "report.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

namespace bdiv {

using nlohmann::ordered_json;

namespace {

std::string coeffs_str(const Coeffs& c) {
    if (c.empty()) return "0";
    std::string out;
    for (const auto& [b, v] : c) {
        if (!out.empty()) out += " + ";
        out += std::to_string(v) + "*" + b;
    }
    return out;
}

std::string rat_str(const Rat& r) {
    std::string s = std::to_string(r.numerator());
    if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
    return s;
}

std::string point_str(const SurfacePair& pair, const Model::Point& pt) {
    std::string s = pt.key();
    if (pt.kind == BaseKind::Marked && pair.d_branches_at(*pair.find_point(pt.marked_id)) == 2)
        s += " [D-singular]";
    else
        s += " [D-smooth]";
    return s;
}

int resolution_depth(const Model& m) {
    int depth = 0;
    for (const auto& n : m.nodes())
        depth = std::max(depth, static_cast<int>(m.chain_of(n.id).size()));
    return depth;
}

struct ConnectionReport {
    Symbol name;
    const ExpConnection* m = nullptr;
    ConnectionAnalysis analysis;
    Coeffs irr_x;
    std::vector<Model::Point> turning;  // on X
    LagrangianCycle cc;
    Int chi_route_a = 0;  // rank*chi(U) + pairing(LC) + integral(delta)
    Int chi_route_b = 0;  // pairing(cc_connection)
    bool chi_consistent = true;
    BoundReport turning_bound;
    BoundReport hom_bound;
};

ConnectionReport build(const Scenario& s, const Symbol& name, const ExpConnection& m) {
    ConnectionReport r;
    r.name = name;
    r.m = &m;
    r.analysis = analyze_connection(&s.surface, m, s.options.max_blowups);
    Model x(&s.surface);
    r.irr_x = generic_irr_divisor(m, x);
    r.turning = turning_locus(m, x);
    r.cc = cc_connection(s.surface, m, r.analysis);
    r.chi_route_a = global_chi(s.surface, m, r.analysis);
    r.chi_route_b = index_pairing(s.surface, r.cc);
    r.chi_consistent = r.chi_route_a == r.chi_route_b;
    r.turning_bound = turning_count_bound(s.surface, m, s.options.max_blowups);
    r.hom_bound = hom_irr_bound_check(s.surface, m, m);
    return r;
}

void print_delta_table(std::ostream& os, const Scenario& s, const ConnectionReport& r) {
    os << "delta support:\n";
    const auto& det = *r.analysis.resolution;
    bool any = false;
    for (const auto& n : det.nodes()) {
        DivValuation v = DivValuation::exceptional(r.analysis.resolution, n.id);
        Int d = r.analysis.delta.value(v);
        if (d == 0) continue;
        any = true;
        std::vector<Symbol> chain = det.chain_of(n.id);
        const InfNearNode& root = det.node(chain.front());
        os << "  " << n.id << " (over " << root.base << ", depth " << chain.size() << "): " << d
           << "\n";
    }
    if (!any) os << "  (empty)\n";
    os << "delta integrals:\n";
    for (const auto& p : s.surface.points) {
        Int d = integral(r.analysis.delta, s.surface, Region::Point, p.id);
        if (d != 0 || s.surface.point_on_d(p))
            os << "  at " << p.id << ": " << d << "\n";
    }
    os << "  over D-smooth roots: " << integral(r.analysis.delta, s.surface, Region::SmoothLocusOfD)
       << "\n";
    os << "  over D-singular roots: "
       << integral(r.analysis.delta, s.surface, Region::SingularLocusOfD) << "\n";
    os << "  total: " << integral(r.analysis.delta, s.surface, Region::All) << "\n";
}

void print_cc(std::ostream& os, const ConnectionReport& r) {
    os << "CC table:\n";
    os << "  zero section: " << r.cc.zero_section << "\n";
    for (const auto& [c, v] : r.cc.curves) os << "  conormal of " << c << ": " << v << "\n";
    for (const auto& [p, v] : r.cc.points) os << "  conormal at " << p << ": " << v << "\n";
}

void print_bound(std::ostream& os, const BoundReport& b) {
    os << b.name << ": attained " << rat_str(b.attained) << " <= bound " << rat_str(b.bound)
       << (b.ok ? " [ok]" : " [VIOLATED]") << "\n";
}

ordered_json cycle_json(const LagrangianCycle& c) {
    ordered_json j;
    j["zero_section"] = c.zero_section;
    j["curves"] = ordered_json::object();
    for (const auto& [b, v] : c.curves) j["curves"][b] = v;
    j["points"] = ordered_json::object();
    for (const auto& [b, v] : c.points) j["points"][b] = v;
    return j;
}

ordered_json bound_json(const BoundReport& b) {
    ordered_json j;
    j["name"] = b.name;
    j["bound"] = rat_str(b.bound);
    j["attained"] = rat_str(b.attained);
    j["ok"] = b.ok;
    return j;
}

ordered_json connection_json(const Scenario& s, const ConnectionReport& r) {
    ordered_json j;
    j["rank"] = r.m->rank();
    j["irr_on_x"] = ordered_json::object();
    for (const auto& [c, v] : r.irr_x) j["irr_on_x"][c] = v;
    j["resolution_depth"] = resolution_depth(*r.analysis.resolution);
    j["resolution_nodes"] = r.analysis.resolution->nodes().size();
    ordered_json delta = ordered_json::object();
    for (const auto& n : r.analysis.resolution->nodes()) {
        Int d = r.analysis.delta.value(DivValuation::exceptional(r.analysis.resolution, n.id));
        if (d != 0) delta[n.id] = d;
    }
    j["delta"] = std::move(delta);
    j["delta_total"] = integral(r.analysis.delta, s.surface, Region::All);
    ordered_json tl = ordered_json::array();
    for (const auto& pt : r.turning) tl.push_back(point_str(s.surface, pt));
    j["turning_locus"] = std::move(tl);
    j["cc"] = cycle_json(r.cc);
    j["chi_route_a"] = r.chi_route_a;
    j["chi_route_b"] = r.chi_route_b;
    j["chi_consistent"] = r.chi_consistent;
    j["bounds"] = ordered_json::array({bound_json(r.turning_bound), bound_json(r.hom_bound)});
    return j;
}

}  // namespace

std::string emit_dot(const Scenario& scenario, const Symbol& connection_name) {
    const ExpConnection* m = scenario.find_connection(connection_name);
    if (!m)
        throw CalcError(Err::ValidationError, "no connection '" + connection_name + "'");
    ConnectionAnalysis a = analyze_connection(&scenario.surface, *m, scenario.options.max_blowups);
    const Model& det = *a.resolution;
    std::ostringstream os;
    os << "digraph valtree {\n";
    for (const auto& n : det.nodes()) {
        Int irr = coeff_of(a.irr.divisor, n.id);
        Int d = a.delta.value(DivValuation::exceptional(a.resolution, n.id));
        std::string incident;
        for (const auto& b : n.incident) {
            if (!incident.empty()) incident += ",";
            incident += b;
        }
        os << "  \"" << n.id << "\" [label=\"" << n.id << ": irr=" << irr << ", δ=" << d
           << "\", incident=\"" << incident << "\"";
        if (n.kind != BaseKind::OnNode) os << ", root=\"" << n.base << "\"";
        os << "];\n";
    }
    for (const auto& n : det.nodes())
        if (n.kind == BaseKind::OnNode) os << "  \"" << n.base << "\" -> \"" << n.id << "\";\n";
    os << "}\n";
    return os.str();
}

RunResult run_command(const std::string& command, const Scenario& s, const Symbol& connection_name,
                      const Symbol& divisor_name, Format fmt) {
    std::ostringstream os;
    auto pick_connection = [&]() -> std::pair<Symbol, const ExpConnection*> {
        if (!connection_name.empty()) {
            const ExpConnection* m = s.find_connection(connection_name);
            if (!m)
                throw CalcError(Err::ValidationError, "no connection '" + connection_name + "'");
            return {connection_name, m};
        }
        if (s.connections.size() == 1)
            return {s.connections.front().first, &s.connections.front().second};
        throw CalcError(Err::ValidationError, "choose a connection with --connection");
    };

    if (command == "validate") {
        validate_pair(s.surface);
        for (const auto& [name, m] : s.connections) validate_connection(s.surface, m);
        os << "scenario OK: " << s.surface.curves.size() << " curves, " << s.surface.points.size()
           << " points, " << s.connections.size() << " connections, " << s.divisors.size()
           << " divisors\n";
        return {0, os.str()};
    }

    if (command == "turning") {
        auto [name, m] = pick_connection();
        Model x(&s.surface);
        auto tl = turning_locus(*m, x);
        os << "turning locus of " << name << " on X: " << tl.size() << " point(s)\n";
        for (const auto& pt : tl) os << "  " << point_str(s.surface, pt) << "\n";
        return {0, os.str()};
    }

    if (command == "irr") {
        auto [name, m] = pick_connection();
        ConnectionReport r = build(s, name, *m);
        if (fmt == Format::Json) {
            ordered_json j;
            j[name] = connection_json(s, r);
            return {0, j.dump(2) + "\n"};
        }
        os << "Irr(X," << name << ") = " << coeffs_str(r.irr_x) << "\n";
        os << "determination model: " << r.analysis.resolution->nodes().size()
           << " blow-ups, depth " << resolution_depth(*r.analysis.resolution) << "\n";
        os << "incarnation there: " << coeffs_str(r.analysis.irr.divisor) << "\n";
        return {0, os.str()};
    }

    if (command == "delta") {
        auto [name, m] = pick_connection();
        ConnectionReport r = build(s, name, *m);
        print_delta_table(os, s, r);
        return {0, os.str()};
    }

    if (command == "cc") {
        auto [name, m] = pick_connection();
        ConnectionReport r = build(s, name, *m);
        print_cc(os, r);
        return {0, os.str()};
    }

    if (command == "chi") {
        auto [name, m] = pick_connection();
        ConnectionReport r = build(s, name, *m);
        if (r.chi_consistent) {
            os << "chi = " << r.chi_route_a << " (route A = route B = " << r.chi_route_a << ")\n";
            return {0, os.str()};
        }
        os << "chi INCONSISTENT (route A = " << r.chi_route_a << ", route B = " << r.chi_route_b
           << ") FAILED\n";
        return {1, os.str()};
    }

    if (command == "bounds") {
        auto [name, m] = pick_connection();
        ConnectionReport r = build(s, name, *m);
        bool all_ok = true;
        print_bound(os, r.turning_bound);
        all_ok = all_ok && r.turning_bound.ok;
        print_bound(os, r.hom_bound);
        all_ok = all_ok && r.hom_bound.ok;
        if (!divisor_name.empty()) {
            const Coeffs* f = s.find_divisor(divisor_name);
            if (!f)
                throw CalcError(Err::ValidationError, "no divisor '" + divisor_name + "'");
            BoundReport sb = slope_bound_certificate(s.surface, *m, r.analysis, *f, 2);
            print_bound(os, sb);
            all_ok = all_ok && sb.ok;
        }
        // hyperplane count for the fixture-calibrated default polynomial
        // L(R, rho) = |D^sing| + 3 fdeg(R) rho^2 (heuristic, non-normative)
        BoundPolynomial l;
        l.terms.push_back({static_cast<Int>(s.surface.d_singular_points().size()), {}, 0, 0});
        l.terms.push_back({3, {}, 1, 2});
        Coeffs irr_eff;
        for (const auto& [c, v] : r.irr_x)
            if (v > 0) irr_eff[c] = v;
        os << "lefschetz count K(Irr(X," << name << "), rank) = "
           << lefschetz_count(l, s.surface, irr_eff, r.m->rank()) << " (default L, non-normative)\n";
        return {all_ok ? 0 : 1, os.str()};
    }

    if (command == "check") {
        bool ok = true;
        for (const auto& [name, m] : s.connections) {
            ConnectionReport r = build(s, name, m);
            auto line = [&](const std::string& what, bool pass) {
                os << (pass ? "  [pass] " : "  [FAIL] ") << what << "\n";
                ok = ok && pass;
            };
            os << "checks for " << name << ":\n";
            line("chi route A == route B", r.chi_consistent);
            line("delta effective", r.analysis.delta.effective());
            bool semi = true;
            for (const auto& v : probe_valuations(r.analysis.resolution, s.options.probe_depth)) {
                if (irr_along(m, v) > evaluate(CartierBDivisor::on_x(&s.surface, r.irr_x), v))
                    semi = false;
            }
            line("semi-continuity Irr <= pullback of Irr(X,M)", semi);
            line("turning count bound", r.turning_bound.ok);
            line("hom irregularity bound", r.hom_bound.ok);
            bool criterion = true;
            for (const auto& pid : s.surface.d_smooth_points()) {
                try {
                    turning_criterion(s.surface, m, pid, s.options.max_blowups);
                } catch (const CalcError&) {
                    criterion = false;
                }
            }
            line("turning criterion agrees with turning locus", criterion);
        }
        os << (ok ? "all checks passed\n" : "some checks FAILED\n");
        return {ok ? 0 : 1, os.str()};
    }

    if (command == "report") {
        if (fmt == Format::Dot) {
            auto [name, m] = pick_connection();
            return {0, emit_dot(s, name)};
        }
        if (fmt == Format::Json) {
            ordered_json j;
            j["surface"] = {{"curves", s.surface.curves.size()},
                            {"points", s.surface.points.size()},
                            {"chi_top", s.surface.chi_top},
                            {"chi_open_complement", euler_open_complement(s.surface)},
                            {"d_singular_points", s.surface.d_singular_points().size()}};
            j["options"] = {{"probe_depth", s.options.probe_depth},
                            {"max_blowups", s.options.max_blowups}};
            ordered_json conns = ordered_json::object();
            bool consistent = true;
            for (const auto& [name, m] : s.connections) {
                ConnectionReport r = build(s, name, m);
                consistent = consistent && r.chi_consistent && r.turning_bound.ok && r.hom_bound.ok;
                conns[name] = connection_json(s, r);
            }
            j["connections"] = std::move(conns);
            j["consistent"] = consistent;
            return {consistent ? 0 : 1, j.dump(2) + "\n"};
        }
        os << "surface: " << s.surface.curves.size() << " curves, " << s.surface.points.size()
           << " points, chi_top = " << s.surface.chi_top
           << ", chi(U) = " << euler_open_complement(s.surface) << "\n";
        os << "options: probe_depth = " << s.options.probe_depth
           << ", max_blowups = " << s.options.max_blowups << "\n";
        bool consistent = true;
        for (const auto& [name, m] : s.connections) {
            ConnectionReport r = build(s, name, m);
            os << "\nconnection " << name << " (rank " << m.rank() << ")\n";
            os << "Irr(X," << name << ") = " << coeffs_str(r.irr_x) << "\n";
            os << "resolution: " << r.analysis.resolution->nodes().size() << " blow-ups, depth "
               << resolution_depth(*r.analysis.resolution) << "\n";
            os << "turning locus on X:";
            if (r.turning.empty()) os << " (empty)";
            os << "\n";
            for (const auto& pt : r.turning) os << "  " << point_str(s.surface, pt) << "\n";
            print_delta_table(os, s, r);
            print_cc(os, r);
            if (r.chi_consistent)
                os << "chi = " << r.chi_route_a << " (route A = route B = " << r.chi_route_a
                   << ")\n";
            else
                os << "chi INCONSISTENT (route A = " << r.chi_route_a
                   << ", route B = " << r.chi_route_b << ") FAILED\n";
            print_bound(os, r.turning_bound);
            print_bound(os, r.hom_bound);
            consistent = consistent && r.chi_consistent && r.turning_bound.ok && r.hom_bound.ok;
        }
        return {consistent ? 0 : 1, os.str()};
    }

    throw CalcError(Err::ValidationError, "unknown command '" + command + "'");
}

}  // namespace bdiv
