#include "charcycle.hpp"

namespace bdiv {

bool operator==(const LagrangianCycle& a, const LagrangianCycle& b) {
    return a.zero_section == b.zero_section && a.curves == b.curves && a.points == b.points;
}

LagrangianCycle operator+(const LagrangianCycle& a, const LagrangianCycle& b) {
    LagrangianCycle out = a;
    out.zero_section += b.zero_section;
    for (const auto& [k, v] : b.curves) add_coeff(out.curves, k, v);
    for (const auto& [k, v] : b.points) add_coeff(out.points, k, v);
    return out;
}

LagrangianCycle operator*(Int k, const LagrangianCycle& a) {
    LagrangianCycle out;
    out.zero_section = k * a.zero_section;
    for (const auto& [b, v] : a.curves) set_coeff(out.curves, b, k * v);
    for (const auto& [b, v] : a.points) set_coeff(out.points, b, k * v);
    return out;
}

LagrangianCycle lc_cycle(const SurfacePair& pair, const Coeffs& r_div) {
    require_supported_on_d(pair, r_div);
    LagrangianCycle out;
    for (const auto& [c, a] : r_div) set_coeff(out.curves, c, a);
    for (const auto& p : pair.points) {
        if (p.on.size() != 2 || pair.d_branches_at(p) != 2) continue;
        set_coeff(out.points, p.id, coeff_of(r_div, p.on[0]) + coeff_of(r_div, p.on[1]));
    }
    return out;
}

ConstructibleFunction euler_of_cycle(const SurfacePair& pair, const LagrangianCycle& cyc) {
    ConstructibleFunction f;
    f.on_u = cyc.zero_section;
    for (const auto& c : pair.curves) {
        if (!c.in_d) continue;
        set_coeff(f.on_curve, c.id, cyc.zero_section - coeff_of(cyc.curves, c.id));
    }
    for (const auto& p : pair.points) {
        if (!pair.point_on_d(p)) continue;
        Int v = cyc.zero_section;
        for (const auto& c : p.on)
            if (pair.curve_in_d(c)) v -= coeff_of(cyc.curves, c);
        v += coeff_of(cyc.points, p.id);
        set_coeff(f.on_point, p.id, v);
    }
    return f;
}

LagrangianCycle cycle_from_euler(const SurfacePair& pair, const ConstructibleFunction& f) {
    LagrangianCycle cyc;
    cyc.zero_section = f.on_u;
    for (const auto& c : pair.curves) {
        if (!c.in_d) continue;
        set_coeff(cyc.curves, c.id, f.on_u - coeff_of(f.on_curve, c.id));
    }
    for (const auto& p : pair.points) {
        if (!pair.point_on_d(p)) continue;
        Int v = coeff_of(f.on_point, p.id) - f.on_u;
        for (const auto& c : p.on)
            if (pair.curve_in_d(c)) v += coeff_of(cyc.curves, c);
        set_coeff(cyc.points, p.id, v);
    }
    return cyc;
}

LagrangianCycle cc_structure_sheaf(const SurfacePair& pair) {
    LagrangianCycle out;
    out.zero_section = 1;
    for (const auto& c : pair.curves)
        if (c.in_d) out.curves[c.id] = 1;
    for (const auto& id : pair.d_singular_points()) out.points[id] = 1;
    return out;
}

LagrangianCycle cc_connection(const SurfacePair& pair, const ExpConnection& m,
                              const ConnectionAnalysis& a) {
    Coeffs irr_x;
    for (const auto& [b, v] : a.irr.divisor)
        if (pair.has_curve(b)) set_coeff(irr_x, b, v);
    LagrangianCycle out = m.rank() * cc_structure_sheaf(pair) + lc_cycle(pair, irr_x);
    for (const auto& p : pair.points) {
        Int d = integral(a.delta, pair, Region::Point, p.id);
        add_coeff(out.points, p.id, d);
    }
    return out;
}

Int local_solution_euler(const SurfacePair& pair, const ExpConnection& m,
                         const ConnectionAnalysis& a, const Symbol& point_id) {
    const MarkedPoint* p = pair.find_point(point_id);
    if (!p) throw CalcError(Err::UnknownCurveRef, "unknown point '" + point_id + "'");
    int d_branches = pair.d_branches_at(*p);
    if (d_branches == 0)
        throw CalcError(Err::PointOffD, "point '" + point_id + "' does not lie on D");
    Int d = integral(a.delta, pair, Region::Point, point_id);
    if (d_branches == 2) return d;
    Symbol z;
    for (const auto& c : p->on)
        if (pair.curve_in_d(c)) z = c;
    return -irr_along(m, DivValuation::prime(z)) + d;
}

Int index_pairing(const SurfacePair& pair, const LagrangianCycle& cyc) {
    Int s = cyc.zero_section * pair.chi_top;
    for (const auto& [c, v] : cyc.curves) {
        const Curve* cu = pair.find_curve(c);
        if (!cu) throw CalcError(Err::UnknownCurveRef, "cycle on unknown curve '" + c + "'");
        s -= v * (2 - 2 * cu->genus);
    }
    for (const auto& [p, v] : cyc.points) s += v;
    return s;
}

Int global_chi(const SurfacePair& pair, const ExpConnection& m, const ConnectionAnalysis& a) {
    Coeffs irr_x;
    for (const auto& [b, v] : a.irr.divisor)
        if (pair.has_curve(b)) set_coeff(irr_x, b, v);
    return m.rank() * euler_open_complement(pair) + index_pairing(pair, lc_cycle(pair, irr_x)) +
           integral(a.delta, pair, Region::All);
}

Int curve_gos(Int genus, Int punctures, Int rank, const std::vector<Int>& irregularities) {
    if (static_cast<Int>(irregularities.size()) != punctures)
        throw CalcError(Err::ValidationError, "one irregularity per puncture expected");
    Int chi = rank * (2 - 2 * genus - punctures);
    for (Int irr : irregularities) chi -= irr;
    return chi;
}

LagrangianCycle cc_sol_restricted(const SurfacePair& pair, const ExpConnection& m,
                                  const ConnectionAnalysis& a, const Coeffs& z_red) {
    require_supported_on_d(pair, z_red);
    for (const auto& [c, v] : z_red)
        if (v != 0 && v != 1)
            throw CalcError(Err::ValidationError, "Z must be reduced (coefficient on '" + c + "')");
    Coeffs irr_xz;
    for (const auto& [b, v] : a.irr.divisor)
        if (pair.has_curve(b) && coeff_of(z_red, b) == 1) set_coeff(irr_xz, b, v);
    LagrangianCycle out = lc_cycle(pair, irr_xz);
    for (const auto& p : pair.points) {
        bool on_z = false;
        int z_branches = 0;
        for (const auto& c : p.on)
            if (coeff_of(z_red, c) == 1) {
                on_z = true;
                ++z_branches;
            }
        if (!on_z) continue;
        add_coeff(out.points, p.id, integral(a.delta, pair, Region::Point, p.id));
        // Z-smooth points in the singular locus of D pick up the generic
        // irregularity of the Z-component through them
        if (z_branches == 1 && pair.d_branches_at(p) == 2) {
            Symbol zc;
            for (const auto& c : p.on)
                if (coeff_of(z_red, c) == 1) zc = c;
            add_coeff(out.points, p.id, irr_along(m, DivValuation::prime(zc)));
        }
    }
    return out;
}

}  // namespace bdiv
