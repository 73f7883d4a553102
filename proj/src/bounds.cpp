#include "bounds.hpp"

#include <algorithm>
#include <sstream>

namespace bdiv {

namespace {

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1) os << '/' << r.denominator();
    return os.str();
}

}  // namespace

BoundReport slope_bound_certificate(const SurfacePair& pair, const ExpConnection& m,
                                    const ConnectionAnalysis& a, const Coeffs& f_divisor,
                                    int probe_depth) {
    require_supported_on_d(pair, f_divisor);
    if (!is_effective(f_divisor))
        throw CalcError(Err::ValidationError, "f must be effective");
    Model x(&pair);
    for (const auto& pt : turning_locus(m, x)) {
        bool on_f = false;
        for (const auto& b : pt.branches)
            if (coeff_of(f_divisor, b) > 0) on_f = true;
        if (!on_f)
            throw CalcError(Err::TurningOutsideZeroLocus,
                            "turning point " + pt.key() + " is off the support of f");
    }
    Coeffs irr_x = generic_irr_divisor(m, x);
    Int bound_scalar = 2 * fdeg(pair, irr_x);
    BoundReport rep;
    rep.name = "slope_bound";
    rep.bound = Rat(bound_scalar);
    rep.attained = Rat(0);
    std::vector<DivValuation> vals;
    for (const auto& [c, k] : f_divisor)
        if (k > 0) vals.push_back(DivValuation::prime(c));
    for (const auto& v : probe_valuations(a.resolution, probe_depth)) vals.push_back(v);
    CartierBDivisor f_b = CartierBDivisor::on_x(&pair, f_divisor);
    for (const auto& v : vals) {
        Int fv = evaluate(f_b, v);
        Rat slope = slope_along(m, v);
        if (fv == 0) continue;  // the bound quantifies over valuations centred on div f
        Rat ratio = slope / Rat(fv);
        std::ostringstream os;
        os << "slope " << rat_str(slope) << " <= " << bound_scalar << " * " << fv << " at "
           << v.canonical_key();
        rep.certificate.push_back(os.str());
        rep.attained = std::max(rep.attained, ratio);
        if (slope > Rat(bound_scalar) * Rat(fv)) {
            rep.ok = false;
            rep.certificate.push_back("VIOLATED at " + v.canonical_key());
            return rep;
        }
    }
    rep.ok = rep.attained <= rep.bound;
    return rep;
}

BoundReport hom_irr_bound_check(const SurfacePair& pair, const ExpConnection& m1,
                                const ExpConnection& m2) {
    Model x(&pair);
    ExpConnection hom = hom_connection(m1, m2);
    Coeffs irr_hom = generic_irr_divisor(hom, x);
    Coeffs irr1 = generic_irr_divisor(m1, x);
    Coeffs irr2 = generic_irr_divisor(m2, x);
    Int r1 = m1.rank(), r2 = m2.rank();
    BoundReport rep;
    rep.name = "hom_irr_bound";
    rep.ok = true;
    Int max_bound = 0, max_attained = 0;
    for (const auto& c : pair.curves) {
        Int lhs = coeff_of(irr_hom, c.id);
        Int rhs = r2 * r2 * coeff_of(irr1, c.id) + r1 * r1 * coeff_of(irr2, c.id);
        std::ostringstream os;
        os << "Irr(X,Hom)[" << c.id << "] = " << lhs << " <= " << rhs;
        rep.certificate.push_back(os.str());
        if (lhs > rhs) rep.ok = false;
        max_bound = std::max(max_bound, rhs);
        max_attained = std::max(max_attained, lhs);
    }
    Int r = std::max(r1, r2);
    std::ostringstream os;
    os << "rank(Hom) = " << hom.rank() << " <= " << r * r;
    rep.certificate.push_back(os.str());
    if (hom.rank() > r * r) rep.ok = false;
    rep.bound = Rat(max_bound);
    rep.attained = Rat(max_attained);
    return rep;
}

bool turning_criterion(const SurfacePair& pair, const ExpConnection& m, const Symbol& point_id,
                       int max_blowups) {
    const MarkedPoint* p = pair.find_point(point_id);
    if (!p) throw CalcError(Err::UnknownCurveRef, "unknown point '" + point_id + "'");
    if (pair.d_branches_at(*p) != 1)
        throw CalcError(Err::PointNotSmoothOnD,
                        "point '" + point_id + "' is not a smooth point of D");
    ConnectionAnalysis am = analyze_connection(&pair, m, max_blowups);
    ConnectionAnalysis ae = analyze_connection(&pair, end_connection(m), max_blowups);
    Int total = integral(am.delta, pair, Region::Point, point_id) +
                integral(ae.delta, pair, Region::Point, point_id);
    bool positive = total > 0;
    // the criterion must agree with the direct goodness test on X
    Model x(&pair);
    bool listed = false;
    for (const auto& pt : turning_locus(m, x))
        if (pt.kind == BaseKind::Marked && pt.marked_id == point_id) listed = true;
    if (positive != listed)
        throw CalcError(Err::ValidationError,
                        "turning criterion disagrees with the turning locus at '" + point_id + "'");
    return positive;
}

BoundReport turning_count_bound(const SurfacePair& pair, const ExpConnection& m, int max_blowups) {
    ConnectionAnalysis am = analyze_connection(&pair, m, max_blowups);
    ConnectionAnalysis ae = analyze_connection(&pair, end_connection(m), max_blowups);
    Model x(&pair);
    Int attained = static_cast<Int>(turning_locus(m, x).size());
    Int d_sing = static_cast<Int>(pair.d_singular_points().size());
    Int smooth_integral = integral(am.delta, pair, Region::SmoothLocusOfD) +
                          integral(ae.delta, pair, Region::SmoothLocusOfD);
    BoundReport rep;
    rep.name = "turning_count";
    rep.bound = Rat(d_sing + smooth_integral);
    rep.attained = Rat(attained);
    rep.ok = rep.attained <= rep.bound;
    std::ostringstream os;
    os << "|TL| = " << attained << " <= |D^sing| + int_{D^sm}(dIrr M + dIrr End M) = " << d_sing
       << " + " << smooth_integral;
    rep.certificate.push_back(os.str());
    return rep;
}

Int BoundPolynomial::eval(const SurfacePair& pair, const Coeffs& r_div, Int rank) const {
    Int total = 0;
    Int deg = fdeg(pair, r_div);
    for (const auto& t : terms) {
        Int v = t.coeff;
        for (const auto& [c, d] : t.curve_degs)
            for (int i = 0; i < d; ++i) v *= coeff_of(r_div, c);
        for (int i = 0; i < t.fdeg_deg; ++i) v *= deg;
        for (int i = 0; i < t.rank_deg; ++i) v *= rank;
        total += v;
    }
    return total;
}

Int lefschetz_count(const BoundPolynomial& l, const SurfacePair& pair, const Coeffs& r_div, Int r) {
    Coeffs scaled;
    for (const auto& [c, v] : r_div) set_coeff(scaled, c, 2 * r * r * v);
    return l.eval(pair, scaled, 4 * r * r) + 1;
}

std::vector<Symbol> recognition_obstruction(const SurfacePair& pair, const ExpConnection& m1,
                                            const ExpConnection& m2) {
    // the two arguments are independent objects: Hom across slots never sees
    // accidental tag cancellation, Hom within a slot is End
    ExpConnection a = retag(m1, "a:");
    ExpConnection b = retag(m2, "b:");
    std::set<Symbol> pts;
    for (const auto& id : pair.d_singular_points()) pts.insert(id);
    Model x(&pair);
    const ExpConnection* slot[2] = {&a, &b};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            ExpConnection hom = hom_connection(*slot[i], *slot[j]);
            for (const auto& pt : turning_locus(hom, x))
                if (pt.kind == BaseKind::Marked) pts.insert(pt.marked_id);
        }
    return {pts.begin(), pts.end()};
}

}  // namespace bdiv
