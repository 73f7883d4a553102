#ifndef BDIV_GEOMETRY_HPP
#define BDIV_GEOMETRY_HPP

#include <set>
#include <vector>

#include "types.hpp"

namespace bdiv {

struct Curve {
    Symbol id;
    Int genus = 0;
    bool in_d = false;  // component of the pole divisor D
};

// A point of the configuration. |on| == 2 means a simple normal crossing
// double point of the two named curves; |on| == 1 a marked smooth point.
struct MarkedPoint {
    Symbol id;
    std::vector<Symbol> on;  // sorted, 1 or 2 curve ids
};

// Abstract smooth projective surface: the listed double points DEFINE the
// intersection pairing, nothing is derived from equations.
struct SurfacePair {
    Int chi_top = 0;
    std::vector<Curve> curves;
    std::vector<MarkedPoint> points;

    const Curve* find_curve(const Symbol& id) const;
    const MarkedPoint* find_point(const Symbol& id) const;
    bool has_curve(const Symbol& id) const { return find_curve(id) != nullptr; }
    bool curve_in_d(const Symbol& id) const;
    std::vector<Symbol> d_curves() const;

    // number of D-curves through a point (0, 1 or 2)
    int d_branches_at(const MarkedPoint& p) const;
    bool point_on_d(const MarkedPoint& p) const { return d_branches_at(p) > 0; }
    // D^sing: double points with both curves in D
    std::vector<Symbol> d_singular_points() const;
    // smooth points of D among the marked points (exactly one D-branch)
    std::vector<Symbol> d_smooth_points() const;
};

// Checks all type invariants; throws on violation.
void validate_pair(const SurfacePair& pair);

// true iff every nonzero coefficient sits on an in_D curve
bool supported_on_d(const SurfacePair& pair, const Coeffs& div);
void require_supported_on_d(const SurfacePair& pair, const Coeffs& div);
bool is_effective(const Coeffs& div);

// chi of the open complement U = X \ D, by inclusion-exclusion:
// chi_top - sum_{i in D} (2 - 2g_i) + #(D-double points)
Int euler_open_complement(const SurfacePair& pair);

// chi of the open stratum D_I°.  |I| = 1: (2-2g) minus the D-double points on
// the curve; |I| = 2: number of common points; |I| >= 3: 0 (SNC).
Int stratum_euler(const SurfacePair& pair, const std::set<Symbol>& index_set);

}  // namespace bdiv

#endif
