#ifndef BDIV_BDIVISOR_HPP
#define BDIV_BDIVISOR_HPP

#include "valtree.hpp"

namespace bdiv {

// A Cartier b-divisor of (X,D): the pullback system of one divisor on one
// determination model.  Its value at a valuation is the multiplicity of the
// pulled-back determining divisor along the valuation's divisor.
struct CartierBDivisor {
    std::shared_ptr<const Model> determination;
    Coeffs divisor;  // on the determination model's branches

    static CartierBDivisor on_x(const SurfacePair* pair, const Coeffs& div_on_x);
};

// A finitely supported Weil b-divisor: valuation -> value.
struct WeilBDivisor {
    std::map<DivValuation, Int> support;

    Int value(const DivValuation& v) const;
    void set(const DivValuation& v, Int x);
    bool effective() const;
};

// formal degree: sum of the coefficients of a divisor supported on D
Int fdeg(const SurfacePair& pair, const Coeffs& div);

// multiplicity of the pulled-back determining divisor along v; the chain of v
// is adjoined to a scratch copy of the determination model as needed
Int evaluate(const CartierBDivisor& z, const DivValuation& v);

// the component of z along w: sum over branches of evaluate(z, v_branch)
Coeffs incarnation(const CartierBDivisor& z, const Model& w);

// (X,D)-support: the determining divisor is supported on the pullback of D
bool is_xd_bdivisor(const CartierBDivisor& z);
void require_xd_bdivisor(const CartierBDivisor& z);

// Partial discrepancy of z at v.  Zero at PrimeOnX valuations and when the
// last centre is a singular point of the pulled-back D; otherwise the defect
// between the penultimate incarnation's prediction and the actual value:
//   sum over incident branches b of evaluate(z, v_b)  -  evaluate(z, v).
Int partial_discrepancy_at(const CartierBDivisor& z, const DivValuation& v);

// v -> partial_discrepancy_at(z, v) over the determination model's nodes;
// values elsewhere are provably 0.
WeilBDivisor delta_divisor(const CartierBDivisor& z);

enum class Region { All, Point, Curve, SmoothLocusOfD, SingularLocusOfD };

// Sum of values over valuations whose chain root lies in the region.  A
// PrimeOnX valuation's centre on X is its curve: it contributes to All and to
// Curve(its id) only.
Int integral(const WeilBDivisor& w, const SurfacePair& pair, Region region, const Symbol& ref = "");

struct NefProbeResult {
    bool nef = true;
    std::string witness;  // violating (intermediate model, valuation) when !nef
};

// Bounded nef probe: checks evaluate(z, v) <= pullback of incarnation(z, W)
// for every parent-closed subset W of the determination forest and every
// valuation of the determination model extended by <= depth blow-ups at
// points of the D-support.  Sound for refutation.
NefProbeResult is_nef_probe(const CartierBDivisor& z, int depth = 3);

// The valuation set used by is_nef_probe: all nodes of det plus probe chains
// of <= depth extra blow-ups rooted at points of the D-support.
std::vector<DivValuation> probe_valuations(std::shared_ptr<const Model> det, int depth);

struct ChainStep {
    BaseKind kind = BaseKind::Marked;
    Symbol base;                   // point / curve / "" / index-reference "#k"
    std::vector<Symbol> incident;  // "#k" references earlier steps of the chain
    Symbol tag;
};

struct MultiplicityReport {
    bool ok = true;
    std::string violation;  // first violated inequality if any
};

// Verifies R(v) <= 2 * fdeg(R) * Z(v) at every exceptional valuation of an
// admissible chain (every centre on the support of the current total
// transform of z_div).
MultiplicityReport check_multiplicity_estimate(const SurfacePair& pair, const Coeffs& r_div,
                                               const Coeffs& z_div,
                                               const std::vector<ChainStep>& chain);

// Builds a model from chain steps ("#k" references resolve to created nodes).
std::shared_ptr<const Model> model_from_steps(const SurfacePair* pair,
                                              const std::vector<ChainStep>& chain);

}  // namespace bdiv

#endif
