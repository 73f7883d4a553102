#ifndef BDIV_BOUNDS_HPP
#define BDIV_BOUNDS_HPP

#include "charcycle.hpp"

namespace bdiv {

struct BoundReport {
    std::string name;
    Rat bound{0};
    Rat attained{0};
    bool ok = false;  // attained <= bound
    std::vector<std::string> certificate;  // inequalities instantiated / valuations checked
};

// Verifies slope_along(M, v) <= 2 * fdeg(Irr(X,M)) * f(v) at the valuations
// of the resolution model and depth-2 probe extensions over the support of f;
// attained is the largest ratio slope / f(v).  The turning locus must sit in
// the support of f (TurningOutsideZeroLocus otherwise).
BoundReport slope_bound_certificate(const SurfacePair& pair, const ExpConnection& m,
                                    const ConnectionAnalysis& a, const Coeffs& f_divisor,
                                    int probe_depth = 2);

// Componentwise Irr(X,Hom) <= r2^2 Irr(X,M1) + r1^2 Irr(X,M2), plus the rank
// budget r1*r2 <= max(r1,r2)^2.
BoundReport hom_irr_bound_check(const SurfacePair& pair, const ExpConnection& m1,
                                const ExpConnection& m2);

// P (a smooth point of D) is a turning point iff its delta integral for
// Irr M + Irr End M is positive.
bool turning_criterion(const SurfacePair& pair, const ExpConnection& m, const Symbol& point_id,
                       int max_blowups = 64);

// attained |TL(M)| against |D^sing| + smooth-locus integral of
// delta Irr M + delta Irr End M
BoundReport turning_count_bound(const SurfacePair& pair, const ExpConnection& m,
                                int max_blowups = 64);

// Polynomial functional in (divisor, rank): sum of terms
//   coeff * prod_c m(c, R)^deg_c * fdeg(R)^deg_fdeg * rank^deg_rank.
struct BoundPolynomial {
    struct Term {
        Int coeff = 0;
        std::map<Symbol, int> curve_degs;
        int fdeg_deg = 0;
        int rank_deg = 0;
    };
    std::vector<Term> terms;

    Int eval(const SurfacePair& pair, const Coeffs& r_div, Int rank) const;
};

// the Lefschetz hyperplane count K(R,r) = L(2 r^2 R, 4 r^2) + 1
Int lefschetz_count(const BoundPolynomial& l, const SurfacePair& pair, const Coeffs& r_div, Int r);

// Points a recognizing curve must avoid: the turning loci of the four Hom
// connections between the two (independently retagged) arguments, plus
// D^sing.  Returns marked point ids, sorted.
std::vector<Symbol> recognition_obstruction(const SurfacePair& pair, const ExpConnection& m1,
                                            const ExpConnection& m2);

}  // namespace bdiv

#endif
