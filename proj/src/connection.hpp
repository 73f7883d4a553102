#ifndef BDIV_CONNECTION_HPP
#define BDIV_CONNECTION_HPP

#include <optional>

#include "bdivisor.hpp"

namespace bdiv {

// Exponent vector of one monomial in the configuration curves.
struct ExpVec {
    std::map<Symbol, Int> e;  // zero entries dropped

    Int exp(const Symbol& c) const {
        auto it = e.find(c);
        return it == e.end() ? 0 : it->second;
    }
};
inline bool operator<(const ExpVec& a, const ExpVec& b) { return a.e < b.e; }
inline bool operator==(const ExpVec& a, const ExpVec& b) { return a.e == b.e; }

// Formal Z-combination of generic coefficient tags.  Distinct tags never
// cancel; a term disappears only when its tag combination is formally zero.
struct TagExpr {
    std::map<Symbol, Int> c;

    bool zero() const { return c.empty(); }
    static TagExpr tag(const Symbol& t) { return TagExpr{{{t, 1}}}; }
};
TagExpr operator+(const TagExpr& a, const TagExpr& b);
TagExpr operator-(const TagExpr& a, const TagExpr& b);
std::string to_string(const TagExpr& t);

// Z-combination of monomials; the value of an exponential factor.  The empty
// combination is the zero value (a regular summand).
struct Combination {
    std::map<ExpVec, TagExpr> terms;

    bool regular() const { return terms.empty(); }
    static Combination monomial(const ExpVec& e, const Symbol& tag);
};
Combination operator-(const Combination& a, const Combination& b);
inline bool operator<(const TagExpr& a, const TagExpr& b) { return a.c < b.c; }
inline bool operator==(const TagExpr& a, const TagExpr& b) { return a.c == b.c; }
inline bool operator<(const Combination& a, const Combination& b) { return a.terms < b.terms; }
inline bool operator==(const Combination& a, const Combination& b) { return a.terms == b.terms; }

struct ExpSummand {
    Combination value;
    Int rank = 1;
};

struct ExpConnection {
    std::vector<ExpSummand> summands;

    Int rank() const;
};

// pole-support and reference checks; throws PoleOffD / UnknownCurveRef /
// InvalidConnection
void validate_connection(const SurfacePair& pair, const ExpConnection& m);

// min over the monomials of the combination of its order along v (generic
// tags: no cancellation); nullopt for the zero combination
std::optional<Int> combination_valuation(const Combination& f, const DivValuation& v);

// irregularity along v: sum over summands of rank * max(0, -val)
Int irr_along(const ExpConnection& m, const DivValuation& v);

// highest slope along v: max over summands of max(0, -val)
Rat slope_along(const ExpConnection& m, const DivValuation& v);

// sum over the branches of w of irr_along * branch; the incarnation of the
// irregularity b-divisor on w
Coeffs generic_irr_divisor(const ExpConnection& m, const Model& w);

// Good-formal-structure test at a point lying on the given branches (1 or 2),
// restricted to the unramified monomial class: every pairwise difference of
// values (and every value itself) must have, on the branches at the point,
// either no pole at all or an attained componentwise-maximal pole vector >= 0.
bool is_good_at(const ExpConnection& m, const Model& w, const std::vector<Symbol>& branches);

// all points of the D-total-transform on w failing is_good_at
std::vector<Model::Point> turning_locus(const ExpConnection& m, const Model& w);

// Smallest-constructed model on which turning_locus is empty, blowing up bad
// points in deterministic order (roots by point id, depth-first within a
// root).  Throws ResolutionBudgetExceeded past max_blowups per root point.
std::shared_ptr<const Model> resolve_turning_points(const SurfacePair* pair, const ExpConnection& m,
                                                    int max_blowups = 64);

// all pairwise differences value(b of m2) - value(a of m1), rank r_a * r_b;
// formally identical monomial terms cancel exactly
ExpConnection hom_connection(const ExpConnection& m1, const ExpConnection& m2);
ExpConnection end_connection(const ExpConnection& m);

// copy of m with every coefficient tag prefixed (independent generic
// constants for Hom across distinct argument slots)
ExpConnection retag(const ExpConnection& m, const std::string& prefix);

// The irregularity b-divisor: determined on the joint resolution of
// M + End M by the generic irregularity divisor of M there.
CartierBDivisor irr_bdivisor(const SurfacePair* pair, const ExpConnection& m, int max_blowups = 64);

// irregularity b-divisor together with its resolution model and partial
// discrepancy; computed once and shared by the cycle/chi/bound operations
struct ConnectionAnalysis {
    std::shared_ptr<const Model> resolution;
    CartierBDivisor irr;
    WeilBDivisor delta;
};
ConnectionAnalysis analyze_connection(const SurfacePair* pair, const ExpConnection& m,
                                      int max_blowups = 64);

class ResolutionBudgetError : public CalcError {
public:
    ResolutionBudgetError(std::string msg, std::shared_ptr<const Model> partial)
        : CalcError(Err::ResolutionBudgetExceeded, std::move(msg)), partial_model(std::move(partial)) {}
    std::shared_ptr<const Model> partial_model;
};

}  // namespace bdiv

#endif
