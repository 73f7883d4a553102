#ifndef BDIV_VALTREE_HPP
#define BDIV_VALTREE_HPP

#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "geometry.hpp"

namespace bdiv {

// Where the centre of a blow-up sits.
enum class BaseKind {
    Marked,       // a marked point of X
    FreeOnCurve,  // a fresh free point of one configuration curve
    Generic,      // a fresh point of X on no curve
    OnNode,       // a point of the exceptional divisor of an earlier node
};

struct BlowUpSpec {
    Symbol id;                     // id of the new node ("" = auto "E<k>")
    BaseKind kind = BaseKind::Marked;
    Symbol base;                   // point id / curve id / "" / node id
    std::vector<Symbol> incident;  // branches through the centre (0..2)
    Symbol tag;                    // distinguishes free points with equal incidence
};

// One infinitely-near point, i.e. one point blow-up.  The incident branches
// are the components of the current total transform of the configuration
// passing through the centre; after the blow-up their strict transforms meet
// the new exceptional divisor at two distinct points (SNC is preserved).
struct InfNearNode {
    Symbol id;
    BaseKind kind = BaseKind::Marked;
    Symbol base;
    std::vector<Symbol> incident;  // sorted
    Symbol tag;
};

// A finite forest of infinitely-near points over the surface pair; the model
// is X itself when the forest is empty.  Immutable value: blow_up returns an
// extended copy.  Construction replays the whole forest and rejects centres
// that do not exist on the surface being built (transform rules).
class Model {
public:
    explicit Model(const SurfacePair* pair);

    const SurfacePair& pair() const { return *pair_; }
    const std::vector<InfNearNode>& nodes() const { return nodes_; }
    bool empty() const { return nodes_.empty(); }
    bool has_node(const Symbol& id) const { return index_.count(id) > 0; }
    const InfNearNode& node(const Symbol& id) const;
    std::size_t node_pos(const Symbol& id) const;

    bool is_curve_branch(const Symbol& branch) const { return pair_->has_curve(branch); }
    // all branches present on this model: configuration curves, then
    // exceptional divisors in construction order
    std::vector<Symbol> branches() const;

    // The chain of blow-ups realising a node's valuation (Zariski): the node
    // and its base-ancestors, root first.  Every node id referenced by the
    // incident sets along the chain belongs to the chain itself.
    std::vector<Symbol> chain_of(const Symbol& node_id) const;

    Model blow_up(const BlowUpSpec& spec) const;

    // A point of the current surface that is available as a centre.
    struct Point {
        std::vector<Symbol> branches;  // sorted, size 1 or 2
        BaseKind kind = BaseKind::Marked;  // Marked or OnNode (satellite)
        Symbol marked_id;              // kind == Marked
        Symbol host;                   // kind == OnNode: the node whose exceptional carries it
        std::string key() const;       // stable identity/sort key
    };
    // marked points of X not yet blown up + live satellite intersections
    // on exceptional divisors (free points are created on demand and are not
    // enumerated here)
    std::vector<Point> current_points() const;

    // Matches (or appends) the chain of `src_node` from another model over the
    // same pair; returns the local id of the final node.  Matching is
    // structural: same centre description step by step.
    Symbol adjoin_chain(const Model& src, const Symbol& src_node);

    Symbol fresh_node_id() const;

    // true if every node of `sub` occurs in *this with the same structure
    bool extends(const Model& sub) const;

private:
    const SurfacePair* pair_;
    std::vector<InfNearNode> nodes_;
    std::map<Symbol, std::size_t> index_;

    struct State;  // replay state used for validation
    void replay(State& st, const InfNearNode& n) const;
};

// A divisorial valuation: order along a configuration curve, or order along
// the exceptional divisor of a node's chain.
struct DivValuation {
    enum class Kind { PrimeOnX, Exceptional };
    Kind kind = Kind::PrimeOnX;
    Symbol curve;                        // PrimeOnX
    std::shared_ptr<const Model> model;  // Exceptional
    Symbol node;

    static DivValuation prime(const Symbol& curve_id);
    static DivValuation exceptional(std::shared_ptr<const Model> m, const Symbol& node_id);

    // Model-independent key implementing the Zariski bijection: two
    // exceptional valuations are equal iff their chains coincide.
    std::string canonical_key() const;
};

inline bool operator<(const DivValuation& a, const DivValuation& b) {
    return a.canonical_key() < b.canonical_key();
}
inline bool operator==(const DivValuation& a, const DivValuation& b) {
    return a.canonical_key() == b.canonical_key();
}

// A divisor on a model: coefficients on curves and on the model's nodes.
struct ModelDivisor {
    std::shared_ptr<const Model> model;
    Coeffs coeffs;
};

// Pullback to `target` of a divisor on X: exceptional coefficient of each
// node = sum of the coefficients of its incident branches, in chain order;
// strict-transform coefficients unchanged.
Coeffs total_transform_on(const Model& target, const Coeffs& div_on_x);
ModelDivisor total_transform(const Coeffs& div_on_x, std::shared_ptr<const Model> target);
// Same for a divisor on an intermediate model (target must extend it).
ModelDivisor total_transform(const ModelDivisor& div, std::shared_ptr<const Model> target);

// Drop coefficients of exceptional divisors of nodes outside `target`.
ModelDivisor pushforward(const ModelDivisor& div, std::shared_ptr<const Model> target);

// Multiplicity of every configuration curve along v (one chain walk).
Coeffs curve_multiplicities(const DivValuation& v);

// Multiplicity along v of the total transform of a divisor on X.
Int evaluate_divisor_on_x(const Coeffs& div_on_x, const DivValuation& v);

// Per-branch curve multiplicities on a whole model (branch -> curve -> Int).
std::map<Symbol, Coeffs> branch_curve_multiplicities(const Model& m);

}  // namespace bdiv

#endif
