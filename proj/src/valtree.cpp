#include "valtree.hpp"

#include <algorithm>
#include <sstream>

namespace bdiv {

namespace {

std::string join(const std::vector<Symbol>& v, char sep = ',') {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += v[i];
    }
    return out;
}

}  // namespace

Model::Model(const SurfacePair* pair) : pair_(pair) {}

const InfNearNode& Model::node(const Symbol& id) const {
    auto it = index_.find(id);
    if (it == index_.end())
        throw CalcError(Err::UnknownBranch, "no node '" + id + "' in model");
    return nodes_[it->second];
}

std::size_t Model::node_pos(const Symbol& id) const {
    auto it = index_.find(id);
    if (it == index_.end())
        throw CalcError(Err::UnknownBranch, "no node '" + id + "' in model");
    return it->second;
}

std::vector<Symbol> Model::branches() const {
    std::vector<Symbol> out;
    for (const auto& c : pair_->curves) out.push_back(c.id);
    for (const auto& n : nodes_) out.push_back(n.id);
    return out;
}

std::vector<Symbol> Model::chain_of(const Symbol& node_id) const {
    std::vector<Symbol> chain;
    Symbol cur = node_id;
    while (true) {
        const InfNearNode& n = node(cur);
        chain.push_back(cur);
        if (n.kind != BaseKind::OnNode) break;
        cur = n.base;
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

std::string Model::Point::key() const {
    if (kind == BaseKind::Marked) return "P(" + marked_id + ")";
    return "S(" + (branches.size() == 2 ? branches[0] + "," + branches[1] : branches[0]) + ")";
}

// Replay state: which marked points are still unblown, which satellite
// intersections currently exist, which free positions have been consumed.
struct Model::State {
    std::set<Symbol> blown_marked;
    std::set<std::vector<Symbol>> live_satellites;  // sorted branch pairs {node, other}
    std::set<std::pair<Symbol, Symbol>> used_free;  // (branch-or-"", tag)
};

void Model::replay(State& st, const InfNearNode& n) const {
    auto require = [&](bool ok, const std::string& msg) {
        if (!ok) throw CalcError(Err::IllegalIncidence, "node '" + n.id + "': " + msg);
    };
    if (n.incident.size() > 2)
        throw CalcError(Err::TripleIncidence, "node '" + n.id + "' has >2 incident branches");
    for (const auto& b : n.incident) {
        if (!pair_->has_curve(b) && !has_node(b))
            throw CalcError(Err::UnknownBranch, "node '" + n.id + "' incident to unknown branch '" + b + "'");
    }
    switch (n.kind) {
        case BaseKind::Marked: {
            const MarkedPoint* p = pair_->find_point(n.base);
            if (!p)
                throw CalcError(Err::UnknownBranch, "node '" + n.id + "' based at unknown point '" + n.base + "'");
            require(!st.blown_marked.count(n.base), "point '" + n.base + "' was already blown up");
            std::vector<Symbol> on = p->on;
            std::sort(on.begin(), on.end());
            require(n.incident == on, "incident branches must be exactly the curves through '" + n.base +
                                          "' (the strict transforms through it)");
            st.blown_marked.insert(n.base);
            break;
        }
        case BaseKind::FreeOnCurve: {
            if (!pair_->has_curve(n.base))
                throw CalcError(Err::UnknownBranch, "node '" + n.id + "' on unknown curve '" + n.base + "'");
            require(n.incident == std::vector<Symbol>{n.base}, "a free point on a curve is incident to it only");
            require(!n.tag.empty(), "free points need a position tag");
            require(st.used_free.insert({n.base, n.tag}).second,
                    "free position '" + n.tag + "' on '" + n.base + "' already blown up");
            break;
        }
        case BaseKind::Generic: {
            require(n.incident.empty(), "a generic point lies on no branch");
            require(!n.tag.empty(), "generic points need a position tag");
            require(st.used_free.insert({"", n.tag}).second,
                    "generic position '" + n.tag + "' already blown up");
            break;
        }
        case BaseKind::OnNode: {
            if (!has_node(n.base))
                throw CalcError(Err::UnknownBranch, "node '" + n.id + "' based on unknown node '" + n.base + "'");
            require(std::find(n.incident.begin(), n.incident.end(), n.base) != n.incident.end(),
                    "a point of the exceptional divisor of '" + n.base + "' is incident to it");
            if (n.incident.size() == 1) {
                require(!n.tag.empty(), "free points need a position tag");
                require(st.used_free.insert({n.base, n.tag}).second,
                        "free position '" + n.tag + "' on '" + n.base + "' already blown up");
            } else {
                require(st.live_satellites.count(n.incident) > 0,
                        "branches {" + join(n.incident) + "} do not currently meet");
                st.live_satellites.erase(n.incident);
            }
            break;
        }
    }
    // Transform rule: the strict transforms of the incident branches meet the
    // new exceptional divisor at distinct points, each available later.
    for (const auto& b : n.incident) {
        std::vector<Symbol> sat{n.id, b};
        std::sort(sat.begin(), sat.end());
        st.live_satellites.insert(sat);
    }
}

Model Model::blow_up(const BlowUpSpec& spec) const {
    Model out = *this;
    InfNearNode n;
    n.id = spec.id.empty() ? fresh_node_id() : spec.id;
    n.kind = spec.kind;
    n.base = spec.base;
    n.incident = spec.incident;
    std::sort(n.incident.begin(), n.incident.end());
    n.tag = spec.tag;
    if (out.index_.count(n.id) || pair_->has_curve(n.id) || pair_->find_point(n.id))
        throw CalcError(Err::DuplicateId, "node id '" + n.id + "' already in use");
    // validate the new node against the replayed state of the existing forest
    State st;
    for (const auto& m : nodes_) replay(st, m);
    replay(st, n);
    out.index_[n.id] = out.nodes_.size();
    out.nodes_.push_back(std::move(n));
    return out;
}

std::vector<Model::Point> Model::current_points() const {
    State st;
    for (const auto& n : nodes_) replay(st, n);
    std::vector<Point> out;
    for (const auto& p : pair_->points) {
        if (st.blown_marked.count(p.id)) continue;
        Point pt;
        pt.branches = p.on;
        std::sort(pt.branches.begin(), pt.branches.end());
        pt.kind = BaseKind::Marked;
        pt.marked_id = p.id;
        out.push_back(std::move(pt));
    }
    for (const auto& sat : st.live_satellites) {
        Point pt;
        pt.branches = sat;
        pt.kind = BaseKind::OnNode;
        // the host is the younger node of the pair (it owns the position)
        Symbol host;
        std::size_t best = 0;
        for (const auto& b : sat) {
            if (!has_node(b)) continue;
            std::size_t pos = node_pos(b);
            if (host.empty() || pos > best) {
                host = b;
                best = pos;
            }
        }
        pt.host = host;
        out.push_back(std::move(pt));
    }
    return out;
}

Symbol Model::fresh_node_id() const {
    std::size_t k = nodes_.size() + 1;
    while (true) {
        Symbol id = "E" + std::to_string(k);
        if (!index_.count(id) && !pair_->has_curve(id) && !pair_->find_point(id)) return id;
        ++k;
    }
}

bool Model::extends(const Model& sub) const {
    for (const auto& n : sub.nodes_) {
        auto it = index_.find(n.id);
        if (it == index_.end()) return false;
        const InfNearNode& m = nodes_[it->second];
        if (m.kind != n.kind || m.base != n.base || m.incident != n.incident || m.tag != n.tag)
            return false;
    }
    return true;
}

Symbol Model::adjoin_chain(const Model& src, const Symbol& src_node) {
    std::vector<Symbol> chain = src.chain_of(src_node);
    std::map<Symbol, Symbol> to_local;
    for (const auto& sid : chain) {
        const InfNearNode& sn = src.node(sid);
        InfNearNode want;
        want.kind = sn.kind;
        want.tag = sn.tag;
        want.base = sn.base;
        if (sn.kind == BaseKind::OnNode) {
            auto it = to_local.find(sn.base);
            if (it == to_local.end())
                throw CalcError(Err::IllegalIncidence, "chain of '" + src_node + "' is not self-contained");
            want.base = it->second;
        }
        for (const auto& b : sn.incident) {
            auto it = to_local.find(b);
            want.incident.push_back(it == to_local.end() ? b : it->second);
        }
        std::sort(want.incident.begin(), want.incident.end());
        // structural match against existing nodes
        Symbol found;
        for (const auto& n : nodes_) {
            if (n.kind == want.kind && n.base == want.base && n.incident == want.incident && n.tag == want.tag) {
                found = n.id;
                break;
            }
        }
        if (found.empty()) {
            BlowUpSpec spec;
            spec.id = fresh_node_id();
            spec.kind = want.kind;
            spec.base = want.base;
            spec.incident = want.incident;
            spec.tag = want.tag;
            *this = blow_up(spec);
            found = spec.id;
        }
        to_local[sid] = found;
    }
    return to_local[chain.back()];
}

DivValuation DivValuation::prime(const Symbol& curve_id) {
    DivValuation v;
    v.kind = Kind::PrimeOnX;
    v.curve = curve_id;
    return v;
}

DivValuation DivValuation::exceptional(std::shared_ptr<const Model> m, const Symbol& node_id) {
    DivValuation v;
    v.kind = Kind::Exceptional;
    v.model = std::move(m);
    v.node = node_id;
    v.model->node(node_id);  // existence check
    return v;
}

std::string DivValuation::canonical_key() const {
    if (kind == Kind::PrimeOnX) return "C:" + curve;
    std::vector<Symbol> chain = model->chain_of(node);
    std::map<Symbol, std::size_t> pos;
    std::ostringstream os;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const InfNearNode& n = model->node(chain[i]);
        pos[chain[i]] = i;
        os << '/';
        switch (n.kind) {
            case BaseKind::Marked: os << "P(" << n.base << ")"; break;
            case BaseKind::FreeOnCurve: os << "F(" << n.base << ";" << n.tag << ")"; break;
            case BaseKind::Generic: os << "G(;" << n.tag << ")"; break;
            case BaseKind::OnNode: os << "N(" << pos.at(n.base) << ";" << n.tag << ")"; break;
        }
        std::vector<std::string> inc;
        for (const auto& b : n.incident)
            inc.push_back(pos.count(b) ? "#" + std::to_string(pos.at(b)) : b);
        std::sort(inc.begin(), inc.end());
        os << '[' << join(std::vector<Symbol>(inc.begin(), inc.end())) << ']';
    }
    return os.str();
}

Coeffs total_transform_on(const Model& target, const Coeffs& div_on_x) {
    Coeffs out;
    for (const auto& [c, v] : div_on_x) {
        if (!target.pair().has_curve(c))
            throw CalcError(Err::UnknownCurveRef, "divisor on unknown curve '" + c + "'");
        set_coeff(out, c, v);
    }
    for (const auto& n : target.nodes()) {
        Int s = 0;
        for (const auto& b : n.incident) s += coeff_of(out, b);
        set_coeff(out, n.id, s);
    }
    return out;
}

ModelDivisor total_transform(const Coeffs& div_on_x, std::shared_ptr<const Model> target) {
    return ModelDivisor{target, total_transform_on(*target, div_on_x)};
}

ModelDivisor total_transform(const ModelDivisor& div, std::shared_ptr<const Model> target) {
    if (!target->extends(*div.model))
        throw CalcError(Err::ModelMismatch, "target model does not extend the divisor's model");
    Coeffs out;
    for (const auto& [b, v] : div.coeffs) set_coeff(out, b, v);
    for (const auto& n : target->nodes()) {
        if (div.model->has_node(n.id)) continue;  // fixed coefficient from the source model
        Int s = 0;
        for (const auto& b : n.incident) s += coeff_of(out, b);
        set_coeff(out, n.id, s);
    }
    return ModelDivisor{target, out};
}

ModelDivisor pushforward(const ModelDivisor& div, std::shared_ptr<const Model> target) {
    if (!div.model->extends(*target))
        throw CalcError(Err::ModelMismatch, "pushforward target is not a sub-model");
    Coeffs out;
    for (const auto& [b, v] : div.coeffs) {
        if (div.model->pair().has_curve(b) || target->has_node(b)) set_coeff(out, b, v);
    }
    return ModelDivisor{target, out};
}

Coeffs curve_multiplicities(const DivValuation& v) {
    Coeffs out;
    if (v.kind == DivValuation::Kind::PrimeOnX) {
        out[v.curve] = 1;
        return out;
    }
    // walk the chain once, keeping one multiplicity vector per chain branch
    std::map<Symbol, Coeffs> vec;
    std::vector<Symbol> chain = v.model->chain_of(v.node);
    for (const auto& id : chain) {
        const InfNearNode& n = v.model->node(id);
        Coeffs acc;
        for (const auto& b : n.incident) {
            if (v.model->is_curve_branch(b)) {
                add_coeff(acc, b, 1);
            } else {
                for (const auto& [c, m] : vec.at(b)) add_coeff(acc, c, m);
            }
        }
        vec[id] = std::move(acc);
    }
    return vec.at(v.node);
}

Int evaluate_divisor_on_x(const Coeffs& div_on_x, const DivValuation& v) {
    Coeffs mult = curve_multiplicities(v);
    Int s = 0;
    for (const auto& [c, e] : div_on_x) s += e * coeff_of(mult, c);
    return s;
}

std::map<Symbol, Coeffs> branch_curve_multiplicities(const Model& m) {
    std::map<Symbol, Coeffs> vec;
    for (const auto& c : m.pair().curves) vec[c.id] = Coeffs{{c.id, 1}};
    for (const auto& n : m.nodes()) {
        Coeffs acc;
        for (const auto& b : n.incident)
            for (const auto& [c, k] : vec.at(b)) add_coeff(acc, c, k);
        vec[n.id] = std::move(acc);
    }
    return vec;
}

}  // namespace bdiv
