#include "bdivisor.hpp"

#include <algorithm>
#include <sstream>

namespace bdiv {

namespace {

// non-owning shared_ptr view of a stack model (internal, call-local use only)
std::shared_ptr<const Model> view_of(const Model& m) {
    return std::shared_ptr<const Model>(std::shared_ptr<void>(), &m);
}

// Pullback of the determining divisor to a model extending the determination:
// determination coefficients are fixed, every new node sums its incident
// branches in construction order.
Coeffs pullback_to(const CartierBDivisor& z, const Model& target) {
    Coeffs out = z.divisor;
    for (const auto& n : target.nodes()) {
        if (z.determination->has_node(n.id)) continue;
        Int s = 0;
        for (const auto& b : n.incident) s += coeff_of(out, b);
        set_coeff(out, n.id, s);
    }
    return out;
}

Coeffs reduced_d(const SurfacePair& pair) {
    Coeffs d;
    for (const auto& c : pair.curves)
        if (c.in_d) d[c.id] = 1;
    return d;
}

}  // namespace

CartierBDivisor CartierBDivisor::on_x(const SurfacePair* pair, const Coeffs& div_on_x) {
    auto m = std::make_shared<Model>(pair);
    return CartierBDivisor{m, div_on_x};
}

Int WeilBDivisor::value(const DivValuation& v) const {
    auto it = support.find(v);
    return it == support.end() ? 0 : it->second;
}

void WeilBDivisor::set(const DivValuation& v, Int x) {
    if (x == 0)
        support.erase(v);
    else
        support[v] = x;
}

bool WeilBDivisor::effective() const {
    return std::all_of(support.begin(), support.end(), [](const auto& kv) { return kv.second >= 0; });
}

Int fdeg(const SurfacePair& pair, const Coeffs& div) {
    require_supported_on_d(pair, div);
    Int s = 0;
    for (const auto& [c, v] : div) s += v;
    return s;
}

Int evaluate(const CartierBDivisor& z, const DivValuation& v) {
    if (v.kind == DivValuation::Kind::PrimeOnX) {
        if (!z.determination->pair().has_curve(v.curve))
            throw CalcError(Err::UnknownCurveRef, "valuation along unknown curve '" + v.curve + "'");
        return coeff_of(z.divisor, v.curve);
    }
    if (&v.model->pair() != &z.determination->pair())
        throw CalcError(Err::ModelMismatch, "valuation and b-divisor live over different pairs");
    Model scratch = *z.determination;
    Symbol local = scratch.adjoin_chain(*v.model, v.node);
    return coeff_of(pullback_to(z, scratch), local);
}

Coeffs incarnation(const CartierBDivisor& z, const Model& w) {
    Coeffs out;
    auto wview = view_of(w);
    for (const auto& c : w.pair().curves) set_coeff(out, c.id, coeff_of(z.divisor, c.id));
    for (const auto& n : w.nodes())
        set_coeff(out, n.id, evaluate(z, DivValuation::exceptional(wview, n.id)));
    return out;
}

bool is_xd_bdivisor(const CartierBDivisor& z) {
    Coeffs d = total_transform_on(*z.determination, reduced_d(z.determination->pair()));
    for (const auto& [b, v] : z.divisor)
        if (v != 0 && coeff_of(d, b) == 0) return false;
    return true;
}

void require_xd_bdivisor(const CartierBDivisor& z) {
    if (!is_xd_bdivisor(z))
        throw CalcError(Err::NotXDBDivisor,
                        "determining divisor is not supported on the total transform of D");
}

Int partial_discrepancy_at(const CartierBDivisor& z, const DivValuation& v) {
    require_xd_bdivisor(z);
    if (v.kind == DivValuation::Kind::PrimeOnX) return 0;
    Model scratch = *z.determination;
    Symbol local = scratch.adjoin_chain(*v.model, v.node);
    const InfNearNode& n = scratch.node(local);
    // singular centre of the pulled-back D: two incident branches in its support
    Coeffs d = total_transform_on(scratch, reduced_d(scratch.pair()));
    int d_branches = 0;
    for (const auto& b : n.incident)
        if (coeff_of(d, b) != 0) ++d_branches;
    if (d_branches >= 2) return 0;
    Coeffs zz = pullback_to(z, scratch);
    Int penultimate = 0;
    for (const auto& b : n.incident) penultimate += coeff_of(zz, b);
    return penultimate - coeff_of(zz, local);
}

WeilBDivisor delta_divisor(const CartierBDivisor& z) {
    require_xd_bdivisor(z);
    WeilBDivisor out;
    for (const auto& n : z.determination->nodes()) {
        DivValuation v = DivValuation::exceptional(z.determination, n.id);
        out.set(v, partial_discrepancy_at(z, v));
    }
    return out;
}

Int integral(const WeilBDivisor& w, const SurfacePair& pair, Region region, const Symbol& ref) {
    Int s = 0;
    for (const auto& [v, val] : w.support) {
        bool in = false;
        if (region == Region::All) {
            in = true;
        } else if (v.kind == DivValuation::Kind::PrimeOnX) {
            in = region == Region::Curve && v.curve == ref;
        } else {
            const InfNearNode& root = v.model->node(v.model->chain_of(v.node).front());
            std::vector<Symbol> on;
            if (root.kind == BaseKind::Marked)
                on = pair.find_point(root.base)->on;
            else if (root.kind == BaseKind::FreeOnCurve)
                on = {root.base};
            int d_branches = 0;
            for (const auto& c : on)
                if (pair.curve_in_d(c)) ++d_branches;
            switch (region) {
                case Region::Point:
                    in = root.kind == BaseKind::Marked && root.base == ref;
                    break;
                case Region::Curve:
                    in = std::find(on.begin(), on.end(), ref) != on.end();
                    break;
                case Region::SmoothLocusOfD:
                    in = d_branches == 1;
                    break;
                case Region::SingularLocusOfD:
                    in = d_branches == 2;
                    break;
                case Region::All:
                    break;
            }
        }
        if (in) s += val;
    }
    return s;
}

namespace {

// parent-closed subsets of the determination forest, as index sets
std::vector<std::vector<std::size_t>> intermediate_models(const Model& det, std::size_t cap) {
    const auto& nodes = det.nodes();
    std::size_t n = nodes.size();
    std::vector<std::vector<std::size_t>> out;
    if (n <= 12 && (std::size_t(1) << n) <= cap) {
        for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
            bool closed = true;
            std::vector<std::size_t> sel;
            for (std::size_t i = 0; i < n && closed; ++i) {
                if (!(mask >> i & 1)) continue;
                if (nodes[i].kind == BaseKind::OnNode) {
                    std::size_t p = det.node_pos(nodes[i].base);
                    if (!(mask >> p & 1)) closed = false;
                }
                sel.push_back(i);
            }
            if (closed) out.push_back(std::move(sel));
        }
        return out;
    }
    // fallback: X, the chain prefixes of every node, and the full forest
    std::set<std::vector<std::size_t>> seen;
    seen.insert({});
    for (const auto& nd : nodes) {
        std::vector<std::size_t> prefix;
        for (const auto& id : det.chain_of(nd.id)) prefix.push_back(det.node_pos(id));
        std::sort(prefix.begin(), prefix.end());
        for (std::size_t k = 0; k <= prefix.size(); ++k)
            seen.insert(std::vector<std::size_t>(prefix.begin(), prefix.begin() + k));
    }
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    seen.insert(all);
    return {seen.begin(), seen.end()};
}

// extend `base` by one blow-up, record the new valuation, then continue the
// chain through the new exceptional divisor while depth remains
void extend_probe(std::shared_ptr<const Model> base, BlowUpSpec spec, int depth, int& fresh,
                  std::vector<DivValuation>& out) {
    spec.id = base->fresh_node_id();
    auto ext = std::make_shared<Model>(base->blow_up(spec));
    out.push_back(DivValuation::exceptional(ext, spec.id));
    if (depth <= 1) return;
    const InfNearNode& nd = ext->node(spec.id);
    for (const auto& b : nd.incident) {
        BlowUpSpec t;
        t.kind = BaseKind::OnNode;
        t.base = spec.id;
        t.incident = {spec.id, b};
        extend_probe(ext, t, depth - 1, fresh, out);
    }
    BlowUpSpec t;
    t.kind = BaseKind::OnNode;
    t.base = spec.id;
    t.incident = {spec.id};
    t.tag = "probe" + std::to_string(++fresh);
    extend_probe(ext, t, depth - 1, fresh, out);
}

}  // namespace

// All exceptional valuations of `det` plus chains of <= depth extra blow-ups
// rooted at points of the D-support (one representative free point per
// support branch; values at free points depend only on the branch).
std::vector<DivValuation> probe_valuations(std::shared_ptr<const Model> det, int depth) {
    std::vector<DivValuation> out;
    for (const auto& n : det->nodes()) out.push_back(DivValuation::exceptional(det, n.id));
    if (depth <= 0) return out;
    int fresh = 0;
    Coeffs d = total_transform_on(*det, reduced_d(det->pair()));
    for (const auto& pt : det->current_points()) {
        bool on_d = false;
        for (const auto& b : pt.branches)
            if (coeff_of(d, b) != 0) on_d = true;
        if (!on_d) continue;
        BlowUpSpec s;
        s.kind = pt.kind;
        s.base = pt.kind == BaseKind::Marked ? pt.marked_id : pt.host;
        s.incident = pt.branches;
        extend_probe(det, s, depth, fresh, out);
    }
    for (const auto& b : det->branches()) {
        if (coeff_of(d, b) == 0) continue;
        BlowUpSpec s;
        s.kind = det->is_curve_branch(b) ? BaseKind::FreeOnCurve : BaseKind::OnNode;
        s.base = b;
        s.incident = {b};
        s.tag = "probe" + std::to_string(++fresh);
        extend_probe(det, s, depth, fresh, out);
    }
    return out;
}

NefProbeResult is_nef_probe(const CartierBDivisor& z, int depth) {
    std::vector<DivValuation> probes = probe_valuations(z.determination, depth);
    for (const auto& sel : intermediate_models(*z.determination, 4096)) {
        // the incarnation on a sub-model is the determining divisor restricted
        // to the branches that survive there
        auto w = std::make_shared<Model>(&z.determination->pair());
        for (std::size_t i : sel) {
            const InfNearNode& n = z.determination->nodes()[i];
            BlowUpSpec s;
            s.id = n.id;
            s.kind = n.kind;
            s.base = n.base;
            s.incident = n.incident;
            s.tag = n.tag;
            *w = w->blow_up(s);
        }
        CartierBDivisor zw;
        zw.determination = w;
        for (const auto& [b, v] : z.divisor)
            if (w->pair().has_curve(b) || w->has_node(b)) set_coeff(zw.divisor, b, v);
        for (const auto& v : probes) {
            if (evaluate(z, v) > evaluate(zw, v)) {
                std::ostringstream os;
                os << "W={";
                bool first = true;
                for (std::size_t i : sel) {
                    if (!first) os << ',';
                    os << z.determination->nodes()[i].id;
                    first = false;
                }
                os << (sel.empty() ? "X}" : "}") << ", v=" << v.canonical_key();
                return NefProbeResult{false, os.str()};
            }
        }
    }
    return NefProbeResult{true, ""};
}

std::shared_ptr<const Model> model_from_steps(const SurfacePair* pair,
                                              const std::vector<ChainStep>& chain) {
    Model m(pair);
    std::vector<Symbol> created;
    auto resolve = [&](const Symbol& ref) -> Symbol {
        if (!ref.empty() && ref[0] == '#') {
            std::size_t k = std::stoul(ref.substr(1));
            if (k >= created.size())
                throw CalcError(Err::UnknownBranch, "chain step references '" + ref + "' before creation");
            return created[k];
        }
        return ref;
    };
    for (const auto& step : chain) {
        BlowUpSpec s;
        s.id = m.fresh_node_id();
        s.kind = step.kind;
        s.base = resolve(step.base);
        for (const auto& b : step.incident) s.incident.push_back(resolve(b));
        s.tag = step.tag;
        m = m.blow_up(s);
        created.push_back(s.id);
    }
    return std::make_shared<Model>(std::move(m));
}

MultiplicityReport check_multiplicity_estimate(const SurfacePair& pair, const Coeffs& r_div,
                                               const Coeffs& z_div,
                                               const std::vector<ChainStep>& chain) {
    Int deg = fdeg(pair, r_div);
    Model m(&pair);
    std::vector<Symbol> created;
    auto resolve = [&](const Symbol& ref) -> Symbol {
        if (!ref.empty() && ref[0] == '#') {
            std::size_t k = std::stoul(ref.substr(1));
            if (k >= created.size())
                throw CalcError(Err::UnknownBranch, "chain step references '" + ref + "' before creation");
            return created[k];
        }
        return ref;
    };
    for (const auto& step : chain) {
        BlowUpSpec s;
        s.id = m.fresh_node_id();
        s.kind = step.kind;
        s.base = resolve(step.base);
        for (const auto& b : step.incident) s.incident.push_back(resolve(b));
        s.tag = step.tag;
        // admissibility: the centre must lie on the support of the current
        // total transform of z_div
        Coeffs zt = total_transform_on(m, z_div);
        std::vector<Symbol> through;
        if (step.kind == BaseKind::Marked) {
            const MarkedPoint* p = pair.find_point(s.base);
            if (!p) throw CalcError(Err::UnknownBranch, "unknown point '" + s.base + "'");
            through = p->on;
        } else {
            through = s.incident;
        }
        bool on_support = false;
        for (const auto& b : through)
            if (coeff_of(zt, b) != 0) on_support = true;
        if (!on_support)
            throw CalcError(Err::NotAdmissible, "centre of '" + s.id + "' is off the transform of Z");
        m = m.blow_up(s);
        created.push_back(s.id);
    }
    Coeffs rt = total_transform_on(m, r_div);
    Coeffs zt = total_transform_on(m, z_div);
    for (const auto& id : created) {
        Int rv = coeff_of(rt, id);
        Int zv = coeff_of(zt, id);
        if (rv > 2 * deg * zv) {
            std::ostringstream os;
            os << "R(" << id << ") = " << rv << " > 2 * " << deg << " * " << zv;
            return MultiplicityReport{false, os.str()};
        }
    }
    return MultiplicityReport{true, ""};
}

}  // namespace bdiv
