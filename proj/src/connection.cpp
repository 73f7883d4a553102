#include "connection.hpp"

#include <algorithm>
#include <climits>

namespace bdiv {

TagExpr operator+(const TagExpr& a, const TagExpr& b) {
    TagExpr out = a;
    for (const auto& [t, k] : b.c) {
        auto [it, fresh] = out.c.emplace(t, k);
        if (!fresh && (it->second += k) == 0) out.c.erase(it);
    }
    return out;
}

TagExpr operator-(const TagExpr& a, const TagExpr& b) {
    TagExpr neg;
    for (const auto& [t, k] : b.c) neg.c[t] = -k;
    return a + neg;
}

std::string to_string(const TagExpr& t) {
    if (t.c.empty()) return "0";
    std::string out;
    for (const auto& [s, k] : t.c) {
        if (!out.empty() || k < 0) out += k < 0 ? "-" : "+";
        Int a = k < 0 ? -k : k;
        if (a != 1) out += std::to_string(a) + "*";
        out += s;
    }
    return out;
}

Combination Combination::monomial(const ExpVec& e, const Symbol& tag) {
    Combination c;
    c.terms[e] = TagExpr::tag(tag);
    return c;
}

Combination operator-(const Combination& a, const Combination& b) {
    Combination out = a;
    for (const auto& [e, t] : b.terms) {
        auto it = out.terms.find(e);
        if (it == out.terms.end()) {
            TagExpr z;
            out.terms[e] = z - t;
        } else {
            it->second = it->second - t;
            if (it->second.zero()) out.terms.erase(it);
        }
    }
    return out;
}

Int ExpConnection::rank() const {
    Int r = 0;
    for (const auto& s : summands) r += s.rank;
    return r;
}

void validate_connection(const SurfacePair& pair, const ExpConnection& m) {
    if (m.summands.empty())
        throw CalcError(Err::InvalidConnection, "connection has no summands");
    for (const auto& s : m.summands) {
        if (s.rank < 1)
            throw CalcError(Err::InvalidConnection, "summand of rank " + std::to_string(s.rank));
        for (const auto& [e, t] : s.value.terms) {
            for (const auto& [c, k] : e.e) {
                if (!pair.has_curve(c))
                    throw CalcError(Err::UnknownCurveRef, "exponent on unknown curve '" + c + "'");
                if (k < 0 && !pair.curve_in_d(c))
                    throw CalcError(Err::PoleOffD, "pole along '" + c + "' which is not in D");
            }
        }
    }
}

std::optional<Int> combination_valuation(const Combination& f, const DivValuation& v) {
    if (f.regular()) return std::nullopt;
    Coeffs mult = curve_multiplicities(v);
    Int best = LLONG_MAX;
    for (const auto& [e, t] : f.terms) {
        Int val = 0;
        for (const auto& [c, k] : e.e) val += k * coeff_of(mult, c);
        best = std::min(best, val);
    }
    return best;
}

Int irr_along(const ExpConnection& m, const DivValuation& v) {
    Coeffs mult = curve_multiplicities(v);
    Int irr = 0;
    for (const auto& s : m.summands) {
        Int worst = 0;  // most negative valuation among the monomials
        for (const auto& [e, t] : s.value.terms) {
            Int val = 0;
            for (const auto& [c, k] : e.e) val += k * coeff_of(mult, c);
            worst = std::min(worst, val);
        }
        irr += s.rank * (-worst);
    }
    return irr;
}

Rat slope_along(const ExpConnection& m, const DivValuation& v) {
    Coeffs mult = curve_multiplicities(v);
    Int slope = 0;
    for (const auto& s : m.summands) {
        for (const auto& [e, t] : s.value.terms) {
            Int val = 0;
            for (const auto& [c, k] : e.e) val += k * coeff_of(mult, c);
            slope = std::max(slope, -val);
        }
    }
    return Rat(slope);
}

Coeffs generic_irr_divisor(const ExpConnection& m, const Model& w) {
    Coeffs out;
    auto mults = branch_curve_multiplicities(w);
    for (const auto& [branch, mult] : mults) {
        Int irr = 0;
        for (const auto& s : m.summands) {
            Int worst = 0;
            for (const auto& [e, t] : s.value.terms) {
                Int val = 0;
                for (const auto& [c, k] : e.e) val += k * coeff_of(mult, c);
                worst = std::min(worst, val);
            }
            irr += s.rank * (-worst);
        }
        set_coeff(out, branch, irr);
    }
    return out;
}

namespace {

// pole vectors of the monomials of f restricted to the branches at a point,
// against the dominance rule of the good-formal-structure definition
bool combination_good_on(const Combination& f, const std::vector<Coeffs>& branch_mults) {
    if (f.regular()) return true;
    std::vector<std::vector<Int>> poles;
    for (const auto& [e, t] : f.terms) {
        std::vector<Int> p;
        for (const auto& mult : branch_mults) {
            Int val = 0;
            for (const auto& [c, k] : e.e) val += k * coeff_of(mult, c);
            p.push_back(-val);
        }
        poles.push_back(std::move(p));
    }
    std::size_t dim = branch_mults.size();
    bool all_nonpositive = true;
    std::vector<Int> max(dim, LLONG_MIN);
    for (const auto& p : poles)
        for (std::size_t i = 0; i < dim; ++i) {
            if (p[i] > 0) all_nonpositive = false;
            max[i] = std::max(max[i], p[i]);
        }
    if (all_nonpositive) return true;
    bool attained = false;
    for (const auto& p : poles)
        if (p == max) attained = true;
    if (!attained) return false;
    return std::all_of(max.begin(), max.end(), [](Int x) { return x >= 0; });
}

}  // namespace

namespace {

// distinct summand values together with 0 (duplicates carry no information
// for the pairwise dominance test)
std::vector<Combination> distinct_values(const ExpConnection& m) {
    std::set<Combination> vals;
    vals.insert(Combination{});
    for (const auto& s : m.summands) vals.insert(s.value);
    return {vals.begin(), vals.end()};
}

bool good_at_impl(const std::vector<Combination>& values,
                  const std::map<Symbol, Coeffs>& all_mults,
                  const std::vector<Symbol>& branches) {
    std::vector<Coeffs> mults;
    for (const auto& b : branches) mults.push_back(all_mults.at(b));
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j)
            if (!combination_good_on(values[i] - values[j], mults)) return false;
    return true;
}

}  // namespace

bool is_good_at(const ExpConnection& m, const Model& w, const std::vector<Symbol>& branches) {
    return good_at_impl(distinct_values(m), branch_curve_multiplicities(w), branches);
}

std::vector<Model::Point> turning_locus(const ExpConnection& m, const Model& w) {
    Coeffs d;
    for (const auto& c : w.pair().curves)
        if (c.in_d) d[c.id] = 1;
    Coeffs dt = total_transform_on(w, d);
    std::vector<Combination> values = distinct_values(m);
    std::map<Symbol, Coeffs> mults = branch_curve_multiplicities(w);
    std::vector<Model::Point> out;
    for (const auto& pt : w.current_points()) {
        bool on_d = false;
        for (const auto& b : pt.branches)
            if (coeff_of(dt, b) != 0) on_d = true;
        if (!on_d) continue;
        if (!good_at_impl(values, mults, pt.branches)) out.push_back(pt);
    }
    std::sort(out.begin(), out.end(),
              [](const Model::Point& a, const Model::Point& b) { return a.key() < b.key(); });
    return out;
}

namespace {

// deterministic resolution order: roots by marked-point id (free roots by
// their own key), depth-first within a root via the chain-path key
std::string point_order_key(const Model& w, const Model::Point& pt) {
    if (pt.kind == BaseKind::Marked) return pt.marked_id + "|";
    std::vector<Symbol> chain = w.chain_of(pt.host);
    const InfNearNode& root = w.node(chain.front());
    std::string rootkey;
    switch (root.kind) {
        case BaseKind::Marked: rootkey = root.base; break;
        case BaseKind::FreeOnCurve: rootkey = root.base + ";" + root.tag; break;
        case BaseKind::Generic: rootkey = ";" + root.tag; break;
        case BaseKind::OnNode: rootkey = "?"; break;
    }
    std::string path = rootkey + "|";
    for (const auto& id : chain) path += "/" + DivValuation::exceptional(
        std::shared_ptr<const Model>(std::shared_ptr<void>(), &w), id).canonical_key();
    path += "@" + pt.key();
    return path;
}

Symbol root_of_point(const Model& w, const Model::Point& pt) {
    if (pt.kind == BaseKind::Marked) return pt.marked_id;
    std::vector<Symbol> chain = w.chain_of(pt.host);
    const InfNearNode& root = w.node(chain.front());
    if (root.kind == BaseKind::Marked) return root.base;
    return root.base + ";" + root.tag;
}

}  // namespace

std::shared_ptr<const Model> resolve_turning_points(const SurfacePair* pair, const ExpConnection& m,
                                                    int max_blowups) {
    Model w(pair);
    std::map<Symbol, int> budget;
    while (true) {
        std::vector<Model::Point> bad = turning_locus(m, w);
        if (bad.empty()) break;
        const Model::Point* next = &bad.front();
        std::string best = point_order_key(w, *next);
        for (const auto& pt : bad) {
            std::string k = point_order_key(w, pt);
            if (k < best) {
                best = k;
                next = &pt;
            }
        }
        Symbol root = root_of_point(w, *next);
        if (++budget[root] > max_blowups)
            throw ResolutionBudgetError("resolution over '" + root + "' exceeded " +
                                            std::to_string(max_blowups) + " blow-ups",
                                        std::make_shared<Model>(w));
        BlowUpSpec s;
        s.id = w.fresh_node_id();
        s.kind = next->kind;
        s.base = next->kind == BaseKind::Marked ? next->marked_id : next->host;
        s.incident = next->branches;
        w = w.blow_up(s);
    }
    return std::make_shared<Model>(std::move(w));
}

ExpConnection hom_connection(const ExpConnection& m1, const ExpConnection& m2) {
    ExpConnection out;
    for (const auto& a : m1.summands)
        for (const auto& b : m2.summands) {
            ExpSummand s;
            s.value = b.value - a.value;
            s.rank = a.rank * b.rank;
            out.summands.push_back(std::move(s));
        }
    return out;
}

ExpConnection end_connection(const ExpConnection& m) { return hom_connection(m, m); }

ExpConnection retag(const ExpConnection& m, const std::string& prefix) {
    ExpConnection out = m;
    for (auto& s : out.summands) {
        Combination v;
        for (const auto& [e, t] : s.value.terms) {
            TagExpr nt;
            for (const auto& [tag, k] : t.c) nt.c[prefix + tag] = k;
            v.terms[e] = nt;
        }
        s.value = std::move(v);
    }
    return out;
}

CartierBDivisor irr_bdivisor(const SurfacePair* pair, const ExpConnection& m, int max_blowups) {
    ExpConnection joint = m;
    for (const auto& s : end_connection(m).summands) joint.summands.push_back(s);
    std::shared_ptr<const Model> det = resolve_turning_points(pair, joint, max_blowups);
    return CartierBDivisor{det, generic_irr_divisor(m, *det)};
}

ConnectionAnalysis analyze_connection(const SurfacePair* pair, const ExpConnection& m,
                                      int max_blowups) {
    ConnectionAnalysis out;
    out.irr = irr_bdivisor(pair, m, max_blowups);
    out.resolution = out.irr.determination;
    out.delta = delta_divisor(out.irr);
    return out;
}

}  // namespace bdiv
