#include "geometry.hpp"

#include <algorithm>

namespace bdiv {

const Curve* SurfacePair::find_curve(const Symbol& id) const {
    for (const auto& c : curves)
        if (c.id == id) return &c;
    return nullptr;
}

const MarkedPoint* SurfacePair::find_point(const Symbol& id) const {
    for (const auto& p : points)
        if (p.id == id) return &p;
    return nullptr;
}

bool SurfacePair::curve_in_d(const Symbol& id) const {
    const Curve* c = find_curve(id);
    return c != nullptr && c->in_d;
}

std::vector<Symbol> SurfacePair::d_curves() const {
    std::vector<Symbol> out;
    for (const auto& c : curves)
        if (c.in_d) out.push_back(c.id);
    return out;
}

int SurfacePair::d_branches_at(const MarkedPoint& p) const {
    int n = 0;
    for (const auto& c : p.on)
        if (curve_in_d(c)) ++n;
    return n;
}

std::vector<Symbol> SurfacePair::d_singular_points() const {
    std::vector<Symbol> out;
    for (const auto& p : points)
        if (p.on.size() == 2 && d_branches_at(p) == 2) out.push_back(p.id);
    return out;
}

std::vector<Symbol> SurfacePair::d_smooth_points() const {
    std::vector<Symbol> out;
    for (const auto& p : points)
        if (d_branches_at(p) == 1) out.push_back(p.id);
    return out;
}

void validate_pair(const SurfacePair& pair) {
    std::set<Symbol> ids;
    for (const auto& c : pair.curves) {
        if (!ids.insert(c.id).second)
            throw CalcError(Err::DuplicateId, "curve id '" + c.id + "' repeated");
        if (c.genus < 0)
            throw CalcError(Err::ValidationError, "curve '" + c.id + "' has negative genus");
    }
    for (const auto& p : pair.points) {
        if (!ids.insert(p.id).second)
            throw CalcError(Err::DuplicateId, "point id '" + p.id + "' repeated");
        if (p.on.size() < 1 || p.on.size() > 2) {
            if (p.on.size() > 2)
                throw CalcError(Err::TripleIncidence,
                                "point '" + p.id + "' lies on " + std::to_string(p.on.size()) + " curves");
            throw CalcError(Err::ValidationError, "point '" + p.id + "' lies on no curve");
        }
        if (p.on.size() == 2 && p.on[0] == p.on[1])
            throw CalcError(Err::ValidationError, "point '" + p.id + "' lists the same curve twice");
        for (const auto& c : p.on)
            if (!pair.has_curve(c))
                throw CalcError(Err::UnknownCurveRef, "point '" + p.id + "' on unknown curve '" + c + "'");
    }
}

bool supported_on_d(const SurfacePair& pair, const Coeffs& div) {
    for (const auto& [id, v] : div) {
        if (v == 0) continue;
        if (!pair.curve_in_d(id)) return false;
    }
    return true;
}

void require_supported_on_d(const SurfacePair& pair, const Coeffs& div) {
    for (const auto& [id, v] : div) {
        if (v == 0) continue;
        if (!pair.has_curve(id))
            throw CalcError(Err::UnknownCurveRef, "divisor coefficient on unknown curve '" + id + "'");
        if (!pair.curve_in_d(id))
            throw CalcError(Err::SupportOffD, "divisor has coefficient on '" + id + "' which is not in D");
    }
}

bool is_effective(const Coeffs& div) {
    return std::all_of(div.begin(), div.end(), [](const auto& kv) { return kv.second >= 0; });
}

Int euler_open_complement(const SurfacePair& pair) {
    Int chi = pair.chi_top;
    for (const auto& c : pair.curves)
        if (c.in_d) chi -= 2 - 2 * c.genus;
    chi += static_cast<Int>(pair.d_singular_points().size());
    return chi;
}

Int stratum_euler(const SurfacePair& pair, const std::set<Symbol>& index_set) {
    if (index_set.empty())
        throw CalcError(Err::ValidationError, "stratum index set is empty");
    for (const auto& id : index_set) {
        if (!pair.has_curve(id))
            throw CalcError(Err::UnknownCurveRef, "stratum over unknown curve '" + id + "'");
        if (!pair.curve_in_d(id))
            throw CalcError(Err::UnknownCurveRef, "stratum curve '" + id + "' is not in D");
    }
    if (index_set.size() == 1) {
        const Curve* c = pair.find_curve(*index_set.begin());
        Int chi = 2 - 2 * c->genus;
        for (const auto& p : pair.points) {
            if (p.on.size() != 2) continue;
            bool on_c = p.on[0] == c->id || p.on[1] == c->id;
            if (on_c && pair.d_branches_at(p) == 2) --chi;
        }
        return chi;
    }
    if (index_set.size() == 2) {
        auto it = index_set.begin();
        Symbol a = *it++;
        Symbol b = *it;
        Int n = 0;
        for (const auto& p : pair.points)
            if (p.on.size() == 2 &&
                ((p.on[0] == a && p.on[1] == b) || (p.on[0] == b && p.on[1] == a)))
                ++n;
        return n;
    }
    return 0;  // SNC forbids triple points
}

}  // namespace bdiv
