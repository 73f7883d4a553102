#include "scenario.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>

namespace bdiv {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
    for (const auto& [k, v] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (k == a) ok = true;
        if (!ok)
            throw CalcError(Err::ValidationError, "unknown key '" + k + "' in " + where);
    }
}

Int get_int(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key))
        throw CalcError(Err::ValidationError, "missing key '" + std::string(key) + "' in " + where);
    if (!obj[key].is_number_integer())
        throw CalcError(Err::ValidationError, "'" + std::string(key) + "' must be an integer in " + where);
    return obj[key].get<Int>();
}

std::string get_string(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key))
        throw CalcError(Err::ValidationError, "missing key '" + std::string(key) + "' in " + where);
    if (!obj[key].is_string())
        throw CalcError(Err::ValidationError, "'" + std::string(key) + "' must be a string in " + where);
    return obj[key].get<std::string>();
}

}  // namespace

const ExpConnection* Scenario::find_connection(const Symbol& name) const {
    for (const auto& [n, c] : connections)
        if (n == name) return &c;
    return nullptr;
}

const Coeffs* Scenario::find_divisor(const Symbol& name) const {
    for (const auto& [n, d] : divisors)
        if (n == name) return &d;
    return nullptr;
}

Scenario parse_scenario_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw CalcError(Err::ParseError, origin + ": " + e.what());
    }
    if (!j.is_object())
        throw CalcError(Err::ValidationError, origin + ": top level must be an object");
    reject_unknown(j, {"surface", "connections", "divisors", "options"}, "scenario");
    if (!j.contains("surface"))
        throw CalcError(Err::ValidationError, "missing 'surface'");

    Scenario s;
    const json& surf = j["surface"];
    reject_unknown(surf, {"euler_characteristic", "curves", "points"}, "surface");
    s.surface.chi_top = get_int(surf, "euler_characteristic", "surface");
    if (surf.contains("curves")) {
        for (const auto& cj : surf["curves"]) {
            reject_unknown(cj, {"id", "genus", "in_D"}, "curve");
            Curve c;
            c.id = get_string(cj, "id", "curve");
            c.genus = get_int(cj, "genus", "curve '" + c.id + "'");
            if (!cj.contains("in_D") || !cj["in_D"].is_boolean())
                throw CalcError(Err::ValidationError, "curve '" + c.id + "' needs boolean 'in_D'");
            c.in_d = cj["in_D"].get<bool>();
            s.surface.curves.push_back(std::move(c));
        }
    }
    if (surf.contains("points")) {
        for (const auto& pj : surf["points"]) {
            reject_unknown(pj, {"id", "on"}, "point");
            MarkedPoint p;
            p.id = get_string(pj, "id", "point");
            if (!pj.contains("on") || !pj["on"].is_array())
                throw CalcError(Err::ValidationError, "point '" + p.id + "' needs an 'on' array");
            for (const auto& c : pj["on"]) p.on.push_back(c.get<std::string>());
            std::sort(p.on.begin(), p.on.end());
            s.surface.points.push_back(std::move(p));
        }
    }
    validate_pair(s.surface);

    if (j.contains("connections")) {
        for (const auto& [name, cj] : j["connections"].items()) {
            reject_unknown(cj, {"summands"}, "connection '" + name + "'");
            if (!cj.contains("summands") || !cj["summands"].is_array())
                throw CalcError(Err::ValidationError, "connection '" + name + "' needs 'summands'");
            ExpConnection m;
            for (const auto& sj : cj["summands"]) {
                reject_unknown(sj, {"rank", "exponents", "coeff"}, "summand of '" + name + "'");
                ExpSummand sm;
                sm.rank = get_int(sj, "rank", "summand of '" + name + "'");
                ExpVec e;
                if (sj.contains("exponents")) {
                    for (const auto& [c, k] : sj["exponents"].items()) {
                        if (!k.is_number_integer())
                            throw CalcError(Err::ValidationError,
                                            "exponent of '" + c + "' must be an integer");
                        if (k.get<Int>() != 0) e.e[c] = k.get<Int>();
                    }
                }
                Symbol tag = sj.contains("coeff") ? get_string(sj, "coeff", "summand") : "c";
                if (e.e.empty())
                    sm.value = Combination{};  // regular factor
                else
                    sm.value = Combination::monomial(e, tag);
                m.summands.push_back(std::move(sm));
            }
            validate_connection(s.surface, m);
            s.connections.emplace_back(name, std::move(m));
        }
    }

    if (j.contains("divisors")) {
        for (const auto& [name, dj] : j["divisors"].items()) {
            Coeffs d;
            for (const auto& [c, k] : dj.items()) {
                if (!s.surface.has_curve(c))
                    throw CalcError(Err::ValidationError,
                                    "divisor '" + name + "' on unknown curve '" + c + "'");
                if (!k.is_number_integer())
                    throw CalcError(Err::ValidationError, "divisor coefficient must be an integer");
                set_coeff(d, c, k.get<Int>());
            }
            s.divisors.emplace_back(name, std::move(d));
        }
    }

    if (j.contains("options")) {
        const json& oj = j["options"];
        reject_unknown(oj, {"probe_depth", "max_blowups"}, "options");
        if (oj.contains("probe_depth")) s.options.probe_depth = static_cast<int>(get_int(oj, "probe_depth", "options"));
        if (oj.contains("max_blowups")) s.options.max_blowups = static_cast<int>(get_int(oj, "max_blowups", "options"));
    }
    return s;
}

Scenario parse_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw CalcError(Err::ParseError, "cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_scenario_text(text, path);
}

std::string serialize_scenario(const Scenario& s) {
    ordered_json j;
    ordered_json surf;
    surf["euler_characteristic"] = s.surface.chi_top;
    surf["curves"] = ordered_json::array();
    for (const auto& c : s.surface.curves)
        surf["curves"].push_back({{"id", c.id}, {"genus", c.genus}, {"in_D", c.in_d}});
    surf["points"] = ordered_json::array();
    for (const auto& p : s.surface.points)
        surf["points"].push_back({{"id", p.id}, {"on", p.on}});
    j["surface"] = std::move(surf);
    ordered_json conns = ordered_json::object();
    for (const auto& [name, m] : s.connections) {
        ordered_json summands = ordered_json::array();
        for (const auto& sm : m.summands) {
            ordered_json sj;
            sj["rank"] = sm.rank;
            ordered_json ex = ordered_json::object();
            Symbol tag = "c";
            for (const auto& [e, t] : sm.value.terms) {
                for (const auto& [c, k] : e.e) ex[c] = k;
                if (t.c.size() == 1 && t.c.begin()->second == 1) tag = t.c.begin()->first;
            }
            sj["exponents"] = std::move(ex);
            sj["coeff"] = tag;
            summands.push_back(std::move(sj));
        }
        conns[name] = {{"summands", std::move(summands)}};
    }
    j["connections"] = std::move(conns);
    ordered_json divs = ordered_json::object();
    for (const auto& [name, d] : s.divisors) {
        ordered_json dj = ordered_json::object();
        for (const auto& [c, k] : d) dj[c] = k;
        divs[name] = std::move(dj);
    }
    j["divisors"] = std::move(divs);
    j["options"] = {{"probe_depth", s.options.probe_depth}, {"max_blowups", s.options.max_blowups}};
    return j.dump(2) + "\n";
}

}  // namespace bdiv
