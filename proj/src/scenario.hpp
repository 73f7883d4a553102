#ifndef BDIV_SCENARIO_HPP
#define BDIV_SCENARIO_HPP

#include "bounds.hpp"

namespace bdiv {

struct Options {
    int probe_depth = 3;
    int max_blowups = 64;
};

struct Scenario {
    SurfacePair surface;
    std::vector<std::pair<Symbol, ExpConnection>> connections;  // insertion order kept
    std::vector<std::pair<Symbol, Coeffs>> divisors;
    Options options;

    const ExpConnection* find_connection(const Symbol& name) const;
    const Coeffs* find_divisor(const Symbol& name) const;
};

// Strict JSON schema: top-level keys "surface" {"euler_characteristic",
// "curves":[{"id","genus","in_D"}], "points":[{"id","on":[ids]}]},
// "connections" {name: {"summands":[{"rank","exponents":{curve:int},"coeff"}]}},
// "divisors" {name: {curve: int}}, "options" {"probe_depth","max_blowups"}.
// Unknown keys are rejected.
Scenario parse_scenario_text(const std::string& text, const std::string& origin);
Scenario parse_scenario(const std::string& path);

std::string serialize_scenario(const Scenario& s);

}  // namespace bdiv

#endif
