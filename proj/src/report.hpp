#ifndef BDIV_REPORT_HPP
#define BDIV_REPORT_HPP

#include "scenario.hpp"

namespace bdiv {

enum class Format { Text, Json, Dot };

struct RunResult {
    int exit_code = 0;  // 0 ok, 1 math-consistency failure, 2 input error
    std::string output;
};

// command in {validate, irr, delta, turning, cc, chi, bounds, check, report}
RunResult run_command(const std::string& command, const Scenario& scenario,
                      const Symbol& connection_name, const Symbol& divisor_name, Format fmt);

// DOT digraph of the infinitely-near forest of a connection's resolution;
// node labels carry irr_along and delta values
std::string emit_dot(const Scenario& scenario, const Symbol& connection_name);

}  // namespace bdiv

#endif
