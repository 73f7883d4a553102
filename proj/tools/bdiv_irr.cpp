#include <CLI11.hpp>
#include <iostream>

#include "../src/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"bdiv-irr: exact b-divisor and irregularity calculus on surface configurations"};
    std::string command;
    std::string scenario_path;
    std::string connection;
    std::string divisor;
    std::string format = "text";
    int probe_depth = -1;
    int max_blowups = -1;

    app.add_option("command", command, "validate | irr | delta | turning | cc | chi | bounds | check | report")
        ->required();
    app.add_option("--scenario", scenario_path, "scenario JSON file")->required();
    app.add_option("--connection", connection, "connection name");
    app.add_option("--divisor", divisor, "divisor name (slope bound certificate)");
    app.add_option("--probe-depth", probe_depth, "override probe depth");
    app.add_option("--max-blowups", max_blowups, "override resolution budget per root point");
    app.add_option("--format", format, "text | json | dot")
        ->check(CLI::IsMember({"text", "json", "dot"}));

    CLI11_PARSE(app, argc, argv);

    try {
        bdiv::Scenario s = bdiv::parse_scenario(scenario_path);
        if (probe_depth >= 0) s.options.probe_depth = probe_depth;
        if (max_blowups >= 0) s.options.max_blowups = max_blowups;
        bdiv::Format fmt = bdiv::Format::Text;
        if (format == "json") fmt = bdiv::Format::Json;
        if (format == "dot") fmt = bdiv::Format::Dot;
        bdiv::RunResult r = bdiv::run_command(command, s, connection, divisor, fmt);
        std::cout << r.output;
        return r.exit_code;
    } catch (const bdiv::CalcError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
