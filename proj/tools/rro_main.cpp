#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rro/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"reduced-ring order toolkit: scenario runner"};

    bool list = false;
    std::string scenario_path, builtin, out_path, dot_path, format = "json";
    long long bound = -1;
    int degree = -1, coeff_degree = -1;
    long long seed = -1;
    bool timing = false;

    app.add_flag("--list", list, "list the built-in scenarios");
    app.add_option("--scenario", scenario_path, "scenario JSON file to run");
    app.add_option("--builtin", builtin, "built-in scenario to run");
    app.add_option("--bound", bound, "override enumeration bounds");
    app.add_option("--degree", degree, "override the generator-degree cap D");
    app.add_option("--coeff-degree", coeff_degree, "override the coefficient-degree cap d");
    app.add_option("--seed", seed, "override the scenario seed");
    app.add_option("--out", out_path, "write the report to this file as well");
    app.add_option("--dot", dot_path, "write the last DOT emission to this file");
    app.add_option("--format", format, "report format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_flag("--timing", timing, "include wall-clock timings in the report");

    CLI11_PARSE(app, argc, argv);

    if (list) {
        for (const auto& name : rro::scen::list_scenarios()) std::cout << name << "\n";
        return 0;
    }
    if (scenario_path.empty() == builtin.empty()) {
        std::cerr << "exactly one of --scenario or --builtin is required (or --list)\n";
        return 2;
    }

    std::string text;
    if (!builtin.empty()) {
        try {
            text = rro::scen::builtin_scenario(builtin);
        } catch (const std::exception& e) {
            std::cerr << e.what() << "\n";
            return 2;
        }
    } else {
        std::ifstream in(scenario_path);
        if (!in) {
            std::cerr << "cannot open " << scenario_path << "\n";
            return 2;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }

    rro::scen::RunOptions opts;
    if (bound >= 0) opts.bound = bound;
    if (degree >= 0) opts.degree = degree;
    if (coeff_degree >= 0) opts.coeff_degree = coeff_degree;
    if (seed >= 0) opts.seed = static_cast<uint64_t>(seed);
    opts.timing = timing;
    opts.format = format;

    auto outcome = rro::scen::run_scenario_text(text, opts);

    std::string rendered = (format == "text") ? rro::scen::render_text_report(outcome.report)
                                              : outcome.report.dump(2) + "\n";
    std::cout << rendered;
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << rendered;
    }
    if (!dot_path.empty() && !outcome.dot.empty()) {
        std::ofstream out(dot_path);
        out << outcome.dot;
    }
    return outcome.exit_code;
}
