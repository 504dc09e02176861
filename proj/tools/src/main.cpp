#include <CLI11.hpp>
#include <iostream>

#include "copson/errors.hpp"
#include "copson_cli/commands.hpp"

int main(int argc, char** argv) {
    using namespace copson::cli;
    CLI::App app{"copson: embeddings of Copson-Lorentz spaces into Lorentz spaces"};
    app.require_subcommand(1);

    std::string file;
    bool as_json = false;
    bool oracle = false;
    std::optional<std::uint64_t> seed;
    std::optional<int> depth;
    std::optional<double> tol;

    const std::vector<std::pair<std::string, std::string>> commands{
        {"admissible", "check that 0 < phi < inf on (0, inf)"},
        {"phi", "fundamental function and its derivative at t"},
        {"discretize", "discretizing sequence and its residuals"},
        {"embed", "embedding conditions and the estimated optimal constant"},
        {"assoc", "associated norm of the step function g"},
        {"verify", "run the invariant checks on the problem"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("-f,--file", file, "problem file")->required();
        sub->add_flag("--json", as_json, "print compact JSON");
        sub->add_option("--seed", seed, "optimizer seed");
        sub->add_option("--depth", depth, "steps of the discretizing sequence in each direction");
        sub->add_option("--tol", tol, "relative quadrature tolerance");
        if (name == "embed") sub->add_flag("--oracle", oracle, "add the empirical constant");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitInput;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    CommandResult result;
    try {
        ProblemSpec spec = load_problem(file);
        if (seed) spec.budget.seed = *seed;
        if (depth) {
            if (*depth < 1) throw copson::ParseError("depth must be at least 1", 0);
            spec.depth = *depth;
        }
        if (tol) {
            if (!(*tol > 0.0)) throw copson::ParseError("tol must be positive", 0);
            spec.grid.tol = *tol;
        }
        result = run_command(name, spec, {oracle});
    } catch (const copson::Error& e) {
        result = {kExitInput, {{"error", e.what()}}};
    }
    result.report["command"] = name;
    result.report["exit_code"] = result.exit_code;
    if (as_json) {
        std::cout << result.report.dump() << "\n";
    } else {
        std::cout << result.report.dump(2) << "\n";
    }
    if (result.report.contains("error")) {
        std::cerr << "copson " << name << ": " << result.report["error"].get<std::string>() << "\n";
    }
    return result.exit_code;
}
