// crowdcov -- coverability checking for anonymous crowd protocols
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "crowdcov/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"coverability checking for anonymous crowd protocols"};
    app.require_subcommand(1);

    std::string file;
    crowdcov::CheckOptions opt;
    auto* check = app.add_subcommand("check", "decide coverability of the target");
    check->add_option("file", file, "crowd template file")->required();
    check->add_option("--engine", opt.engine, "auto|backward|km|leaderless|oracle")
        ->default_val("auto");
    check->add_option("--oracle-n", opt.oracle_n, "crowd size bound for the oracle engine")
        ->default_val(5);
    check->add_flag("--witness", opt.witness, "print a replayable witness when coverable");
    check->add_flag("--json", opt.json, "machine-readable report on stdout");
    check->add_flag("--complete-receives", opt.complete,
                    "add missing broadcast receive self-loops before checking");
    check->add_option("--budget", opt.budget, "configuration/node cap for bounded engines")
        ->default_val(crowdcov::kDefaultBudget);

    std::string explore_file;
    crowdcov::Count explore_n = 0;
    std::size_t explore_budget = crowdcov::kDefaultBudget;
    auto* explore = app.add_subcommand("explore", "list configurations reachable with n processes");
    explore->add_option("file", explore_file, "crowd template file")->required();
    explore->add_option("n", explore_n, "crowd size")->required();
    explore->add_option("--budget", explore_budget, "configuration cap")
        ->default_val(crowdcov::kDefaultBudget);

    std::string validate_file;
    auto* validate = app.add_subcommand("validate", "check template well-formedness");
    validate->add_option("file", validate_file, "crowd template file")->required();

    std::string compile_file;
    auto* compile = app.add_subcommand("compile", "dump the compiled coverability instance");
    compile->add_option("file", compile_file, "crowd template file")->required();

    CLI11_PARSE(app, argc, argv);

    if (check->parsed()) return crowdcov::cmd_check(file, opt, std::cout, std::cerr);
    if (explore->parsed())
        return crowdcov::cmd_explore(explore_file, explore_n, explore_budget, std::cout,
                                     std::cerr);
    if (validate->parsed()) return crowdcov::cmd_validate(validate_file, std::cout, std::cerr);
    if (compile->parsed()) return crowdcov::cmd_compile(compile_file, std::cout, std::cerr);
    return crowdcov::exit_code::kInputError;
}
