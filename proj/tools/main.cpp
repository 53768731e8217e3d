#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mpesens/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"MPE robustness analysis for Bayesian networks"};
    app.require_subcommand(1);

    mpesens::CliConfig config{};
    std::string format = "table";

    auto add_common = [&](CLI::App* sub, bool with_evidence) {
        sub->add_option("network", config.network_path, "network document (JSON)")->required();
        if (with_evidence)
            sub->add_option("evidence,--evidence", config.evidence_tokens,
                            "evidence as Var=value tokens");
        sub->add_option("--format", format, "output format: table or report")
            ->check(CLI::IsMember({"table", "report"}));
        sub->add_option("--guard", config.guard, "enumeration guard for oracle checks");
        return sub;
    };

    auto* compile = add_common(app.add_subcommand("compile", "compile and print circuit stats"), false);
    compile->add_flag("--dump", config.dump_circuit, "print the circuit node list");

    add_common(app.add_subcommand("mpe", "most probable explanation"), true);
    add_common(app.add_subcommand("sensitivity", "full per-parameter robustness report"), true);

    auto* retract = add_common(
        app.add_subcommand("retract", "evidence retraction table, verdicts, multiplicity"), true);
    retract->add_option("--retracted-witness", config.retracted_witness_var,
                        "also re-solve the MPE with this variable retracted");

    auto* check = add_common(app.add_subcommand("check", "engine-vs-oracle equivalence suite"), true);
    check->add_option("--random", config.random_networks, "also check N random networks");
    check->add_option("--seed", config.seed, "seed for random networks and samples");

    CLI11_PARSE(app, argc, argv);

    using Command = mpesens::CliConfig::Command;
    if (app.got_subcommand("compile")) config.command = Command::Compile;
    else if (app.got_subcommand("mpe")) config.command = Command::Mpe;
    else if (app.got_subcommand("sensitivity")) config.command = Command::Sensitivity;
    else if (app.got_subcommand("retract")) config.command = Command::Retract;
    else config.command = Command::Check;

    config.format = format == "report" ? mpesens::CliConfig::Format::Report
                                       : mpesens::CliConfig::Format::Table;

    return mpesens::run_cli(config, std::cout, std::cerr);
}
