#ifndef MPESENS_CLI_HPP
#define MPESENS_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mpesens/oracle.hpp"

namespace mpesens {

struct CliConfig {
    enum class Command { Compile, Mpe, Sensitivity, Retract, Check } command;
    enum class Format { Table, Report } format = Format::Table;

    std::string network_path;
    std::vector<std::string> evidence_tokens;
    std::uint64_t seed = 1;
    int random_networks = 0;  // `check`: extra generated instances
    std::uint64_t guard = oracle::kDefaultGuard;
    bool dump_circuit = false;            // `compile`: print the node list
    std::string retracted_witness_var;    // `retract`: re-solve under e - X
};

// Exit status: 0 success, 1 validation or input error, 2 check failure.
int run_cli(const CliConfig& config, std::ostream& out, std::ostream& err);

}  // namespace mpesens

#endif
