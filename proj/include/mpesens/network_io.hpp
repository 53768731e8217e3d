#ifndef MPESENS_NETWORK_IO_HPP
#define MPESENS_NETWORK_IO_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "mpesens/network.hpp"

namespace mpesens {

// Malformed document: not JSON, wrong shape, or unresolvable references.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structurally sound document whose contents break a network invariant.
struct ValidationError : std::runtime_error {
    ValidationError(std::string msg, std::vector<Violation> violations)
        : std::runtime_error(std::move(msg)), violations(std::move(violations)) {}
    std::vector<Violation> violations;
};

// Network document format: a JSON object with two collections,
//
//   {"variables": [{"name": "A", "values": ["a", "a_bar"]}, ...],
//    "cpts": [{"child": "B", "parents": ["A"],
//              "rows": [[0.2, 0.8], [0.6, 0.4]]}, ...]}
//
// Row u is the parent instantiation in lexicographic order (declared parent
// order, last parent fastest); column x follows the child's value order.
BayesianNetwork load_network(const std::string& document);
BayesianNetwork load_network_file(const std::string& path);

// Inverse of load_network on the data model (exact doubles preserved).
std::string serialize_network(const BayesianNetwork& net);

// Whitespace-separated "Var=value" tokens.
Evidence parse_evidence(const BayesianNetwork& net, const std::string& tokens);
Evidence parse_evidence(const BayesianNetwork& net, const std::vector<std::string>& tokens);

}  // namespace mpesens

#endif
