#ifndef MPESENS_RANDOM_NETWORK_HPP
#define MPESENS_RANDOM_NETWORK_HPP

#include <cstdint>

#include "mpesens/network.hpp"
#include "mpesens/rng.hpp"

namespace mpesens {

// Seed-reproducible test networks: 3-12 variables with cardinality 2 or 3,
// a random DAG over the declared order with at most 3 parents per variable,
// CPT rows drawn from a symmetric Dirichlet(1).
BayesianNetwork random_network(Rng& rng);

// Random evidence over `net`: each variable is set with probability ~1/3.
Evidence random_evidence(const BayesianNetwork& net, Rng& rng);

}  // namespace mpesens

#endif
