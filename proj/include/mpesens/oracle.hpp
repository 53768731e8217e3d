#ifndef MPESENS_ORACLE_HPP
#define MPESENS_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "mpesens/network.hpp"

namespace mpesens {

// Exhaustive-enumeration ground truth. Everything here walks the full
// instantiation space and is deliberately free of circuits, registers and
// elimination orders. Usable up to the enumeration guard; a guard hit is a
// hard error, never a silent truncation.
namespace oracle {

constexpr std::uint64_t kDefaultGuard = std::uint64_t{1} << 24;

// Relative tie tolerance for membership in an argmax set.
constexpr double kTieTolerance = 1e-12;

struct MpeSet {
    std::vector<Instantiation> argmax;  // every instantiation attaining the max
    double probability = 0.0;
};

// Full enumeration of instantiations consistent with e; ties within
// kTieTolerance relative are all reported.
MpeSet brute_force_mpe(const BayesianNetwork& net, const Evidence& e,
                       std::uint64_t guard = kDefaultGuard);

// Pr(e) by summing every consistent term.
double brute_force_probability(const BayesianNetwork& net, const Evidence& e,
                               std::uint64_t guard = kDefaultGuard);

// r(e, xu): max over instantiations compatible with e and with xu of the
// term product excluding theta(x|u) itself. Well defined when the
// parameter is 0; max over an empty set is 0.
double brute_force_coefficient(const BayesianNetwork& net, const Evidence& e,
                               const ParameterRef& param, std::uint64_t guard = kDefaultGuard);

// k(e, u) for the family of `var`: max probability over instantiations
// compatible with e but not with parent row u; 0 for root variables.
double brute_force_k(const BayesianNetwork& net, const Evidence& e, int var, int row,
                     std::uint64_t guard = kDefaultGuard);

struct IntervalCheck {
    bool pass = true;
    std::vector<double> failing_inside;   // t inside the interval where witness lost
    std::vector<double> failing_outside;  // t outside the interval where witness survived
};

// Samples parameter values strictly inside and (when the interval is a
// strict subset of [0,1]) strictly outside the reported interval,
// re-solves the perturbed network by enumeration, and checks whether the
// witness stays / stops being an MPE solution. A 1e-9 band around each
// endpoint is excluded from sampling.
IntervalCheck verify_robustness_interval(const BayesianNetwork& net, const Evidence& e,
                                         const ParameterRef& param, const Instantiation& witness,
                                         double lower, double upper, int n_samples,
                                         std::uint64_t seed, std::uint64_t guard = kDefaultGuard);

}  // namespace oracle
}  // namespace mpesens

#endif
