#ifndef MPESENS_SENSITIVITY_HPP
#define MPESENS_SENSITIVITY_HPP

#include <vector>

#include "mpesens/covariation.hpp"
#include "mpesens/engine.hpp"
#include "mpesens/network.hpp"

namespace mpesens {

// Relative tolerance for "two probabilities are the same MPE level".
constexpr double kMpeTieTolerance = 1e-12;

// The two constants governing every single-parameter change: r(e, xu) per
// CPT cell and k(e, u) per family row. For every family,
// MPE_p(e) = max(max_x r(e,xu) * theta(x|u), k(e,u)).
struct SensitivityConstants {
    std::vector<std::vector<double>> r;  // [var][row * cardinality + value]
    std::vector<std::vector<double>> k;  // [var][row]
};

// r(e, xu) for every CPT cell, read off the registers of a D-MAXC state.
std::vector<std::vector<double>> parameter_coefficient_map(const EvaluationState& state,
                                                           const ArithmeticCircuit& circuit,
                                                           const BayesianNetwork& net);

// k(e, u) = max over rows u* != u and values x of r(e, xu*) * theta(x|u*);
// 0 for root variables.
std::vector<std::vector<double>> parent_k_map(const std::vector<std::vector<double>>& r,
                                              const BayesianNetwork& net);

SensitivityConstants sensitivity_constants(const EvaluationState& state,
                                           const ArithmeticCircuit& circuit,
                                           const BayesianNetwork& net);

// What the binding inequality at an interval endpoint compares the witness
// branch against.
struct BindingConstraint {
    enum Kind { DomainEdge, VersusValue, VersusK } kind = DomainEdge;
    int value = -1;  // competitor child value when kind == VersusValue
};

struct RobustnessInterval {
    ParameterRef parameter;
    double current = 0.0;
    double lower = 0.0;
    double upper = 1.0;
    BindingConstraint binding_lower;
    BindingConstraint binding_upper;
    // Another branch of this family already attains MPE_p(e) at the current
    // value: the witness sits on a tie point.
    bool tie_at_current = false;
    // theta(x|u) = 1, so the proportional scheme fell back to spreading the
    // remaining mass uniformly.
    bool uniform_covariation = false;
};

// Closed interval of values for theta(x|u) (moved under co-variation) within
// which `witness` remains an MPE solution of the evidence the constants were
// computed for.
RobustnessInterval robustness_interval(const ParameterRef& param,
                                       const SensitivityConstants& constants,
                                       const Instantiation& witness, const BayesianNetwork& net);

// MPE_p(e - X, x) for every variable and value, read off indicator
// registers; entries[X][x] with the queried MPE probability alongside.
struct RetractionTable {
    double mpe_probability = 0.0;
    std::vector<std::vector<double>> entries;
};

RetractionTable retraction_table(const EvaluationState& state, const ArithmeticCircuit& circuit,
                                 const BayesianNetwork& net);

enum class RetractionVerdict {
    IdentityPreservedStrictly,  // MPE(e) = MPE(e - X)
    IdentityEnlarged,           // MPE(e) is a proper subset of MPE(e - X)
    IdentityChanges,            // retracting X = x hands the MPE to other values
};

// Verdict for one variable set in the evidence; throws std::invalid_argument
// for unset variables.
RetractionVerdict retraction_verdict(const RetractionTable& table, const Evidence& e, int var);

// For a variable not set in the evidence: either every MPE solution agrees
// on its value (forced, multiple == false) or several values tie at
// MPE_p(e). Throws std::invalid_argument for set variables.
struct Multiplicity {
    bool multiple = false;
    int forced_value = -1;
    std::vector<int> tied_values;  // the values attaining MPE_p(e)
};

Multiplicity mpe_multiplicity(const RetractionTable& table, const Evidence& e, int var);

}  // namespace mpesens

#endif
