#ifndef MPESENS_ENGINE_HPP
#define MPESENS_ENGINE_HPP

#include <vector>

#include "mpesens/circuit.hpp"
#include "mpesens/network.hpp"

namespace mpesens {

// lambda(x) per (variable, value): 0 iff x contradicts the evidence.
// Indexed like ArithmeticCircuit::indicator_leaf.
struct IndicatorSetting {
    std::vector<std::vector<double>> lambda;
};

IndicatorSetting indicator_setting(const BayesianNetwork& net, const Evidence& e);

// Per-node values of one query: p[v] from the upward pass, r[v] from the
// downward register pass. The circuit is shared read-only; a state belongs
// to a single query.
struct EvaluationState {
    std::vector<double> p;
    std::vector<double> r;
    Evidence evidence;

    double p_root(const ArithmeticCircuit& c) const { return p[c.root]; }
};

struct MpeResult {
    double probability = 0.0;
    Instantiation witness;  // deterministic tie-break: lowest-index child
};

// Upward pass with COMBINE = addition; returns Pr(e).
double evaluate_sum(const ArithmeticCircuit& circuit, const BayesianNetwork& net,
                    const Evidence& e);

// Upward pass with COMBINE = maximization; p[root] = MPE probability.
EvaluationState evaluate_max(const ArithmeticCircuit& circuit, const BayesianNetwork& net,
                             const Evidence& e);

// Walks the MPE sub-circuit of a max-evaluated state: all children of each
// multiplication, the lowest-index value-attaining child of each
// maximization; the indicators visited induce the witness. Throws
// std::logic_error if they do not induce exactly one complete instantiation
// consistent with the evidence (a compilation bug).
MpeResult extract_mpe(const ArithmeticCircuit& circuit, const BayesianNetwork& net,
                      const EvaluationState& state);

// The downward register pass over the maximizer circuit: r[root] = 1, and
// each parent pushes max(r[child], r[parent] * product of sibling values)
// down. Afterwards r at a parameter leaf is the sensitivity constant
// r(e, xu) and r at an indicator leaf is the retraction value
// MPE_p(e - X, x). Sibling products use prefix/suffix arrays, so zeros in
// parameters or indicators never poison a register (no division anywhere).
EvaluationState run_dmaxc(const ArithmeticCircuit& circuit, const BayesianNetwork& net,
                          const Evidence& e);

}  // namespace mpesens

#endif
