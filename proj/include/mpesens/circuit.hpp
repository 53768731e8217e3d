#ifndef MPESENS_CIRCUIT_HPP
#define MPESENS_CIRCUIT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mpesens/network.hpp"

namespace mpesens {

// One node kind serves both semantics: COMBINE reads as addition when the
// circuit is evaluated as an arithmetic circuit and as maximization when it
// is evaluated as a maximizer circuit. The two circuits are structurally
// identical.
enum class NodeKind : std::uint8_t { Combine, Multiply, ParamLeaf, IndicatorLeaf };

struct CircuitNode {
    NodeKind kind;
    std::vector<std::uint32_t> children;  // empty for leaves
    // Leaf payload: ParamLeaf uses variable/value/row, IndicatorLeaf variable/value.
    int variable = -1;
    int value = -1;
    int row = -1;
};

struct EliminationOrder {
    std::vector<int> order;  // permutation of variable indices
    int width = 0;           // induced width of this order
};

// Rooted DAG in topological storage order: every child index precedes its
// parent's index; the root is the last node. Leaf indices give O(1) access
// from every CPT cell and every (variable, value) indicator to its unique
// leaf, which is what the downward register pass is read through.
struct ArithmeticCircuit {
    std::vector<CircuitNode> nodes;
    std::uint32_t root = 0;
    int width = 0;

    // param_leaf[var][row * cardinality(var) + value]
    std::vector<std::vector<std::uint32_t>> param_leaf;
    // indicator_leaf[var][value]
    std::vector<std::vector<std::uint32_t>> indicator_leaf;

    std::size_t size() const { return nodes.size(); }
    std::uint32_t param_leaf_id(const ParameterRef& p, const BayesianNetwork& net) const {
        return param_leaf[p.variable][static_cast<std::size_t>(p.row) * net.cardinality(p.variable) +
                                      p.value];
    }
};

// Greedy min-fill order over the moral graph; ties broken by lowest declared
// variable index. The reported width is the induced width of the returned
// order (max residual degree at elimination time).
EliminationOrder min_fill_order(const BayesianNetwork& net);

// Variable elimination where each factor cell holds a circuit node instead
// of a number. Deterministic given (net, order); node count O(n exp(width)).
ArithmeticCircuit compile_circuit(const BayesianNetwork& net, const EliminationOrder& order);

inline ArithmeticCircuit compile_circuit(const BayesianNetwork& net) {
    return compile_circuit(net, min_fill_order(net));
}

// Multiplication nodes whose child sub-circuits overlap, i.e. share an
// indicator variable or any individual leaf. A product over such children
// would be non-multilinear, so compiled circuits must report none.
std::vector<std::uint32_t> check_decomposability(const ArithmeticCircuit& circuit,
                                                 const BayesianNetwork& net);

// Debug dump: one node per line, "id kind children... [label]", topological
// order. Not a stability-guaranteed interface.
std::string dump_circuit(const ArithmeticCircuit& circuit, const BayesianNetwork& net);

}  // namespace mpesens

#endif
