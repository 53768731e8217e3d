#include "mpesens/engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace mpesens {

IndicatorSetting indicator_setting(const BayesianNetwork& net, const Evidence& e) {
    IndicatorSetting setting;
    setting.lambda.resize(net.num_variables());
    for (int v = 0; v < net.num_variables(); ++v) {
        setting.lambda[v].assign(net.cardinality(v), 1.0);
        if (e.is_set(v)) {
            for (int x = 0; x < net.cardinality(v); ++x)
                if (x != e.values[v]) setting.lambda[v][x] = 0.0;
        }
    }
    return setting;
}

namespace {

enum class Semantics { Sum, Max };

std::vector<double> upward_pass(const ArithmeticCircuit& circuit, const BayesianNetwork& net,
                                const IndicatorSetting& setting, Semantics semantics) {
    std::vector<double> p(circuit.nodes.size());
    for (std::size_t id = 0; id < circuit.nodes.size(); ++id) {
        const CircuitNode& node = circuit.nodes[id];
        switch (node.kind) {
            case NodeKind::ParamLeaf:
                p[id] = net.cpt(node.variable).rows[node.row][node.value];
                break;
            case NodeKind::IndicatorLeaf:
                p[id] = setting.lambda[node.variable][node.value];
                break;
            case NodeKind::Multiply: {
                double prod = 1.0;
                for (std::uint32_t c : node.children) prod *= p[c];
                p[id] = prod;
                break;
            }
            case NodeKind::Combine: {
                double acc = semantics == Semantics::Sum ? 0.0 : p[node.children[0]];
                if (semantics == Semantics::Sum) {
                    for (std::uint32_t c : node.children) acc += p[c];
                } else {
                    for (std::uint32_t c : node.children) acc = std::max(acc, p[c]);
                }
                p[id] = acc;
                break;
            }
        }
    }
    return p;
}

}  // namespace

double evaluate_sum(const ArithmeticCircuit& circuit, const BayesianNetwork& net,
                    const Evidence& e) {
    return upward_pass(circuit, net, indicator_setting(net, e), Semantics::Sum)[circuit.root];
}

EvaluationState evaluate_max(const ArithmeticCircuit& circuit, const BayesianNetwork& net,
                             const Evidence& e) {
    EvaluationState state;
    state.evidence = e;
    state.p = upward_pass(circuit, net, indicator_setting(net, e), Semantics::Max);
    return state;
}

MpeResult extract_mpe(const ArithmeticCircuit& circuit, const BayesianNetwork& net,
                      const EvaluationState& state) {
    MpeResult result;
    result.probability = state.p[circuit.root];

    const int n = net.num_variables();
    result.witness.values.assign(n, -1);

    if (result.probability == 0.0) {
        // Every consistent completion has probability 0; any of them is a
        // witness. Extend the evidence deterministically.
        for (int v = 0; v < n; ++v)
            result.witness.values[v] =
                state.evidence.is_set(v) ? state.evidence.values[v] : 0;
        return result;
    }

    std::vector<std::uint32_t> stack{circuit.root};
    while (!stack.empty()) {
        const std::uint32_t id = stack.back();
        stack.pop_back();
        const CircuitNode& node = circuit.nodes[id];
        switch (node.kind) {
            case NodeKind::ParamLeaf:
                break;
            case NodeKind::IndicatorLeaf: {
                int& slot = result.witness.values[node.variable];
                if (slot != -1 && slot != node.value)
                    throw std::logic_error("MPE sub-circuit assigns two values to " +
                                           net.variable(node.variable).name);
                slot = node.value;
                break;
            }
            case NodeKind::Multiply:
                for (std::uint32_t c : node.children) stack.push_back(c);
                break;
            case NodeKind::Combine: {
                // maximization picked one of its children bit-exactly, so an
                // exact comparison always finds the lowest-index one
                std::uint32_t pick = node.children[0];
                for (std::uint32_t c : node.children)
                    if (state.p[c] == state.p[id]) {
                        pick = c;
                        break;
                    }
                stack.push_back(pick);
                break;
            }
        }
    }

    for (int v = 0; v < n; ++v)
        if (result.witness.values[v] == -1)
            throw std::logic_error("MPE sub-circuit left " + net.variable(v).name + " unassigned");
    if (!is_compatible(state.evidence, result.witness))
        throw std::logic_error("MPE sub-circuit contradicts the evidence");
    return result;
}

EvaluationState run_dmaxc(const ArithmeticCircuit& circuit, const BayesianNetwork& net,
                          const Evidence& e) {
    EvaluationState state = evaluate_max(circuit, net, e);
    state.r.assign(circuit.nodes.size(), 0.0);
    state.r[circuit.root] = 1.0;

    std::vector<double> prefix, suffix;
    for (std::size_t id = circuit.nodes.size(); id-- > 0;) {  // parents before children
        const CircuitNode& node = circuit.nodes[id];
        if (node.children.empty()) continue;
        const double rv = state.r[id];
        if (node.kind == NodeKind::Combine) {
            for (std::uint32_t c : node.children)
                state.r[c] = std::max(state.r[c], rv);
        } else {
            const std::size_t m = node.children.size();
            prefix.assign(m + 1, 1.0);
            suffix.assign(m + 1, 1.0);
            for (std::size_t i = 0; i < m; ++i)
                prefix[i + 1] = prefix[i] * state.p[node.children[i]];
            for (std::size_t i = m; i-- > 0;)
                suffix[i] = suffix[i + 1] * state.p[node.children[i]];
            for (std::size_t i = 0; i < m; ++i) {
                std::uint32_t c = node.children[i];
                state.r[c] = std::max(state.r[c], rv * prefix[i] * suffix[i + 1]);
            }
        }
    }
    return state;
}

}  // namespace mpesens
