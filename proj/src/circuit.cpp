#include "mpesens/circuit.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace mpesens {

// ---------------------------------------------------------------------------
// min-fill ordering

namespace {

struct MoralGraph {
    int n;
    std::vector<std::vector<char>> adj;  // adjacency matrix; small n

    explicit MoralGraph(const BayesianNetwork& net) : n(net.num_variables()) {
        adj.assign(n, std::vector<char>(n, 0));
        for (int v = 0; v < n; ++v) {
            const auto& parents = net.cpt(v).parents;
            for (std::size_t i = 0; i < parents.size(); ++i) {
                connect(v, parents[i]);
                for (std::size_t j = i + 1; j < parents.size(); ++j)
                    connect(parents[i], parents[j]);
            }
        }
    }

    void connect(int a, int b) {
        if (a == b) return;
        adj[a][b] = adj[b][a] = 1;
    }
};

}  // namespace

EliminationOrder min_fill_order(const BayesianNetwork& net) {
    MoralGraph g(net);
    const int n = g.n;
    std::vector<char> removed(n, 0);
    EliminationOrder out;
    out.order.reserve(n);

    for (int step = 0; step < n; ++step) {
        int best = -1;
        long best_fill = -1;
        for (int v = 0; v < n; ++v) {
            if (removed[v]) continue;
            long fill = 0;
            for (int a = 0; a < n; ++a) {
                if (removed[a] || !g.adj[v][a]) continue;
                for (int b = a + 1; b < n; ++b)
                    if (!removed[b] && g.adj[v][b] && !g.adj[a][b]) ++fill;
            }
            if (best < 0 || fill < best_fill) {
                best = v;
                best_fill = fill;
            }
        }

        int degree = 0;
        for (int a = 0; a < n; ++a)
            if (!removed[a] && g.adj[best][a]) ++degree;
        out.width = std::max(out.width, degree);

        for (int a = 0; a < n; ++a) {
            if (removed[a] || !g.adj[best][a]) continue;
            for (int b = a + 1; b < n; ++b)
                if (!removed[b] && g.adj[best][b]) g.connect(a, b);
        }
        removed[best] = 1;
        out.order.push_back(best);
    }
    return out;
}

// ---------------------------------------------------------------------------
// compilation

namespace {

// Node builder with structural hashing: (kind, payload, children) maps to a
// single id, so repeated sub-structures share one DAG node. Leaves are
// interned first and never merged with anything else.
class CircuitBuilder {
public:
    std::uint32_t leaf(NodeKind kind, int variable, int value, int row) {
        nodes_.push_back({kind, {}, variable, value, row});
        return static_cast<std::uint32_t>(nodes_.size() - 1);
    }

    std::uint32_t combine(std::vector<std::uint32_t> children) {
        return internal(NodeKind::Combine, std::move(children));
    }

    std::uint32_t multiply(std::vector<std::uint32_t> children) {
        return internal(NodeKind::Multiply, std::move(children));
    }

    std::vector<CircuitNode> take() { return std::move(nodes_); }

private:
    std::uint32_t internal(NodeKind kind, std::vector<std::uint32_t> children) {
        assert(!children.empty());
        if (children.size() == 1) return children[0];  // trivial node collapses
        std::string key;
        key.reserve(1 + children.size() * 4);
        key.push_back(kind == NodeKind::Combine ? 'c' : 'm');
        for (std::uint32_t c : children)
            key.append(reinterpret_cast<const char*>(&c), sizeof(c));
        auto [it, inserted] = cache_.emplace(std::move(key), 0);
        if (inserted) {
            nodes_.push_back({kind, std::move(children), -1, -1, -1});
            it->second = static_cast<std::uint32_t>(nodes_.size() - 1);
        }
        return it->second;
    }

    std::vector<CircuitNode> nodes_;
    std::unordered_map<std::string, std::uint32_t> cache_;
};

// A factor whose cells are circuit nodes. Scope is kept sorted by variable
// index; cells are laid out with the last scope variable varying fastest.
struct NodeFactor {
    std::vector<int> scope;
    std::vector<std::uint32_t> cells;
};

std::size_t factor_size(const BayesianNetwork& net, const std::vector<int>& scope) {
    std::size_t s = 1;
    for (int v : scope) s *= static_cast<std::size_t>(net.cardinality(v));
    return s;
}

// Walks every assignment of `scope`, exposing per-factor cell offsets for
// the factors listed in `inputs` (whose scopes are subsets of `scope`).
template <typename Fn>
void for_each_cell(const BayesianNetwork& net, const std::vector<int>& scope,
                   const std::vector<const NodeFactor*>& inputs, Fn&& fn) {
    const int k = static_cast<int>(scope.size());
    // strides[f][i]: how much input f's cell offset moves when scope[i] steps
    std::vector<std::vector<std::size_t>> strides(inputs.size(), std::vector<std::size_t>(k, 0));
    for (std::size_t f = 0; f < inputs.size(); ++f) {
        std::size_t stride = 1;
        const auto& fscope = inputs[f]->scope;
        for (int i = static_cast<int>(fscope.size()) - 1; i >= 0; --i) {
            int pos = static_cast<int>(std::lower_bound(scope.begin(), scope.end(), fscope[i]) -
                                       scope.begin());
            strides[f][pos] = stride;
            stride *= static_cast<std::size_t>(net.cardinality(fscope[i]));
        }
    }

    std::vector<int> assignment(k, 0);
    std::vector<std::size_t> offsets(inputs.size(), 0);
    std::size_t cell = 0;
    for (;;) {
        fn(cell, assignment, offsets);
        ++cell;
        int i = k - 1;
        for (; i >= 0; --i) {
            ++assignment[i];
            for (std::size_t f = 0; f < inputs.size(); ++f) offsets[f] += strides[f][i];
            if (assignment[i] < net.cardinality(scope[i])) break;
            for (std::size_t f = 0; f < inputs.size(); ++f)
                offsets[f] -= strides[f][i] * static_cast<std::size_t>(net.cardinality(scope[i]));
            assignment[i] = 0;
        }
        if (i < 0) break;
    }
}

}  // namespace

ArithmeticCircuit compile_circuit(const BayesianNetwork& net, const EliminationOrder& order) {
    const int n = net.num_variables();
    CircuitBuilder builder;
    ArithmeticCircuit circuit;
    circuit.width = order.width;
    circuit.indicator_leaf.resize(n);
    circuit.param_leaf.resize(n);

    // Leaves first: one indicator per (variable, value), one parameter per
    // CPT cell. Every leaf exists even when its parameter is 0; the register
    // pass needs all of them.
    for (int v = 0; v < n; ++v)
        for (int x = 0; x < net.cardinality(v); ++x)
            circuit.indicator_leaf[v].push_back(builder.leaf(NodeKind::IndicatorLeaf, v, x, -1));
    for (int v = 0; v < n; ++v)
        for (int row = 0; row < net.num_rows(v); ++row)
            for (int x = 0; x < net.cardinality(v); ++x)
                circuit.param_leaf[v].push_back(builder.leaf(NodeKind::ParamLeaf, v, x, row));

    // Initial factors: the indicator vector of each variable and its CPT.
    std::vector<NodeFactor> pool;
    for (int v = 0; v < n; ++v)
        pool.push_back({{v}, circuit.indicator_leaf[v]});
    for (int v = 0; v < n; ++v) {
        NodeFactor f;
        f.scope = net.cpt(v).parents;
        f.scope.push_back(v);
        std::sort(f.scope.begin(), f.scope.end());
        f.cells.resize(factor_size(net, f.scope));
        // place theta(x|u) at the cell addressed by the sorted-scope layout
        std::vector<int> assignment(n, -1);
        std::vector<const NodeFactor*> self{&f};
        for_each_cell(net, f.scope, self,
                      [&](std::size_t cell, const std::vector<int>& values,
                          const std::vector<std::size_t>&) {
                          for (std::size_t i = 0; i < f.scope.size(); ++i)
                              assignment[f.scope[i]] = values[i];
                          int row = net.row_index(v, assignment);
                          f.cells[cell] =
                              circuit.param_leaf[v][static_cast<std::size_t>(row) *
                                                        net.cardinality(v) +
                                                    assignment[v]];
                      });
        pool.push_back(std::move(f));
    }

    for (int target : order.order) {
        // gather factors mentioning the target, in pool order
        std::vector<NodeFactor> gathered;
        std::vector<NodeFactor> rest;
        for (auto& f : pool) {
            if (std::binary_search(f.scope.begin(), f.scope.end(), target))
                gathered.push_back(std::move(f));
            else
                rest.push_back(std::move(f));
        }
        pool = std::move(rest);
        assert(!gathered.empty());  // the indicator factor always mentions it

        std::vector<int> product_scope;
        for (const auto& f : gathered)
            for (int v : f.scope)
                if (!std::binary_search(product_scope.begin(), product_scope.end(), v)) {
                    product_scope.insert(
                        std::upper_bound(product_scope.begin(), product_scope.end(), v), v);
                }

        std::vector<const NodeFactor*> inputs;
        for (const auto& f : gathered) inputs.push_back(&f);
        std::vector<std::uint32_t> product(factor_size(net, product_scope));
        for_each_cell(net, product_scope, inputs,
                      [&](std::size_t cell, const std::vector<int>&,
                          const std::vector<std::size_t>& offsets) {
                          std::vector<std::uint32_t> children(inputs.size());
                          for (std::size_t f = 0; f < inputs.size(); ++f)
                              children[f] = inputs[f]->cells[offsets[f]];
                          product[cell] = builder.multiply(std::move(children));
                      });

        // sum out the target: combine along its axis
        NodeFactor result;
        for (int v : product_scope)
            if (v != target) result.scope.push_back(v);
        const int target_pos = static_cast<int>(
            std::lower_bound(product_scope.begin(), product_scope.end(), target) -
            product_scope.begin());
        std::size_t inner = 1;
        for (std::size_t i = target_pos + 1; i < product_scope.size(); ++i)
            inner *= static_cast<std::size_t>(net.cardinality(product_scope[i]));
        const int card = net.cardinality(target);
        result.cells.resize(factor_size(net, result.scope));
        std::size_t cell = 0;
        for (std::size_t outer = 0; outer < product.size() / (inner * card); ++outer)
            for (std::size_t in = 0; in < inner; ++in) {
                std::vector<std::uint32_t> children(card);
                for (int x = 0; x < card; ++x)
                    children[x] = product[(outer * card + x) * inner + in];
                result.cells[cell++] = builder.combine(std::move(children));
            }
        pool.push_back(std::move(result));
    }

    // all scopes are empty now; disconnected components leave several scalars
    std::vector<std::uint32_t> roots;
    for (const auto& f : pool) {
        assert(f.scope.empty() && f.cells.size() == 1);
        roots.push_back(f.cells[0]);
    }
    circuit.root = builder.multiply(std::move(roots));
    circuit.nodes = builder.take();
    assert(circuit.root == circuit.nodes.size() - 1);
    return circuit;
}

// ---------------------------------------------------------------------------
// decomposability

std::vector<std::uint32_t> check_decomposability(const ArithmeticCircuit& circuit,
                                                 const BayesianNetwork& net) {
    const std::size_t n_nodes = circuit.nodes.size();
    const int n_vars = net.num_variables();

    // Per node: bitset over indicator variables, and a bitset over leaves so
    // repeated indeterminates under one product are caught too.
    std::size_t n_leaves = 0;
    for (const auto& node : circuit.nodes)
        if (node.children.empty()) ++n_leaves;
    const std::size_t var_words = (static_cast<std::size_t>(n_vars) + 63) / 64;
    const std::size_t leaf_words = (n_leaves + 63) / 64;
    std::vector<std::uint64_t> vars(n_nodes * var_words, 0);
    std::vector<std::uint64_t> leaves(n_nodes * leaf_words, 0);

    auto var_bits = [&](std::size_t id) { return vars.data() + id * var_words; };
    auto leaf_bits = [&](std::size_t id) { return leaves.data() + id * leaf_words; };

    std::vector<std::uint32_t> offenders;
    std::size_t leaf_seq = 0;
    for (std::size_t id = 0; id < n_nodes; ++id) {
        const CircuitNode& node = circuit.nodes[id];
        if (node.children.empty()) {
            if (node.kind == NodeKind::IndicatorLeaf)
                var_bits(id)[node.variable / 64] |= std::uint64_t{1} << (node.variable % 64);
            leaf_bits(id)[leaf_seq / 64] |= std::uint64_t{1} << (leaf_seq % 64);
            ++leaf_seq;
            continue;
        }
        bool overlap = false;
        for (std::uint32_t c : node.children) {
            if (node.kind == NodeKind::Multiply && !overlap) {
                for (std::size_t w = 0; w < var_words && !overlap; ++w)
                    if (var_bits(id)[w] & var_bits(c)[w]) overlap = true;
                for (std::size_t w = 0; w < leaf_words && !overlap; ++w)
                    if (leaf_bits(id)[w] & leaf_bits(c)[w]) overlap = true;
            }
            for (std::size_t w = 0; w < var_words; ++w) var_bits(id)[w] |= var_bits(c)[w];
            for (std::size_t w = 0; w < leaf_words; ++w) leaf_bits(id)[w] |= leaf_bits(c)[w];
        }
        if (node.kind == NodeKind::Multiply && overlap)
            offenders.push_back(static_cast<std::uint32_t>(id));
    }
    return offenders;
}

std::string dump_circuit(const ArithmeticCircuit& circuit, const BayesianNetwork& net) {
    std::string out;
    for (std::size_t id = 0; id < circuit.nodes.size(); ++id) {
        const CircuitNode& node = circuit.nodes[id];
        out += std::to_string(id);
        switch (node.kind) {
            case NodeKind::Combine: out += " combine"; break;
            case NodeKind::Multiply: out += " multiply"; break;
            case NodeKind::ParamLeaf: out += " param"; break;
            case NodeKind::IndicatorLeaf: out += " indicator"; break;
        }
        for (std::uint32_t c : node.children) out += ' ' + std::to_string(c);
        if (node.kind == NodeKind::ParamLeaf)
            out += " [" +
                   format_parameter(net, ParameterRef{node.variable, node.value, node.row}) + "]";
        else if (node.kind == NodeKind::IndicatorLeaf)
            out += " [lambda " + net.variable(node.variable).name + "=" +
                   net.variable(node.variable).values[node.value] + "]";
        out += '\n';
    }
    out += "root " + std::to_string(circuit.root) + "\n";
    return out;
}

}  // namespace mpesens
