#include "mpesens/network.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace mpesens {

BayesianNetwork::BayesianNetwork(std::vector<Variable> variables, std::vector<Cpt> cpts)
    : vars_(std::move(variables)), cpts_(std::move(cpts)) {
    if (cpts_.size() != vars_.size())
        throw std::invalid_argument("network needs exactly one CPT per variable");
    const int n = num_variables();
    std::vector<Cpt> ordered(n);
    std::vector<bool> seen(n, false);
    for (auto& c : cpts_) {
        if (c.child < 0 || c.child >= n)
            throw std::invalid_argument("CPT child index out of range");
        if (seen[c.child])
            throw std::invalid_argument("two CPTs declared for variable " + vars_[c.child].name);
        seen[c.child] = true;
        for (int p : c.parents)
            if (p < 0 || p >= n)
                throw std::invalid_argument("CPT parent index out of range");
        ordered[c.child] = std::move(c);
    }
    cpts_ = std::move(ordered);
    for (int v = 0; v < n; ++v)
        name_to_index_.emplace(vars_[v].name, v);
}

int BayesianNetwork::variable_index(const std::string& name) const {
    auto it = name_to_index_.find(name);
    return it == name_to_index_.end() ? -1 : it->second;
}

int BayesianNetwork::value_index(int var, const std::string& value) const {
    const auto& vals = vars_[var].values;
    for (int i = 0; i < static_cast<int>(vals.size()); ++i)
        if (vals[i] == value) return i;
    return -1;
}

int BayesianNetwork::row_index(int var, const std::vector<int>& assignment) const {
    const Cpt& c = cpts_[var];
    int row = 0;
    for (int p : c.parents) {
        int v = assignment[p];
        if (v < 0) throw std::invalid_argument("parent " + vars_[p].name + " unassigned");
        row = row * cardinality(p) + v;
    }
    return row;
}

std::vector<int> BayesianNetwork::row_values(int var, int row) const {
    const Cpt& c = cpts_[var];
    std::vector<int> vals(c.parents.size());
    for (int i = static_cast<int>(c.parents.size()) - 1; i >= 0; --i) {
        int card = cardinality(c.parents[i]);
        vals[i] = row % card;
        row /= card;
    }
    return vals;
}

std::uint64_t BayesianNetwork::instantiation_count(std::uint64_t guard) const {
    std::uint64_t total = 1;
    for (const auto& v : vars_) {
        total *= static_cast<std::uint64_t>(v.cardinality());
        if (total > guard)
            throw std::runtime_error("instantiation space exceeds enumeration guard");
    }
    return total;
}

namespace {

std::size_t expected_rows(const BayesianNetwork& net, const Cpt& c) {
    std::size_t n = 1;
    for (int p : c.parents) n *= static_cast<std::size_t>(net.cardinality(p));
    return n;
}

bool has_cycle(const BayesianNetwork& net) {
    const int n = net.num_variables();
    std::vector<int> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
    // iterative DFS over the parent relation
    for (int start = 0; start < n; ++start) {
        if (state[start] != 0) continue;
        std::vector<std::pair<int, std::size_t>> stack{{start, 0}};
        state[start] = 1;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            const auto& parents = net.cpt(v).parents;
            if (next < parents.size()) {
                int p = parents[next++];
                if (state[p] == 1) return true;
                if (state[p] == 0) {
                    state[p] = 1;
                    stack.emplace_back(p, 0);
                }
            } else {
                state[v] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}

}  // namespace

std::vector<Violation> validate_network(const BayesianNetwork& net) {
    std::vector<Violation> out;
    auto add = [&](ViolationKind k, std::string msg) { out.push_back({k, std::move(msg)}); };

    const int n = net.num_variables();
    for (int v = 0; v < n; ++v) {
        const Variable& var = net.variable(v);
        if (var.cardinality() < 2)
            add(ViolationKind::CardinalityTooSmall,
                "variable " + var.name + " needs at least 2 values");
        for (std::size_t i = 0; i < var.values.size(); ++i)
            for (std::size_t j = i + 1; j < var.values.size(); ++j)
                if (var.values[i] == var.values[j])
                    add(ViolationKind::DuplicateValueName,
                        "variable " + var.name + " repeats value " + var.values[i]);
        for (int w = v + 1; w < n; ++w)
            if (var.name == net.variable(w).name)
                add(ViolationKind::DuplicateVariableName, "duplicate variable name " + var.name);
    }

    for (int v = 0; v < n; ++v) {
        const Cpt& c = net.cpt(v);
        const std::string& name = net.variable(v).name;
        for (std::size_t i = 0; i < c.parents.size(); ++i) {
            if (c.parents[i] == v)
                add(ViolationKind::BadParentRef, name + " lists itself as parent");
            for (std::size_t j = i + 1; j < c.parents.size(); ++j)
                if (c.parents[i] == c.parents[j])
                    add(ViolationKind::BadParentRef, name + " repeats a parent");
        }
        if (c.rows.size() != expected_rows(net, c)) {
            add(ViolationKind::RowCountMismatch,
                "CPT of " + name + " has " + std::to_string(c.rows.size()) + " rows, expected " +
                    std::to_string(expected_rows(net, c)));
            continue;
        }
        for (std::size_t u = 0; u < c.rows.size(); ++u) {
            const auto& row = c.rows[u];
            if (static_cast<int>(row.size()) != net.cardinality(v)) {
                add(ViolationKind::RowLengthMismatch,
                    "CPT of " + name + ", row " + std::to_string(u) + " has wrong length");
                continue;
            }
            double sum = 0.0;
            bool range_ok = true;
            for (double t : row) {
                if (!(t >= 0.0 && t <= 1.0)) range_ok = false;
                sum += t;
            }
            if (!range_ok)
                add(ViolationKind::EntryOutOfRange,
                    "CPT of " + name + ", row " + std::to_string(u) + " has entry outside [0,1]");
            else if (std::abs(sum - 1.0) > kRowSumTolerance)
                add(ViolationKind::RowSumOffOne, "CPT of " + name + ", row " + std::to_string(u) +
                                                     " sums to " + std::to_string(sum));
        }
    }

    if (has_cycle(net)) add(ViolationKind::Cycle, "parent relation contains a directed cycle");
    return out;
}

double joint_probability(const BayesianNetwork& net, const Instantiation& x) {
    const int n = net.num_variables();
    if (static_cast<int>(x.values.size()) != n)
        throw std::invalid_argument("instantiation has wrong arity");
    double prob = 1.0;
    for (int v = 0; v < n; ++v) {
        int val = x.values[v];
        if (val < 0 || val >= net.cardinality(v))
            throw std::invalid_argument("instantiation is incomplete or out of range");
        prob *= net.cpt(v).rows[net.row_index(v, x.values)][val];
    }
    return prob;
}

bool is_compatible(const Evidence& a, const Evidence& b) {
    if (a.values.size() != b.values.size())
        throw std::invalid_argument("assignments reference different networks");
    for (std::size_t i = 0; i < a.values.size(); ++i)
        if (a.values[i] != Evidence::kUnset && b.values[i] != Evidence::kUnset &&
            a.values[i] != b.values[i])
            return false;
    return true;
}

bool is_compatible(const Evidence& a, const Instantiation& b) {
    return is_compatible(a, as_evidence(b));
}

bool is_compatible(const Instantiation& a, const Instantiation& b) {
    return is_compatible(as_evidence(a), as_evidence(b));
}

Evidence as_evidence(const Instantiation& x) { return Evidence{x.values}; }

Evidence empty_evidence(const BayesianNetwork& net) {
    return Evidence{std::vector<int>(net.num_variables(), Evidence::kUnset)};
}

std::string format_assignment(const BayesianNetwork& net, const Evidence& e) {
    std::string out;
    for (int v = 0; v < net.num_variables(); ++v) {
        if (!e.is_set(v)) continue;
        if (!out.empty()) out += ' ';
        out += net.variable(v).name + "=" + net.variable(v).values[e.values[v]];
    }
    return out;
}

std::string format_assignment(const BayesianNetwork& net, const Instantiation& x) {
    return format_assignment(net, as_evidence(x));
}

std::string format_parameter(const BayesianNetwork& net, const ParameterRef& p) {
    const Variable& var = net.variable(p.variable);
    std::string out = var.name + "=" + var.values[p.value] + "|";
    const Cpt& c = net.cpt(p.variable);
    auto parents = net.row_values(p.variable, p.row);
    for (std::size_t i = 0; i < c.parents.size(); ++i) {
        if (i) out += ',';
        const Variable& pv = net.variable(c.parents[i]);
        out += pv.name + "=" + pv.values[parents[i]];
    }
    return out;
}

}  // namespace mpesens
