#include "mpesens/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mpesens {

namespace {

bool at_tie_level(double value, double level) {
    return std::abs(value - level) <= kMpeTieTolerance * std::max(std::abs(value), std::abs(level));
}

}  // namespace

std::vector<std::vector<double>> parameter_coefficient_map(const EvaluationState& state,
                                                           const ArithmeticCircuit& circuit,
                                                           const BayesianNetwork& net) {
    if (state.r.empty()) throw std::invalid_argument("state has no registers; run the D-MAXC pass");
    std::vector<std::vector<double>> r(net.num_variables());
    for (int v = 0; v < net.num_variables(); ++v) {
        const auto& leaves = circuit.param_leaf[v];
        r[v].resize(leaves.size());
        for (std::size_t i = 0; i < leaves.size(); ++i) r[v][i] = state.r[leaves[i]];
    }
    return r;
}

std::vector<std::vector<double>> parent_k_map(const std::vector<std::vector<double>>& r,
                                              const BayesianNetwork& net) {
    std::vector<std::vector<double>> k(net.num_variables());
    for (int v = 0; v < net.num_variables(); ++v) {
        const int rows = net.num_rows(v);
        const int card = net.cardinality(v);
        k[v].assign(rows, 0.0);
        if (net.cpt(v).parents.empty()) continue;  // no u* exists

        // best[u] = max_x r(e, xu) * theta(x|u); k(e,u) excludes only row u
        std::vector<double> best(rows, 0.0);
        for (int u = 0; u < rows; ++u)
            for (int x = 0; x < card; ++x)
                best[u] = std::max(best[u], r[v][static_cast<std::size_t>(u) * card + x] *
                                                net.cpt(v).rows[u][x]);
        std::vector<double> before(rows + 1, 0.0), after(rows + 1, 0.0);
        for (int u = 0; u < rows; ++u) before[u + 1] = std::max(before[u], best[u]);
        for (int u = rows; u-- > 0;) after[u] = std::max(after[u + 1], best[u]);
        for (int u = 0; u < rows; ++u) k[v][u] = std::max(before[u], after[u + 1]);
    }
    return k;
}

SensitivityConstants sensitivity_constants(const EvaluationState& state,
                                           const ArithmeticCircuit& circuit,
                                           const BayesianNetwork& net) {
    SensitivityConstants out;
    out.r = parameter_coefficient_map(state, circuit, net);
    out.k = parent_k_map(out.r, net);
    return out;
}

RobustnessInterval robustness_interval(const ParameterRef& param,
                                       const SensitivityConstants& constants,
                                       const Instantiation& witness, const BayesianNetwork& net) {
    const int var = param.variable;
    const int card = net.cardinality(var);
    const auto& row = net.cpt(var).rows[param.row];

    RobustnessInterval out;
    out.parameter = param;
    out.current = row[param.value];

    CovariationLine line = covariation_line(row, param.value);
    out.uniform_covariation = line.uniform_fallback;

    // Branch values of this family as linear functions of t = theta(x|u):
    // value branch v is r(e, vu) * (offset_v + slope_v * t); the not-u branch
    // is the constant k(e, u).
    struct Branch {
        double offset, slope;
        BindingConstraint label;
    };
    std::vector<Branch> branches;
    auto r_of = [&](int v) {
        return constants.r[var][static_cast<std::size_t>(param.row) * card + v];
    };
    for (int v = 0; v < card; ++v)
        branches.push_back({r_of(v) * line.offset[v], r_of(v) * line.slope[v],
                            {BindingConstraint::VersusValue, v}});
    branches.push_back({constants.k[var][param.row], 0.0, {BindingConstraint::VersusK, -1}});

    // Which branch is the witness's? Complete instantiations decide this
    // directly: the row it induces and its value of the variable.
    std::size_t witness_branch;
    if (net.row_index(var, witness.values) == param.row)
        witness_branch = static_cast<std::size_t>(witness.values[var]);
    else
        witness_branch = branches.size() - 1;  // consistent with not-u

    const Branch w = branches[witness_branch];
    for (std::size_t b = 0; b < branches.size(); ++b) {
        if (b == witness_branch) continue;
        // w(t) >= branch(t)  <=>  alpha + beta * t >= 0
        const double alpha = w.offset - branches[b].offset;
        const double beta = w.slope - branches[b].slope;
        if (beta > 0.0) {
            double bound = -alpha / beta;
            if (bound > out.lower) {
                out.lower = bound;
                out.binding_lower = branches[b].label;
            }
        } else if (beta < 0.0) {
            double bound = -alpha / beta;
            if (bound < out.upper) {
                out.upper = bound;
                out.binding_upper = branches[b].label;
            }
        }
        // beta == 0: constant gap; alpha >= 0 always holds because the witness
        // attains MPE_p(e) at the current value, so nothing to record
    }

    out.lower = std::max(0.0, std::min(out.lower, out.current));
    out.upper = std::min(1.0, std::max(out.upper, out.current));

    const double witness_level = w.offset + w.slope * out.current;
    for (std::size_t b = 0; b < branches.size() && !out.tie_at_current; ++b) {
        if (b == witness_branch) continue;
        double level = branches[b].offset + branches[b].slope * out.current;
        if (level > 0.0 && at_tie_level(level, witness_level)) out.tie_at_current = true;
    }
    return out;
}

RetractionTable retraction_table(const EvaluationState& state, const ArithmeticCircuit& circuit,
                                 const BayesianNetwork& net) {
    if (state.r.empty()) throw std::invalid_argument("state has no registers; run the D-MAXC pass");
    RetractionTable table;
    table.mpe_probability = state.p[circuit.root];
    table.entries.resize(net.num_variables());
    for (int v = 0; v < net.num_variables(); ++v) {
        table.entries[v].resize(net.cardinality(v));
        for (int x = 0; x < net.cardinality(v); ++x)
            table.entries[v][x] = state.r[circuit.indicator_leaf[v][x]];
    }
    return table;
}

RetractionVerdict retraction_verdict(const RetractionTable& table, const Evidence& e, int var) {
    if (!e.is_set(var))
        throw std::invalid_argument("retraction verdict asked for a variable not in the evidence");
    const double level = table.mpe_probability;
    bool tied = false;
    for (int x = 0; x < static_cast<int>(table.entries[var].size()); ++x) {
        if (x == e.values[var]) continue;
        const double other = table.entries[var][x];
        if (at_tie_level(other, level))
            tied = true;
        else if (other > level)
            return RetractionVerdict::IdentityChanges;
    }
    return tied ? RetractionVerdict::IdentityEnlarged
                : RetractionVerdict::IdentityPreservedStrictly;
}

Multiplicity mpe_multiplicity(const RetractionTable& table, const Evidence& e, int var) {
    if (e.is_set(var))
        throw std::invalid_argument("multiplicity asked for a variable set in the evidence");
    Multiplicity out;
    const double level = table.mpe_probability;
    for (int x = 0; x < static_cast<int>(table.entries[var].size()); ++x)
        if (at_tie_level(table.entries[var][x], level)) out.tied_values.push_back(x);
    if (out.tied_values.empty()) {
        // cannot happen for a consistent table; keep the argmax as a fallback
        int best = 0;
        for (int x = 1; x < static_cast<int>(table.entries[var].size()); ++x)
            if (table.entries[var][x] > table.entries[var][best]) best = x;
        out.tied_values.push_back(best);
    }
    if (out.tied_values.size() == 1) {
        out.forced_value = out.tied_values[0];
    } else {
        out.multiple = true;
    }
    return out;
}

}  // namespace mpesens
