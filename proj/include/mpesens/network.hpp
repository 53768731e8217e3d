#ifndef MPESENS_NETWORK_HPP
#define MPESENS_NETWORK_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace mpesens {

// A discrete network variable: a name plus its ordered list of values.
// Value order is load-bearing: CPT columns and evidence indicators are
// addressed by value index.
struct Variable {
    std::string name;
    std::vector<std::string> values;

    int cardinality() const { return static_cast<int>(values.size()); }
};

// Conditional probability table for one variable. Rows are indexed by the
// parent instantiation in lexicographic order: parents in declared order,
// the last parent varying fastest. rows[u][x] = theta(x | u).
struct Cpt {
    int child = -1;
    std::vector<int> parents;
    std::vector<std::vector<double>> rows;
};

// Identifies one CPT cell theta(x | u): variable, child-value index, and
// the row index encoding the parent instantiation.
struct ParameterRef {
    int variable = -1;
    int value = -1;
    int row = 0;

    bool operator==(const ParameterRef&) const = default;
};

// A complete assignment: one value index per network variable.
struct Instantiation {
    std::vector<int> values;
};

// A partial assignment: value index per variable, or kUnset.
struct Evidence {
    static constexpr int kUnset = -1;
    std::vector<int> values;

    bool is_set(int var) const { return values[var] != kUnset; }
    bool empty() const {
        for (int v : values)
            if (v != kUnset) return false;
        return true;
    }
};

enum class ViolationKind {
    DuplicateVariableName,
    DuplicateValueName,
    CardinalityTooSmall,
    MissingCpt,
    DuplicateCpt,
    BadParentRef,
    RowCountMismatch,
    RowLengthMismatch,
    EntryOutOfRange,
    RowSumOffOne,
    Cycle,
};

struct Violation {
    ViolationKind kind;
    std::string message;
};

// Immutable after construction; the constructor enforces structural
// coherence (one CPT per variable, references in range) and throws
// std::invalid_argument otherwise. Numeric and acyclicity invariants are
// checked separately by validate_network so that broken documents can be
// reported violation-by-violation.
class BayesianNetwork {
public:
    BayesianNetwork(std::vector<Variable> variables, std::vector<Cpt> cpts);

    int num_variables() const { return static_cast<int>(vars_.size()); }
    const std::vector<Variable>& variables() const { return vars_; }
    const Variable& variable(int v) const { return vars_[v]; }
    const std::vector<Cpt>& cpts() const { return cpts_; }
    const Cpt& cpt(int v) const { return cpts_[v]; }
    int cardinality(int v) const { return vars_[v].cardinality(); }

    // -1 when the name is unknown.
    int variable_index(const std::string& name) const;
    // -1 when not a declared value of the variable.
    int value_index(int var, const std::string& value) const;

    int num_rows(int var) const { return static_cast<int>(cpts_[var].rows.size()); }
    double parameter(const ParameterRef& p) const {
        return cpts_[p.variable].rows[p.row][p.value];
    }

    // Row index for the parent values of `var` taken from a complete or
    // partial assignment (all parents must be set).
    int row_index(int var, const std::vector<int>& assignment) const;
    // Parent value indices encoded by a row index, in declared parent order.
    std::vector<int> row_values(int var, int row) const;

    // Number of complete instantiations; throws when it exceeds the guard.
    std::uint64_t instantiation_count(std::uint64_t guard) const;

private:
    std::vector<Variable> vars_;
    std::vector<Cpt> cpts_;
    std::unordered_map<std::string, int> name_to_index_;
};

// Reports every violated CPT/DAG invariant; empty means valid.
std::vector<Violation> validate_network(const BayesianNetwork& net);

// Product of the CPT parameters compatible with the complete instantiation x.
double joint_probability(const BayesianNetwork& net, const Instantiation& x);

// True iff no variable is assigned different values by the two arguments.
bool is_compatible(const Evidence& a, const Evidence& b);
bool is_compatible(const Evidence& a, const Instantiation& b);
bool is_compatible(const Instantiation& a, const Instantiation& b);

Evidence as_evidence(const Instantiation& x);
Evidence empty_evidence(const BayesianNetwork& net);

// Display helpers ("A=a B=b_bar" token form).
std::string format_assignment(const BayesianNetwork& net, const Evidence& e);
std::string format_assignment(const BayesianNetwork& net, const Instantiation& x);
std::string format_parameter(const BayesianNetwork& net, const ParameterRef& p);

constexpr double kRowSumTolerance = 1e-9;

}  // namespace mpesens

#endif
