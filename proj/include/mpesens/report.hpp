#ifndef MPESENS_REPORT_HPP
#define MPESENS_REPORT_HPP

#include <string>
#include <vector>

#include "mpesens/sensitivity.hpp"

namespace mpesens {

// Everything one query produces: the MPE, the per-parameter constants and
// robustness intervals, the retraction table with its verdicts, and the
// multiplicity summary for unset variables.
struct SensitivityReport {
    Evidence evidence;
    MpeResult mpe;
    SensitivityConstants constants;
    std::vector<RobustnessInterval> intervals;  // variables, rows, values in declared order
    RetractionTable retraction;
    std::vector<RetractionVerdict> verdicts;  // aligned with evidence-set variables
    std::vector<int> verdict_variables;
    std::vector<Multiplicity> multiplicities;  // aligned with unset variables
    std::vector<int> multiplicity_variables;
};

// One compile + one D-MAXC sweep + interval solving for every parameter.
SensitivityReport analyze(const BayesianNetwork& net, const ArithmeticCircuit& circuit,
                          const Evidence& e);

// Structured text: fixed field names, numbers with 17 significant digits,
// byte-identical for identical inputs. This is the testing interface.
std::string render_report(const BayesianNetwork& net, const SensitivityReport& report);

// Human-readable tables, 6 significant digits.
std::string render_table(const BayesianNetwork& net, const SensitivityReport& report);

// Decimal literal with enough digits to round-trip a double exactly.
std::string format_number(double x);

const char* verdict_name(RetractionVerdict v);

}  // namespace mpesens

#endif
