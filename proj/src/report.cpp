#include "mpesens/report.hpp"

#include <cstdio>

namespace mpesens {

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", x);
    return buf;
}

const char* verdict_name(RetractionVerdict v) {
    switch (v) {
        case RetractionVerdict::IdentityPreservedStrictly: return "identity-preserved-strictly";
        case RetractionVerdict::IdentityEnlarged: return "identity-enlarged";
        case RetractionVerdict::IdentityChanges: return "identity-changes";
    }
    return "?";
}

SensitivityReport analyze(const BayesianNetwork& net, const ArithmeticCircuit& circuit,
                          const Evidence& e) {
    SensitivityReport report;
    report.evidence = e;

    EvaluationState state = run_dmaxc(circuit, net, e);
    report.mpe = extract_mpe(circuit, net, state);
    report.constants = sensitivity_constants(state, circuit, net);

    for (int v = 0; v < net.num_variables(); ++v)
        for (int row = 0; row < net.num_rows(v); ++row)
            for (int x = 0; x < net.cardinality(v); ++x)
                report.intervals.push_back(robustness_interval(ParameterRef{v, x, row},
                                                               report.constants,
                                                               report.mpe.witness, net));

    report.retraction = retraction_table(state, circuit, net);
    for (int v = 0; v < net.num_variables(); ++v) {
        if (e.is_set(v)) {
            report.verdict_variables.push_back(v);
            report.verdicts.push_back(retraction_verdict(report.retraction, e, v));
        } else {
            report.multiplicity_variables.push_back(v);
            report.multiplicities.push_back(mpe_multiplicity(report.retraction, e, v));
        }
    }
    return report;
}

namespace {

std::string binding_name(const BayesianNetwork& net, const RobustnessInterval& iv,
                         const BindingConstraint& b) {
    switch (b.kind) {
        case BindingConstraint::DomainEdge: return "domain";
        case BindingConstraint::VersusK: return "k";
        case BindingConstraint::VersusValue:
            return "value:" + net.variable(iv.parameter.variable).values[b.value];
    }
    return "?";
}

}  // namespace

std::string render_report(const BayesianNetwork& net, const SensitivityReport& report) {
    std::string out;
    auto line = [&](const std::string& s) { out += s + "\n"; };

    std::string ev = format_assignment(net, report.evidence);
    line("mpe {");
    line("  evidence " + (ev.empty() ? "-" : ev));
    line("  probability " + format_number(report.mpe.probability));
    line("  witness " + format_assignment(net, report.mpe.witness));
    line("}");

    line("parameters {");
    for (const auto& iv : report.intervals) {
        const ParameterRef& p = iv.parameter;
        const int card = net.cardinality(p.variable);
        line("  parameter " + format_parameter(net, p) + " {");
        line("    theta " + format_number(iv.current));
        line("    r " + format_number(report.constants.r[p.variable]
                                               [static_cast<std::size_t>(p.row) * card + p.value]));
        line("    k " + format_number(report.constants.k[p.variable][p.row]));
        line("    lower " + format_number(iv.lower));
        line("    upper " + format_number(iv.upper));
        line("    binding_lower " + binding_name(net, iv, iv.binding_lower));
        line("    binding_upper " + binding_name(net, iv, iv.binding_upper));
        line(std::string("    covariation ") + (iv.uniform_covariation ? "uniform" : "proportional"));
        line(std::string("    tie_at_current ") + (iv.tie_at_current ? "true" : "false"));
        line("  }");
    }
    line("}");

    line("retraction {");
    line("  probability " + format_number(report.retraction.mpe_probability));
    for (int v = 0; v < net.num_variables(); ++v)
        for (int x = 0; x < net.cardinality(v); ++x)
            line("  entry " + net.variable(v).name + "=" + net.variable(v).values[x] + " " +
                 format_number(report.retraction.entries[v][x]));
    for (std::size_t i = 0; i < report.verdicts.size(); ++i)
        line("  verdict " + net.variable(report.verdict_variables[i]).name + " " +
             verdict_name(report.verdicts[i]));
    line("}");

    line("multiplicity {");
    for (std::size_t i = 0; i < report.multiplicities.size(); ++i) {
        const Variable& var = net.variable(report.multiplicity_variables[i]);
        const Multiplicity& m = report.multiplicities[i];
        if (m.multiple) {
            std::string vals;
            for (int x : m.tied_values) {
                if (!vals.empty()) vals += ',';
                vals += var.values[x];
            }
            line("  multiple " + var.name + "=" + vals);
        } else {
            line("  forced " + var.name + "=" + var.values[m.forced_value]);
        }
    }
    line("}");
    return out;
}

std::string render_table(const BayesianNetwork& net, const SensitivityReport& report) {
    char buf[128];
    std::string out;
    auto num = [&](double x) {
        std::snprintf(buf, sizeof(buf), "%.6g", x);
        return std::string(buf);
    };

    std::string ev = format_assignment(net, report.evidence);
    out += "evidence:  " + (ev.empty() ? "(none)" : ev) + "\n";
    out += "MPE:       " + format_assignment(net, report.mpe.witness) + "\n";
    out += "MPE_p:     " + num(report.mpe.probability) + "\n\n";

    out += "parameter            theta      r          k          keeps MPE within     binding\n";
    for (const auto& iv : report.intervals) {
        const ParameterRef& p = iv.parameter;
        const int card = net.cardinality(p.variable);
        double r = report.constants.r[p.variable][static_cast<std::size_t>(p.row) * card + p.value];
        double k = report.constants.k[p.variable][p.row];
        std::snprintf(buf, sizeof(buf), "%-20s %-10s %-10s %-10s [%s, %s]",
                      format_parameter(net, p).c_str(), num(iv.current).c_str(), num(r).c_str(),
                      num(k).c_str(), num(iv.lower).c_str(), num(iv.upper).c_str());
        out += buf;
        std::string notes;
        if (iv.binding_lower.kind != BindingConstraint::DomainEdge ||
            iv.binding_upper.kind != BindingConstraint::DomainEdge)
            notes = " " + binding_name(net, iv, iv.binding_lower) + "/" +
                    binding_name(net, iv, iv.binding_upper);
        if (iv.tie_at_current) notes += " (tied now)";
        if (iv.uniform_covariation) notes += " (uniform co-variation)";
        out += notes + "\n";
    }

    out += "\nretraction  MPE_p(e-X, x)\n";
    for (int v = 0; v < net.num_variables(); ++v)
        for (int x = 0; x < net.cardinality(v); ++x) {
            std::snprintf(buf, sizeof(buf), "  %-18s %s\n",
                          (net.variable(v).name + "=" + net.variable(v).values[x]).c_str(),
                          num(report.retraction.entries[v][x]).c_str());
            out += buf;
        }
    for (std::size_t i = 0; i < report.verdicts.size(); ++i)
        out += "  retract " + net.variable(report.verdict_variables[i]).name + ": " +
               verdict_name(report.verdicts[i]) + "\n";
    for (std::size_t i = 0; i < report.multiplicities.size(); ++i) {
        const Variable& var = net.variable(report.multiplicity_variables[i]);
        const Multiplicity& m = report.multiplicities[i];
        out += "  " + var.name + ": ";
        if (m.multiple) {
            out += "multiple MPE solutions (values ";
            for (std::size_t j = 0; j < m.tied_values.size(); ++j)
                out += (j ? ", " : "") + var.values[m.tied_values[j]];
            out += ")\n";
        } else {
            out += "every MPE solution has " + var.name + "=" + var.values[m.forced_value] + "\n";
        }
    }
    return out;
}

}  // namespace mpesens
