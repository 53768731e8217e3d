#include "mpesens/cli.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "mpesens/network_io.hpp"
#include "mpesens/random_network.hpp"
#include "mpesens/report.hpp"

namespace mpesens {

namespace {

double rel_err(double a, double b) {
    double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

constexpr double kCheckTolerance = 1e-9;

struct CheckRun {
    std::ostream& out;
    std::uint64_t guard;
    int failures = 0;

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            ++failures;
            out << "  FAIL " << what << "\n";
        }
    }
    void expect_close(double got, double want, const std::string& what) {
        expect(rel_err(got, want) <= kCheckTolerance,
               what + ": got " + format_number(got) + ", oracle " + format_number(want));
    }
};

// Engine-vs-oracle equivalence for one (network, evidence) pair.
void check_one_evidence(CheckRun& run, const BayesianNetwork& net,
                        const ArithmeticCircuit& circuit, const Evidence& e, Rng& rng) {
    const std::string ev = format_assignment(net, e);
    const std::string tag = ev.empty() ? "e={}" : "e={" + ev + "}";

    run.expect_close(evaluate_sum(circuit, net, e), oracle::brute_force_probability(net, e, run.guard),
                     tag + " Pr(e)");

    oracle::MpeSet mpe = oracle::brute_force_mpe(net, e, run.guard);
    EvaluationState state = run_dmaxc(circuit, net, e);
    run.expect_close(state.p[circuit.root], mpe.probability, tag + " MPE_p");

    MpeResult extracted = extract_mpe(circuit, net, state);
    run.expect(rel_err(joint_probability(net, extracted.witness), mpe.probability) <=
                   oracle::kTieTolerance + kCheckTolerance,
               tag + " witness probability");

    SensitivityConstants constants = sensitivity_constants(state, circuit, net);
    RetractionTable table = retraction_table(state, circuit, net);
    for (int v = 0; v < net.num_variables(); ++v) {
        const int card = net.cardinality(v);
        for (int row = 0; row < net.num_rows(v); ++row) {
            for (int x = 0; x < card; ++x) {
                ParameterRef p{v, x, row};
                run.expect_close(constants.r[v][static_cast<std::size_t>(row) * card + x],
                                 oracle::brute_force_coefficient(net, e, p, run.guard),
                                 tag + " r(" + format_parameter(net, p) + ")");
            }
            run.expect_close(constants.k[v][row], oracle::brute_force_k(net, e, v, row, run.guard),
                             tag + " k(" + net.variable(v).name + ", row " + std::to_string(row) +
                                 ")");
        }
        for (int x = 0; x < card; ++x) {
            Evidence retracted = e;
            retracted.values[v] = x;
            run.expect_close(table.entries[v][x],
                             oracle::brute_force_mpe(net, retracted, run.guard).probability,
                             tag + " retraction " + net.variable(v).name + "=" +
                                 net.variable(v).values[x]);
        }
        // family consistency: MPE_p(e) = max(max_x r * theta, k) per row
        if (mpe.probability > 0.0) {
            for (int row = 0; row < net.num_rows(v); ++row) {
                double level = constants.k[v][row];
                for (int x = 0; x < card; ++x)
                    level = std::max(level,
                                     constants.r[v][static_cast<std::size_t>(row) * card + x] *
                                         net.cpt(v).rows[row][x]);
                run.expect(rel_err(level, mpe.probability) <= 1e-12,
                           tag + " family identity at " + net.variable(v).name + " row " +
                               std::to_string(row));
            }
        }
    }

    // spot-check a few robustness intervals against perturbed re-solves
    int budget = 6;
    for (int v = 0; v < net.num_variables() && budget > 0; ++v) {
        for (int row = 0; row < net.num_rows(v) && budget > 0; ++row) {
            if (rng.below(net.num_rows(v) * 2) != 0 && net.num_variables() > 3) continue;
            int x = static_cast<int>(rng.below(net.cardinality(v)));
            ParameterRef p{v, x, row};
            RobustnessInterval iv = robustness_interval(p, constants, extracted.witness, net);
            auto result = oracle::verify_robustness_interval(net, e, p, extracted.witness, iv.lower,
                                                             iv.upper, 5, rng.next(), run.guard);
            run.expect(result.pass, tag + " interval for " + format_parameter(net, p));
            --budget;
        }
    }
}

int run_check(const CliConfig& config, const BayesianNetwork& given, std::ostream& out) {
    CheckRun run{out, config.guard};
    Rng rng(config.seed);

    auto check_network = [&](const BayesianNetwork& net, const std::string& label) {
        int before = run.failures;
        ArithmeticCircuit circuit = compile_circuit(net);
        run.expect(check_decomposability(circuit, net).empty(), label + ": decomposability");
        Rng evidence_rng = rng.fork(0x5eed);
        check_one_evidence(run, net, circuit, empty_evidence(net), evidence_rng);
        for (int i = 0; i < 3; ++i) {
            Evidence e = random_evidence(net, evidence_rng);
            check_one_evidence(run, net, circuit, e, evidence_rng);
        }
        out << (run.failures == before ? "ok   " : "FAIL ") << label << " (" << net.num_variables()
            << " variables, " << circuit.size() << " nodes, width " << circuit.width << ")\n";
    };

    check_network(given, "given network");
    for (int i = 0; i < config.random_networks; ++i) {
        Rng net_rng = rng.fork(static_cast<std::uint64_t>(i) + 1);
        BayesianNetwork net = random_network(net_rng);
        check_network(net, "random network " + std::to_string(i));
    }

    if (run.failures > 0) {
        out << run.failures << " check(s) failed\n";
        return 2;
    }
    out << "all checks passed\n";
    return 0;
}

}  // namespace

int run_cli(const CliConfig& config, std::ostream& out, std::ostream& err) {
    try {
        BayesianNetwork net = load_network_file(config.network_path);
        Evidence e = parse_evidence(net, config.evidence_tokens);

        switch (config.command) {
            case CliConfig::Command::Compile: {
                ArithmeticCircuit circuit = compile_circuit(net);
                std::size_t params = 0, indicators = 0;
                for (const auto& node : circuit.nodes) {
                    if (node.kind == NodeKind::ParamLeaf) ++params;
                    if (node.kind == NodeKind::IndicatorLeaf) ++indicators;
                }
                out << "nodes " << circuit.size() << "\n"
                    << "width " << circuit.width << "\n"
                    << "parameter_leaves " << params << "\n"
                    << "indicator_leaves " << indicators << "\n"
                    << "decomposable "
                    << (check_decomposability(circuit, net).empty() ? "yes" : "NO") << "\n";
                if (config.dump_circuit) out << dump_circuit(circuit, net);
                return 0;
            }
            case CliConfig::Command::Mpe: {
                ArithmeticCircuit circuit = compile_circuit(net);
                EvaluationState state = evaluate_max(circuit, net, e);
                MpeResult mpe = extract_mpe(circuit, net, state);
                if (config.format == CliConfig::Format::Report) {
                    std::string ev = format_assignment(net, e);
                    out << "mpe {\n"
                        << "  evidence " << (ev.empty() ? "-" : ev) << "\n"
                        << "  probability " << format_number(mpe.probability) << "\n"
                        << "  witness " << format_assignment(net, mpe.witness) << "\n"
                        << "}\n";
                } else {
                    out << "MPE:   " << format_assignment(net, mpe.witness) << "\n";
                    char buf[32];
                    std::snprintf(buf, sizeof(buf), "%.6g", mpe.probability);
                    out << "MPE_p: " << buf << "\n";
                }
                return 0;
            }
            case CliConfig::Command::Sensitivity: {
                ArithmeticCircuit circuit = compile_circuit(net);
                SensitivityReport report = analyze(net, circuit, e);
                out << (config.format == CliConfig::Format::Report ? render_report(net, report)
                                                                   : render_table(net, report));
                return 0;
            }
            case CliConfig::Command::Retract: {
                ArithmeticCircuit circuit = compile_circuit(net);
                SensitivityReport report = analyze(net, circuit, e);
                std::string full = config.format == CliConfig::Format::Report
                                       ? render_report(net, report)
                                       : render_table(net, report);
                // keep only the retraction-related sections
                if (config.format == CliConfig::Format::Report) {
                    auto start = full.find("retraction {");
                    out << full.substr(start);
                } else {
                    auto start = full.find("\nretraction");
                    out << full.substr(start + 1);
                }
                if (!config.retracted_witness_var.empty()) {
                    int v = net.variable_index(config.retracted_witness_var);
                    if (v < 0) {
                        err << "error: unknown variable " << config.retracted_witness_var << "\n";
                        return 1;
                    }
                    Evidence retracted = e;
                    retracted.values[v] = Evidence::kUnset;
                    EvaluationState state = evaluate_max(circuit, net, retracted);
                    MpeResult mpe = extract_mpe(circuit, net, state);
                    out << "after retracting " << net.variable(v).name << ": MPE "
                        << format_assignment(net, mpe.witness) << ", probability "
                        << format_number(mpe.probability) << "\n";
                }
                return 0;
            }
            case CliConfig::Command::Check:
                return run_check(config, net, out);
        }
        return 1;
    } catch (const ValidationError& ex) {
        err << "validation error: " << ex.what() << "\n";
        return 1;
    } catch (const ParseError& ex) {
        err << "parse error: " << ex.what() << "\n";
        return 1;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return 1;
    }
}

}  // namespace mpesens
