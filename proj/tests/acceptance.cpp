// Acceptance suite: runs every acceptance criterion end to end and prints
// one PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "mpesens/network_io.hpp"
#include "mpesens/oracle.hpp"
#include "mpesens/random_network.hpp"
#include "mpesens/report.hpp"
#include "testutil.hpp"

using namespace mpesens;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
    void expect(bool ok, const std::string& why) {
        if (!ok) fail(why);
    }
    void expect_abs(double got, double want, double tol, const std::string& what) {
        if (std::abs(got - want) > tol)
            fail(what + " = " + format_number(got) + ", want " + format_number(want));
    }
    void expect_rel(double got, double want, double tol, const std::string& what) {
        double scale = std::max(std::abs(got), std::abs(want));
        if (scale > 0.0 && std::abs(got - want) / scale > tol)
            fail(what + " = " + format_number(got) + ", want " + format_number(want));
    }
    void time_limit(Clock::time_point start, double seconds, const std::string& what) {
        double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        if (elapsed > seconds)
            fail(what + " took " + std::to_string(elapsed) + " s, limit " +
                 std::to_string(seconds));
    }
};

double rel_err(double a, double b) {
    double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

constexpr std::uint64_t kSuiteSeed = 20240101;

BayesianNetwork chain_network(int n) {
    std::vector<Variable> vars(n);
    std::vector<Cpt> cpts(n);
    for (int v = 0; v < n; ++v) {
        vars[v] = {"X" + std::to_string(v), {"f", "t"}};
        cpts[v].child = v;
        if (v == 0) {
            cpts[v].rows = {{0.6, 0.4}};
        } else {
            cpts[v].parents = {v - 1};
            cpts[v].rows = {{0.7, 0.3}, {0.2, 0.8}};
        }
    }
    return BayesianNetwork(std::move(vars), std::move(cpts));
}

// --- criterion 1: fixture registers under evidence A=a ---------------------

Outcome criterion1() {
    Outcome out;
    BayesianNetwork net = testutil::ab_network();
    Evidence e = parse_evidence(net, "A=a");

    auto start = Clock::now();
    ArithmeticCircuit circuit = compile_circuit(net);
    EvaluationState state = run_dmaxc(circuit, net, e);
    MpeResult mpe = extract_mpe(circuit, net, state);
    out.time_limit(start, 0.010, "query");

    out.expect(mpe.witness.values == std::vector<int>{0, 1}, "witness is not (a, b_bar)");
    out.expect_abs(mpe.probability, 0.4, 1e-12, "MPE_p");
    out.expect_abs(state.r[circuit.param_leaf_id(ParameterRef{0, 0, 0}, net)], 0.8, 1e-12,
                   "r[theta(a)]");
    out.expect_abs(state.r[circuit.param_leaf_id(ParameterRef{1, 1, 0}, net)], 0.5, 1e-12,
                   "r[theta(b_bar|a)]");
    const double want[2][2] = {{0.4, 0.3}, {0.1, 0.4}};
    const char* names[2][2] = {{"lambda_a", "lambda_a_bar"}, {"lambda_b", "lambda_b_bar"}};
    for (int v = 0; v < 2; ++v)
        for (int x = 0; x < 2; ++x)
            out.expect_abs(state.r[circuit.indicator_leaf[v][x]], want[v][x], 1e-12, names[v][x]);
    return out;
}

// --- criterion 2: fixture constants and interval, empty evidence -----------

Outcome criterion2() {
    Outcome out;
    BayesianNetwork net = testutil::ab_network();
    Evidence e = empty_evidence(net);

    auto start = Clock::now();
    ArithmeticCircuit circuit = compile_circuit(net);
    EvaluationState state = run_dmaxc(circuit, net, e);
    SensitivityConstants constants = sensitivity_constants(state, circuit, net);
    Instantiation witness = extract_mpe(circuit, net, state).witness;
    RobustnessInterval iv = robustness_interval(ParameterRef{1, 1, 0}, constants, witness, net);
    out.time_limit(start, 0.010, "query");

    for (int row = 0; row < 2; ++row)
        for (int x = 0; x < 2; ++x)
            out.expect_abs(constants.r[1][row * 2 + x], 0.5, 1e-12,
                           "r(B row " + std::to_string(row) + " value " + std::to_string(x) + ")");
    out.expect_abs(constants.k[1][0], 0.3, 1e-12, "k(e, a)");
    out.expect_abs(constants.k[1][1], 0.4, 1e-12, "k(e, a_bar)");
    out.expect_abs(iv.lower, 0.6, 1e-12, "interval lower for theta(b_bar|a)");
    out.expect_abs(iv.upper, 1.0, 1e-12, "interval upper for theta(b_bar|a)");
    return out;
}

// --- criterion 3: oracle equivalence over 200 random networks --------------

Outcome criterion3() {
    Outcome out;
    auto start = Clock::now();
    Rng rng(kSuiteSeed);
    for (int i = 0; i < 200 && out.pass; ++i) {
        Rng net_rng = rng.fork(i);
        BayesianNetwork net = random_network(net_rng);
        Evidence e = random_evidence(net, net_rng);
        const std::string tag = "net " + std::to_string(i);

        ArithmeticCircuit circuit = compile_circuit(net);
        EvaluationState state = run_dmaxc(circuit, net, e);
        SensitivityConstants constants = sensitivity_constants(state, circuit, net);
        RetractionTable table = retraction_table(state, circuit, net);

        out.expect_rel(state.p[circuit.root], oracle::brute_force_mpe(net, e).probability, 1e-9,
                       tag + " MPE_p");
        for (int v = 0; v < net.num_variables(); ++v) {
            const int card = net.cardinality(v);
            for (int row = 0; row < net.num_rows(v); ++row) {
                for (int x = 0; x < card; ++x)
                    out.expect_rel(constants.r[v][row * card + x],
                                   oracle::brute_force_coefficient(net, e, ParameterRef{v, x, row}),
                                   1e-9, tag + " r map");
                out.expect_rel(constants.k[v][row], oracle::brute_force_k(net, e, v, row), 1e-9,
                               tag + " k map");
            }
            for (int x = 0; x < card; ++x) {
                Evidence retracted = e;
                retracted.values[v] = x;
                out.expect_rel(table.entries[v][x],
                               oracle::brute_force_mpe(net, retracted).probability, 1e-9,
                               tag + " retraction table");
            }
        }
    }
    out.time_limit(start, 60.0, "200-network equivalence");
    return out;
}

// --- criterion 4: interval soundness over 50 random networks ---------------

Outcome criterion4() {
    Outcome out;
    auto start = Clock::now();
    Rng rng(kSuiteSeed + 1);
    for (int i = 0; i < 50 && out.pass; ++i) {
        Rng net_rng = rng.fork(i);
        BayesianNetwork net = random_network(net_rng);
        Evidence e = random_evidence(net, net_rng);

        ArithmeticCircuit circuit = compile_circuit(net);
        EvaluationState state = run_dmaxc(circuit, net, e);
        SensitivityConstants constants = sensitivity_constants(state, circuit, net);
        Instantiation witness = extract_mpe(circuit, net, state).witness;

        for (int v = 0; v < net.num_variables() && out.pass; ++v) {
            const int card = net.cardinality(v);
            for (int row = 0; row < net.num_rows(v); ++row) {
                for (int x = 0; x < card; ++x) {
                    ParameterRef p{v, x, row};
                    RobustnessInterval iv = robustness_interval(p, constants, witness, net);
                    auto check = oracle::verify_robustness_interval(
                        net, e, p, witness, iv.lower, iv.upper, 20, net_rng.next());
                    out.expect(check.pass, "net " + std::to_string(i) + ", interval for " +
                                               format_parameter(net, p));
                }
            }
        }
    }
    out.time_limit(start, 120.0, "interval soundness");
    return out;
}

// --- criterion 5: circuit validity over the 200-network suite --------------

Outcome criterion5() {
    Outcome out;
    Rng rng(kSuiteSeed);
    for (int i = 0; i < 200 && out.pass; ++i) {
        Rng net_rng = rng.fork(i);
        BayesianNetwork net = random_network(net_rng);
        ArithmeticCircuit circuit = compile_circuit(net);
        out.expect(check_decomposability(circuit, net).empty(),
                   "net " + std::to_string(i) + " not decomposable");
        Rng evidence_rng = net_rng.fork(0xe51d);
        for (int j = 0; j < 20; ++j) {
            Evidence e = random_evidence(net, evidence_rng);
            out.expect_rel(evaluate_sum(circuit, net, e), oracle::brute_force_probability(net, e),
                           1e-9, "net " + std::to_string(i) + " Pr(e) sample " + std::to_string(j));
        }
    }
    return out;
}

// --- criterion 6: linear-size chain and sub-second sensitivity -------------

Outcome criterion6() {
    Outcome out;
    constexpr std::size_t kPerVariable = 13;  // frozen after first implementation
    BayesianNetwork net = chain_network(50);

    auto start = Clock::now();
    ArithmeticCircuit circuit = compile_circuit(net);
    SensitivityReport report = analyze(net, circuit, empty_evidence(net));
    std::string rendered = render_report(net, report);
    out.time_limit(start, 1.0, "50-variable chain sensitivity");

    out.expect(circuit.size() <= kPerVariable * 50,
               "node count " + std::to_string(circuit.size()) + " exceeds " +
                   std::to_string(kPerVariable * 50));
    out.expect(!rendered.empty() && report.intervals.size() == 2 + 4 * 49,
               "report incomplete");
    return out;
}

// --- criterion 7: family consistency identity over the suite ---------------

Outcome criterion7() {
    Outcome out;
    Rng rng(kSuiteSeed);
    for (int i = 0; i < 200 && out.pass; ++i) {
        Rng net_rng = rng.fork(i);
        BayesianNetwork net = random_network(net_rng);
        Evidence e = random_evidence(net, net_rng);
        ArithmeticCircuit circuit = compile_circuit(net);
        EvaluationState state = run_dmaxc(circuit, net, e);
        SensitivityConstants constants = sensitivity_constants(state, circuit, net);
        const double mpe_p = state.p[circuit.root];
        if (mpe_p <= 0.0) continue;
        for (int v = 0; v < net.num_variables(); ++v) {
            const int card = net.cardinality(v);
            for (int row = 0; row < net.num_rows(v); ++row) {
                double level = constants.k[v][row];
                for (int x = 0; x < card; ++x)
                    level = std::max(level,
                                     constants.r[v][row * card + x] * net.cpt(v).rows[row][x]);
                if (rel_err(level, mpe_p) > 1e-12)
                    out.fail("net " + std::to_string(i) + ", " + net.variable(v).name + " row " +
                             std::to_string(row) + ": " + format_number(level) + " vs " +
                             format_number(mpe_p));
            }
        }
    }
    return out;
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* name;
        Outcome (*fn)();
    };
    const Entry entries[] = {
        {1, "fixture registers under evidence A=a", criterion1},
        {2, "fixture constants and robustness interval, empty evidence", criterion2},
        {3, "oracle equivalence on 200 random networks", criterion3},
        {4, "interval soundness on 50 random networks", criterion4},
        {5, "circuit validity across the 200-network suite", criterion5},
        {6, "linear chain size and sub-second sensitivity", criterion6},
        {7, "family consistency identity across the suite", criterion7},
    };

    int failures = 0;
    for (const Entry& entry : entries) {
        auto start = Clock::now();
        Outcome outcome = entry.fn();
        double secs = std::chrono::duration<double>(Clock::now() - start).count();
        std::printf("%s  criterion %d: %s (%.2fs)%s%s\n", outcome.pass ? "PASS" : "FAIL", entry.id,
                    entry.name, secs, outcome.detail.empty() ? "" : " -- ",
                    outcome.detail.c_str());
        if (!outcome.pass) ++failures;
    }
    if (failures) std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
