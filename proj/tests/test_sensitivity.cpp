#include <doctest.h>

#include "mpesens/oracle.hpp"
#include "mpesens/random_network.hpp"
#include "mpesens/report.hpp"
#include "mpesens/sensitivity.hpp"
#include "testutil.hpp"

using namespace mpesens;
using testutil::ab_network;
using testutil::ev;
using testutil::rel_err;

namespace {

SensitivityConstants fixture_constants(const BayesianNetwork& net, const ArithmeticCircuit& circuit,
                                       const Evidence& e) {
    return sensitivity_constants(run_dmaxc(circuit, net, e), circuit, net);
}

}  // namespace

TEST_CASE("coefficient map on the fixture") {
    BayesianNetwork net = ab_network();
    ArithmeticCircuit circuit = compile_circuit(net);

    auto constants = fixture_constants(net, circuit, ev(net, ""));
    for (int row = 0; row < 2; ++row)
        for (int x = 0; x < 2; ++x)
            CHECK(constants.r[1][row * 2 + x] == doctest::Approx(0.5).epsilon(1e-12));

    constants = fixture_constants(net, circuit, ev(net, "A=a"));
    CHECK(constants.r[0][0] == doctest::Approx(0.8).epsilon(1e-12));  // theta(a)
    CHECK(constants.r[1][2 + 0] == 0.0);                              // theta(b|a_bar), dead branch
}

TEST_CASE("k map on the fixture") {
    BayesianNetwork net = ab_network();
    ArithmeticCircuit circuit = compile_circuit(net);

    auto constants = fixture_constants(net, circuit, ev(net, ""));
    CHECK(constants.k[1][0] == doctest::Approx(0.3).epsilon(1e-12));  // k(e, a)
    CHECK(constants.k[1][1] == doctest::Approx(0.4).epsilon(1e-12));  // k(e, a_bar)
    CHECK(constants.k[0][0] == 0.0);                                  // root variable

    constants = fixture_constants(net, circuit, ev(net, "A=a"));
    CHECK(constants.k[1][0] == 0.0);  // both a_bar-branch coefficients are 0
}

TEST_CASE("co-variation schemes") {
    CHECK(apply_covariation({0.2, 0.8}, 1, 0.6) == std::vector<double>{0.4, 0.6});

    auto row = apply_covariation({0.2, 0.3, 0.5}, 0, 0.2);
    CHECK(row[0] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(row[1] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(row[2] == doctest::Approx(0.5).epsilon(1e-12));

    row = apply_covariation({0.2, 0.3, 0.5}, 0, 0.6);
    CHECK(row[0] == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(row[1] == doctest::Approx(0.15).epsilon(1e-12));
    CHECK(row[2] == doctest::Approx(0.25).epsilon(1e-12));

    // theta = 1: remaining mass spreads uniformly
    row = apply_covariation({1.0, 0.0, 0.0}, 0, 0.4);
    CHECK(row[1] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(row[2] == doctest::Approx(0.3).epsilon(1e-12));

    CHECK_THROWS_AS(apply_covariation({0.2, 0.8}, 0, 1.5), std::invalid_argument);

    // rows always re-sum to 1
    Rng rng(17);
    for (int i = 0; i < 200; ++i) {
        int m = rng.range(2, 4);
        std::vector<double> base(m);
        double sum = 0.0;
        for (double& x : base) sum += (x = rng.exponential());
        for (double& x : base) x /= sum;
        auto moved = apply_covariation(base, rng.range(0, m - 1), rng.uniform());
        double total = 0.0;
        for (double x : moved) total += x;
        CHECK(std::abs(total - 1.0) <= 1e-12);
    }
}

TEST_CASE("robustness intervals on the fixture") {
    BayesianNetwork net = ab_network();
    ArithmeticCircuit circuit = compile_circuit(net);
    Evidence e = ev(net, "");
    SensitivityConstants constants = fixture_constants(net, circuit, e);
    Instantiation witness = testutil::inst({0, 1});

    auto iv = robustness_interval(ParameterRef{1, 1, 0}, constants, witness, net);
    CHECK(iv.lower == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(iv.upper == 1.0);
    CHECK(iv.binding_lower.kind == BindingConstraint::VersusK);
    CHECK(iv.binding_upper.kind == BindingConstraint::DomainEdge);
    CHECK_FALSE(iv.tie_at_current);

    iv = robustness_interval(ParameterRef{1, 0, 0}, constants, witness, net);
    CHECK(iv.lower == 0.0);
    CHECK(iv.upper == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(iv.binding_upper.kind == BindingConstraint::VersusK);

    iv = robustness_interval(ParameterRef{0, 0, 0}, constants, witness, net);
    CHECK(iv.lower == doctest::Approx(3.0 / 7.0).epsilon(1e-12));
    CHECK(iv.upper == 1.0);
    CHECK(iv.binding_lower.kind == BindingConstraint::VersusValue);
    CHECK(iv.binding_lower.value == 1);
}

TEST_CASE("multi-valued intervals solve one inequality per competing value") {
    // single three-valued variable: every coefficient is 1, k is 0, so the
    // inequalities reduce to t >= share * (1 - t) per competitor
    BayesianNetwork net = load_network(R"({
      "variables": [{"name": "C", "values": ["c0", "c1", "c2"]}],
      "cpts": [{"child": "C", "parents": [], "rows": [[0.2, 0.3, 0.5]]}]
    })");
    ArithmeticCircuit circuit = compile_circuit(net);
    Evidence e = empty_evidence(net);
    SensitivityConstants constants = fixture_constants(net, circuit, e);
    Instantiation witness = extract_mpe(circuit, net, run_dmaxc(circuit, net, e)).witness;
    REQUIRE(witness.values == std::vector<int>{2});

    // witness's own parameter: 0.3/0.5 and 0.5/... rescale, c1 binds at 3/8
    auto iv = robustness_interval(ParameterRef{0, 2, 0}, constants, witness, net);
    CHECK(iv.lower == doctest::Approx(3.0 / 8.0).epsilon(1e-12));
    CHECK(iv.upper == 1.0);
    CHECK(iv.binding_lower.kind == BindingConstraint::VersusValue);
    CHECK(iv.binding_lower.value == 1);

    // a competitor's parameter: witness branch decays as 0.625 * (1 - t)
    iv = robustness_interval(ParameterRef{0, 0, 0}, constants, witness, net);
    CHECK(iv.lower == 0.0);
    CHECK(iv.upper == doctest::Approx(5.0 / 13.0).epsilon(1e-12));
    CHECK(iv.binding_upper.kind == BindingConstraint::VersusValue);
    CHECK(iv.binding_upper.value == 0);
    auto verified = oracle::verify_robustness_interval(net, e, ParameterRef{0, 0, 0}, witness,
                                                       iv.lower, iv.upper, 30, 99);
    CHECK(verified.pass);
}

TEST_CASE("a parameter at 1 falls back to uniform co-variation") {
    BayesianNetwork net = load_network(R"({
      "variables": [{"name": "C", "values": ["c0", "c1", "c2"]}],
      "cpts": [{"child": "C", "parents": [], "rows": [[1.0, 0.0, 0.0]]}]
    })");
    ArithmeticCircuit circuit = compile_circuit(net);
    Evidence e = empty_evidence(net);
    SensitivityConstants constants = fixture_constants(net, circuit, e);
    Instantiation witness = extract_mpe(circuit, net, run_dmaxc(circuit, net, e)).witness;
    REQUIRE(witness.values == std::vector<int>{0});

    // competitors each receive (1 - t) / 2, so c0 stays MPE down to t = 1/3
    auto iv = robustness_interval(ParameterRef{0, 0, 0}, constants, witness, net);
    CHECK(iv.uniform_covariation);
    CHECK(iv.lower == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(iv.upper == 1.0);
    auto verified = oracle::verify_robustness_interval(net, e, ParameterRef{0, 0, 0}, witness,
                                                       iv.lower, iv.upper, 30, 7);
    CHECK(verified.pass);
}

TEST_CASE("interval endpoints are tie points") {
    // at theta(b_bar|a) = 0.6 both (a,b_bar) and (a_bar,b) are MPE solutions
    BayesianNetwork net = ab_network();
    std::vector<Variable> vars = net.variables();
    std::vector<Cpt> cpts = net.cpts();
    cpts[1].rows[0] = apply_covariation(cpts[1].rows[0], 1, 0.6);
    BayesianNetwork moved(std::move(vars), std::move(cpts));
    auto mpe = oracle::brute_force_mpe(moved, empty_evidence(moved));
    REQUIRE(mpe.argmax.size() == 2);
    CHECK(mpe.argmax[0].values == std::vector<int>{0, 1});
    CHECK(mpe.argmax[1].values == std::vector<int>{1, 0});
}

TEST_CASE("intervals are sound against the oracle on random networks") {
    Rng rng(77);
    int checked = 0;
    for (int i = 0; i < 12; ++i) {
        Rng net_rng = rng.fork(i);
        BayesianNetwork net = random_network(net_rng);
        if (net.num_variables() > 8) continue;
        ArithmeticCircuit circuit = compile_circuit(net);
        Evidence e = random_evidence(net, net_rng);
        EvaluationState state = run_dmaxc(circuit, net, e);
        SensitivityConstants constants = sensitivity_constants(state, circuit, net);
        Instantiation witness = extract_mpe(circuit, net, state).witness;

        for (int trial = 0; trial < 6; ++trial) {
            int v = static_cast<int>(net_rng.below(net.num_variables()));
            ParameterRef p{v, static_cast<int>(net_rng.below(net.cardinality(v))),
                           static_cast<int>(net_rng.below(net.num_rows(v)))};
            auto iv = robustness_interval(p, constants, witness, net);
            CHECK(iv.lower <= net.parameter(p));
            CHECK(iv.upper >= net.parameter(p));
            auto result = oracle::verify_robustness_interval(net, e, p, witness, iv.lower, iv.upper,
                                                             8, net_rng.next());
            CHECK(result.pass);
            ++checked;
        }
    }
    CHECK(checked >= 30);
}

TEST_CASE("retraction table on the fixture") {
    BayesianNetwork net = ab_network();
    ArithmeticCircuit circuit = compile_circuit(net);

    auto table = retraction_table(run_dmaxc(circuit, net, ev(net, "A=a")), circuit, net);
    CHECK(table.mpe_probability == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(table.entries[0][0] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(table.entries[0][1] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(table.entries[1][0] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(table.entries[1][1] == doctest::Approx(0.4).epsilon(1e-12));

    // set variable: the entry at the evidence value is MPE_p(e)
    CHECK(rel_err(table.entries[0][0], table.mpe_probability) <= 1e-12);

    table = retraction_table(run_dmaxc(circuit, net, ev(net, "A=a B=b")), circuit, net);
    CHECK(table.entries[1][1] == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("retraction verdicts") {
    BayesianNetwork net = ab_network();
    ArithmeticCircuit circuit = compile_circuit(net);

    Evidence e = ev(net, "A=a");
    auto table = retraction_table(run_dmaxc(circuit, net, e), circuit, net);
    CHECK(retraction_verdict(table, e, 0) == RetractionVerdict::IdentityPreservedStrictly);
    CHECK_THROWS_AS(retraction_verdict(table, e, 1), std::invalid_argument);

    e = ev(net, "A=a_bar");  // MPE_p = .3 < MPE_p(e - A, a) = .4
    table = retraction_table(run_dmaxc(circuit, net, e), circuit, net);
    CHECK(retraction_verdict(table, e, 0) == RetractionVerdict::IdentityChanges);

    // symmetric CPTs tie both values of A
    BayesianNetwork symmetric = load_network(R"({
      "variables": [
        {"name": "A", "values": ["0", "1"]},
        {"name": "B", "values": ["0", "1"]}
      ],
      "cpts": [
        {"child": "A", "parents": [], "rows": [[0.5, 0.5]]},
        {"child": "B", "parents": ["A"], "rows": [[0.8, 0.2], [0.8, 0.2]]}
      ]
    })");
    ArithmeticCircuit sc = compile_circuit(symmetric);
    Evidence se = ev(symmetric, "A=0");
    auto st = retraction_table(run_dmaxc(sc, symmetric, se), sc, symmetric);
    CHECK(retraction_verdict(st, se, 0) == RetractionVerdict::IdentityEnlarged);
}

TEST_CASE("multiplicity detection") {
    BayesianNetwork net = ab_network();
    ArithmeticCircuit circuit = compile_circuit(net);

    Evidence e = ev(net, "A=a");
    auto table = retraction_table(run_dmaxc(circuit, net, e), circuit, net);
    auto m = mpe_multiplicity(table, e, 1);
    CHECK_FALSE(m.multiple);
    CHECK(m.forced_value == 1);  // every MPE has b_bar
    CHECK_THROWS_AS(mpe_multiplicity(table, e, 0), std::invalid_argument);

    e = ev(net, "");
    table = retraction_table(run_dmaxc(circuit, net, e), circuit, net);
    m = mpe_multiplicity(table, e, 0);
    CHECK_FALSE(m.multiple);
    CHECK(m.forced_value == 0);  // entries 0.4 vs 0.3

    BayesianNetwork uniform = load_network(R"({
      "variables": [
        {"name": "A", "values": ["0", "1"]},
        {"name": "B", "values": ["0", "1"]}
      ],
      "cpts": [
        {"child": "A", "parents": [], "rows": [[0.5, 0.5]]},
        {"child": "B", "parents": [], "rows": [[0.5, 0.5]]}
      ]
    })");
    ArithmeticCircuit uc = compile_circuit(uniform);
    Evidence ue = empty_evidence(uniform);
    auto ut = retraction_table(run_dmaxc(uc, uniform, ue), uc, uniform);
    CHECK(mpe_multiplicity(ut, ue, 0).multiple);
    CHECK(mpe_multiplicity(ut, ue, 1).multiple);
}

TEST_CASE("constants and retraction match the oracle on random networks") {
    Rng rng(88);
    for (int i = 0; i < 15; ++i) {
        Rng net_rng = rng.fork(i);
        BayesianNetwork net = random_network(net_rng);
        ArithmeticCircuit circuit = compile_circuit(net);
        Evidence e = random_evidence(net, net_rng);
        EvaluationState state = run_dmaxc(circuit, net, e);
        SensitivityConstants constants = sensitivity_constants(state, circuit, net);
        RetractionTable table = retraction_table(state, circuit, net);
        const double mpe_p = state.p[circuit.root];

        for (int v = 0; v < net.num_variables(); ++v) {
            for (int row = 0; row < net.num_rows(v); ++row) {
                CHECK(rel_err(constants.k[v][row], oracle::brute_force_k(net, e, v, row)) <= 1e-9);
                // family consistency identity
                double level = constants.k[v][row];
                for (int x = 0; x < net.cardinality(v); ++x)
                    level = std::max(level, constants.r[v][row * net.cardinality(v) + x] *
                                                net.cpt(v).rows[row][x]);
                if (mpe_p > 0.0) CHECK(rel_err(level, mpe_p) <= 1e-12);
            }
            for (int x = 0; x < net.cardinality(v); ++x) {
                Evidence retracted = e;
                retracted.values[v] = x;
                CHECK(rel_err(table.entries[v][x],
                              oracle::brute_force_mpe(net, retracted).probability) <= 1e-9);
            }
        }
    }
}

TEST_CASE("analysis report renders deterministically") {
    BayesianNetwork net = ab_network();
    ArithmeticCircuit circuit = compile_circuit(net);
    SensitivityReport report = analyze(net, circuit, ev(net, "A=a"));
    std::string first = render_report(net, report);
    std::string second = render_report(net, analyze(net, circuit, ev(net, "A=a")));
    CHECK(first == second);
    CHECK(first.find("mpe {") != std::string::npos);
    CHECK(first.find("witness A=a B=b_bar") != std::string::npos);
    CHECK(first.find("parameters {") != std::string::npos);
    CHECK(first.find("retraction {") != std::string::npos);
    CHECK(first.find("multiplicity {") != std::string::npos);
    CHECK(first.find("forced B=b_bar") != std::string::npos);
}
