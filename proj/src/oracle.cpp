#include "mpesens/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "mpesens/covariation.hpp"
#include "mpesens/rng.hpp"

namespace mpesens {
namespace oracle {

namespace {

// Mixed-radix walk over every complete instantiation, declared orders.
// fn(values) is called once per instantiation.
template <typename Fn>
void for_each_instantiation(const BayesianNetwork& net, std::uint64_t guard, Fn&& fn) {
    net.instantiation_count(guard);
    const int n = net.num_variables();
    std::vector<int> values(n, 0);
    for (;;) {
        fn(values);
        int v = n - 1;
        while (v >= 0 && ++values[v] == net.cardinality(v)) {
            values[v] = 0;
            --v;
        }
        if (v < 0) break;
    }
}

bool consistent(const Evidence& e, const std::vector<int>& values) {
    for (std::size_t i = 0; i < values.size(); ++i)
        if (e.values[i] != Evidence::kUnset && e.values[i] != values[i]) return false;
    return true;
}

double term_product(const BayesianNetwork& net, const std::vector<int>& values) {
    double prob = 1.0;
    for (int v = 0; v < net.num_variables(); ++v)
        prob *= net.cpt(v).rows[net.row_index(v, values)][values[v]];
    return prob;
}

bool tie(double value, double max) {
    return std::abs(value - max) <= kTieTolerance * max;  // max >= value >= 0
}

}  // namespace

MpeSet brute_force_mpe(const BayesianNetwork& net, const Evidence& e, std::uint64_t guard) {
    double best = 0.0;
    bool any = false;
    for_each_instantiation(net, guard, [&](const std::vector<int>& values) {
        if (!consistent(e, values)) return;
        any = true;
        double p = term_product(net, values);
        if (p > best) best = p;
    });

    MpeSet out;
    out.probability = any ? best : 0.0;
    if (!any) return out;
    for_each_instantiation(net, guard, [&](const std::vector<int>& values) {
        if (!consistent(e, values)) return;
        if (tie(term_product(net, values), best)) out.argmax.push_back(Instantiation{values});
    });
    return out;
}

double brute_force_probability(const BayesianNetwork& net, const Evidence& e,
                               std::uint64_t guard) {
    double sum = 0.0;
    for_each_instantiation(net, guard, [&](const std::vector<int>& values) {
        if (consistent(e, values)) sum += term_product(net, values);
    });
    return sum;
}

double brute_force_coefficient(const BayesianNetwork& net, const Evidence& e,
                               const ParameterRef& param, std::uint64_t guard) {
    double best = 0.0;
    for_each_instantiation(net, guard, [&](const std::vector<int>& values) {
        if (!consistent(e, values)) return;
        if (values[param.variable] != param.value) return;
        if (net.row_index(param.variable, values) != param.row) return;
        double coeff = 1.0;
        for (int v = 0; v < net.num_variables(); ++v) {
            if (v == param.variable) continue;  // excluded factor
            coeff *= net.cpt(v).rows[net.row_index(v, values)][values[v]];
        }
        if (coeff > best) best = coeff;
    });
    return best;
}

double brute_force_k(const BayesianNetwork& net, const Evidence& e, int var, int row,
                     std::uint64_t guard) {
    if (net.cpt(var).parents.empty()) return 0.0;  // nothing is incompatible with u
    double best = 0.0;
    for_each_instantiation(net, guard, [&](const std::vector<int>& values) {
        if (!consistent(e, values)) return;
        if (net.row_index(var, values) == row) return;
        double p = term_product(net, values);
        if (p > best) best = p;
    });
    return best;
}

IntervalCheck verify_robustness_interval(const BayesianNetwork& net, const Evidence& e,
                                         const ParameterRef& param, const Instantiation& witness,
                                         double lower, double upper, int n_samples,
                                         std::uint64_t seed, std::uint64_t guard) {
    constexpr double kBand = 1e-9;

    auto witness_is_mpe_at = [&](double t) {
        std::vector<Variable> vars = net.variables();
        std::vector<Cpt> cpts = net.cpts();
        cpts[param.variable].rows[param.row] =
            apply_covariation(cpts[param.variable].rows[param.row], param.value, t);
        BayesianNetwork modified(std::move(vars), std::move(cpts));
        MpeSet mpe = brute_force_mpe(modified, e, guard);
        double pw = joint_probability(modified, witness);
        return pw >= mpe.probability || tie(pw, mpe.probability);
    };

    IntervalCheck out;
    Rng rng(seed);

    if (upper - lower > 2 * kBand) {
        for (int i = 0; i < n_samples; ++i) {
            double t = rng.uniform(lower + kBand, upper - kBand);
            if (!witness_is_mpe_at(t)) {
                out.pass = false;
                out.failing_inside.push_back(t);
            }
        }
    }

    double left = lower - kBand;   // outside region [0, left]
    double right = upper + kBand;  // outside region [right, 1]
    double left_len = left > 0.0 ? left : 0.0;
    double right_len = right < 1.0 ? 1.0 - right : 0.0;
    if (left_len + right_len > 0.0) {
        for (int i = 0; i < n_samples; ++i) {
            double pick = rng.uniform() * (left_len + right_len);
            double t = pick < left_len ? pick : right + (pick - left_len);
            if (witness_is_mpe_at(t)) {
                out.pass = false;
                out.failing_outside.push_back(t);
            }
        }
    }
    return out;
}

}  // namespace oracle
}  // namespace mpesens
