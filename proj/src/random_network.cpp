#include "mpesens/random_network.hpp"

#include <algorithm>

namespace mpesens {

BayesianNetwork random_network(Rng& rng) {
    const int n = rng.range(3, 12);
    std::vector<Variable> vars(n);
    for (int v = 0; v < n; ++v) {
        vars[v].name = "X" + std::to_string(v);
        const int card = rng.range(2, 3);
        for (int x = 0; x < card; ++x) vars[v].values.push_back("v" + std::to_string(x));
    }

    std::vector<Cpt> cpts(n);
    for (int v = 0; v < n; ++v) {
        Cpt& c = cpts[v];
        c.child = v;
        // parents drawn from earlier variables; the declared order is
        // topological by construction
        const int max_parents = std::min(3, v);
        int n_parents = max_parents > 0 ? rng.range(0, max_parents) : 0;
        std::vector<int> candidates(v);
        for (int i = 0; i < v; ++i) candidates[i] = i;
        for (int i = 0; i < n_parents; ++i) {
            int pick = i + static_cast<int>(rng.below(candidates.size() - i));
            std::swap(candidates[i], candidates[pick]);
            c.parents.push_back(candidates[i]);
        }
        std::sort(c.parents.begin(), c.parents.end());

        std::size_t rows = 1;
        for (int p : c.parents) rows *= static_cast<std::size_t>(vars[p].cardinality());
        const int card = vars[v].cardinality();
        for (std::size_t u = 0; u < rows; ++u) {
            std::vector<double> row(card);
            double sum = 0.0;
            for (int x = 0; x < card; ++x) {
                row[x] = rng.exponential();  // Dirichlet(1) via normalized Exp(1)
                sum += row[x];
            }
            for (int x = 0; x < card; ++x) row[x] /= sum;
            c.rows.push_back(std::move(row));
        }
    }
    return BayesianNetwork(std::move(vars), std::move(cpts));
}

Evidence random_evidence(const BayesianNetwork& net, Rng& rng) {
    Evidence e = empty_evidence(net);
    for (int v = 0; v < net.num_variables(); ++v)
        if (rng.below(3) == 0) e.values[v] = static_cast<int>(rng.below(net.cardinality(v)));
    return e;
}

}  // namespace mpesens
