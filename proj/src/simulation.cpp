#include "egs/simulation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace egs {

void GeneratorConfig::validate() const {
    if (n_nodes < 1) throw std::invalid_argument("generator needs at least one node");
    const double max_arcs = 0.5 * n_nodes * (n_nodes - 1);
    if (!(mean_arcs >= 0.0) || mean_arcs > max_arcs)
        throw std::invalid_argument("mean_arcs must lie in [0, n(n-1)/2]");
}

Dag random_ordered_dag(int n_nodes, double edge_probability, Rng& rng) {
    if (n_nodes < 1) throw std::invalid_argument("need at least one node");
    std::vector<NodeId> perm(n_nodes);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    MixedGraph g(n_nodes);
    for (int i = 0; i < n_nodes; ++i)
        for (int j = i + 1; j < n_nodes; ++j)
            if (unit(rng) < edge_probability) g.add_directed(perm[i], perm[j]);
    return Dag(std::move(g));
}

Dag random_dag(const GeneratorConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);
    const double pairs = 0.5 * cfg.n_nodes * (cfg.n_nodes - 1);
    const double p = pairs > 0 ? cfg.mean_arcs / pairs : 0.0;
    return random_ordered_dag(cfg.n_nodes, p, rng);
}

SemParams draw_sem_params(const Dag& d, Rng& rng) {
    std::uniform_real_distribution<double> beta(0.1, 0.9);
    SemParams params{Eigen::MatrixXd::Zero(d.num_nodes(), d.num_nodes())};
    for (const auto& [parent, child] : d.edges()) {
        double b;
        do b = beta(rng);
        while (b <= 0.1);
        params.coefficients(parent, child) = b;
    }
    return params;
}

Dataset sample_linear_sem(const Dag& d, const SemParams& params, int n_records, Rng& rng,
                          std::vector<std::string> names) {
    const int n = d.num_nodes();
    if (n_records < 1) throw std::invalid_argument("need at least one record");
    const auto& beta = params.coefficients;
    if (beta.rows() != n || beta.cols() != n)
        throw std::invalid_argument("coefficient matrix does not match graph");
    for (const auto& [parent, child] : d.edges())
        if (beta(parent, child) == 0.0) throw std::invalid_argument("missing edge coefficient");
    if (names.empty()) names = default_names(n);

    std::normal_distribution<double> noise(0.0, 1.0);
    Eigen::MatrixXd x(n_records, n);
    for (int i = 0; i < n_records; ++i)
        for (int j = 0; j < n; ++j) x(i, j) = noise(rng);
    for (NodeId v : topological_order(d))
        for (NodeId p : d.parents(v)) x.col(v) += beta(p, v) * x.col(p);
    return Dataset(std::move(names), std::move(x), DataKind::continuous);
}

std::vector<std::string> default_names(int n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (int i = 1; i <= n; ++i) names.push_back("X" + std::to_string(i));
    return names;
}

}  // namespace egs
