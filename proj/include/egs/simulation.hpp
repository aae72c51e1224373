#pragma once

#include "egs/dataset.hpp"
#include "egs/graph.hpp"
#include "egs/random.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace egs {

struct GeneratorConfig {
    int n_nodes = 0;
    double mean_arcs = 0.0;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument unless 0 <= mean_arcs <= n(n-1)/2.
    void validate() const;
};

/// Random permutation as topological order, each forward pair kept with
/// probability `edge_probability`.
Dag random_ordered_dag(int n_nodes, double edge_probability, Rng& rng);

/// random_ordered_dag with p = mean_arcs / (n(n-1)/2), seeded from cfg.seed.
Dag random_dag(const GeneratorConfig& cfg);

/// Edge coefficients; coefficients(parent, child) is zero for non-edges.
struct SemParams {
    Eigen::MatrixXd coefficients;
};

/// One coefficient per edge, i.i.d. uniform on (0.1, 0.9).
SemParams draw_sem_params(const Dag& d, Rng& rng);

/// Y = sum over parents of beta * X_parent + standard normal noise, sampled in
/// topological order. Variables are named X1..Xn unless names are given.
Dataset sample_linear_sem(const Dag& d, const SemParams& params, int n_records, Rng& rng,
                          std::vector<std::string> names = {});

std::vector<std::string> default_names(int n);

}  // namespace egs
