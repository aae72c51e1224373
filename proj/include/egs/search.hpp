#pragma once

#include "egs/equivalence.hpp"
#include "egs/independence.hpp"
#include "egs/random.hpp"
#include "egs/scoring.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace egs {

struct AlphaRange {
    double lo = 0.005;
    double hi = 0.2;
};

struct SearchConfig {
    AlphaRange alpha;
    /// EGS stops after this many consecutive candidates fail to improve.
    int convergence_n = 500;
    /// Greedy restarts for GS and GS/1.
    int restarts = 50;
    std::uint64_t seed = 0;
    /// Significance level of the single PC call that seeds GS/1.
    double gs1_alpha = 0.05;
    /// Candidates (EGS) or restarts (GS) evaluated concurrently. Results do
    /// not depend on this value.
    int threads = 1;
    std::optional<int> max_condition_size;

    void validate() const;
};

struct ScoredStructure {
    Dag dag;
    EssentialGraph essential;
    double log_score = 0.0;
    /// NaN when the structure did not come from a PC call.
    double alpha_used = 0.0;
    /// Candidate (or restart, or greedy step) index that produced the result.
    std::size_t iteration_found = 0;
    std::size_t candidates_generated = 0;
    /// Set when the engine fell back to a baseline start or result.
    bool flagged = false;
    /// Incumbent score after each candidate or restart.
    std::vector<double> trace;
};

/// Hill-climbing over Add/Del/Rev until no edit improves the score by more
/// than 1e-9. Ties go to the lowest (x, y), then Add, Del, Rev.
ScoredStructure greedy_search(const Scorer& scorer, const Dag& start);

/// Draws alpha and a node ordering, runs PC, extends the result to a random
/// DAG and keeps the best-scoring one, until `convergence_n` consecutive
/// candidates fail to improve. Rejected candidates count as failures.
ScoredStructure run_egs(const Scorer& scorer, const IndependenceTest& test,
                        const SearchConfig& config);

/// run_egs with every extended DAG refined by greedy_search before scoring.
ScoredStructure run_egs_gs(const Scorer& scorer, const IndependenceTest& test,
                           const SearchConfig& config);

/// Greedy search from `restarts` random DAGs.
ScoredStructure run_gs(const Scorer& scorer, const SearchConfig& config);

/// Like run_gs, but the first start is a random extension of PC's output at
/// gs1_alpha under the identity ordering.
ScoredStructure run_gs1(const Scorer& scorer, const IndependenceTest& test,
                        const SearchConfig& config);

/// Random permutation as topological order, each forward pair an edge with
/// probability 1/2.
Dag random_dag_uniform_start(int n_nodes, Rng& rng);

}  // namespace egs
