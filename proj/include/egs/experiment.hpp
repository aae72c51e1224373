#pragma once

#include "egs/evaluation.hpp"
#include "egs/independence.hpp"
#include "egs/scoring.hpp"
#include "egs/search.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace egs {

enum class Engine { egs, egs_gs, gs, gs1 };

/// "EGS", "EGS/GS", "GS", "GS/1".
std::string engine_name(Engine e);
/// Accepts egs, egsgs, gs, gs1 (and the display names).
Engine parse_engine(const std::string& text);

struct ExperimentSpec {
    std::string id = "experiment";
    int n_nodes = 15;
    double mean_arcs = 22.0;
    int n_records = 500;
    int replications = 1;
    std::vector<Engine> engines{Engine::egs, Engine::egs_gs, Engine::gs, Engine::gs1};
    /// Engine settings; the seed is replaced per (replication, engine).
    SearchConfig search;
    ComparisonMode mode = ComparisonMode::essential;
    std::uint64_t seed = 0;
    /// Replications run concurrently on this many threads.
    int threads = 1;
    /// wall_ms is written as 0 unless set, keeping tables byte-stable.
    bool record_wall_time = false;

    void validate() const;
};

struct ResultRow {
    std::string experiment_id;
    int replication = 0;
    Engine engine = Engine::egs;
    std::uint64_t seed = 0;
    int n_nodes = 0;
    double mean_arcs = 0.0;
    int n_records = 0;
    StructuralDiff diff;
    double log_score = 0.0;
    double alpha_used = 0.0;
    std::size_t candidates_generated = 0;
    long long wall_ms = 0;
    /// ok, fallback (engine used a baseline), or error.
    std::string status = "ok";
};

/// One row per (replication, engine), ordered by replication then by the
/// order of spec.engines.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);

/// Flat key=value lines; '#' comments. Keys: id, nodes, mean_arcs, records,
/// replications, engines, alpha_lo, alpha_hi, n, restarts, gs1_alpha,
/// max_condition_size, mode, seed, threads, record_wall_time.
ExperimentSpec parse_experiment_spec(std::istream& in);
ExperimentSpec read_experiment_spec_file(const std::string& path);

struct AlphaBin {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t runs = 0;
    std::size_t rejected = 0;
    /// Runs whose graph reached the best score seen across all runs.
    std::size_t max_score_hits = 0;
};

struct DistinctGraphs {
    std::size_t attempts = 0;
    std::size_t rejected = 0;
    std::size_t distinct = 0;
    double best_score = 0.0;
    std::vector<AlphaBin> histogram;
};

/// Runs PC `runs` times, each with a fresh alpha from config.alpha and a
/// fresh random ordering, and counts distinct output graphs. Cyclic
/// rejections count as attempts only. With a scorer, every graph is scored
/// through one random extension and the alpha histogram records which
/// levels reached the maximum. Bins are `bin_width` wide.
DistinctGraphs count_distinct_essential_graphs(const IndependenceTest& test, const Scorer* scorer,
                                               std::size_t runs, const SearchConfig& config,
                                               double bin_width = 0.005);

void write_distinct_csv(std::ostream& out, const DistinctGraphs& result);

}  // namespace egs
