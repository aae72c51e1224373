#include "egs/dataset.hpp"
#include "egs/evaluation.hpp"
#include "egs/experiment.hpp"
#include "egs/graph_io.hpp"
#include "egs/independence.hpp"
#include "egs/scoring.hpp"
#include "egs/search.hpp"
#include "egs/simulation.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

namespace {

struct GenerateArgs {
    int nodes = 15;
    double mean_arcs = 22;
    int records = 500;
    std::uint64_t seed = 0;
    std::string out_data;
    std::string out_graph;
};

struct LearnArgs {
    std::string engine = "egs";
    std::string data;
    double alpha_lo = 0.005;
    double alpha_hi = 0.2;
    int n = 500;
    int restarts = 50;
    std::string score = "bic";
    double ess = 1.0;
    bool discrete = false;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string out_graph;
    std::string out_dag;
};

struct DiffArgs {
    std::string learned;
    std::string truth;
    std::string mode = "essential";
};

struct ExperimentArgs {
    std::string spec;
    std::string out;
};

struct DistinctArgs {
    std::string data;
    int runs = 200;
    std::uint64_t seed = 0;
    double alpha_lo = 0.005;
    double alpha_hi = 0.2;
    bool discrete = false;
    std::string out;
};

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

int generate(const GenerateArgs& a) {
    using namespace egs;
    const Dag truth = random_dag({a.nodes, a.mean_arcs, substream_seed(a.seed, 0)});
    Rng rng(substream_seed(a.seed, 1));
    const SemParams params = draw_sem_params(truth, rng);
    const Dataset data = sample_linear_sem(truth, params, a.records, rng);
    write_csv_file(a.out_data, data);
    write_graph_file(a.out_graph, data.names(), truth.graph());
    std::cout << "generated " << a.records << " records over " << a.nodes << " variables, "
              << truth.num_edges() << " edges\n";
    return 0;
}

int learn(const LearnArgs& a) {
    using namespace egs;
    const Dataset data = read_csv_file(a.data, a.discrete ? DataKind::discrete : DataKind::continuous);
    ScoreKind kind;
    if (a.score == "bic") kind = ScoreKind::gaussian_bic();
    else if (a.score == "bdeu") kind = ScoreKind::bdeu(a.ess);
    else throw std::invalid_argument("unknown score " + a.score);
    const Scorer scorer(data, kind);
    std::unique_ptr<IndependenceTest> test;
    if (a.discrete) test = std::make_unique<GSquareTest>(data);
    else test = std::make_unique<FisherZTest>(data);

    SearchConfig config;
    config.alpha = {a.alpha_lo, a.alpha_hi};
    config.convergence_n = a.n;
    config.restarts = a.restarts;
    config.seed = a.seed;
    config.threads = a.threads;
    ScoredStructure result;
    switch (parse_engine(a.engine)) {
        case Engine::egs: result = run_egs(scorer, *test, config); break;
        case Engine::egs_gs: result = run_egs_gs(scorer, *test, config); break;
        case Engine::gs: result = run_gs(scorer, config); break;
        case Engine::gs1: result = run_gs1(scorer, *test, config); break;
    }
    write_graph_file(a.out_graph, data.names(), result.essential);
    if (!a.out_dag.empty()) write_graph_file(a.out_dag, data.names(), result.dag.graph());
    std::cout << "engine " << engine_name(parse_engine(a.engine)) << "\n"
              << "log_score " << result.log_score << "\n"
              << "alpha_used " << result.alpha_used << "\n"
              << "candidates " << result.candidates_generated << "\n"
              << "edges " << result.essential.num_edges() << "\n";
    if (result.flagged) std::cout << "flagged fallback\n";
    return 0;
}

int diff(const DiffArgs& a) {
    using namespace egs;
    ComparisonMode mode;
    if (a.mode == "essential") mode = ComparisonMode::essential;
    else if (a.mode == "raw") mode = ComparisonMode::raw_dag;
    else throw std::invalid_argument("unknown mode " + a.mode);
    const NamedGraph truth = read_graph_file(a.truth);
    const NamedGraph learned = read_graph_file(a.learned);
    if (learned.names.size() != truth.names.size())
        throw NodeCountMismatch("learned and truth graphs have different node counts");
    const Dag truth_dag(truth.graph);
    const auto d = structural_diff(remap_graph(learned.graph, learned.names, truth.names), truth_dag, mode);
    std::cout << "adj_plus " << d.adj_plus << "\n"
              << "adj_minus " << d.adj_minus << "\n"
              << "arcs_plus " << d.arcs_plus << "\n"
              << "arcs_minus " << d.arcs_minus << "\n"
              << "total " << egs::total_error(d) << "\n";
    return 0;
}

int experiment(const ExperimentArgs& a) {
    const auto spec = egs::read_experiment_spec_file(a.spec);
    const auto rows = egs::run_experiment(spec);
    auto out = open_out(a.out);
    egs::write_results_csv(out, rows);
    std::cout << "wrote " << rows.size() << " rows to " << a.out << "\n";
    return 0;
}

int distinct(const DistinctArgs& a) {
    using namespace egs;
    const Dataset data = read_csv_file(a.data, a.discrete ? DataKind::discrete : DataKind::continuous);
    std::unique_ptr<IndependenceTest> test;
    if (a.discrete) test = std::make_unique<GSquareTest>(data);
    else test = std::make_unique<FisherZTest>(data);
    const Scorer scorer(data, a.discrete ? ScoreKind::bdeu() : ScoreKind::gaussian_bic());
    SearchConfig config;
    config.alpha = {a.alpha_lo, a.alpha_hi};
    config.seed = a.seed;
    if (a.runs < 1) throw std::invalid_argument("runs must be >= 1");
    const auto result = count_distinct_essential_graphs(*test, &scorer, a.runs, config);
    auto out = open_out(a.out);
    write_distinct_csv(out, result);
    std::cout << "attempts " << result.attempts << "\n"
              << "rejected " << result.rejected << "\n"
              << "distinct " << result.distinct << "\n"
              << "best_score " << result.best_score << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Essential graph search for causal structure learning"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "Sample a random DAG and linear-Gaussian data");
    g->add_option("--nodes", gen.nodes)->required();
    g->add_option("--mean-arcs", gen.mean_arcs)->required();
    g->add_option("--records", gen.records)->required();
    g->add_option("--seed", gen.seed);
    g->add_option("--out-data", gen.out_data)->required();
    g->add_option("--out-graph", gen.out_graph)->required();

    LearnArgs lrn;
    auto* l = app.add_subcommand("learn", "Learn a structure from a CSV dataset");
    l->add_option("--engine", lrn.engine)->check(CLI::IsMember({"egs", "egsgs", "gs", "gs1"}));
    l->add_option("--data", lrn.data)->required();
    l->add_option("--alpha-lo", lrn.alpha_lo);
    l->add_option("--alpha-hi", lrn.alpha_hi);
    l->add_option("--n", lrn.n, "EGS convergence parameter");
    l->add_option("--restarts", lrn.restarts);
    l->add_option("--score", lrn.score)->check(CLI::IsMember({"bic", "bdeu"}));
    l->add_option("--ess", lrn.ess, "BDeu equivalent sample size");
    l->add_flag("--discrete", lrn.discrete, "Read the data as integer category codes");
    l->add_option("--seed", lrn.seed);
    l->add_option("--threads", lrn.threads);
    l->add_option("--out-graph", lrn.out_graph)->required();
    l->add_option("--out-dag", lrn.out_dag);

    DiffArgs dif;
    auto* d = app.add_subcommand("diff", "Compare a learned graph against the truth");
    d->add_option("--learned", dif.learned)->required();
    d->add_option("--truth", dif.truth)->required();
    d->add_option("--mode", dif.mode)->check(CLI::IsMember({"essential", "raw"}));

    ExperimentArgs exp;
    auto* e = app.add_subcommand("experiment", "Run a batch experiment from a spec file");
    e->add_option("--spec", exp.spec)->required();
    e->add_option("--out", exp.out)->required();

    DistinctArgs dis;
    auto* s = app.add_subcommand("distinct", "Count distinct PC outputs under random alpha/order");
    s->add_option("--data", dis.data)->required();
    s->add_option("--runs", dis.runs);
    s->add_option("--seed", dis.seed);
    s->add_option("--alpha-lo", dis.alpha_lo);
    s->add_option("--alpha-hi", dis.alpha_hi);
    s->add_flag("--discrete", dis.discrete);
    s->add_option("--out", dis.out)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*g) return generate(gen);
        if (*l) return learn(lrn);
        if (*d) return diff(dif);
        if (*e) return experiment(exp);
        if (*s) return distinct(dis);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 1;
}
