#include "egs/experiment.hpp"

#include "egs/equivalence.hpp"
#include "egs/pc.hpp"
#include "egs/simulation.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_set>

namespace egs {

std::string engine_name(Engine e) {
    switch (e) {
        case Engine::egs: return "EGS";
        case Engine::egs_gs: return "EGS/GS";
        case Engine::gs: return "GS";
        case Engine::gs1: return "GS/1";
    }
    return "?";
}

Engine parse_engine(const std::string& text) {
    if (text == "egs" || text == "EGS") return Engine::egs;
    if (text == "egsgs" || text == "EGS/GS") return Engine::egs_gs;
    if (text == "gs" || text == "GS") return Engine::gs;
    if (text == "gs1" || text == "GS/1") return Engine::gs1;
    throw std::invalid_argument("unknown engine: " + text);
}

void ExperimentSpec::validate() const {
    GeneratorConfig{n_nodes, mean_arcs, seed}.validate();
    if (n_records < 1) throw std::invalid_argument("records must be >= 1");
    if (replications < 1) throw std::invalid_argument("replications must be >= 1");
    if (engines.empty()) throw std::invalid_argument("no engines selected");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
    search.validate();
}

namespace {

std::vector<ResultRow> run_replication(const ExperimentSpec& spec, int rep) {
    const std::uint64_t rep_seed = substream_seed(spec.seed, static_cast<std::uint64_t>(rep));
    const Dag truth = random_dag({spec.n_nodes, spec.mean_arcs, substream_seed(rep_seed, 0)});
    Rng data_rng(substream_seed(rep_seed, 1));
    const SemParams params = draw_sem_params(truth, data_rng);
    const Dataset data = sample_linear_sem(truth, params, spec.n_records, data_rng);
    const FisherZTest test(data);

    std::vector<ResultRow> rows;
    for (Engine engine : spec.engines) {
        ResultRow row;
        row.experiment_id = spec.id;
        row.replication = rep;
        row.engine = engine;
        row.seed = rep_seed;
        row.n_nodes = spec.n_nodes;
        row.mean_arcs = spec.mean_arcs;
        row.n_records = spec.n_records;

        SearchConfig config = spec.search;
        config.seed = substream_seed(rep_seed, 10 + static_cast<std::uint64_t>(engine));
        // Engines get a private score cache so their work does not overlap.
        const Scorer scorer(data, ScoreKind::gaussian_bic());
        const auto start = std::chrono::steady_clock::now();
        try {
            ScoredStructure result;
            switch (engine) {
                case Engine::egs: result = run_egs(scorer, test, config); break;
                case Engine::egs_gs: result = run_egs_gs(scorer, test, config); break;
                case Engine::gs: result = run_gs(scorer, config); break;
                case Engine::gs1: result = run_gs1(scorer, test, config); break;
            }
            // Every engine is judged on the equivalence class of its best DAG.
            row.diff = structural_diff(dag_to_essential(result.dag), truth, spec.mode);
            row.log_score = result.log_score;
            row.alpha_used = result.alpha_used;
            row.candidates_generated = result.candidates_generated;
            row.status = result.flagged ? "fallback" : "ok";
        } catch (const std::exception&) {
            row.status = "error";
        }
        if (spec.record_wall_time)
            row.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - start)
                              .count();
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& v) {
    if (v == "1" || v == "true" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "no") return false;
    throw std::invalid_argument("expected a boolean, got " + v);
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    std::vector<std::vector<ResultRow>> per_rep(spec.replications);
    if (spec.threads <= 1) {
        for (int r = 0; r < spec.replications; ++r) per_rep[r] = run_replication(spec, r);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> workers;
        std::vector<std::exception_ptr> errors(spec.threads);
        for (int t = 0; t < spec.threads; ++t)
            workers.emplace_back([&, t] {
                try {
                    for (int r = next++; r < spec.replications; r = next++)
                        per_rep[r] = run_replication(spec, r);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        for (auto& w : workers) w.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    std::vector<ResultRow> rows;
    for (auto& rep : per_rep)
        for (auto& row : rep) rows.push_back(std::move(row));
    return rows;
}

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << "experiment_id,replication,engine,seed,n_nodes,mean_arcs,n_records,adj_plus,adj_minus,"
           "arcs_plus,arcs_minus,total_error,log_score,alpha_used,candidates_generated,wall_ms,"
           "status\n";
    for (const auto& r : rows) {
        out << r.experiment_id << ',' << r.replication << ',' << engine_name(r.engine) << ','
            << r.seed << ',' << r.n_nodes << ',' << format_double(r.mean_arcs) << ','
            << r.n_records << ',' << r.diff.adj_plus << ',' << r.diff.adj_minus << ','
            << r.diff.arcs_plus << ',' << r.diff.arcs_minus << ',' << total_error(r.diff) << ','
            << format_double(r.log_score) << ',' << format_double(r.alpha_used) << ','
            << r.candidates_generated << ',' << r.wall_ms << ',' << r.status << '\n';
    }
}

ExperimentSpec parse_experiment_spec(std::istream& in) {
    ExperimentSpec spec;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "id") spec.id = value;
            else if (key == "nodes") spec.n_nodes = std::stoi(value);
            else if (key == "mean_arcs") spec.mean_arcs = std::stod(value);
            else if (key == "records") spec.n_records = std::stoi(value);
            else if (key == "replications") spec.replications = std::stoi(value);
            else if (key == "engines") {
                spec.engines.clear();
                std::stringstream ss(value);
                std::string item;
                while (std::getline(ss, item, ',')) spec.engines.push_back(parse_engine(trim(item)));
            }
            else if (key == "alpha_lo") spec.search.alpha.lo = std::stod(value);
            else if (key == "alpha_hi") spec.search.alpha.hi = std::stod(value);
            else if (key == "n") spec.search.convergence_n = std::stoi(value);
            else if (key == "restarts") spec.search.restarts = std::stoi(value);
            else if (key == "gs1_alpha") spec.search.gs1_alpha = std::stod(value);
            else if (key == "max_condition_size") spec.search.max_condition_size = std::stoi(value);
            else if (key == "mode") {
                if (value == "essential") spec.mode = ComparisonMode::essential;
                else if (value == "raw" || value == "raw_dag") spec.mode = ComparisonMode::raw_dag;
                else throw std::invalid_argument("unknown mode " + value);
            }
            else if (key == "seed") spec.seed = std::stoull(value);
            else if (key == "threads") spec.threads = std::stoi(value);
            else if (key == "record_wall_time") spec.record_wall_time = parse_bool(value);
            else throw std::invalid_argument("unknown key " + key);
        } catch (const std::logic_error& e) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    spec.validate();
    return spec;
}

ExperimentSpec read_experiment_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_experiment_spec(in);
}

DistinctGraphs count_distinct_essential_graphs(const IndependenceTest& test, const Scorer* scorer,
                                               std::size_t runs, const SearchConfig& config,
                                               double bin_width) {
    config.validate();
    if (runs < 1) throw std::invalid_argument("runs must be >= 1");
    if (!(bin_width > 0.0)) throw std::invalid_argument("bin width must be positive");
    const int n = test.num_variables();

    const auto bins = static_cast<std::size_t>(
        std::max(1.0, std::ceil((config.alpha.hi - config.alpha.lo) / bin_width - 1e-9)));
    DistinctGraphs out;
    out.histogram.resize(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        out.histogram[b].lo = config.alpha.lo + b * bin_width;
        out.histogram[b].hi = std::min(config.alpha.hi, config.alpha.lo + (b + 1) * bin_width);
    }
    auto bin_of = [&](double alpha) {
        auto b = static_cast<std::size_t>(std::floor((alpha - config.alpha.lo) / bin_width));
        return std::min(b, bins - 1);
    };

    std::unordered_set<std::string> seen;
    std::vector<std::pair<std::size_t, double>> scored;  // (bin, score)
    std::uniform_real_distribution<double> draw_alpha(config.alpha.lo, config.alpha.hi);
    PcOptions options;
    options.max_condition_size = config.max_condition_size;
    for (std::size_t i = 0; i < runs; ++i) {
        Rng rng(substream_seed(config.seed, i));
        const double alpha = draw_alpha(rng);
        const auto order = NodeOrdering::random(n, rng);
        const std::size_t bin = bin_of(alpha);
        ++out.attempts;
        ++out.histogram[bin].runs;
        auto pc = run_pc(test, alpha, order, options);
        if (!pc) {
            ++out.rejected;
            ++out.histogram[bin].rejected;
            continue;
        }
        seen.insert(canonical_encoding(pc->graph));
        if (scorer)
            if (auto dag = consistent_extension(pc->graph, rng))
                scored.emplace_back(bin, scorer->network(*dag));
    }
    out.distinct = seen.size();
    out.best_score = -std::numeric_limits<double>::infinity();
    for (const auto& [bin, s] : scored) out.best_score = std::max(out.best_score, s);
    const double tol = 1e-9 * std::max(1.0, std::abs(out.best_score));
    for (const auto& [bin, s] : scored)
        if (out.best_score - s <= tol) ++out.histogram[bin].max_score_hits;
    return out;
}

void write_distinct_csv(std::ostream& out, const DistinctGraphs& result) {
    out << "alpha_lo,alpha_hi,runs,rejected,max_score_hits\n";
    for (const auto& b : result.histogram)
        out << format_double(b.lo) << ',' << format_double(b.hi) << ',' << b.runs << ','
            << b.rejected << ',' << b.max_score_hits << '\n';
}

}  // namespace egs
