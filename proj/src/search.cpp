#include "egs/search.hpp"

#include "egs/pc.hpp"
#include "egs/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

namespace egs {

void SearchConfig::validate() const {
    if (!(alpha.lo > 0.0 && alpha.lo < alpha.hi && alpha.hi < 1.0))
        throw std::invalid_argument("alpha range must satisfy 0 < lo < hi < 1");
    if (convergence_n < 1) throw std::invalid_argument("convergence_n must be >= 1");
    if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    if (!(gs1_alpha > 0.0 && gs1_alpha < 1.0)) throw std::invalid_argument("gs1_alpha must lie in (0, 1)");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

Dag random_dag_uniform_start(int n_nodes, Rng& rng) { return random_ordered_dag(n_nodes, 0.5, rng); }

namespace {

constexpr double kNoScore = -std::numeric_limits<double>::infinity();
constexpr double kNoAlpha = std::numeric_limits<double>::quiet_NaN();
// Gains below this are rounding noise in the family scores, not improvements.
constexpr double kMinGain = 1e-9;

std::vector<std::vector<char>> reachability(const MixedGraph& g) {
    const int n = g.num_nodes();
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (NodeId s = 0; s < n; ++s) {
        std::vector<NodeId> stack{s};
        while (!stack.empty()) {
            NodeId v = stack.back();
            stack.pop_back();
            for (NodeId c = 0; c < n; ++c)
                if (g.has_directed(v, c) && !reach[s][c]) {
                    reach[s][c] = 1;
                    stack.push_back(c);
                }
        }
    }
    return reach;
}

// Runs make(i) for i in [first, first + count) on up to `threads` workers.
template <typename T, typename Make>
std::vector<T> evaluate_batch(std::size_t first, std::size_t count, int threads, Make&& make) {
    std::vector<std::optional<T>> slots(count);
    if (threads <= 1 || count <= 1) {
        for (std::size_t k = 0; k < count; ++k) slots[k].emplace(make(first + k));
    } else {
        std::vector<std::exception_ptr> errors(count);
        std::vector<std::thread> workers;
        for (std::size_t k = 0; k < count; ++k)
            workers.emplace_back([&, k] {
                try {
                    slots[k].emplace(make(first + k));
                } catch (...) {
                    errors[k] = std::current_exception();
                }
            });
        for (auto& w : workers) w.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    std::vector<T> out;
    out.reserve(count);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

struct Candidate {
    bool ok = false;
    Dag dag;
    EssentialGraph essential;
    double score = kNoScore;
    double alpha = kNoAlpha;
};

ScoredStructure essential_graph_search(const Scorer& scorer, const IndependenceTest& test,
                                       const SearchConfig& config, bool refine) {
    config.validate();
    const int n = scorer.num_variables();
    if (test.num_variables() != n) throw std::invalid_argument("test and scorer disagree on variables");

    auto make = [&](std::size_t i) {
        Candidate c;
        Rng rng(substream_seed(config.seed, i));
        std::uniform_real_distribution<double> draw_alpha(config.alpha.lo, config.alpha.hi);
        c.alpha = draw_alpha(rng);
        // The first candidate uses the initial (identity) ordering.
        NodeOrdering order = i == 0 ? NodeOrdering::identity(n) : NodeOrdering::random(n, rng);
        PcOptions options;
        options.max_condition_size = config.max_condition_size;
        auto pc = run_pc(test, c.alpha, order, options);
        if (!pc) return c;
        auto dag = consistent_extension(pc->graph, rng);
        if (!dag) return c;
        if (refine) {
            auto refined = greedy_search(scorer, *dag);
            c.dag = std::move(refined.dag);
            c.essential = std::move(refined.essential);
            c.score = refined.log_score;
        } else {
            c.dag = *std::move(dag);
            c.essential = std::move(pc->graph);
            c.score = scorer.network(c.dag);
        }
        c.ok = true;
        return c;
    };

    ScoredStructure best;
    best.log_score = kNoScore;
    bool have_best = false;
    int since_improvement = 0;
    std::size_t next = 0;
    while (since_improvement < config.convergence_n) {
        const auto batch = static_cast<std::size_t>(
            std::min(config.threads, config.convergence_n - since_improvement));
        auto candidates = evaluate_batch<Candidate>(next, batch, config.threads, make);
        for (auto& c : candidates) {
            if (since_improvement >= config.convergence_n) break;
            ++best.candidates_generated;
            if (c.ok && (!have_best || c.score > best.log_score)) {
                have_best = true;
                best.dag = std::move(c.dag);
                best.essential = std::move(c.essential);
                best.log_score = c.score;
                best.alpha_used = c.alpha;
                best.iteration_found = next;
                since_improvement = 0;
            } else {
                ++since_improvement;
            }
            best.trace.push_back(best.log_score);
            ++next;
        }
    }
    if (!have_best) {
        best.dag = Dag(n);
        best.essential = EssentialGraph(n);
        best.log_score = scorer.network(best.dag);
        best.alpha_used = kNoAlpha;
        best.flagged = true;
    }
    return best;
}

ScoredStructure restarted_greedy(const Scorer& scorer, const SearchConfig& config,
                                 const std::function<Dag(std::size_t, Rng&, bool&)>& start_for) {
    config.validate();
    struct Restart {
        ScoredStructure result;
        bool flagged = false;
    };
    auto make = [&](std::size_t r) {
        Restart out;
        Rng rng(substream_seed(config.seed, r));
        out.result = greedy_search(scorer, start_for(r, rng, out.flagged));
        return out;
    };

    ScoredStructure best;
    best.log_score = kNoScore;
    bool flagged = false;
    const auto total = static_cast<std::size_t>(config.restarts);
    for (std::size_t first = 0; first < total; first += config.threads) {
        const std::size_t count = std::min<std::size_t>(config.threads, total - first);
        auto restarts = evaluate_batch<Restart>(first, count, config.threads, make);
        for (std::size_t k = 0; k < count; ++k) {
            auto& r = restarts[k];
            flagged = flagged || r.flagged;
            if (first + k == 0 || r.result.log_score > best.log_score) {
                auto trace = std::move(best.trace);
                best = std::move(r.result);
                best.trace = std::move(trace);
                best.iteration_found = first + k;
            }
            best.trace.push_back(best.log_score);
        }
    }
    best.candidates_generated = total;
    best.alpha_used = kNoAlpha;
    best.flagged = flagged;
    return best;
}

}  // namespace

ScoredStructure greedy_search(const Scorer& scorer, const Dag& start) {
    const int n = start.num_nodes();
    if (n != scorer.num_variables()) throw std::invalid_argument("graph and scorer disagree on variables");
    Dag current = start;
    std::vector<double> family(n);
    std::vector<std::vector<NodeId>> parents(n);
    for (NodeId v = 0; v < n; ++v) {
        parents[v] = current.parents(v);
        family[v] = scorer.family(v, parents[v]);
    }
    auto with = [](std::vector<NodeId> v, NodeId x) {
        v.push_back(x);
        return v;
    };
    auto without = [](std::vector<NodeId> v, NodeId x) {
        v.erase(std::remove(v.begin(), v.end(), x), v.end());
        return v;
    };

    std::size_t steps = 0;
    for (;;) {
        const auto& g = current.graph();
        const auto reach = reachability(g);
        double best_delta = kMinGain;
        std::optional<EditOp> best_op;
        auto consider = [&](const EditOp& op, double delta) {
            if (delta > best_delta) {
                best_delta = delta;
                best_op = op;
            }
        };
        for (NodeId x = 0; x < n; ++x) {
            for (NodeId y = 0; y < n; ++y) {
                if (x == y) continue;
                if (!g.adjacent(x, y)) {
                    if (!reach[y][x])
                        consider(EditOp::add(x, y),
                                 scorer.family(y, with(parents[y], x)) - family[y]);
                    continue;
                }
                if (!g.has_directed(x, y)) continue;
                const double drop = scorer.family(y, without(parents[y], x)) - family[y];
                consider(EditOp::del(x, y), drop);
                bool other_path = false;
                for (NodeId c = 0; c < n && !other_path; ++c)
                    if (c != y && g.has_directed(x, c) && reach[c][y]) other_path = true;
                if (!other_path)
                    consider(EditOp::rev(x, y),
                             drop + (scorer.family(x, with(parents[x], y)) - family[x]));
            }
        }
        if (!best_op) break;
        current = apply_edit(current, *best_op);
        for (NodeId v : {best_op->x, best_op->y}) {
            parents[v] = current.parents(v);
            family[v] = scorer.family(v, parents[v]);
        }
        ++steps;
    }

    ScoredStructure out;
    out.log_score = scorer.network(current);
    out.essential = dag_to_essential(current);
    out.dag = std::move(current);
    out.alpha_used = kNoAlpha;
    out.iteration_found = steps;
    return out;
}

ScoredStructure run_egs(const Scorer& scorer, const IndependenceTest& test,
                        const SearchConfig& config) {
    return essential_graph_search(scorer, test, config, false);
}

ScoredStructure run_egs_gs(const Scorer& scorer, const IndependenceTest& test,
                           const SearchConfig& config) {
    return essential_graph_search(scorer, test, config, true);
}

ScoredStructure run_gs(const Scorer& scorer, const SearchConfig& config) {
    const int n = scorer.num_variables();
    return restarted_greedy(scorer, config, [n](std::size_t, Rng& rng, bool&) {
        return random_dag_uniform_start(n, rng);
    });
}

ScoredStructure run_gs1(const Scorer& scorer, const IndependenceTest& test,
                        const SearchConfig& config) {
    const int n = scorer.num_variables();
    if (test.num_variables() != n) throw std::invalid_argument("test and scorer disagree on variables");
    return restarted_greedy(scorer, config, [&](std::size_t r, Rng& rng, bool& flagged) {
        if (r == 0) {
            PcOptions options;
            options.max_condition_size = config.max_condition_size;
            if (auto pc = run_pc(test, config.gs1_alpha, NodeOrdering::identity(n), options))
                if (auto dag = consistent_extension(pc->graph, rng)) return *std::move(dag);
            flagged = true;
        }
        return random_dag_uniform_start(n, rng);
    });
}

}  // namespace egs
