#include "egs/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace egs {

ScoreKind ScoreKind::bdeu(double ess) {
    if (!(ess > 0.0)) throw std::invalid_argument("equivalent sample size must be positive");
    return {Type::bdeu, ess};
}

FamilyKey::FamilyKey(NodeId child_, std::vector<NodeId> parents_)
    : child(child_), parents(std::move(parents_)) {
    std::sort(parents.begin(), parents.end());
    if (std::adjacent_find(parents.begin(), parents.end()) != parents.end())
        throw std::invalid_argument("duplicate parent in family");
    if (std::binary_search(parents.begin(), parents.end(), child))
        throw std::invalid_argument("child cannot be its own parent");
}

std::size_t FamilyKeyHash::operator()(const FamilyKey& k) const {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ static_cast<std::uint64_t>(k.child);
    for (NodeId p : k.parents) h = (h ^ static_cast<std::uint64_t>(p + 1)) * 0x100000001b3ULL;
    return static_cast<std::size_t>(h);
}

namespace {

double gaussian_bic_family(const Dataset& data, const FamilyKey& key) {
    const auto& cov = data.covariance();
    const double n = data.num_records();
    const auto k = static_cast<Eigen::Index>(key.parents.size());
    double rss = cov(key.child, key.child);
    if (k > 0) {
        Eigen::MatrixXd s_pp(k, k);
        Eigen::VectorXd s_pc(k);
        for (Eigen::Index i = 0; i < k; ++i) {
            s_pc(i) = cov(key.parents[i], key.child);
            for (Eigen::Index j = 0; j < k; ++j) s_pp(i, j) = cov(key.parents[i], key.parents[j]);
        }
        rss -= s_pc.dot(s_pp.ldlt().solve(s_pc));
    }
    // Exact collinearity would send the likelihood to +inf.
    rss = std::max(rss, 1e-300);
    const double loglik = -0.5 * n * (std::log(2.0 * std::numbers::pi * rss) + 1.0);
    return loglik - 0.5 * (static_cast<double>(k) + 2.0) * std::log(n);
}

double bdeu_family(const Dataset& data, const FamilyKey& key, double ess) {
    const auto& cats = data.category_counts();
    const auto& rec = data.records();
    const int r = cats[key.child];
    double q = 1.0;
    for (NodeId p : key.parents) q *= cats[p];
    if (q > 9.0e18) throw std::overflow_error("too many parent configurations");

    std::unordered_map<std::uint64_t, std::vector<double>> counts;
    for (Eigen::Index i = 0; i < rec.rows(); ++i) {
        std::uint64_t config = 0;
        for (NodeId p : key.parents) config = config * cats[p] + static_cast<std::uint64_t>(rec(i, p));
        auto& c = counts[config];
        if (c.empty()) c.assign(r, 0.0);
        c[static_cast<std::size_t>(rec(i, key.child))] += 1.0;
    }
    // Iterate configurations in key order so the floating-point sum is stable.
    std::vector<std::uint64_t> configs;
    configs.reserve(counts.size());
    for (const auto& [cfg, c] : counts) configs.push_back(cfg);
    std::sort(configs.begin(), configs.end());

    const double a_j = ess / q;
    const double a_jk = ess / (q * r);
    double score = 0.0;
    for (std::uint64_t cfg : configs) {
        const auto& c = counts[cfg];
        double n_j = 0.0;
        for (double v : c) n_j += v;
        score += std::lgamma(a_j) - std::lgamma(a_j + n_j);
        for (double v : c)
            if (v > 0.0) score += std::lgamma(a_jk + v) - std::lgamma(a_jk);
    }
    return score;
}

void check_kind(const ScoreKind& kind, const Dataset& data) {
    const bool continuous = data.kind() == DataKind::continuous;
    if (kind.type == ScoreKind::Type::gaussian_bic && !continuous)
        throw DataMismatch("Gaussian BIC needs continuous data");
    if (kind.type == ScoreKind::Type::bdeu && continuous)
        throw DataMismatch("BDeu needs discrete data");
}

std::vector<NodeId> with(std::vector<NodeId> v, NodeId x) {
    v.push_back(x);
    return v;
}

std::vector<NodeId> without(std::vector<NodeId> v, NodeId x) {
    v.erase(std::remove(v.begin(), v.end(), x), v.end());
    return v;
}

}  // namespace

double log_family_score(const ScoreKind& kind, const Dataset& data, const FamilyKey& key) {
    check_kind(kind, data);
    const int n = data.num_variables();
    if (key.child < 0 || key.child >= n) throw std::out_of_range("node index out of range");
    for (NodeId p : key.parents)
        if (p < 0 || p >= n) throw std::out_of_range("node index out of range");
    if (kind.type == ScoreKind::Type::gaussian_bic) return gaussian_bic_family(data, key);
    return bdeu_family(data, key, kind.equivalent_sample_size);
}

double log_network_score(const ScoreKind& kind, const Dataset& data, const Dag& d) {
    return Scorer(data, kind, false).network(d);
}

double delta_score(const ScoreKind& kind, const Dataset& data, const Dag& d, const EditOp& op) {
    return Scorer(data, kind, false).delta(d, op);
}

std::size_t FamilyCache::size() const {
    std::shared_lock lock(mutex_);
    return table_.size();
}

Scorer::Scorer(const Dataset& data, ScoreKind kind, bool use_cache)
    : data_(data), kind_(kind), cache_(use_cache ? std::make_unique<FamilyCache>() : nullptr) {
    check_kind(kind_, data_);
}

double Scorer::family(NodeId child, std::vector<NodeId> parents) const {
    FamilyKey key(child, std::move(parents));
    if (!cache_) return log_family_score(kind_, data_, key);
    return cache_->get_or_compute(key, [&] { return log_family_score(kind_, data_, key); });
}

double Scorer::network(const Dag& d) const {
    if (d.num_nodes() != data_.num_variables())
        throw std::invalid_argument("graph and dataset disagree on variable count");
    double total = 0.0;
    for (NodeId v = 0; v < d.num_nodes(); ++v) total += family(v, d.parents(v));
    return total;
}

double Scorer::delta(const Dag& d, const EditOp& op) const {
    if (!is_applicable(d, op)) throw InvalidEdit("edit not applicable: " + to_string(op));
    const auto pa_y = d.parents(op.y);
    switch (op.kind) {
        case EditOp::Kind::add:
            return family(op.y, with(pa_y, op.x)) - family(op.y, pa_y);
        case EditOp::Kind::del:
            return family(op.y, without(pa_y, op.x)) - family(op.y, pa_y);
        case EditOp::Kind::rev: {
            const auto pa_x = d.parents(op.x);
            return (family(op.y, without(pa_y, op.x)) - family(op.y, pa_y)) +
                   (family(op.x, with(pa_x, op.y)) - family(op.x, pa_x));
        }
    }
    return 0.0;
}

bool is_applicable(const Dag& d, const EditOp& op) {
    const int n = d.num_nodes();
    if (op.x < 0 || op.x >= n || op.y < 0 || op.y >= n || op.x == op.y) return false;
    const auto& g = d.graph();
    switch (op.kind) {
        case EditOp::Kind::add:
            return !g.adjacent(op.x, op.y) && !has_directed_path(g, op.y, op.x);
        case EditOp::Kind::del:
            return g.has_directed(op.x, op.y);
        case EditOp::Kind::rev: {
            if (!g.has_directed(op.x, op.y)) return false;
            MixedGraph h = g;
            h.remove_edge(op.x, op.y);
            return !has_directed_path(h, op.x, op.y);
        }
    }
    return false;
}

Dag apply_edit(const Dag& d, const EditOp& op) {
    if (!is_applicable(d, op)) throw InvalidEdit("edit not applicable: " + to_string(op));
    Dag out = d;
    switch (op.kind) {
        case EditOp::Kind::add: out.add_edge(op.x, op.y); break;
        case EditOp::Kind::del: out.remove_edge(op.x, op.y); break;
        case EditOp::Kind::rev: out.reverse_edge(op.x, op.y); break;
    }
    return out;
}

std::string to_string(const EditOp& op) {
    const char* name = op.kind == EditOp::Kind::add ? "Add" : op.kind == EditOp::Kind::del ? "Del" : "Rev";
    return std::string(name) + "(" + std::to_string(op.x) + ", " + std::to_string(op.y) + ")";
}

}  // namespace egs
