#include "egs/independence.hpp"

#include "egs/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

namespace egs {

namespace {

void check_query(int n, NodeId x, NodeId y, std::span<const NodeId> given, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    if (x < 0 || x >= n || y < 0 || y >= n) throw std::out_of_range("node index out of range");
    if (x == y) throw std::invalid_argument("test needs two distinct variables");
    for (NodeId s : given) {
        if (s < 0 || s >= n) throw std::out_of_range("node index out of range");
        if (s == x || s == y) throw std::invalid_argument("conditioning set contains x or y");
    }
}

constexpr double kMinVariance = 1e-24;

}  // namespace

CiDecision fisher_z_test(const Dataset& data, NodeId x, NodeId y, std::span<const NodeId> given,
                         double alpha) {
    if (data.kind() != DataKind::continuous)
        throw DataMismatch("Fisher z test needs continuous data");
    check_query(data.num_variables(), x, y, given, alpha);
    // A fixed pair order keeps the result bit-identical under swapping.
    if (x > y) std::swap(x, y);
    const auto& cov = data.covariance();
    if (cov(x, x) <= kMinVariance || cov(y, y) <= kMinVariance)
        throw DegenerateData("zero-variance variable");
    for (NodeId s : given)
        if (cov(s, s) <= kMinVariance) throw DegenerateData("zero-variance variable");
    const double dof = data.num_records() - static_cast<double>(given.size()) - 3.0;
    if (dof <= 0.0) throw DegenerateData("too few records for conditioning set size");

    auto r = stats::partial_correlation(data.correlation(), x, y, given);
    if (!r) throw DegenerateData("singular correlation submatrix");
    double z;
    double p;
    if (std::abs(*r) >= 1.0) {
        z = std::copysign(std::numeric_limits<double>::infinity(), *r);
        p = 0.0;
    } else {
        z = 0.5 * std::log((1.0 + *r) / (1.0 - *r)) * std::sqrt(dof);
        p = stats::normal_two_sided_p(z);
    }
    return {p > alpha, p, z};
}

CiDecision gsquare_test(const Dataset& data, NodeId x, NodeId y, std::span<const NodeId> given,
                        double alpha) {
    if (data.kind() != DataKind::discrete) throw DataMismatch("G^2 test needs discrete data");
    check_query(data.num_variables(), x, y, given, alpha);
    const auto& cats = data.category_counts();
    const int rx = cats[x];
    const int ry = cats[y];
    double df = static_cast<double>(rx - 1) * (ry - 1);
    std::uint64_t strata = 1;
    for (NodeId s : given) {
        df *= cats[s];
        if (strata > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(cats[s]))
            throw DegenerateData("too many conditioning configurations");
        strata *= cats[s];
    }
    if (df < 1.0) throw DegenerateData("zero degrees of freedom");

    const auto& rec = data.records();
    std::unordered_map<std::uint64_t, std::vector<double>> tables;
    for (Eigen::Index i = 0; i < rec.rows(); ++i) {
        std::uint64_t key = 0;
        for (NodeId s : given) key = key * cats[s] + static_cast<std::uint64_t>(rec(i, s));
        auto& t = tables[key];
        if (t.empty()) t.assign(static_cast<std::size_t>(rx) * ry, 0.0);
        t[static_cast<std::size_t>(rec(i, x)) * ry + static_cast<std::size_t>(rec(i, y))] += 1.0;
    }

    double g2 = 0.0;
    bool informative = false;
    std::vector<double> row(rx), col(ry);
    for (const auto& [key, t] : tables) {
        std::fill(row.begin(), row.end(), 0.0);
        std::fill(col.begin(), col.end(), 0.0);
        double total = 0.0;
        for (int a = 0; a < rx; ++a)
            for (int b = 0; b < ry; ++b) {
                row[a] += t[a * ry + b];
                col[b] += t[a * ry + b];
                total += t[a * ry + b];
            }
        auto observed = [](const std::vector<double>& v) {
            return std::count_if(v.begin(), v.end(), [](double c) { return c > 0.0; });
        };
        if (observed(row) >= 2 && observed(col) >= 2) informative = true;
        for (int a = 0; a < rx; ++a)
            for (int b = 0; b < ry; ++b) {
                double n_ab = t[a * ry + b];
                if (n_ab > 0.0) g2 += n_ab * std::log(n_ab * total / (row[a] * col[b]));
            }
    }
    if (!informative) throw DegenerateData("no stratum carries information");
    g2 = std::max(0.0, 2.0 * g2);
    const double p = stats::chi_square_sf(g2, df);
    return {p > alpha, p, g2};
}

bool d_separated(const Dag& truth, NodeId x, NodeId y, std::span<const NodeId> given) {
    // Moralised ancestral graph of {x, y} + given, with the conditioning set removed.
    const int n = truth.num_nodes();
    const auto& g = truth.graph();
    std::vector<char> in_given(n, 0);
    for (NodeId s : given) in_given[s] = 1;

    std::vector<char> ancestral(n, 0);
    std::vector<NodeId> stack{x, y};
    stack.insert(stack.end(), given.begin(), given.end());
    for (NodeId v : stack) ancestral[v] = 1;
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (NodeId p : g.parents(v))
            if (!ancestral[p]) {
                ancestral[p] = 1;
                stack.push_back(p);
            }
    }

    std::vector<std::vector<NodeId>> moral(n);
    for (NodeId v = 0; v < n; ++v) {
        if (!ancestral[v]) continue;
        auto pa = g.parents(v);
        for (std::size_t i = 0; i < pa.size(); ++i) {
            moral[v].push_back(pa[i]);
            moral[pa[i]].push_back(v);
            for (std::size_t j = i + 1; j < pa.size(); ++j) {
                moral[pa[i]].push_back(pa[j]);
                moral[pa[j]].push_back(pa[i]);
            }
        }
    }

    std::vector<char> seen(n, 0);
    stack = {x};
    seen[x] = 1;
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        if (v == y) return false;
        for (NodeId w : moral[v])
            if (!seen[w] && !in_given[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return true;
}

CiDecision dsep_oracle(const Dag& truth, NodeId x, NodeId y, std::span<const NodeId> given) {
    const bool sep = d_separated(truth, x, y, given);
    return {sep, sep ? 1.0 : 0.0, sep ? 0.0 : std::numeric_limits<double>::infinity()};
}

namespace detail {

PValueMemo::Key PValueMemo::key(NodeId x, NodeId y, std::span<const NodeId> given) {
    Key k{static_cast<std::uint64_t>(std::min(x, y)) << 32 | static_cast<std::uint64_t>(std::max(x, y)),
          0};
    for (NodeId s : given) k.mask |= std::uint64_t{1} << s;
    return k;
}

bool PValueMemo::find(NodeId x, NodeId y, std::span<const NodeId> given, Entry& out) const {
    std::shared_lock lock(mutex_);
    auto it = table_.find(key(x, y, given));
    if (it == table_.end()) return false;
    out = it->second;
    return true;
}

void PValueMemo::store(NodeId x, NodeId y, std::span<const NodeId> given, Entry e) const {
    std::unique_lock lock(mutex_);
    table_.emplace(key(x, y, given), e);
}

}  // namespace detail

FisherZTest::FisherZTest(const Dataset& data, bool memoize) : data_(data) {
    if (data.kind() != DataKind::continuous)
        throw DataMismatch("Fisher z test needs continuous data");
    if (memoize) memo_.enable(data.num_variables());
}

CiDecision FisherZTest::test(NodeId x, NodeId y, std::span<const NodeId> given,
                             double alpha) const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    detail::PValueMemo::Entry e;
    if (memo_.enabled() && memo_.find(x, y, given, e)) return {e.p_value > alpha, e.p_value, e.statistic};
    try {
        auto d = fisher_z_test(data_, x, y, given, alpha);
        e = {d.p_value, d.statistic};
    } catch (const DegenerateData&) {
        e = {0.0, std::numeric_limits<double>::infinity()};
    }
    if (memo_.enabled()) memo_.store(x, y, given, e);
    return {e.p_value > alpha, e.p_value, e.statistic};
}

GSquareTest::GSquareTest(const Dataset& data, bool degenerate_is_independent, bool memoize)
    : data_(data), degenerate_is_independent_(degenerate_is_independent) {
    if (data.kind() != DataKind::discrete) throw DataMismatch("G^2 test needs discrete data");
    if (memoize) memo_.enable(data.num_variables());
}

CiDecision GSquareTest::test(NodeId x, NodeId y, std::span<const NodeId> given,
                             double alpha) const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    detail::PValueMemo::Entry e;
    if (memo_.enabled() && memo_.find(x, y, given, e)) return {e.p_value > alpha, e.p_value, e.statistic};
    try {
        auto d = gsquare_test(data_, x, y, given, alpha);
        e = {d.p_value, d.statistic};
    } catch (const DegenerateData&) {
        e = degenerate_is_independent_ ? detail::PValueMemo::Entry{1.0, 0.0}
                                       : detail::PValueMemo::Entry{0.0, 0.0};
    }
    if (memo_.enabled()) memo_.store(x, y, given, e);
    return {e.p_value > alpha, e.p_value, e.statistic};
}

CiDecision DSeparationTest::test(NodeId x, NodeId y, std::span<const NodeId> given,
                                 double alpha) const {
    check_query(truth_.num_nodes(), x, y, given, alpha);
    return dsep_oracle(truth_, x, y, given);
}

}  // namespace egs
