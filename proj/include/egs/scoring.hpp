#pragma once

#include "egs/dataset.hpp"
#include "egs/edit_ops.hpp"
#include "egs/graph.hpp"

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

namespace egs {

struct ScoreKind {
    enum class Type { bdeu, gaussian_bic };
    Type type = Type::gaussian_bic;
    double equivalent_sample_size = 1.0;

    static ScoreKind bdeu(double ess = 1.0);
    static ScoreKind gaussian_bic() { return {}; }
};

/// A child and its parent set; parents are kept sorted.
struct FamilyKey {
    NodeId child;
    std::vector<NodeId> parents;

    FamilyKey(NodeId child, std::vector<NodeId> parents);
    bool operator==(const FamilyKey&) const = default;
};

struct FamilyKeyHash {
    std::size_t operator()(const FamilyKey& k) const;
};

/// Log marginal likelihood contribution of one family. BDeu uses a
/// symmetric Dirichlet prior; Gaussian BIC is the maximised linear-Gaussian
/// log-likelihood minus (|parents| + 2) / 2 * ln N. Throws DataMismatch
/// when the score does not fit the data kind.
double log_family_score(const ScoreKind& kind, const Dataset& data, const FamilyKey& key);

/// Sum of family scores; the structure prior is uniform and contributes 0.
double log_network_score(const ScoreKind& kind, const Dataset& data, const Dag& d);

/// Score change of applying op to d. Throws InvalidEdit.
double delta_score(const ScoreKind& kind, const Dataset& data, const Dag& d, const EditOp& op);

/// Memo of family scores. Reads may run concurrently; inserts are serialised.
class FamilyCache {
public:
    template <typename Compute>
    double get_or_compute(const FamilyKey& key, Compute&& compute) {
        {
            std::shared_lock lock(mutex_);
            auto it = table_.find(key);
            if (it != table_.end()) {
                ++hits_;
                return it->second;
            }
        }
        const double value = compute();
        std::unique_lock lock(mutex_);
        return table_.emplace(key, value).first->second;
    }

    std::size_t size() const;
    std::uint64_t hits() const { return hits_; }

private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<FamilyKey, double, FamilyKeyHash> table_;
    std::atomic<std::uint64_t> hits_{0};
};

/// Scores structures against one dataset, optionally through a FamilyCache.
class Scorer {
public:
    Scorer(const Dataset& data, ScoreKind kind, bool use_cache = true);

    const Dataset& data() const { return data_; }
    const ScoreKind& kind() const { return kind_; }
    int num_variables() const { return data_.num_variables(); }

    double family(NodeId child, std::vector<NodeId> parents) const;
    double network(const Dag& d) const;
    double delta(const Dag& d, const EditOp& op) const;

    /// Null when caching is disabled.
    const FamilyCache* cache() const { return cache_.get(); }

private:
    const Dataset& data_;
    ScoreKind kind_;
    std::unique_ptr<FamilyCache> cache_;
};

}  // namespace egs
